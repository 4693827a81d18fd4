#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>

#include "bibx/render.hpp"
#include "bibx/strings.hpp"

namespace bibx::render {

namespace {

constexpr double kTitleSize = 16.0;
constexpr double kLabelSize = 11.0;
constexpr double kDescent = 0.25;
constexpr const char* kAxis = "#444444";
constexpr const char* kMuted = "#bbbbbb";

std::string value_text(double v) {
  if (std::floor(v) == v && std::abs(v) < 1e15) return std::to_string(static_cast<long long>(v));
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

// Cuts `text` so it renders within `width`, marking the cut with "...".
std::string fit_text(const std::string& text, double font_size, double width) {
  if (text_width(text, font_size) <= width) return text;
  std::u32string cps = str::decode_utf8(text);
  while (!cps.empty()) {
    cps.pop_back();
    std::string candidate = str::encode_utf8(cps) + "...";
    if (text_width(candidate, font_size) <= width) return candidate;
  }
  return "";
}

ViewSpec blank(const ViewOptions& o, std::string title) {
  ViewSpec v;
  v.width = o.width;
  v.height = o.height;
  v.title = title;
  v.elements.push_back(Element::make_rect(0, 0, o.width, o.height, "#ffffff"));
  v.elements.push_back(Element::make_text(o.width / 2.0, 24.0, std::move(title), kTitleSize, "middle", "#222222"));
  return v;
}

Rect plot_area(const ViewOptions& o, double left, double bottom) {
  const double top = 40.0;
  const double right = 20.0;
  return {left, top, std::max(1.0, o.width - left - right), std::max(1.0, o.height - top - bottom)};
}

void axes(ViewSpec& v, const Rect& a) {
  v.elements.push_back(Element::make_line(a.x, a.bottom(), a.right(), a.bottom(), kAxis));
  v.elements.push_back(Element::make_line(a.x, a.y, a.x, a.bottom(), kAxis));
}

void y_ticks(ViewSpec& v, const Rect& a, double max_value) {
  for (int i = 0; i <= 4; ++i) {
    const double value = max_value * i / 4.0;
    const double y = a.bottom() - a.h * i / 4.0;
    v.elements.push_back(Element::make_line(a.x - 4, y, a.x, y, kAxis));
    v.elements.push_back(Element::make_text(a.x - 6, y + 4, value_text(std::round(value * 100) / 100), kLabelSize, "end"));
  }
}

bool is_year_kind(eda::SeriesKind k) {
  return k == eda::SeriesKind::documents_per_year || k == eda::SeriesKind::citations_per_year ||
         k == eda::SeriesKind::past_citations_per_year || k == eda::SeriesKind::lotka;
}

std::string node_color(const graph::Node& n, const Palette& palette) {
  if (n.attributes.contains("color_class")) {
    return n.attributes["color_class"] == "red" ? palette.reference_red : palette.document_blue;
  }
  if (n.attributes.contains("component") && n.attributes["component"].is_number_unsigned()) {
    return palette.color(n.attributes["component"].get<std::size_t>());
  }
  return palette.color(static_cast<std::size_t>(n.kind));
}

std::vector<std::pair<std::string, std::string>> node_metadata(const graph::Node& n) {
  std::vector<std::pair<std::string, std::string>> meta{{"label", n.label}};
  for (const auto& [key, value] : n.attributes.items()) {
    if (key == "color_class" || key == "lat" || key == "lon") continue;
    meta.emplace_back(key, value.is_string() ? value.get<std::string>() : value.dump());
  }
  return meta;
}

}  // namespace

ViewSpec bar_view(const eda::Series& series, const ViewOptions& o) {
  const bool vertical = is_year_kind(series.kind);
  double max_value = 0.0;
  for (const auto& [c, val] : series.points) max_value = std::max(max_value, val);
  if (max_value <= 0.0) max_value = 1.0;
  ViewSpec v = blank(o, series.label);
  const std::size_t n = series.points.size();

  if (vertical) {
    const Rect a = plot_area(o, 60.0, 50.0);
    axes(v, a);
    y_ticks(v, a, max_value);
    if (n == 0) return v;
    const double slot = a.w / static_cast<double>(n);
    double widest = 0.0;
    for (const auto& [c, val] : series.points) widest = std::max(widest, text_width(c, kLabelSize));
    const std::size_t every = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil((widest + 4) / slot)));
    for (std::size_t i = 0; i < n; ++i) {
      const auto& [cat, val] = series.points[i];
      const double h = a.h * val / max_value;
      const double x = a.x + slot * static_cast<double>(i) + slot * 0.1;
      const std::string fill = series.groups.empty() ? o.palette.color(0) : o.palette.color(series.groups[i]);
      Element bar = Element::make_rect(x, a.bottom() - h, slot * 0.8, h, fill);
      bar.metadata = {{"label", cat}, {"value", value_text(val)}};
      v.elements.push_back(std::move(bar));
      if (i % every == 0) {
        v.elements.push_back(Element::make_text(x + slot * 0.4, a.bottom() + 16, cat, kLabelSize, "middle"));
      }
    }
    return v;
  }

  const Rect a = plot_area(o, std::min(220.0, o.width * 0.35), 30.0);
  axes(v, a);
  if (n == 0) return v;
  const double slot = a.h / static_cast<double>(n);
  const double font = std::min(kLabelSize, slot * 0.8);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& [cat, val] = series.points[i];
    const double w = a.w * val / max_value;
    const double y = a.y + slot * static_cast<double>(i) + slot * 0.1;
    const std::string fill = series.groups.empty() ? o.palette.color(0) : o.palette.color(series.groups[i]);
    Element bar = Element::make_rect(a.x, y, w, slot * 0.8, fill);
    bar.metadata = {{"label", cat}, {"value", value_text(val)}};
    if (!series.groups.empty()) bar.metadata.emplace_back("zone", std::to_string(series.groups[i]));
    v.elements.push_back(std::move(bar));
    v.elements.push_back(
        Element::make_text(a.x - 6, y + slot * 0.4 + font * 0.35, fit_text(cat, font, a.x - 12), font, "end"));
  }
  const double tick_y = a.bottom() + 16;
  v.elements.push_back(Element::make_text(a.x, tick_y, "0", kLabelSize, "middle"));
  v.elements.push_back(Element::make_text(a.right(), tick_y, value_text(max_value), kLabelSize, "end"));
  return v;
}

ViewSpec evolution_view(std::span<const eda::Series> series, const ViewOptions& o) {
  ViewSpec v = blank(o, "Evolution");
  const double legend_w = std::min(200.0, o.width * 0.25);
  Rect a = plot_area(o, 60.0, 40.0);
  a.w = std::max(1.0, a.w - legend_w);
  axes(v, a);
  double max_value = 0.0;
  std::size_t n = 0;
  for (const auto& s : series) {
    n = std::max(n, s.points.size());
    for (const auto& [c, val] : s.points) max_value = std::max(max_value, val);
  }
  if (max_value <= 0.0) max_value = 1.0;
  y_ticks(v, a, max_value);
  if (n == 0) return v;
  const double step = n > 1 ? a.w / static_cast<double>(n - 1) : 0.0;
  auto px = [&](std::size_t i) { return n > 1 ? a.x + step * static_cast<double>(i) : a.x + a.w / 2.0; };
  const auto& years = series.front().points;
  const std::size_t every =
      std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(40.0 / std::max(step, 1e-9))));
  for (std::size_t i = 0; i < years.size(); i += every) {
    v.elements.push_back(Element::make_text(px(i), a.bottom() + 16, years[i].first, kLabelSize, "middle"));
  }
  for (std::size_t s = 0; s < series.size(); ++s) {
    const std::string color = o.palette.color(s);
    std::string d;
    std::vector<Element> markers;
    for (std::size_t i = 0; i < series[s].points.size(); ++i) {
      const auto& [year, val] = series[s].points[i];
      const double x = px(i);
      const double y = a.bottom() - a.h * val / max_value;
      char buf[48];
      std::snprintf(buf, sizeof buf, "%c%.2f %.2f", i == 0 ? 'M' : 'L', x, y);
      d += buf;
      Element m = Element::make_circle(x, y, 2.5, color);
      m.metadata = {{"label", series[s].label}, {"value", value_text(val)}, {"year", year}};
      markers.push_back(std::move(m));
    }
    v.elements.push_back(Element::make_path(d, "none", color, 1.5));
    for (auto& m : markers) v.elements.push_back(std::move(m));
    const double ly = a.y + 14.0 * static_cast<double>(s) + 6.0;
    if (ly + 4 < o.height) {
      v.elements.push_back(Element::make_rect(a.right() + 10, ly - 4, 10, 8, color));
      v.elements.push_back(Element::make_text(a.right() + 24, ly + 4,
                                              fit_text(series[s].label, kLabelSize, legend_w - 30), kLabelSize));
    }
  }
  return v;
}

ViewSpec treemap_view(const eda::Series& totals, const ViewOptions& o) {
  ViewSpec v = blank(o, totals.label);
  const Rect a{10.0, 40.0, std::max(1.0, o.width - 20.0), std::max(1.0, o.height - 50.0)};
  std::vector<double> values;
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < totals.points.size(); ++i) {
    if (totals.points[i].second > 0) {
      values.push_back(totals.points[i].second);
      idx.push_back(i);
    }
  }
  const auto cells = layout_treemap(values, a);
  for (std::size_t k = 0; k < cells.size(); ++k) {
    const auto& [label, value] = totals.points[idx[k]];
    const Rect& c = cells[k];
    Element cell = Element::make_rect(c.x, c.y, c.w, c.h, o.palette.color(k));
    cell.stroke = "#ffffff";
    cell.stroke_width = 1.0;
    cell.metadata = {{"label", label}, {"value", value_text(value)}};
    v.elements.push_back(std::move(cell));
    const double font = std::clamp(std::min(c.h / 3.0, 14.0), 0.0, 14.0);
    if (font >= 7.0) {
      const std::string text = fit_text(label, font, c.w - 6.0);
      if (!text.empty()) v.elements.push_back(Element::make_text(c.x + 3, c.y + font + 2, text, font, "start", "#ffffff"));
    }
  }
  return v;
}

ViewSpec wordcloud_view(std::span<const std::pair<std::string, std::size_t>> frequencies, const ViewOptions& o,
                        std::vector<std::string>* dropped) {
  ViewSpec v = blank(o, "Word cloud");
  const Rect a{10.0, 40.0, std::max(1.0, o.width - 20.0), std::max(1.0, o.height - 50.0)};
  WordcloudOptions wo;
  wo.max_font = std::clamp(std::min(a.w, a.h) / 8.0, wo.min_font + 1.0, 64.0);
  const WordcloudLayout layout = layout_wordcloud(frequencies, a, o.seed, wo);
  for (std::size_t i = 0; i < layout.words.size(); ++i) {
    const PlacedWord& w = layout.words[i];
    Element t = Element::make_text(w.box.x, w.box.bottom() - kDescent * w.font_size, w.text, w.font_size, "start",
                                   o.palette.color(i));
    t.metadata = {{"label", w.text}, {"value", std::to_string(w.count)}};
    v.elements.push_back(std::move(t));
  }
  if (dropped != nullptr) *dropped = layout.dropped;
  return v;
}

ViewSpec sankey_view(std::span<const eda::Flow> flows, const ViewOptions& o) {
  std::string title = "Sankey";
  if (!flows.empty()) {
    title += ": " + std::string(eda::to_string(flows.front().left_kind)) + " to " +
             std::string(eda::to_string(flows.front().right_kind));
  }
  ViewSpec v = blank(o, title);
  const double side = o.width * 0.28;
  const Rect a{side, 40.0, std::max(1.0, o.width - 2 * side), std::max(1.0, o.height - 60.0)};
  std::vector<SankeyFlow> sf;
  for (const auto& f : flows) sf.push_back({f.left, f.right, static_cast<double>(f.weight)});
  const SankeyLayout layout = layout_sankey(sf, a);
  for (const auto& rb : layout.ribbons) {
    Element p = Element::make_path(rb.path, o.palette.color(rb.left), "none");
    p.opacity = 0.45;
    p.metadata = {{"label", layout.nodes[rb.left].label + " -> " + layout.nodes[rb.right].label},
                  {"value", value_text(rb.weight)}};
    v.elements.push_back(std::move(p));
  }
  for (std::size_t i = 0; i < layout.nodes.size(); ++i) {
    const SankeyNode& n = layout.nodes[i];
    Element bar = Element::make_rect(n.bar.x, n.bar.y, n.bar.w, n.bar.h, n.column == 0 ? o.palette.color(i) : "#555555");
    bar.metadata = {{"label", n.label}, {"value", value_text(n.total)}};
    v.elements.push_back(std::move(bar));
    const double font = std::min(kLabelSize, std::max(7.0, n.bar.h));
    const double y = n.bar.y + n.bar.h / 2.0 + font * 0.35;
    if (n.column == 0) {
      v.elements.push_back(Element::make_text(n.bar.x - 4, y, fit_text(n.label, font, side - 10), font, "end"));
    } else {
      v.elements.push_back(Element::make_text(n.bar.right() + 4, y, fit_text(n.label, font, side - 10), font));
    }
  }
  return v;
}

ViewSpec productivity_view(const eda::Productivity& p, const ViewOptions& o) {
  ViewSpec v = blank(o, "Author productivity over time");
  const Rect a = plot_area(o, std::min(180.0, o.width * 0.3), 40.0);
  axes(v, a);
  if (p.rows.empty() || !p.years) return v;
  const int y0 = p.years->first;
  const int y1 = p.years->second;
  const double cols = static_cast<double>(y1 - y0 + 1);
  const double col_w = a.w / cols;
  const double row_h = a.h / static_cast<double>(p.rows.size());
  std::size_t max_docs = 1;
  for (const auto& row : p.rows) {
    for (const auto& [year, ids] : row.cells) max_docs = std::max(max_docs, ids.size());
  }
  const double max_r = std::max(1.5, std::min(col_w, row_h) / 2.0 - 1.0);
  const std::size_t every = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(36.0 / col_w)));
  for (int y = y0; y <= y1; y += static_cast<int>(every)) {
    v.elements.push_back(Element::make_text(a.x + col_w * (y - y0 + 0.5), a.bottom() + 16, std::to_string(y),
                                            kLabelSize, "middle"));
  }
  const double font = std::min(kLabelSize, row_h * 0.8);
  for (std::size_t r = 0; r < p.rows.size(); ++r) {
    const auto& row = p.rows[r];
    const double cy = a.y + row_h * (static_cast<double>(r) + 0.5);
    v.elements.push_back(
        Element::make_text(a.x - 6, cy + font * 0.35, fit_text(row.author, font, a.x - 12), font, "end"));
    if (!row.cells.empty()) {
      const double xa = a.x + col_w * (row.cells.begin()->first - y0 + 0.5);
      const double xb = a.x + col_w * (row.cells.rbegin()->first - y0 + 0.5);
      v.elements.push_back(Element::make_line(xa, cy, xb, cy, kMuted, 1.0));
    }
    for (const auto& [year, ids] : row.cells) {
      const double r_px = max_r * std::sqrt(static_cast<double>(ids.size()) / static_cast<double>(max_docs));
      Element c = Element::make_circle(a.x + col_w * (year - y0 + 0.5), cy, r_px, o.palette.color(0));
      std::string list;
      for (std::size_t id : ids) list += (list.empty() ? "" : ", ") + std::to_string(id);
      c.metadata = {{"label", row.author + " (" + std::to_string(year) + ")"},
                    {"value", std::to_string(ids.size())},
                    {"documents", list}};
      v.elements.push_back(std::move(c));
    }
  }
  return v;
}

ViewSpec network_view(const graph::Graph& g, std::string_view title, const ViewOptions& o) {
  ViewSpec v = blank(o, std::string(title));
  const Rect a{10.0, 40.0, std::max(1.0, o.width - 20.0), std::max(1.0, o.height - 50.0)};
  const auto pos = layout_force(g, a, o.seed);
  double max_w = 1.0;
  for (const auto& e : g.edges) max_w = std::max(max_w, e.weight);
  for (const auto& e : g.edges) {
    Element line = Element::make_line(pos[e.source].x, pos[e.source].y, pos[e.target].x, pos[e.target].y, "#999999",
                                      1.0 + 3.0 * (e.weight - 1.0) / std::max(1.0, max_w - 1.0));
    line.opacity = 0.7;
    line.metadata = {{"label", g.nodes[e.source].label + (e.directed ? " -> " : " - ") + g.nodes[e.target].label},
                     {"value", value_text(e.weight)}};
    v.elements.push_back(std::move(line));
  }
  const auto degree = g.in_degree();
  const bool labels = g.nodes.size() <= 60;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    const auto& n = g.nodes[i];
    const double r = std::min(12.0, 3.5 + std::sqrt(static_cast<double>(degree[i])));
    Element c = Element::make_circle(pos[i].x, pos[i].y, r, node_color(n, o.palette));
    c.stroke = "#ffffff";
    c.stroke_width = 0.8;
    c.metadata = node_metadata(n);
    v.elements.push_back(std::move(c));
    if (labels) {
      const double ty = pos[i].y - r - 2 < 40.0 ? pos[i].y + r + 10 : pos[i].y - r - 2;
      v.elements.push_back(Element::make_text(pos[i].x, ty, n.label, 9.0, "middle"));
    }
  }
  return v;
}

ViewSpec history_view(const graph::CitationChain& chain, const Corpus& corpus, const ViewOptions& o) {
  ViewSpec v = blank(o, "Citation history of document " + std::to_string(chain.focal));
  const Rect a{60.0, 50.0, std::max(1.0, o.width - 120.0), std::max(1.0, o.height - 80.0)};
  // Upper half: works the focal document builds on; lower half: later work.
  std::set<std::size_t> upper, lower;
  for (const auto& [x, y] : chain.backward) {
    upper.insert(x);
    upper.insert(y);
  }
  for (const auto& [x, y] : chain.forward) {
    lower.insert(x);
    lower.insert(y);
  }
  upper.erase(chain.focal);
  lower.erase(chain.focal);
  for (std::size_t id : upper) lower.erase(id);

  std::set<int> years;
  std::vector<std::size_t> all(upper.begin(), upper.end());
  all.insert(all.end(), lower.begin(), lower.end());
  all.push_back(chain.focal);
  for (std::size_t id : all) years.insert(corpus.documents[id].year.value_or(0));
  std::vector<int> year_list(years.begin(), years.end());
  auto column = [&](std::size_t id) {
    const int y = corpus.documents[id].year.value_or(0);
    return static_cast<std::size_t>(std::lower_bound(year_list.begin(), year_list.end(), y) - year_list.begin());
  };
  const double col_w = year_list.size() > 1 ? a.w / static_cast<double>(year_list.size() - 1) : 0.0;
  auto col_x = [&](std::size_t c) { return year_list.size() > 1 ? a.x + col_w * static_cast<double>(c) : a.x + a.w / 2; };

  std::map<std::size_t, Point> pos;
  auto place = [&](const std::set<std::size_t>& ids, double y_top, double y_bottom) {
    std::map<std::size_t, std::vector<std::size_t>> by_col;
    for (std::size_t id : ids) by_col[column(id)].push_back(id);
    for (const auto& [c, members] : by_col) {
      for (std::size_t k = 0; k < members.size(); ++k) {
        const double t = (static_cast<double>(k) + 1.0) / (static_cast<double>(members.size()) + 1.0);
        pos[members[k]] = {col_x(c), y_top + (y_bottom - y_top) * t};
      }
    }
  };
  const double mid = a.y + a.h / 2.0;
  place(upper, a.y, mid - 20.0);
  place(lower, mid + 20.0, a.bottom());
  pos[chain.focal] = {col_x(column(chain.focal)), mid};

  for (std::size_t c = 0; c < year_list.size(); ++c) {
    const std::string label = year_list[c] == 0 ? "n.d." : std::to_string(year_list[c]);
    v.elements.push_back(Element::make_text(col_x(c), a.bottom() + 20 > o.height ? o.height : a.bottom() + 20, label,
                                            kLabelSize, "middle"));
  }
  auto edge = [&](const graph::DirectedEdge& e) {
    Element line = Element::make_line(pos[e.first].x, pos[e.first].y, pos[e.second].x, pos[e.second].y, "#888888");
    line.metadata = {{"label", std::to_string(e.first) + " cites " + std::to_string(e.second)}};
    v.elements.push_back(std::move(line));
  };
  for (const auto& e : chain.backward) edge(e);
  for (const auto& e : chain.forward) edge(e);
  for (const auto& [id, p] : pos) {
    const bool focal = id == chain.focal;
    Element c = Element::make_circle(p.x, p.y, focal ? 8.0 : 6.0, focal ? o.palette.reference_red : o.palette.document_blue);
    c.metadata = {{"label", short_citation(corpus.documents[id])}, {"title", corpus.documents[id].title}};
    v.elements.push_back(std::move(c));
    v.elements.push_back(Element::make_text(p.x, std::max(12.0, p.y - 10.0), std::to_string(id), 10.0, "middle"));
  }
  return v;
}

ViewSpec worldmap_view(const graph::Graph& countries, const ViewOptions& o) {
  ViewSpec v = blank(o, "Country collaboration");
  // Largest 2:1 map that fits below the title.
  const double avail_w = std::max(1.0, o.width - 20.0);
  const double avail_h = std::max(1.0, o.height - 50.0);
  const double map_w = std::min(avail_w, avail_h * 2.0);
  const Rect map{(o.width - map_w) / 2.0, 40.0 + (avail_h - map_w / 2.0) / 2.0, map_w, map_w / 2.0};
  v.elements.push_back(Element::make_rect(map.x, map.y, map.w, map.h, "#eef4fa"));
  v.elements.push_back(Element::make_path(coastline_path(map), "#d9d9d9", "#bbbbbb", 0.5));

  std::vector<std::optional<Point>> pos(countries.nodes.size());
  double max_docs = 1.0;
  for (std::size_t i = 0; i < countries.nodes.size(); ++i) {
    const auto& attrs = countries.nodes[i].attributes;
    if (attrs.contains("lat") && attrs.contains("lon")) {
      pos[i] = project_lonlat(attrs["lon"].get<double>(), attrs["lat"].get<double>(), map);
    }
    if (attrs.contains("doc_count")) max_docs = std::max(max_docs, attrs["doc_count"].get<double>());
  }
  double max_w = 1.0;
  for (const auto& e : countries.edges) max_w = std::max(max_w, e.weight);
  for (const auto& e : countries.edges) {
    if (!pos[e.source] || !pos[e.target]) continue;
    const Point p = *pos[e.source];
    const Point q = *pos[e.target];
    const double mx = (p.x + q.x) / 2.0;
    const double my = (p.y + q.y) / 2.0;
    const double dist = std::hypot(q.x - p.x, q.y - p.y);
    // Bow the arc upwards, staying inside the map.
    const double cy = std::max(map.y, my - 0.2 * dist);
    char buf[128];
    std::snprintf(buf, sizeof buf, "M%.2f %.2fQ%.2f %.2f %.2f %.2f", p.x, p.y, mx, cy, q.x, q.y);
    Element arc = Element::make_path(buf, "none", "#e6550d", 0.8 + 2.5 * e.weight / max_w);
    arc.opacity = 0.6;
    arc.metadata = {{"label", countries.nodes[e.source].label + " - " + countries.nodes[e.target].label},
                    {"value", value_text(e.weight)}};
    v.elements.push_back(std::move(arc));
  }
  for (std::size_t i = 0; i < countries.nodes.size(); ++i) {
    if (!pos[i]) continue;
    const auto& n = countries.nodes[i];
    const double docs = n.attributes.value("doc_count", 1.0);
    Element c = Element::make_circle(pos[i]->x, pos[i]->y, 2.5 + 12.0 * std::sqrt(docs / max_docs), "#3182bd");
    c.opacity = 0.75;
    c.metadata = {{"label", n.label}, {"value", value_text(docs)}};
    v.elements.push_back(std::move(c));
  }
  return v;
}

ViewSpec projection_view(const vec::Projection2D& projection, const ViewOptions& o) {
  ViewSpec v = blank(o, projection.method == vec::ProjectionMethod::tsvd ? "Document projection (TF-IDF, TSVD)"
                                                                        : "Document projection (external vectors)");
  const Rect a = plot_area(o, 40.0, 30.0);
  axes(v, a);
  if (projection.points.empty()) return v;
  double x0 = projection.points[0].x, x1 = x0, y0 = projection.points[0].y, y1 = y0;
  for (const auto& p : projection.points) {
    x0 = std::min(x0, p.x);
    x1 = std::max(x1, p.x);
    y0 = std::min(y0, p.y);
    y1 = std::max(y1, p.y);
  }
  const double pad = 8.0;
  auto sx = [&](double x) { return x1 > x0 ? a.x + pad + (x - x0) / (x1 - x0) * (a.w - 2 * pad) : a.x + a.w / 2; };
  auto sy = [&](double y) { return y1 > y0 ? a.bottom() - pad - (y - y0) / (y1 - y0) * (a.h - 2 * pad) : a.y + a.h / 2; };
  for (const auto& p : projection.points) {
    Element c = Element::make_circle(sx(p.x), sy(p.y), 4.0, o.palette.color(p.cluster.value_or(0)));
    c.opacity = 0.85;
    c.metadata = {{"label", p.citation}};
    if (p.cluster) c.metadata.emplace_back("cluster", std::to_string(*p.cluster));
    v.elements.push_back(std::move(c));
  }
  return v;
}

}  // namespace bibx::render
