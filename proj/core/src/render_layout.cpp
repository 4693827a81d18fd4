#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>
#include <tuple>

#include "bibx/error.hpp"
#include "bibx/random.hpp"
#include "bibx/render.hpp"
#include "bibx/strings.hpp"

namespace bibx::render {

namespace {

// Advance widths of printable ASCII (32..126) in thousandths of an em,
// Helvetica-like proportions.
constexpr int kAsciiWidths[95] = {
    278, 278, 355, 556, 556, 889, 667, 191, 333, 333, 389, 584, 278, 333, 278, 278,  // ' '..'/'
    556, 556, 556, 556, 556, 556, 556, 556, 556, 556,                                 // 0-9
    278, 278, 584, 584, 584, 556, 1015,                                               // :..@
    667, 667, 722, 722, 667, 611, 778, 722, 278, 500, 667, 556, 833,                  // A-M
    722, 778, 667, 778, 722, 667, 611, 722, 667, 944, 667, 667, 611,                  // N-Z
    278, 278, 278, 469, 556, 333,                                                     // [..`
    556, 556, 500, 556, 556, 278, 556, 556, 222, 222, 500, 222, 833,                  // a-m
    556, 556, 556, 556, 333, 500, 278, 556, 500, 722, 500, 500, 500,                  // n-z
    334, 260, 334, 584};                                                              // {..~

constexpr double kFallbackWidth = 0.6;
constexpr double kLineHeight = 1.2;  // box height per font size

double worst_ratio(double sum, double max_v, double min_v, double side) {
  if (sum <= 0.0) return std::numeric_limits<double>::infinity();
  const double s2 = sum * sum;
  const double w2 = side * side;
  return std::max(w2 * max_v / s2, s2 / (w2 * min_v));
}

}  // namespace

// ---------------------------------------------------------------------------
// Palette and text metrics

bool is_hex_color(std::string_view s) {
  if (s.size() != 7 || s[0] != '#') return false;
  return std::all_of(s.begin() + 1, s.end(), [](char c) { return std::isxdigit(static_cast<unsigned char>(c)); });
}

Palette Palette::standard() {
  Palette p;
  p.colors = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
              "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
  return p;
}

Palette Palette::parse(std::string_view list) {
  Palette p = standard();
  p.colors.clear();
  for (const std::string& c : str::split_top_level(list, ",")) {
    if (!is_hex_color(c)) throw UsageError("bad palette color '" + c + "' (expected #rrggbb)");
    p.colors.push_back(str::to_lower(c));
  }
  if (p.colors.empty()) throw UsageError("palette needs at least one color");
  return p;
}

double char_width_em(char32_t cp) {
  if (cp >= 32 && cp <= 126) return kAsciiWidths[cp - 32] / 1000.0;
  return kFallbackWidth;
}

double text_width(std::string_view utf8, double font_size) {
  double em = 0.0;
  for (char32_t cp : str::decode_utf8(utf8)) em += char_width_em(cp);
  return em * font_size;
}

// ---------------------------------------------------------------------------
// Treemap

std::vector<Rect> layout_treemap(std::span<const double> values, const Rect& rect) {
  for (double v : values) {
    if (!(v > 0.0) || !std::isfinite(v)) throw UsageError("treemap values must be positive");
  }
  std::vector<Rect> out(values.size());
  if (values.empty()) return out;
  const double total = std::accumulate(values.begin(), values.end(), 0.0);
  const double scale = rect.area() / total;

  Rect free = rect;
  std::size_t start = 0;
  while (start < values.size()) {
    const double side = std::min(free.w, free.h);
    double sum = values[start] * scale;
    double max_v = sum, min_v = sum;
    std::size_t end = start + 1;
    while (end < values.size()) {
      const double v = values[end] * scale;
      const double cur = worst_ratio(sum, max_v, min_v, side);
      const double next = worst_ratio(sum + v, std::max(max_v, v), std::min(min_v, v), side);
      if (next > cur) break;
      sum += v;
      max_v = std::max(max_v, v);
      min_v = std::min(min_v, v);
      ++end;
    }
    const bool last = end == values.size();
    if (free.w >= free.h) {
      // Column on the left edge of the free area.
      const double col_w = last ? free.w : sum / free.h;
      double y = free.y;
      for (std::size_t i = start; i < end; ++i) {
        const double h = (i + 1 == end) ? free.bottom() - y : values[i] * scale / col_w;
        out[i] = {free.x, y, col_w, h};
        y += h;
      }
      free.x += col_w;
      free.w -= col_w;
    } else {
      // Row along the top edge.
      const double row_h = last ? free.h : sum / free.w;
      double x = free.x;
      for (std::size_t i = start; i < end; ++i) {
        const double w = (i + 1 == end) ? free.right() - x : values[i] * scale / row_h;
        out[i] = {x, free.y, w, row_h};
        x += w;
      }
      free.y += row_h;
      free.h -= row_h;
    }
    start = end;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Wordcloud

WordcloudLayout layout_wordcloud(std::span<const std::pair<std::string, std::size_t>> frequencies, const Rect& rect,
                                 std::uint64_t seed, const WordcloudOptions& options) {
  std::vector<std::pair<std::string, std::size_t>> words(frequencies.begin(), frequencies.end());
  std::stable_sort(words.begin(), words.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  WordcloudLayout out;
  if (words.empty()) return out;
  const double fmax = static_cast<double>(words.front().second);
  const double fmin = static_cast<double>(words.back().second);

  Rng rng(seed);
  const double phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
  const double cx = rect.x + rect.w / 2.0;
  const double cy = rect.y + rect.h / 2.0;
  const double max_radius = std::hypot(rect.w, rect.h) / 2.0;

  for (const auto& [text, count] : words) {
    const double t = fmax > fmin ? (static_cast<double>(count) - fmin) / (fmax - fmin) : 1.0;
    const double size = options.min_font + (options.max_font - options.min_font) * t;
    const double w = text_width(text, size);
    const double h = size * kLineHeight;
    bool placed = false;
    for (double theta = 0.0, r = 0.0;; theta += std::min(options.spiral_step, 4.0 / std::max(r, 1.0))) {
      r = options.spiral_pitch * theta;
      if (r > max_radius) break;
      const double px = cx + r * std::cos(theta + phase) - w / 2.0;
      const double py = cy + r * std::sin(theta + phase) - h / 2.0;
      const Rect box{px, py, w, h};
      if (box.x < rect.x || box.y < rect.y || box.right() > rect.right() || box.bottom() > rect.bottom()) continue;
      const Rect padded{px - options.padding, py - options.padding, w + 2 * options.padding,
                        h + 2 * options.padding};
      const bool clash = std::any_of(out.words.begin(), out.words.end(),
                                     [&](const PlacedWord& pw) { return pw.box.intersects(padded); });
      if (clash) continue;
      out.words.push_back({text, count, size, box});
      placed = true;
      break;
    }
    if (!placed) out.dropped.push_back(text);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Sankey

SankeyLayout layout_sankey(std::span<const SankeyFlow> flows, const Rect& rect) {
  SankeyLayout out;
  if (flows.empty()) return out;
  std::map<std::string, double> left_total, right_total;
  double total = 0.0;
  for (const auto& f : flows) {
    if (!(f.weight > 0.0)) throw UsageError("sankey flow weights must be positive");
    left_total[f.left] += f.weight;
    right_total[f.right] += f.weight;
    total += f.weight;
  }
  auto ordered = [](const std::map<std::string, double>& totals) {
    std::vector<std::pair<std::string, double>> v(totals.begin(), totals.end());
    std::stable_sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
    return v;
  };
  const auto lefts = ordered(left_total);
  const auto rights = ordered(right_total);
  const std::size_t most = std::max(lefts.size(), rights.size());
  const double gap = most > 1 ? std::min(8.0, rect.h * 0.2 / static_cast<double>(most - 1)) : 0.0;
  const double scale = (rect.h - gap * static_cast<double>(most - 1)) / total;
  const double bar_w = std::min(14.0, rect.w / 10.0);

  std::map<std::string, std::size_t> left_index, right_index;
  auto place = [&](const std::vector<std::pair<std::string, double>>& column, int side, double x,
                   std::map<std::string, std::size_t>& index) {
    const double used = column.empty() ? 0.0 : total * scale + gap * static_cast<double>(column.size() - 1);
    double y = rect.y + (rect.h - used) / 2.0;
    for (const auto& [label, t] : column) {
      index[label] = out.nodes.size();
      out.nodes.push_back({label, side, t, {x, y, bar_w, t * scale}});
      y += t * scale + gap;
    }
  };
  place(lefts, 0, rect.x, left_index);
  place(rights, 1, rect.right() - bar_w, right_index);

  // Ribbons leave each left bar in right-node order and enter each right bar
  // in left-node order, so neither end crosses itself.
  std::vector<std::size_t> order(flows.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> out_offset(out.nodes.size(), 0.0), in_offset(out.nodes.size(), 0.0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto ka = std::pair{left_index[flows[a].left], right_index[flows[a].right]};
    const auto kb = std::pair{left_index[flows[b].left], right_index[flows[b].right]};
    return ka < kb;
  });
  std::vector<double> left_y(flows.size());
  for (std::size_t i : order) {
    const std::size_t l = left_index[flows[i].left];
    left_y[i] = out.nodes[l].bar.y + out_offset[l];
    out_offset[l] += flows[i].weight * scale;
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto ka = std::pair{right_index[flows[a].right], left_index[flows[a].left]};
    const auto kb = std::pair{right_index[flows[b].right], left_index[flows[b].left]};
    return ka < kb;
  });
  std::vector<double> right_y(flows.size());
  for (std::size_t i : order) {
    const std::size_t r = right_index[flows[i].right];
    right_y[i] = out.nodes[r].bar.y + in_offset[r];
    in_offset[r] += flows[i].weight * scale;
  }

  for (std::size_t i = 0; i < flows.size(); ++i) {
    SankeyRibbon rb;
    rb.left = left_index[flows[i].left];
    rb.right = right_index[flows[i].right];
    rb.weight = flows[i].weight;
    rb.thickness = flows[i].weight * scale;
    rb.left_y = left_y[i];
    rb.right_y = right_y[i];
    const double x0 = out.nodes[rb.left].bar.right();
    const double x1 = out.nodes[rb.right].bar.x;
    const double xm = (x0 + x1) / 2.0;
    char buf[512];
    std::snprintf(buf, sizeof buf, "M%.2f %.2fC%.2f %.2f %.2f %.2f %.2f %.2fL%.2f %.2fC%.2f %.2f %.2f %.2f %.2f %.2fZ",
                  x0, rb.left_y, xm, rb.left_y, xm, rb.right_y, x1, rb.right_y, x1, rb.right_y + rb.thickness, xm,
                  rb.right_y + rb.thickness, xm, rb.left_y + rb.thickness, x0, rb.left_y + rb.thickness);
    rb.path = buf;
    out.ribbons.push_back(std::move(rb));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Force layout

std::vector<Point> layout_force(const graph::Graph& graph, const Rect& rect, std::uint64_t seed,
                                const ForceOptions& options) {
  const std::size_t n = graph.nodes.size();
  std::vector<Point> out(n);
  if (n == 0) return out;

  // Canonical order: by label, then input position.
  std::vector<std::size_t> canon(n);
  std::iota(canon.begin(), canon.end(), 0);
  std::stable_sort(canon.begin(), canon.end(),
                   [&](std::size_t a, std::size_t b) { return graph.nodes[a].label < graph.nodes[b].label; });
  std::vector<std::size_t> pos_of(n);
  for (std::size_t i = 0; i < n; ++i) pos_of[canon[i]] = i;
  graph::Graph g;
  for (std::size_t i : canon) g.nodes.push_back({graph.nodes[i].label, graph.nodes[i].kind, nlohmann::json::object()});
  for (const auto& e : graph.edges) g.edges.push_back({pos_of[e.source], pos_of[e.target], e.weight, e.directed});
  std::sort(g.edges.begin(), g.edges.end(), [](const graph::Edge& a, const graph::Edge& b) {
    return std::tie(a.source, a.target) < std::tie(b.source, b.target);
  });

  const auto comp = g.components();
  const std::size_t n_comp = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
  std::vector<std::vector<std::size_t>> members(n_comp);
  for (std::size_t i = 0; i < n; ++i) members[comp[i]].push_back(i);

  // Band heights grow with sqrt(component size).
  std::vector<double> weight(n_comp);
  for (std::size_t c = 0; c < n_comp; ++c) weight[c] = std::sqrt(static_cast<double>(members[c].size()));
  const double weight_sum = std::accumulate(weight.begin(), weight.end(), 0.0);
  const double margin = std::min(options.margin, std::min(rect.w, rect.h) / 4.0);
  const Rect inner{rect.x + margin, rect.y + margin, rect.w - 2 * margin, rect.h - 2 * margin};

  std::vector<Point> pos(n);
  Rng rng(seed);
  double band_y = inner.y;
  for (std::size_t c = 0; c < n_comp; ++c) {
    const double band_h = inner.h * weight[c] / weight_sum;
    const Rect band{inner.x, band_y, inner.w, band_h};
    band_y += band_h;
    const auto& nodes = members[c];
    if (nodes.size() == 1) {
      pos[nodes[0]] = {band.x + band.w / 2.0, band.y + band.h / 2.0};
      continue;
    }
    std::vector<std::size_t> local(n, 0);
    for (std::size_t i = 0; i < nodes.size(); ++i) local[nodes[i]] = i;
    std::vector<Point> p(nodes.size());
    for (auto& pt : p) pt = {rng.uniform(band.x, band.right()), rng.uniform(band.y, band.bottom())};
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (const auto& e : g.edges) {
      if (comp[e.source] == c) edges.emplace_back(local[e.source], local[e.target]);
    }
    const double k = std::sqrt(band.area() / static_cast<double>(nodes.size()));
    const double t0 = std::max(band.w, band.h) / 10.0;
    std::vector<Point> disp(nodes.size());
    for (std::size_t it = 0; it < options.iterations; ++it) {
      std::fill(disp.begin(), disp.end(), Point{});
      for (std::size_t i = 0; i < p.size(); ++i) {
        for (std::size_t j = i + 1; j < p.size(); ++j) {
          double dx = p[i].x - p[j].x;
          double dy = p[i].y - p[j].y;
          double d = std::hypot(dx, dy);
          if (d < 1e-9) {
            // Coincident nodes: push apart along a fixed direction.
            dx = 1e-3 * static_cast<double>(j - i);
            dy = 0.0;
            d = std::abs(dx);
          }
          const double f = k * k / d;
          disp[i].x += dx / d * f;
          disp[i].y += dy / d * f;
          disp[j].x -= dx / d * f;
          disp[j].y -= dy / d * f;
        }
      }
      for (const auto& [a, b] : edges) {
        const double dx = p[a].x - p[b].x;
        const double dy = p[a].y - p[b].y;
        const double d = std::hypot(dx, dy);
        if (d < 1e-9) continue;
        const double f = d * d / k;
        disp[a].x -= dx / d * f;
        disp[a].y -= dy / d * f;
        disp[b].x += dx / d * f;
        disp[b].y += dy / d * f;
      }
      const double t = t0 * (1.0 - static_cast<double>(it) / static_cast<double>(options.iterations));
      for (std::size_t i = 0; i < p.size(); ++i) {
        const double len = std::hypot(disp[i].x, disp[i].y);
        if (len > 0.0) {
          const double step = std::min(len, t);
          p[i].x += disp[i].x / len * step;
          p[i].y += disp[i].y / len * step;
        }
        p[i].x = std::clamp(p[i].x, band.x, band.right());
        p[i].y = std::clamp(p[i].y, band.y, band.bottom());
      }
    }
    for (std::size_t i = 0; i < nodes.size(); ++i) pos[nodes[i]] = p[i];
  }
  for (std::size_t i = 0; i < n; ++i) out[canon[i]] = pos[i];
  return out;
}

}  // namespace bibx::render
