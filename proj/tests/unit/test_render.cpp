#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include "bibx/eda.hpp"
#include "bibx/error.hpp"
#include "bibx/graphs.hpp"
#include "bibx/random.hpp"
#include "bibx/render.hpp"
#include "bibx/textkit.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "xml_check.hpp"

using namespace bibx;
using namespace bibx::render;

namespace {

void check_same(const std::vector<Rect>& got, const std::vector<Rect>& want) {
  REQUIRE(got.size() == want.size());
  for (std::size_t i = 0; i < got.size(); ++i) {
    CAPTURE(i);
    CHECK(got[i].x == doctest::Approx(want[i].x).epsilon(1e-9));
    CHECK(got[i].y == doctest::Approx(want[i].y).epsilon(1e-9));
    CHECK(got[i].w == doctest::Approx(want[i].w).epsilon(1e-9));
    CHECK(got[i].h == doctest::Approx(want[i].h).epsilon(1e-9));
  }
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Compares against tests/data/golden/<name>; BIBX_UPDATE_GOLDEN=1 rewrites it.
void check_golden(const std::string& name, const std::string& svg) {
  const std::filesystem::path path = std::filesystem::path(BIBX_TEST_DATA) / "golden" / name;
  if (const char* update = std::getenv("BIBX_UPDATE_GOLDEN"); update && std::string(update) == "1") {
    std::filesystem::create_directories(path.parent_path());
    std::ofstream(path, std::ios::binary) << svg;
  }
  REQUIRE(std::filesystem::exists(path));
  CHECK(read_file(path) == svg);
}

ViewOptions opts() {
  ViewOptions o;
  o.width = 640;
  o.height = 480;
  o.seed = 42;
  return o;
}

}  // namespace

TEST_CASE("treemap of the textbook example") {
  const std::vector<double> values{6, 6, 4, 3, 2, 2, 1};
  const Rect rect{0, 0, 6, 4};
  const auto cells = layout_treemap(values, rect);
  check_same(cells, oracle::squarify(values, rect));
  // First row: the two 6s stacked in a column of width 3.
  CHECK(cells[0].w == doctest::Approx(3.0));
  CHECK(cells[0].h == doctest::Approx(2.0));
  CHECK(cells[1].y == doctest::Approx(2.0));
}

TEST_CASE("treemap matches the oracle and conserves area") {
  Rng rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> values(1 + rng.below(30));
    for (auto& v : values) v = 1.0 + std::floor(rng.uniform() * 100.0);
    std::sort(values.rbegin(), values.rend());
    const Rect rect{10, 20, 100 + rng.uniform() * 700, 100 + rng.uniform() * 500};
    const auto cells = layout_treemap(values, rect);
    CAPTURE(trial);
    check_same(cells, oracle::squarify(values, rect));
    const double total = std::accumulate(values.begin(), values.end(), 0.0);
    double area = 0.0;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      CHECK(cells[i].area() == doctest::Approx(values[i] / total * rect.area()).epsilon(1e-3));
      CHECK(cells[i].x >= rect.x - 1e-9);
      CHECK(cells[i].right() <= rect.right() + 1e-9);
      CHECK(cells[i].bottom() <= rect.bottom() + 1e-9);
      area += cells[i].area();
      for (std::size_t j = 0; j < i; ++j) {
        const Rect a{cells[i].x + 1e-7, cells[i].y + 1e-7, cells[i].w - 2e-7, cells[i].h - 2e-7};
        CHECK_FALSE(a.intersects(cells[j]));
      }
    }
    CHECK(area == doctest::Approx(rect.area()).epsilon(1e-9));
  }
  const std::vector<double> bad{3, 0};
  CHECK_THROWS_AS(layout_treemap(bad, Rect{0, 0, 10, 10}), UsageError);
}

TEST_CASE("wordcloud words never overlap") {
  const auto freqs = text::word_frequencies(fixtures::two_topic_corpus().corpus, text::TextField::abstract_text, 28);
  const Rect rect{0, 0, 640, 480};
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto layout = layout_wordcloud(freqs, rect, seed);
    CHECK(layout.words.size() + layout.dropped.size() == freqs.size());
    for (std::size_t i = 0; i < layout.words.size(); ++i) {
      const Rect& a = layout.words[i].box;
      CHECK(a.x >= 0.0);
      CHECK(a.y >= 0.0);
      CHECK(a.right() <= rect.w);
      CHECK(a.bottom() <= rect.h);
      for (std::size_t j = 0; j < i; ++j) CHECK_FALSE(a.intersects(layout.words[j].box));
    }
  }
  // Larger counts never get smaller fonts.
  const auto layout = layout_wordcloud(freqs, rect, 1);
  for (std::size_t i = 1; i < layout.words.size(); ++i) {
    if (layout.words[i].count < layout.words[i - 1].count) {
      CHECK(layout.words[i].font_size <= layout.words[i - 1].font_size);
    }
  }
}

TEST_CASE("sankey ribbons conserve every bar") {
  const std::vector<SankeyFlow> flows{{"a", "x", 3}, {"a", "y", 1}, {"b", "x", 2}, {"c", "z", 4}, {"b", "z", 1}};
  const Rect rect{0, 0, 400, 300};
  const SankeyLayout s = layout_sankey(flows, rect);
  REQUIRE(s.nodes.size() == 6);
  REQUIRE(s.ribbons.size() == flows.size());
  for (std::size_t n = 0; n < s.nodes.size(); ++n) {
    double thick = 0.0, weight = 0.0;
    for (const auto& r : s.ribbons) {
      if (r.left == n || r.right == n) {
        thick += r.thickness;
        weight += r.weight;
      }
    }
    CHECK(weight == doctest::Approx(s.nodes[n].total));
    CHECK(thick == doctest::Approx(s.nodes[n].bar.h));
    CHECK(s.nodes[n].bar.y >= 0.0);
    CHECK(s.nodes[n].bar.bottom() <= 300.0 + 1e-9);
  }
  const std::vector<SankeyFlow> bad{{"a", "b", 0}};
  CHECK_THROWS_AS(layout_sankey(bad, rect), UsageError);
}

TEST_CASE("force layout settles two linked nodes at the natural length") {
  graph::Graph g;
  g.nodes = {{"a", graph::NodeKind::document, {}}, {"b", graph::NodeKind::document, {}}};
  g.edges = {{0, 1, 1.0, false}};
  const Rect rect{0, 0, 800, 600};
  ForceOptions fo;
  fo.margin = 20;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto p = layout_force(g, rect, seed, fo);
    const double k = std::sqrt(760.0 * 560.0 / 2.0);
    CHECK(std::hypot(p[0].x - p[1].x, p[0].y - p[1].y) == doctest::Approx(k).epsilon(0.02));
  }
}

TEST_CASE("force layout ignores node order") {
  graph::Graph g = graph::coauthorship(fixtures::ego_corpus());
  const auto a = layout_force(g, Rect{0, 0, 500, 400}, 9);
  graph::Graph r;
  const std::size_t n = g.nodes.size();
  for (std::size_t i = 0; i < n; ++i) r.nodes.push_back(g.nodes[n - 1 - i]);
  for (const auto& e : g.edges) r.edges.push_back({n - 1 - e.source, n - 1 - e.target, e.weight, e.directed});
  const auto b = layout_force(r, Rect{0, 0, 500, 400}, 9);
  for (std::size_t i = 0; i < n; ++i) {
    CHECK(a[i].x == doctest::Approx(b[n - 1 - i].x));
    CHECK(a[i].y == doctest::Approx(b[n - 1 - i].y));
  }
}

TEST_CASE("every figure is well-formed SVG inside its canvas") {
  const Corpus c = fixtures::small_corpus();
  const ViewOptions o = opts();
  std::vector<ViewSpec> views;
  views.push_back(bar_view(eda::bar_series(c, eda::SeriesKind::documents_per_year), o));
  views.push_back(bar_view(eda::bar_series(c, eda::SeriesKind::bradford), o));
  const auto evo = eda::evolution(c, eda::ElementKind::author_keywords, {2015, 2021}, 3);
  views.push_back(evolution_view(evo, o));
  views.push_back(treemap_view(eda::treemap_data(c, eda::ElementKind::countries, 10), o));
  const auto freqs = text::word_frequencies(c, text::TextField::abstract_text, 40);
  views.push_back(wordcloud_view(freqs, o));
  const auto flows = eda::sankey_flows(c, eda::ElementKind::countries, eda::ElementKind::author_keywords, 10);
  views.push_back(sankey_view(flows, o));
  views.push_back(productivity_view(eda::productivity(c, 5), o));
  views.push_back(network_view(graph::citation_network(c, 1), "Citation network", o));
  views.push_back(worldmap_view(graph::country_collab(c), o));
  views.push_back(history_view(graph::citation_history(c, 2), c, o));
  for (const auto& v : views) {
    CAPTURE(v.title);
    CHECK(v.in_bounds());
    const auto xml = xmlcheck::parse(emit_svg(v));
    CHECK_MESSAGE(xml.ok, xml.error);
    CHECK(xml.root == "svg");
  }
  const auto page = emit_html(views, "report & <more>");
  CHECK(page.find("report &amp; &lt;more&gt;") != std::string::npos);
}

TEST_CASE("text is escaped in SVG") {
  ViewSpec v;
  v.elements.push_back(Element::make_text(10, 10, "R&D <b> \"q\"", 12));
  const auto xml = xmlcheck::parse(emit_svg(v));
  CHECK(xml.ok);
}

TEST_CASE("palette parsing") {
  const Palette p = Palette::parse("#112233, #aabbcc");
  CHECK(p.colors.size() == 2);
  CHECK(p.color(3) == "#aabbcc");
  CHECK_THROWS_AS(Palette::parse("#12345g"), UsageError);
  CHECK(is_hex_color("#ABCDEF"));
  CHECK_FALSE(is_hex_color("ABCDEF"));
}

TEST_CASE("projection stays on the map") {
  const Rect r{0, 0, 360, 180};
  const Point p = project_lonlat(0, 0, r);
  CHECK(p.x == doctest::Approx(180));
  CHECK(p.y == doctest::Approx(90));
  CHECK(project_lonlat(-180, 90, r).x == doctest::Approx(0));
  CHECK_FALSE(coastline_path(r).empty());
}

TEST_CASE("golden figures") {
  const Corpus c = fixtures::small_corpus();
  const ViewOptions o = opts();
  check_golden("bar_documents_per_year.svg", emit_svg(bar_view(eda::bar_series(c, eda::SeriesKind::documents_per_year), o)));
  check_golden("treemap_countries.svg", emit_svg(treemap_view(eda::treemap_data(c, eda::ElementKind::countries, 10), o)));
  check_golden("network_citations.svg", emit_svg(network_view(graph::citation_network(c, 1), "Citation network", o)));
  const auto freqs = text::word_frequencies(c, text::TextField::abstract_text, 40);
  check_golden("wordcloud_abstract.svg", emit_svg(wordcloud_view(freqs, o)));
}
