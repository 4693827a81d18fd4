#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bibx/eda.hpp"
#include "bibx/graphs.hpp"
#include "bibx/vectorlab.hpp"

// Figure layouts and a static SVG/HTML writer.
namespace bibx::render {

struct Rect {
  double x = 0.0;
  double y = 0.0;
  double w = 0.0;
  double h = 0.0;

  double area() const { return w * h; }
  double right() const { return x + w; }
  double bottom() const { return y + h; }
  bool intersects(const Rect& o) const {
    return x < o.right() && o.x < right() && y < o.bottom() && o.y < bottom();
  }
};

struct Point {
  double x = 0.0;
  double y = 0.0;
};

enum class Shape { rect, line, path, circle, text, group };

// One drawing primitive. Fields a shape does not use are ignored.
struct Element {
  Shape shape = Shape::rect;
  double x = 0.0, y = 0.0;    // rect corner, line start, circle centre, text anchor
  double w = 0.0, h = 0.0;    // rect size
  double x2 = 0.0, y2 = 0.0;  // line end
  double r = 0.0;             // circle radius
  std::string d;              // path data
  std::string text;
  double font_size = 12.0;
  std::string anchor = "start";  // text-anchor
  std::string fill = "none";
  std::string stroke = "none";
  double stroke_width = 0.0;
  double opacity = 1.0;
  // Hover text: "label: value" first, any other entries as "key: value" lines.
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<Element> children;  // group only

  static Element make_rect(double x, double y, double w, double h, std::string fill);
  static Element make_line(double x1, double y1, double x2, double y2, std::string stroke, double width = 1.0);
  static Element make_circle(double cx, double cy, double r, std::string fill);
  static Element make_path(std::string d, std::string fill, std::string stroke = "none", double width = 0.0);
  static Element make_text(double x, double y, std::string text, double font_size, std::string anchor = "start",
                           std::string fill = "#333333");
  static Element make_group(std::vector<Element> children);
};

struct ViewSpec {
  double width = 800.0;
  double height = 600.0;
  std::string title;
  std::vector<Element> elements;

  // Every coordinate finite and inside [0, width] x [0, height].
  bool in_bounds() const;
};

struct Palette {
  std::vector<std::string> colors;
  std::string document_blue = "#1f77b4";
  std::string reference_red = "#d62728";

  const std::string& color(std::size_t i) const { return colors[i % colors.size()]; }

  static Palette standard();
  // Comma-separated "#rrggbb" list; throws UsageError on a malformed entry.
  static Palette parse(std::string_view list);
};

bool is_hex_color(std::string_view s);

// Text metrics from an embedded per-character width table (em units).
double char_width_em(char32_t cp);
double text_width(std::string_view utf8, double font_size);

// ---------------------------------------------------------------------------
// Layouts

// Squarified treemap of values in the given order (callers pass them
// descending). Cells are returned in input order. Throws UsageError on a
// non-positive value.
std::vector<Rect> layout_treemap(std::span<const double> values, const Rect& rect);

struct PlacedWord {
  std::string text;
  std::size_t count = 0;
  double font_size = 0.0;
  Rect box;  // text baseline sits at box.bottom() - descent
};

struct WordcloudOptions {
  double min_font = 10.0;
  double max_font = 48.0;
  double spiral_step = 0.15;  // radians per probe
  double spiral_pitch = 2.0;  // pixels of radius per radian
  double padding = 1.0;
};

struct WordcloudLayout {
  std::vector<PlacedWord> words;
  std::vector<std::string> dropped;
};

// Words in descending frequency (ties alphabetical) spiral out from the centre
// until their box fits without overlap; the seed rotates the spiral start.
WordcloudLayout layout_wordcloud(std::span<const std::pair<std::string, std::size_t>> frequencies, const Rect& rect,
                                 std::uint64_t seed, const WordcloudOptions& options = {});

struct SankeyNode {
  std::string label;
  int column = 0;  // 0 left, 1 right
  double total = 0.0;
  Rect bar;
};

struct SankeyRibbon {
  std::size_t left = 0;   // index into nodes
  std::size_t right = 0;  // index into nodes
  double weight = 0.0;
  double thickness = 0.0;
  double left_y = 0.0;   // top edge where it leaves the left bar
  double right_y = 0.0;  // top edge where it enters the right bar
  std::string path;
};

struct SankeyLayout {
  std::vector<SankeyNode> nodes;
  std::vector<SankeyRibbon> ribbons;
};

struct SankeyFlow {
  std::string left;
  std::string right;
  double weight = 0.0;
};

SankeyLayout layout_sankey(std::span<const SankeyFlow> flows, const Rect& rect);

struct ForceOptions {
  std::size_t iterations = 300;
  double margin = 20.0;
};

// Fruchterman-Reingold per connected component, each component in its own
// horizontal band. Node order does not matter: the layout is computed on the
// nodes sorted by label.
std::vector<Point> layout_force(const graph::Graph& graph, const Rect& rect, std::uint64_t seed,
                                const ForceOptions& options = {});

// ---------------------------------------------------------------------------
// Output

std::string emit_svg(const ViewSpec& view);
// Static page with one heading and SVG per view.
std::string emit_html(std::span<const ViewSpec> views, std::string_view page_title = "bibx");

// ---------------------------------------------------------------------------
// Figures

struct ViewOptions {
  double width = 800.0;
  double height = 600.0;
  std::uint64_t seed = 42;
  Palette palette = Palette::standard();
};

ViewSpec bar_view(const eda::Series& series, const ViewOptions& options);
ViewSpec evolution_view(std::span<const eda::Series> series, const ViewOptions& options);
ViewSpec treemap_view(const eda::Series& totals, const ViewOptions& options);
ViewSpec wordcloud_view(std::span<const std::pair<std::string, std::size_t>> frequencies, const ViewOptions& options,
                        std::vector<std::string>* dropped = nullptr);
ViewSpec sankey_view(std::span<const eda::Flow> flows, const ViewOptions& options);
ViewSpec productivity_view(const eda::Productivity& productivity, const ViewOptions& options);
ViewSpec network_view(const graph::Graph& graph, std::string_view title, const ViewOptions& options);
ViewSpec history_view(const graph::CitationChain& chain, const Corpus& corpus, const ViewOptions& options);
ViewSpec worldmap_view(const graph::Graph& countries, const ViewOptions& options);
ViewSpec projection_view(const vec::Projection2D& projection, const ViewOptions& options);

// Simplified world coastline as SVG path data in an equirectangular
// projection onto `rect`.
std::string coastline_path(const Rect& rect);
Point project_lonlat(double lon, double lat, const Rect& rect);

}  // namespace bibx::render
