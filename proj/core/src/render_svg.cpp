#include <cmath>
#include <cstdio>

#include "bibx/render.hpp"

namespace bibx::render {

namespace {

std::string num(double v) {
  if (!std::isfinite(v)) v = 0.0;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  std::string s = buf;
  while (s.back() == '0') s.pop_back();
  if (s.back() == '.') s.pop_back();
  if (s == "-0") s = "0";
  return s;
}

std::string escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default:
        // Control characters are not allowed in XML 1.0.
        if (static_cast<unsigned char>(c) < 0x20 && c != '\n' && c != '\t' && c != '\r') {
          out += ' ';
        } else {
          out += c;
        }
    }
  }
  return out;
}

std::string title_text(const std::vector<std::pair<std::string, std::string>>& meta) {
  const std::string* label = nullptr;
  const std::string* value = nullptr;
  for (const auto& [k, v] : meta) {
    if (k == "label") label = &v;
    if (k == "value") value = &v;
  }
  std::string out;
  if (label != nullptr) out = *label;
  if (value != nullptr) out += (out.empty() ? "" : ": ") + *value;
  for (const auto& [k, v] : meta) {
    if (k == "label" || k == "value") continue;
    if (!out.empty()) out += "\n";
    out += k + ": " + v;
  }
  return out;
}

std::string paint(const Element& e) {
  std::string out = " fill=\"" + escape(e.fill) + "\"";
  if (e.stroke != "none") out += " stroke=\"" + escape(e.stroke) + "\" stroke-width=\"" + num(e.stroke_width) + "\"";
  if (e.opacity < 1.0) out += " opacity=\"" + num(e.opacity) + "\"";
  return out;
}

void emit(const Element& e, std::string& out, int depth) {
  const std::string indent(static_cast<std::size_t>(depth) * 2, ' ');
  std::string open;
  std::string tag;
  switch (e.shape) {
    case Shape::rect:
      tag = "rect";
      open = "<rect x=\"" + num(e.x) + "\" y=\"" + num(e.y) + "\" width=\"" + num(e.w) + "\" height=\"" + num(e.h) +
             "\"" + paint(e);
      break;
    case Shape::line:
      tag = "line";
      open = "<line x1=\"" + num(e.x) + "\" y1=\"" + num(e.y) + "\" x2=\"" + num(e.x2) + "\" y2=\"" + num(e.y2) +
             "\" stroke=\"" + escape(e.stroke) + "\" stroke-width=\"" + num(e.stroke_width) + "\"";
      if (e.opacity < 1.0) open += " opacity=\"" + num(e.opacity) + "\"";
      break;
    case Shape::path:
      tag = "path";
      open = "<path d=\"" + escape(e.d) + "\"" + paint(e);
      break;
    case Shape::circle:
      tag = "circle";
      open = "<circle cx=\"" + num(e.x) + "\" cy=\"" + num(e.y) + "\" r=\"" + num(e.r) + "\"" + paint(e);
      break;
    case Shape::text:
      tag = "text";
      open = "<text x=\"" + num(e.x) + "\" y=\"" + num(e.y) + "\" font-size=\"" + num(e.font_size) + "\"";
      if (e.anchor != "start") open += " text-anchor=\"" + escape(e.anchor) + "\"";
      open += paint(e);
      break;
    case Shape::group:
      tag = "g";
      open = "<g";
      break;
  }
  const std::string title = title_text(e.metadata);
  const bool has_body = !title.empty() || e.shape == Shape::text || !e.children.empty();
  if (!has_body) {
    out += indent + open + "/>\n";
    return;
  }
  out += indent + open + ">";
  if (e.shape == Shape::text) {
    if (!title.empty()) out += "<title>" + escape(title) + "</title>";
    out += escape(e.text) + "</text>\n";
    return;
  }
  out += "\n";
  if (!title.empty()) out += indent + "  <title>" + escape(title) + "</title>\n";
  for (const Element& child : e.children) emit(child, out, depth + 1);
  out += indent + "</" + tag + ">\n";
}

bool element_in_bounds(const Element& e, double w, double h) {
  auto ok = [&](double x, double y) {
    return std::isfinite(x) && std::isfinite(y) && x >= -1e-6 && y >= -1e-6 && x <= w + 1e-6 && y <= h + 1e-6;
  };
  switch (e.shape) {
    case Shape::rect: return ok(e.x, e.y) && ok(e.x + e.w, e.y + e.h);
    case Shape::line: return ok(e.x, e.y) && ok(e.x2, e.y2);
    case Shape::circle: return ok(e.x, e.y) && std::isfinite(e.r) && e.r >= 0.0;
    case Shape::text: return ok(e.x, e.y);
    case Shape::path: return true;
    case Shape::group:
      for (const Element& c : e.children) {
        if (!element_in_bounds(c, w, h)) return false;
      }
      return true;
  }
  return true;
}

}  // namespace

Element Element::make_rect(double x, double y, double w, double h, std::string fill) {
  Element e;
  e.shape = Shape::rect;
  e.x = x;
  e.y = y;
  e.w = w;
  e.h = h;
  e.fill = std::move(fill);
  return e;
}

Element Element::make_line(double x1, double y1, double x2, double y2, std::string stroke, double width) {
  Element e;
  e.shape = Shape::line;
  e.x = x1;
  e.y = y1;
  e.x2 = x2;
  e.y2 = y2;
  e.stroke = std::move(stroke);
  e.stroke_width = width;
  return e;
}

Element Element::make_circle(double cx, double cy, double r, std::string fill) {
  Element e;
  e.shape = Shape::circle;
  e.x = cx;
  e.y = cy;
  e.r = r;
  e.fill = std::move(fill);
  return e;
}

Element Element::make_path(std::string d, std::string fill, std::string stroke, double width) {
  Element e;
  e.shape = Shape::path;
  e.d = std::move(d);
  e.fill = std::move(fill);
  e.stroke = std::move(stroke);
  e.stroke_width = width;
  return e;
}

Element Element::make_text(double x, double y, std::string text, double font_size, std::string anchor,
                           std::string fill) {
  Element e;
  e.shape = Shape::text;
  e.x = x;
  e.y = y;
  e.text = std::move(text);
  e.font_size = font_size;
  e.anchor = std::move(anchor);
  e.fill = std::move(fill);
  return e;
}

Element Element::make_group(std::vector<Element> children) {
  Element e;
  e.shape = Shape::group;
  e.children = std::move(children);
  return e;
}

bool ViewSpec::in_bounds() const {
  for (const Element& e : elements) {
    if (!element_in_bounds(e, width, height)) return false;
  }
  return true;
}

std::string emit_svg(const ViewSpec& view) {
  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + num(view.width) +
                    "\" height=\"" + num(view.height) + "\" viewBox=\"0 0 " + num(view.width) + " " +
                    num(view.height) + "\" font-family=\"Helvetica, Arial, sans-serif\">\n";
  if (!view.title.empty()) out += "  <title>" + escape(view.title) + "</title>\n";
  for (const Element& e : view.elements) emit(e, out, 1);
  out += "</svg>\n";
  return out;
}

std::string emit_html(std::span<const ViewSpec> views, std::string_view page_title) {
  std::string out = "<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\"/>\n<title>" +
                    escape(page_title) +
                    "</title>\n<style>body{font-family:Helvetica,Arial,sans-serif;margin:2em;}"
                    "figure{margin:0 0 2em 0;}</style>\n</head>\n<body>\n<h1>" +
                    escape(page_title) + "</h1>\n";
  for (const ViewSpec& v : views) {
    out += "<figure>\n<h2>" + escape(v.title) + "</h2>\n" + emit_svg(v) + "</figure>\n";
  }
  out += "</body>\n</html>\n";
  return out;
}

}  // namespace bibx::render
