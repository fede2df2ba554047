#include "glyphga/svg.hpp"

#include <cmath>
#include <cstdio>

namespace glyphga {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

}  // namespace

std::string glyph_to_svg(const Glyph& g, const Params& p) {
  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " +
         std::to_string(p.canvas_width) + " " + std::to_string(p.canvas_height) +
         "\" width=\"" + std::to_string(p.canvas_width * 4) + "\" height=\"" +
         std::to_string(p.canvas_height * 4) + "\">\n";
  svg += "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  for (const Edge& e : g.edges) {
    if (e.kind == EdgeKind::Line) {
      svg += "  <line x1=\"" + num(e.start.x) + "\" y1=\"" + num(e.start.y) +
             "\" x2=\"" + num(e.end.x) + "\" y2=\"" + num(e.end.y) +
             "\" stroke=\"black\" stroke-width=\"1\" fill=\"none\"/>\n";
    } else if (squared_distance(e.start, e.end) < 0.25) {
      const double cx = (e.start.x + e.max_point.x) / 2.0;
      const double cy = (e.start.y + e.max_point.y) / 2.0;
      const double r = std::sqrt(squared_distance(e.start, e.max_point)) / 2.0;
      svg += "  <circle cx=\"" + num(cx) + "\" cy=\"" + num(cy) + "\" r=\"" + num(r) +
             "\" stroke=\"black\" stroke-width=\"1\" fill=\"none\"/>\n";
    } else {
      // Control point placing the quadratic through max_point at t = 1/2.
      const double qx = 2.0 * e.max_point.x - (e.start.x + e.end.x) / 2.0;
      const double qy = 2.0 * e.max_point.y - (e.start.y + e.end.y) / 2.0;
      svg += "  <path d=\"M " + num(e.start.x) + " " + num(e.start.y) + " Q " + num(qx) +
             " " + num(qy) + " " + num(e.end.x) + " " + num(e.end.y) +
             "\" stroke=\"black\" stroke-width=\"1\" fill=\"none\"/>\n";
    }
  }
  for (const Point& v : g.vertices) {
    svg += "  <circle cx=\"" + num(v.x) + "\" cy=\"" + num(v.y) +
           "\" r=\"1.5\" fill=\"crimson\"/>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace glyphga
