#include "glyphga/serialize.hpp"

#include <cstdio>
#include <cstdlib>

#include "json_detail.hpp"

namespace glyphga {

double quantize_coordinate(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return std::strtod(buf, nullptr);
}

namespace detail {

ordered_json point_to_json(Point p) {
  return ordered_json::array({quantize_coordinate(p.x), quantize_coordinate(p.y)});
}

Point point_from_json(const ordered_json& j, const char* what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw MalformedStore(std::string(what) + " must be an [x, y] number pair");
  return Point{static_cast<float>(j[0].get<double>()),
               static_cast<float>(j[1].get<double>())};
}

ordered_json glyph_to_json_value(const Glyph& g) {
  ordered_json j;
  j["vertices"] = ordered_json::array();
  for (const Point& v : g.vertices) j["vertices"].push_back(point_to_json(v));
  j["edges"] = ordered_json::array();
  for (const Edge& e : g.edges) {
    const int from = vertex_index_near(g, e.start);
    const int to = vertex_index_near(g, e.end);
    if (from < 0 || to < 0)
      throw MalformedStore("edge endpoint does not coincide with any vertex");
    ordered_json je;
    je["from"] = from;
    je["to"] = to;
    je["kind"] = e.kind == EdgeKind::Line ? "line" : "curve";
    je["max_point"] = point_to_json(e.max_point);
    j["edges"].push_back(std::move(je));
  }
  return j;
}

Glyph glyph_from_json_value(const ordered_json& j) {
  if (!j.is_object()) throw MalformedStore("glyph must be an object");
  if (!j.contains("vertices") || !j["vertices"].is_array())
    throw MalformedStore("glyph is missing its vertices array");
  if (!j.contains("edges") || !j["edges"].is_array())
    throw MalformedStore("glyph is missing its edges array");

  Glyph g;
  for (const auto& jv : j["vertices"]) g.vertices.push_back(point_from_json(jv, "vertex"));
  for (const auto& je : j["edges"]) {
    if (!je.is_object()) throw MalformedStore("edge must be an object");
    if (!je.contains("from") || !je.contains("to") || !je["from"].is_number_integer() ||
        !je["to"].is_number_integer())
      throw MalformedStore("edge needs integer from/to vertex indices");
    const int from = je["from"].get<int>();
    const int to = je["to"].get<int>();
    const int n = static_cast<int>(g.vertices.size());
    if (from < 0 || from >= n || to < 0 || to >= n)
      throw MalformedStore("edge vertex index out of range");
    if (!je.contains("kind") || !je["kind"].is_string())
      throw MalformedStore("edge needs a kind string");
    const std::string kind = je["kind"].get<std::string>();
    if (kind != "line" && kind != "curve")
      throw MalformedStore("edge kind must be \"line\" or \"curve\"");
    if (!je.contains("max_point"))
      throw MalformedStore("edge needs a max_point");
    const Point max = point_from_json(je["max_point"], "max_point");
    if (kind == "line") {
      g.edges.push_back(line_edge(g.vertices[from], g.vertices[to]));
    } else {
      g.edges.push_back(curve_edge(g.vertices[from], g.vertices[to], max));
    }
  }
  return g;
}

}  // namespace detail

std::string glyph_to_json(const Glyph& g) {
  return detail::glyph_to_json_value(g).dump(2) + "\n";
}

Glyph glyph_from_json(std::string_view text) {
  detail::ordered_json j;
  try {
    j = detail::ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw MalformedStore(std::string("invalid JSON: ") + e.what());
  }
  return detail::glyph_from_json_value(j);
}

}  // namespace glyphga
