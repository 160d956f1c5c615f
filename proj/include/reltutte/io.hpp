#pragma once

#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "reltutte/errors.hpp"
#include "reltutte/graph.hpp"
#include "reltutte/knots.hpp"

namespace reltutte {

namespace detail {

inline nlohmann::json parse_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open graph file: " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error("malformed graph file " + path + ": " + e.what());
  }
}

inline ColoredMultigraph graph_from_json(const nlohmann::json& doc, const std::string& path) {
  try {
    if (!doc.is_object() || !doc.contains("vertices") || !doc.contains("edges"))
      throw Error("expected an object with 'vertices' and 'edges'");
    std::vector<int> vertices = doc.at("vertices").get<std::vector<int>>();
    std::vector<Edge> edges;
    for (const auto& je : doc.at("edges")) {
      Edge e;
      e.id = je.at("id").get<int>();
      const auto& ends = je.at("ends");
      if (!ends.is_array() || ends.size() != 2) throw Error("edge 'ends' must be a pair");
      e.u = ends.at(0).get<int>();
      e.v = ends.at(1).get<int>();
      e.color = je.at("color").get<std::string>();
      if (e.color.empty()) throw Error("edge color must be nonempty");
      e.label = je.value("label", 0);
      if (e.label < 0) throw Error("edge label must be nonnegative");
      edges.push_back(e);
    }
    return ColoredMultigraph(std::move(vertices), std::move(edges));
  } catch (const nlohmann::json::exception& e) {
    throw Error("malformed graph file " + path + ": " + e.what());
  }
}

}  // namespace detail

inline ColoredMultigraph load_graph_file(const std::string& path) {
  return detail::graph_from_json(detail::parse_json_file(path), path);
}

// Face-graph file: the graph format plus a required integer "writhe" field.
inline FaceGraph load_face_graph_file(const std::string& path) {
  nlohmann::json doc = detail::parse_json_file(path);
  FaceGraph fg;
  fg.graph = detail::graph_from_json(doc, path);
  if (!doc.contains("writhe"))
    throw Error("malformed face graph file " + path + ": missing 'writhe'");
  try {
    fg.writhe = doc.at("writhe").get<long long>();
  } catch (const nlohmann::json::exception& e) {
    throw Error("malformed face graph file " + path + ": " + e.what());
  }
  validate_face_colors(fg.graph);
  return fg;
}

}  // namespace reltutte
