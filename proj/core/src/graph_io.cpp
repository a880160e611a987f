#include "markgame/graph_io.hpp"

#include <istream>
#include <map>
#include <sstream>

namespace markgame {

using nlohmann::json;

json graph_to_json(const PlanarGraph& graph, const MarkingScheme* scheme, const json& meta) {
  json doc;
  json vertices = json::array();
  for (const Vertex& v : graph.vertices()) vertices.push_back({{"id", v.id}, {"x", v.x}, {"y", v.y}});
  json edges = json::array();
  for (const Edge& e : graph.edges()) edges.push_back({graph.vertex(e.u).id, graph.vertex(e.v).id});
  json faces = json::array();
  for (std::size_t f = 0; f < graph.face_count(); ++f) {
    const Face& face = graph.face(f);
    json cycle = json::array();
    for (VertexIndex v : face.cycle) cycle.push_back(graph.vertex(v).id);
    json entry = {{"id", face.id}, {"cycle", cycle}, {"color", nullptr}, {"marked_angle", nullptr}};
    if (scheme) {
      if (scheme->color.at(f)) entry["color"] = std::string(to_string(*scheme->color[f]));
      if (scheme->marked_angle.at(f)) entry["marked_angle"] = graph.vertex(*scheme->marked_angle[f]).id;
    }
    faces.push_back(std::move(entry));
  }
  doc["vertices"] = std::move(vertices);
  doc["edges"] = std::move(edges);
  doc["faces"] = std::move(faces);
  doc["faces_complete"] = graph.faces_complete();
  if (!meta.is_null()) doc["meta"] = meta;
  return doc;
}

GraphDocument graph_from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("vertices")) throw GraphError("graph JSON must be an object with \"vertices\"");
  GraphSpec spec;
  try {
    for (const auto& v : doc.at("vertices"))
      spec.vertices.push_back({v.at("id").get<int>(), v.value("x", 0.0), v.value("y", 0.0)});
    if (doc.contains("edges"))
      for (const auto& e : doc.at("edges")) {
        if (!e.is_array() || e.size() != 2) throw GraphError("edges must be [int,int] pairs");
        spec.edges.emplace_back(e[0].get<int>(), e[1].get<int>());
      }
    if (doc.contains("faces"))
      for (const auto& f : doc.at("faces"))
        spec.faces.push_back({f.at("id").get<int>(), f.at("cycle").get<std::vector<int>>()});
    spec.faces_complete = doc.value("faces_complete", false);
  } catch (const json::exception& e) {
    throw GraphError(std::string("malformed graph JSON: ") + e.what());
  }

  GraphDocument out;
  auto graph = std::make_shared<PlanarGraph>(PlanarGraph::build(spec));
  MarkingScheme scheme = MarkingScheme::empty_for(*graph);
  bool any = false;
  if (doc.contains("faces")) {
    for (const auto& f : doc.at("faces")) {
      const FaceIndex fi = *graph->find_face(f.at("id").get<int>());
      if (f.contains("color") && !f.at("color").is_null()) {
        const auto c = f.at("color").get<std::string>();
        if (c == "gray" || c == "grey") scheme.color[fi] = FaceColor::Gray;
        else if (c == "white") scheme.color[fi] = FaceColor::White;
        else throw GraphError("unknown face color \"" + c + "\"");
        any = true;
      }
      if (f.contains("marked_angle") && !f.at("marked_angle").is_null()) {
        const auto v = graph->find_vertex(f.at("marked_angle").get<int>());
        if (!v) throw GraphError("marked_angle refers to an unknown vertex");
        scheme.marked_angle[fi] = *v;
        any = true;
      }
    }
  }
  if (any) out.scheme = std::move(scheme);
  if (doc.contains("meta")) out.meta = doc.at("meta");
  out.graph = std::move(graph);
  return out;
}

GraphDocument read_graph_document(std::istream& in) {
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw GraphError(std::string("cannot parse graph JSON: ") + e.what());
  }
  return graph_from_json(doc);
}

std::string to_dot(const PlanarGraph& graph, const MarkingScheme* scheme) {
  std::map<VertexIndex, std::vector<int>> marked_at;
  if (scheme)
    for (std::size_t f = 0; f < graph.face_count(); ++f)
      if (scheme->marked_angle.at(f)) marked_at[*scheme->marked_angle[f]].push_back(graph.face(f).id);

  std::ostringstream out;
  out << "graph markgame {\n  node [shape=circle, fontsize=10];\n";
  for (std::size_t v = 0; v < graph.vertex_count(); ++v) {
    const Vertex& vx = graph.vertex(v);
    out << "  v" << vx.id << " [label=\"" << vx.id;
    if (auto it = marked_at.find(static_cast<VertexIndex>(v)); it != marked_at.end()) {
      out << "\\nangles:";
      for (std::size_t i = 0; i < it->second.size(); ++i) out << (i ? "," : " f") << (i ? "f" : "") << it->second[i];
    }
    out << "\", pos=\"" << vx.x << "," << vx.y << "!\"];\n";
  }
  for (const Edge& e : graph.edges()) out << "  v" << graph.vertex(e.u).id << " -- v" << graph.vertex(e.v).id << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace markgame
