#pragma once

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "markgame/graph.hpp"

namespace markgame {

/**
 * Canonical graph JSON:
 *
 *   {"vertices":[{"id":int,"x":float,"y":float}],
 *    "edges":[[int,int]],
 *    "faces":[{"id":int,"cycle":[int,...],"color":"gray"|"white"|null,"marked_angle":int|null}],
 *    "faces_complete": bool,   // optional, default false
 *    "meta": {...}}            // optional, echoed generator/run config
 *
 * A scheme is present when any face carries a color or a marked angle.
 */
struct GraphDocument {
  std::shared_ptr<const PlanarGraph> graph;
  std::optional<MarkingScheme> scheme;
  nlohmann::json meta = nlohmann::json::object();
};

nlohmann::json graph_to_json(const PlanarGraph& graph, const MarkingScheme* scheme = nullptr,
                             const nlohmann::json& meta = nullptr);

GraphDocument graph_from_json(const nlohmann::json& doc);

GraphDocument read_graph_document(std::istream& in);

/// Graphviz export: edges only, with marked angles listed in vertex labels.
std::string to_dot(const PlanarGraph& graph, const MarkingScheme* scheme = nullptr);

}  // namespace markgame
