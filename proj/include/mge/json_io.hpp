#pragma once

#include "mge/graph.hpp"
#include "mge/metric.hpp"
#include "mge/rational.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>

namespace mge {

// Interchange schema: {"n": int, "edges": [[u, v, w], ...], "labels": [...],
// "structure": {...}, "family": "...", "params": {...}, "glue": {...}}.
// Weights may be numbers or "p/q" strings (rational mode).

struct GraphFile {
    WeightedGraph graph;
    std::optional<DiamondStructure> structure;
    std::string family;  // empty when unknown
    nlohmann::json params = nlohmann::json::object();
    std::optional<GluedSpace> glued;  // present for family == "glue"
};

nlohmann::json graph_to_json(const GraphFile& f, bool rational_weights = false,
                             const std::vector<Rat>* exact_weights = nullptr);
GraphFile graph_from_json(const nlohmann::json& j);

void save_graph(const GraphFile& f, const std::string& path,
                bool rational_weights = false,
                const std::vector<Rat>* exact_weights = nullptr);
GraphFile load_graph(const std::string& path);

std::string graph_to_dot(const WeightedGraph& g);

bool structural_equal(const WeightedGraph& a, const WeightedGraph& b);

}  // namespace mge
