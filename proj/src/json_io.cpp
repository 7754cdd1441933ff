#include "mge/json_io.hpp"

#include "mge/tol.hpp"

#include <fstream>

namespace mge {

namespace {

nlohmann::json structure_to_json(const DiamondStructure& s) {
    nlohmann::json nodes = nlohmann::json::array();
    for (const auto& sd : s.subdiamonds) {
        nodes.push_back({{"bottom", sd.bottom},
                         {"top", sd.top},
                         {"level", sd.level},
                         {"height", sd.height},
                         {"parent", sd.parent},
                         {"children", sd.children},
                         {"vertex_a", sd.vertex_a},
                         {"vertex_b", sd.vertex_b},
                         {"diagonal_edge", sd.diagonal_edge},
                         {"members", sd.members}});
    }
    return {{"level", s.level},
            {"edge_level", s.edge_level},
            {"vertex_birth", s.vertex_birth},
            {"generation", s.generation},
            {"subdiamonds", nodes}};
}

DiamondStructure structure_from_json(const nlohmann::json& j) {
    DiamondStructure s;
    s.level = j.at("level").get<int>();
    s.edge_level = j.at("edge_level").get<std::vector<int>>();
    s.vertex_birth = j.at("vertex_birth").get<std::vector<int>>();
    s.generation = j.at("generation").get<std::vector<int>>();
    for (const auto& nj : j.at("subdiamonds")) {
        Subdiamond sd;
        sd.bottom = nj.at("bottom").get<int>();
        sd.top = nj.at("top").get<int>();
        sd.level = nj.at("level").get<int>();
        sd.height = nj.at("height").get<int>();
        sd.parent = nj.at("parent").get<int>();
        auto ch = nj.at("children").get<std::vector<int>>();
        for (size_t i = 0; i < 4 && i < ch.size(); ++i) sd.children[i] = ch[i];
        sd.vertex_a = nj.at("vertex_a").get<int>();
        sd.vertex_b = nj.at("vertex_b").get<int>();
        sd.diagonal_edge = nj.at("diagonal_edge").get<int>();
        sd.members = nj.at("members").get<std::vector<int>>();
        s.subdiamonds.push_back(std::move(sd));
    }
    return s;
}

nlohmann::json glue_to_json(const GluedSpace& g) {
    nlohmann::json blocks = nlohmann::json::array();
    for (const auto& b : g.blocks)
        blocks.push_back({{"base_point", b.base_point},
                          {"offset", b.offset},
                          {"n_points", b.n_points}});
    return {{"blocks", blocks},
            {"path_lengths", g.path_lengths},
            {"path_vertices", g.path_vertices}};
}

GluedSpace glue_from_json(const nlohmann::json& j, const WeightedGraph& combined) {
    GluedSpace g;
    for (const auto& bj : j.at("blocks")) {
        GluedSpace::Block b;
        b.base_point = bj.at("base_point").get<int>();
        b.offset = bj.at("offset").get<int>();
        b.n_points = bj.at("n_points").get<int>();
        g.blocks.push_back(b);
    }
    g.path_lengths = j.at("path_lengths").get<std::vector<int>>();
    g.path_vertices = j.at("path_vertices").get<std::vector<std::vector<int>>>();
    g.combined = combined;
    return g;
}

}  // namespace

nlohmann::json graph_to_json(const GraphFile& f, bool rational_weights,
                             const std::vector<Rat>* exact_weights) {
    nlohmann::json edges = nlohmann::json::array();
    for (size_t i = 0; i < f.graph.edges.size(); ++i) {
        const auto& e = f.graph.edges[i];
        nlohmann::json w;
        if (rational_weights && exact_weights)
            w = rational_to_string((*exact_weights)[i]);
        else
            w = e.w;
        edges.push_back({e.u, e.v, w});
    }
    nlohmann::json j = {{"n", f.graph.n}, {"edges", edges}};
    if (f.graph.has_labels()) j["labels"] = f.graph.labels;
    if (!f.family.empty()) j["family"] = f.family;
    if (!f.params.empty()) j["params"] = f.params;
    if (f.structure) j["structure"] = structure_to_json(*f.structure);
    if (f.glued) j["glue"] = glue_to_json(*f.glued);
    return j;
}

GraphFile graph_from_json(const nlohmann::json& j) {
    GraphFile f;
    f.graph.n = j.at("n").get<int>();
    for (const auto& ej : j.at("edges")) {
        WeightedGraph::Edge e;
        e.u = ej.at(0).get<int>();
        e.v = ej.at(1).get<int>();
        const auto& w = ej.at(2);
        e.w = w.is_string() ? rational_to_double(parse_rational(w.get<std::string>()))
                            : w.get<double>();
        f.graph.edges.push_back(e);
    }
    if (j.contains("labels")) f.graph.labels = j["labels"].get<std::vector<std::string>>();
    if (j.contains("family")) f.family = j["family"].get<std::string>();
    if (j.contains("params")) f.params = j["params"];
    if (j.contains("structure")) f.structure = structure_from_json(j["structure"]);
    if (j.contains("glue")) f.glued = glue_from_json(j["glue"], f.graph);
    validate(f.graph);
    return f;
}

void save_graph(const GraphFile& f, const std::string& path, bool rational_weights,
                const std::vector<Rat>* exact_weights) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << graph_to_json(f, rational_weights, exact_weights).dump(2) << "\n";
}

GraphFile load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    nlohmann::json j;
    in >> j;
    return graph_from_json(j);
}

std::string graph_to_dot(const WeightedGraph& g) {
    std::string out = "graph G {\n";
    for (int v = 0; v < g.n; ++v) {
        out += "  v" + std::to_string(v);
        if (g.has_labels() && !g.labels[v].empty())
            out += " [label=\"" + g.labels[v] + "\"]";
        out += ";\n";
    }
    char buf[64];
    for (const auto& e : g.edges) {
        std::snprintf(buf, sizeof(buf), "%.17g", e.w);
        out += "  v" + std::to_string(e.u) + " -- v" + std::to_string(e.v) +
               " [label=\"" + buf + "\"];\n";
    }
    return out + "}\n";
}

bool structural_equal(const WeightedGraph& a, const WeightedGraph& b) {
    if (a.n != b.n || a.edges.size() != b.edges.size()) return false;
    for (size_t i = 0; i < a.edges.size(); ++i) {
        if (a.edges[i].u != b.edges[i].u || a.edges[i].v != b.edges[i].v ||
            a.edges[i].w != b.edges[i].w)
            return false;
    }
    return a.labels == b.labels;
}

}  // namespace mge
