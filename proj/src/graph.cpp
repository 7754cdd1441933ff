#include "mge/graph.hpp"

#include <algorithm>
#include <queue>

namespace mge {

std::vector<std::vector<std::pair<int, int>>> adjacency(const WeightedGraph& g) {
    std::vector<std::vector<std::pair<int, int>>> adj(g.n);
    for (int i = 0; i < static_cast<int>(g.edges.size()); ++i) {
        const auto& e = g.edges[i];
        adj[e.u].emplace_back(e.v, i);
        adj[e.v].emplace_back(e.u, i);
    }
    for (auto& nb : adj) std::sort(nb.begin(), nb.end());
    return adj;
}

void validate(const WeightedGraph& g) {
    if (g.n < 0) throw std::invalid_argument("negative vertex count");
    if (!g.labels.empty() && static_cast<int>(g.labels.size()) != g.n)
        throw std::invalid_argument("label count does not match vertex count");
    for (const auto& e : g.edges) {
        if (e.u < 0 || e.u >= g.n || e.v < 0 || e.v >= g.n)
            throw std::invalid_argument("edge endpoint out of range");
        if (e.u == e.v) throw std::invalid_argument("self-loop");
        if (!(e.w > 0)) throw std::invalid_argument("nonpositive edge weight");
    }
}

bool is_connected(const WeightedGraph& g) {
    return is_connected_subset(g, std::vector<char>(g.n, 1));
}

bool is_connected_subset(const WeightedGraph& g, const std::vector<char>& alive) {
    int start = -1, total = 0;
    for (int v = 0; v < g.n; ++v)
        if (alive[v]) {
            if (start < 0) start = v;
            ++total;
        }
    if (total <= 1) return true;
    auto adj = adjacency(g);
    std::vector<char> seen(g.n, 0);
    std::queue<int> q;
    q.push(start);
    seen[start] = 1;
    int reached = 1;
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (auto [u, ei] : adj[v]) {
            (void)ei;
            if (alive[u] && !seen[u]) {
                seen[u] = 1;
                ++reached;
                q.push(u);
            }
        }
    }
    return reached == total;
}

int find_vertex_by_label(const WeightedGraph& g, const std::string& label) {
    for (int v = 0; v < static_cast<int>(g.labels.size()); ++v)
        if (g.labels[v] == label) return v;
    return -1;
}

}  // namespace mge
