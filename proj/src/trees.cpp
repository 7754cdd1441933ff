#include "mge/trees.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace mge {

namespace {

// Canonical bracket string of the subtree rooted at v.
std::string ahu(int v, int parent, const std::vector<std::vector<int>>& adj) {
    std::vector<std::string> kids;
    for (int u : adj[v])
        if (u != parent) kids.push_back(ahu(u, v, adj));
    std::sort(kids.begin(), kids.end());
    std::string out = "(";
    for (const auto& k : kids) out += k;
    return out + ")";
}

std::vector<int> centroids(const std::vector<std::vector<int>>& adj) {
    int n = static_cast<int>(adj.size());
    std::vector<int> size(n, 1), best;
    int best_weight = n + 1;
    // Iterative post-order from vertex 0.
    std::vector<int> order, parent(n, -1), stack{0};
    std::vector<char> seen(n, 0);
    seen[0] = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        order.push_back(v);
        for (int u : adj[v])
            if (!seen[u]) {
                seen[u] = 1;
                parent[u] = v;
                stack.push_back(u);
            }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it)
        if (parent[*it] >= 0) size[parent[*it]] += size[*it];
    for (int v = 0; v < n; ++v) {
        int w = n - size[v];
        for (int u : adj[v])
            if (parent[u] == v) w = std::max(w, size[u]);
        if (w < best_weight) {
            best_weight = w;
            best = {v};
        } else if (w == best_weight) {
            best.push_back(v);
        }
    }
    return best;
}

std::string free_canonical(const std::vector<std::vector<int>>& adj) {
    auto cs = centroids(adj);
    std::vector<std::string> forms;
    for (int c : cs) forms.push_back(ahu(c, -1, adj));
    std::sort(forms.begin(), forms.end());
    std::string out;
    for (const auto& f : forms) out += f;
    return out;
}

}  // namespace

std::vector<WeightedGraph> all_free_trees(int n) {
    if (n < 1) throw std::invalid_argument("tree order must be >= 1");
    std::vector<WeightedGraph> out;
    if (n == 1) {
        WeightedGraph g;
        g.n = 1;
        out.push_back(g);
        return out;
    }
    std::set<std::string> seen;
    // Beyer-Hedetniemi: rooted trees as level sequences, path to star.
    std::vector<int> s(n);
    for (int i = 0; i < n; ++i) s[i] = i + 1;
    while (true) {
        std::vector<std::vector<int>> adj(n);
        std::vector<int> last_at_level(n + 2, -1);
        last_at_level[s[0]] = 0;
        for (int i = 1; i < n; ++i) {
            int p = last_at_level[s[i] - 1];
            adj[p].push_back(i);
            adj[i].push_back(p);
            last_at_level[s[i]] = i;
        }
        std::string key = free_canonical(adj);
        if (seen.insert(key).second) {
            WeightedGraph g;
            g.n = n;
            for (int v = 0; v < n; ++v)
                for (int u : adj[v])
                    if (u > v) g.edges.push_back({v, u, 1.0});
            out.push_back(g);
        }
        // Successor level sequence.
        int p = -1;
        for (int i = n - 1; i >= 0; --i)
            if (s[i] > 2) {
                p = i;
                break;
            }
        if (p < 0) break;
        int q = -1;
        for (int i = p - 1; i >= 0; --i)
            if (s[i] == s[p] - 1) {
                q = i;
                break;
            }
        for (int i = p; i < n; ++i) s[i] = s[i - (p - q)];
    }
    return out;
}

}  // namespace mge
