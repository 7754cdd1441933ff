#include "mge/families.hpp"

#include "mge/tol.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <random>

namespace mge {

WeightedGraph build_binary_tree(int depth) {
    if (depth < 0) throw std::invalid_argument("depth must be >= 0");
    WeightedGraph g;
    g.n = 0;
    std::map<std::string, int> index;
    // Breadth-first over sequences so a vertex's parent always exists.
    std::vector<std::string> frontier{""};
    index[""] = g.n++;
    g.labels.push_back("");
    for (int d = 1; d <= depth; ++d) {
        std::vector<std::string> next;
        for (const auto& s : frontier) {
            for (char c : {'0', '1'}) {
                std::string t = s + c;
                index[t] = g.n++;
                g.labels.push_back(t);
                g.edges.push_back({index[s], index[t], 1.0});
                next.push_back(t);
            }
        }
        frontier = std::move(next);
    }
    return g;
}

namespace {

struct Lineage {
    int n_vertices = 2;
    std::vector<int> edge_u, edge_v, edge_lvl;  // master edges, creation order
    std::vector<int> vertex_birth{0, 0};
    std::vector<Subdiamond> nodes;  // node i <-> master edge i
    std::vector<std::string> vlabels{"bottom", "top"};
};

Lineage grow_diamond(int level) {
    Lineage L;
    L.edge_u = {0};
    L.edge_v = {1};
    L.edge_lvl = {0};
    Subdiamond root;
    root.bottom = 0;
    root.top = 1;
    root.level = 0;
    root.height = 1 << level;
    L.nodes.push_back(root);
    std::vector<std::string> paths{"e"};
    std::vector<int> frontier{0};
    for (int k = 1; k <= level; ++k) {
        std::vector<int> next;
        int h = 1 << (level - k);
        for (int id : frontier) {
            int b = L.nodes[id].bottom, t = L.nodes[id].top;
            int va = L.n_vertices++;
            int vb = L.n_vertices++;
            L.vertex_birth.push_back(k);
            L.vertex_birth.push_back(k);
            L.vlabels.push_back(paths[id] + ".a");
            L.vlabels.push_back(paths[id] + ".b");
            L.nodes[id].vertex_a = va;
            L.nodes[id].vertex_b = vb;
            const std::array<std::pair<int, int>, 4> quads{
                {{b, va}, {va, t}, {b, vb}, {vb, t}}};
            for (int j = 0; j < 4; ++j) {
                int nid = static_cast<int>(L.nodes.size());
                L.edge_u.push_back(quads[j].first);
                L.edge_v.push_back(quads[j].second);
                L.edge_lvl.push_back(k);
                Subdiamond sd;
                sd.bottom = quads[j].first;
                sd.top = quads[j].second;
                sd.level = k;
                sd.height = h;
                sd.parent = id;
                L.nodes[id].children[j] = nid;
                L.nodes.push_back(sd);
                paths.push_back(paths[id] + "." + std::to_string(j));
                next.push_back(nid);
            }
        }
        frontier = std::move(next);
    }
    // Member sets bottom-up (children were created after their parents).
    for (int i = static_cast<int>(L.nodes.size()) - 1; i >= 0; --i) {
        auto& nd = L.nodes[i];
        if (nd.is_leaf()) {
            nd.members = {nd.bottom, nd.top};
        } else {
            for (int c : nd.children) {
                const auto& cm = L.nodes[c].members;
                nd.members.insert(nd.members.end(), cm.begin(), cm.end());
            }
        }
        std::sort(nd.members.begin(), nd.members.end());
        nd.members.erase(std::unique(nd.members.begin(), nd.members.end()),
                         nd.members.end());
    }
    return L;
}

DiamondStructure make_structure(const Lineage& L, int level,
                                const std::vector<int>& edge_level) {
    DiamondStructure s;
    s.level = level;
    s.edge_level = edge_level;
    s.vertex_birth = L.vertex_birth;
    s.subdiamonds = L.nodes;
    s.generation.assign(L.n_vertices, 0);
    for (int v = 0; v < L.n_vertices; ++v)
        if (L.vertex_birth[v] >= 1) s.generation[v] = level - L.vertex_birth[v] + 1;
    return s;
}

}  // namespace

DiamondBuild build_diamond(int level) {
    if (level < 0) throw std::invalid_argument("level must be >= 0");
    Lineage L = grow_diamond(level);
    DiamondBuild out;
    out.graph.n = L.n_vertices;
    out.graph.labels = L.vlabels;
    std::vector<int> edge_level;
    std::vector<int> master_to_graph(L.edge_u.size(), -1);
    for (size_t i = 0; i < L.edge_u.size(); ++i) {
        if (L.edge_lvl[i] == level) {
            master_to_graph[i] = static_cast<int>(out.graph.edges.size());
            out.graph.edges.push_back({L.edge_u[i], L.edge_v[i], 1.0});
            edge_level.push_back(L.edge_lvl[i]);
        }
    }
    out.structure = make_structure(L, level, edge_level);
    for (size_t i = 0; i < L.nodes.size(); ++i)
        out.structure.subdiamonds[i].diagonal_edge = master_to_graph[i];
    return out;
}

DiamondBuild build_weighted_diamond(int level, double eps) {
    if (level < 0) throw std::invalid_argument("level must be >= 0");
    if (!(eps > 0 && eps < 0.5))
        throw std::invalid_argument("eps must lie in (0, 1/2)");
    Lineage L = grow_diamond(level);
    DiamondBuild out;
    out.graph.n = L.n_vertices;
    out.graph.labels = L.vlabels;
    std::vector<int> edge_level;
    for (size_t i = 0; i < L.edge_u.size(); ++i) {
        out.graph.edges.push_back(
            {L.edge_u[i], L.edge_v[i], std::pow(0.5 + eps, L.edge_lvl[i])});
        edge_level.push_back(L.edge_lvl[i]);
    }
    out.structure = make_structure(L, level, edge_level);
    // All edges are retained, so node i's diagonal is edge i itself.
    for (size_t i = 0; i < L.nodes.size(); ++i)
        out.structure.subdiamonds[i].diagonal_edge = static_cast<int>(i);
    return out;
}

std::vector<Rat> weighted_diamond_exact_weights(const DiamondStructure& s,
                                                const Rat& eps) {
    if (!(eps > 0 && eps < Rat(1, 2)))
        throw std::invalid_argument("eps must lie in (0, 1/2)");
    Rat base = Rat(1, 2) + eps;
    std::vector<Rat> out;
    out.reserve(s.edge_level.size());
    for (int lvl : s.edge_level) out.push_back(rat_pow(base, lvl));
    return out;
}

WeightedGraph build_cycle(int n) {
    if (n < 3) throw std::invalid_argument("cycle needs n >= 3");
    WeightedGraph g;
    g.n = n;
    for (int i = 0; i < n; ++i) g.edges.push_back({i, (i + 1) % n, 1.0});
    return g;
}

WeightedGraph build_path(int n) {
    if (n < 1) throw std::invalid_argument("path needs n >= 1 edges");
    WeightedGraph g;
    g.n = n + 1;
    for (int i = 0; i < n; ++i) g.edges.push_back({i, i + 1, 1.0});
    return g;
}

namespace {

// Unbiased uniform draw in [0, n) from raw mt19937 words, by rejection.
std::uint32_t uniform_below(std::mt19937& rng, std::uint32_t n) {
    const std::uint32_t limit = std::numeric_limits<std::uint32_t>::max() -
                                std::numeric_limits<std::uint32_t>::max() % n;
    std::uint32_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % n;
}

}  // namespace

WeightedGraph generate_series_parallel(int steps, std::uint64_t seed,
                                       const SeriesParallelOptions& opts) {
    if (steps < 0) throw std::invalid_argument("steps must be >= 0");
    std::mt19937 rng(static_cast<std::uint32_t>(seed));
    WeightedGraph g;
    g.n = 2;
    g.edges.push_back({0, 1, 1.0});
    for (int s = 0; s < steps; ++s) {
        auto e = g.edges[uniform_below(rng, static_cast<std::uint32_t>(g.edges.size()))];
        int v = g.n++;
        g.edges.push_back({e.u, v, 1.0});
        g.edges.push_back({e.v, v, 1.0});
    }
    auto apply_mask = [&](const std::vector<char>& remove) {
        WeightedGraph h;
        h.n = g.n;
        for (size_t i = 0; i < g.edges.size(); ++i)
            if (!remove[i]) h.edges.push_back(g.edges[i]);
        return h;
    };
    if (opts.removal_mask) {
        std::vector<char> remove(g.edges.size(), 0);
        for (int i : *opts.removal_mask) {
            if (i < 0 || i >= static_cast<int>(g.edges.size()))
                throw std::invalid_argument("removal mask index out of range");
            remove[i] = 1;
        }
        WeightedGraph h = apply_mask(remove);
        if (!is_connected(h))
            throw std::runtime_error("removal mask disconnects the graph");
        return h;
    }
    if (opts.removal_prob == 0.0) return g;
    if (!(opts.removal_prob >= 0 && opts.removal_prob < 1))
        throw std::invalid_argument("removal probability must lie in [0, 1)");
    const std::uint32_t scale = 1u << 30;
    const auto threshold =
        static_cast<std::uint32_t>(opts.removal_prob * static_cast<double>(scale));
    for (int attempt = 0; attempt < opts.retries; ++attempt) {
        std::vector<char> remove(g.edges.size(), 0);
        for (size_t i = 0; i < g.edges.size(); ++i)
            remove[i] = uniform_below(rng, scale) < threshold;
        WeightedGraph h = apply_mask(remove);
        if (is_connected(h)) return h;
    }
    throw std::runtime_error("edge removal kept disconnecting the graph; retry budget exhausted");
}

bool is_series_parallel(const WeightedGraph& g) {
    validate(g);
    if (!is_connected(g)) return false;
    // Multigraph copy: adjacency with multiplicities.
    std::vector<std::map<int, int>> adj(g.n);
    for (const auto& e : g.edges) {
        adj[e.u][e.v]++;
        adj[e.v][e.u]++;
    }
    std::vector<char> alive(g.n, g.n > 0);
    auto degree = [&](int v) {
        int d = 0;
        for (auto [u, mult] : adj[v]) d += mult;
        return d;
    };
    bool changed = true;
    while (changed) {
        changed = false;
        for (int v = 0; v < g.n; ++v) {
            if (!alive[v]) continue;
            // Merge parallel edges.
            for (auto& [u, mult] : adj[v]) {
                if (mult > 1) {
                    adj[u][v] = 1;
                    mult = 1;
                    changed = true;
                }
            }
            int d = degree(v);
            if (d == 1) {
                int u = adj[v].begin()->first;
                adj[u].erase(v);
                adj[v].clear();
                alive[v] = 0;
                changed = true;
            } else if (d == 2) {
                auto it = adj[v].begin();
                int p = it->first;
                int q = (it->second == 2) ? p : std::next(it)->first;
                adj[p].erase(v);
                if (q != p) adj[q].erase(v);
                adj[v].clear();
                alive[v] = 0;
                changed = true;
                if (p != q) adj[p][q]++, adj[q][p]++;
                // p == q would create a loop; it is simply dropped.
            }
        }
    }
    int vertices = 0, stubs = 0;
    for (int v = 0; v < g.n; ++v) {
        if (!alive[v]) continue;
        ++vertices;
        stubs += degree(v);
    }
    return (vertices <= 1 && stubs == 0) || (vertices == 2 && stubs == 2);
}

GluedSpace glue(const std::vector<std::pair<MetricSpace, int>>& blocks,
                const std::vector<int>& path_lengths) {
    if (blocks.empty()) throw std::invalid_argument("glue needs at least one block");
    if (path_lengths.size() + 1 != blocks.size())
        throw std::invalid_argument("need exactly one path length per adjacent block pair");
    for (size_t i = 0; i < path_lengths.size(); ++i) {
        if (path_lengths[i] < 1)
            throw std::invalid_argument("path lengths must be positive integers");
        double need = std::max(diameter(blocks[i].first),
                               diameter(blocks[i + 1].first));
        if (path_lengths[i] < need && !approx_eq(path_lengths[i], need))
            throw std::invalid_argument(
                "path length below max of adjacent block diameters");
    }
    GluedSpace out;
    out.path_lengths = path_lengths;
    WeightedGraph& g = out.combined;
    for (size_t bi = 0; bi < blocks.size(); ++bi) {
        const MetricSpace& m = blocks[bi].first;
        int base = blocks[bi].second;
        if (base < 0 || base >= m.n)
            throw std::invalid_argument("base point out of range");
        GluedSpace::Block blk;
        blk.base_point = base;
        blk.offset = g.n;
        blk.n_points = m.n;
        out.blocks.push_back(blk);
        for (int i = 0; i < m.n; ++i) {
            std::string lbl = (!m.labels.empty() && !m.labels[i].empty())
                                  ? m.labels[i]
                                  : std::to_string(i);
            g.labels.push_back("b" + std::to_string(bi) + ":" + lbl);
        }
        g.n += m.n;
        // Complete weighted graph realizing the block metric.
        for (int i = 0; i < m.n; ++i)
            for (int j = i + 1; j < m.n; ++j)
                g.edges.push_back({blk.offset + i, blk.offset + j, m.dist(i, j)});
    }
    for (size_t pi = 0; pi < path_lengths.size(); ++pi) {
        int from = out.base_combined(static_cast<int>(pi));
        int to = out.base_combined(static_cast<int>(pi) + 1);
        std::vector<int> interior;
        int prev = from;
        for (int j = 1; j < path_lengths[pi]; ++j) {
            int v = g.n++;
            g.labels.push_back("p" + std::to_string(pi) + ":" + std::to_string(j));
            interior.push_back(v);
            g.edges.push_back({prev, v, 1.0});
            prev = v;
        }
        g.edges.push_back({prev, to, 1.0});
        out.path_vertices.push_back(interior);
    }
    return out;
}

MetricSpace l1_product(const std::vector<MetricSpace>& spaces, long long point_cap) {
    if (spaces.empty()) throw std::invalid_argument("l1 product of an empty list");
    long long total = 1;
    for (const auto& m : spaces) {
        if (m.n == 0) throw std::invalid_argument("empty factor in l1 product");
        total *= m.n;
        if (total > point_cap)
            throw std::invalid_argument("l1 product exceeds the point cap");
    }
    int n = static_cast<int>(total);
    int k = static_cast<int>(spaces.size());
    // Mixed-radix index: last factor varies fastest.
    auto decode = [&](int idx) {
        std::vector<int> t(k);
        for (int f = k - 1; f >= 0; --f) {
            t[f] = idx % spaces[f].n;
            idx /= spaces[f].n;
        }
        return t;
    };
    MetricSpace out = MetricSpace::zeros(n);
    out.labels.resize(n);
    std::vector<std::vector<int>> tuples(n);
    for (int i = 0; i < n; ++i) {
        tuples[i] = decode(i);
        std::string lbl = "(";
        for (int f = 0; f < k; ++f) {
            const auto& m = spaces[f];
            lbl += (!m.labels.empty() ? m.labels[tuples[i][f]]
                                      : std::to_string(tuples[i][f]));
            if (f + 1 < k) lbl += ",";
        }
        out.labels[i] = lbl + ")";
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            double d = 0;
            for (int f = 0; f < k; ++f) d += spaces[f].dist(tuples[i][f], tuples[j][f]);
            out.dist(i, j) = out.dist(j, i) = d;
        }
    return out;
}

WeightedGraph dinfinity_ball(int radius) {
    if (radius < 1) throw std::invalid_argument("radius must be >= 1");
    WeightedGraph g;
    auto power_label = [](int k) {
        if (k == 0) return std::string("e");
        if (k == 1) return std::string("x");
        return "x^" + std::to_string(k);
    };
    // ids 0..2R: x^k for k = -R..R; ids 2R+1..4R-1: g x^k for k = -(R-1)..R-1.
    auto xid = [&](int k) { return k + radius; };
    auto gid = [&](int k) { return 2 * radius + 1 + (k + radius - 1); };
    g.n = 4 * radius;
    g.labels.resize(g.n);
    for (int k = -radius; k <= radius; ++k) g.labels[xid(k)] = power_label(k);
    for (int k = -(radius - 1); k <= radius - 1; ++k)
        g.labels[gid(k)] = (k == 0) ? "g" : "g*" + power_label(k);
    for (int k = -radius; k < radius; ++k)
        g.edges.push_back({xid(k), xid(k + 1), 1.0});  // left mult by x^{+-1}
    for (int k = -(radius - 1); k < radius - 1; ++k)
        g.edges.push_back({gid(k), gid(k + 1), 1.0});  // x * (g x^k) = g x^{k-1}
    for (int k = -(radius - 1); k <= radius - 1; ++k)
        g.edges.push_back({xid(k), gid(k), 1.0});  // g * x^k = g x^k
    return g;
}

std::pair<bool, int> parse_dinfinity_label(const std::string& label) {
    if (label.empty()) throw std::invalid_argument("unlabeled dihedral vertex");
    std::string s = label;
    bool coset = false;
    if (s[0] == 'g') {
        coset = true;
        if (s.size() == 1) return {true, 0};
        if (s.size() < 3 || s[1] != '*')
            throw std::invalid_argument("bad dihedral label: " + label);
        s = s.substr(2);
    }
    if (s == "e") return {coset, 0};
    if (s == "x") return {coset, 1};
    if (s.rfind("x^", 0) != 0)
        throw std::invalid_argument("bad dihedral label: " + label);
    try {
        return {coset, std::stoi(s.substr(2))};
    } catch (const std::exception&) {
        throw std::invalid_argument("bad dihedral label: " + label);
    }
}

std::vector<int> dinfinity_interior(const WeightedGraph& ball, int radius) {
    std::vector<int> out;
    for (int v = 0; v < ball.n; ++v) {
        auto [coset, k] = parse_dinfinity_label(ball.labels.at(v));
        int word_length = std::abs(k) + (coset ? 1 : 0);
        if (word_length <= radius - 1) out.push_back(v);
    }
    return out;
}

}  // namespace mge
