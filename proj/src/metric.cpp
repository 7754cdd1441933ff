#include "mge/metric.hpp"

#include "mge/mis.hpp"
#include "mge/tol.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <sstream>
#include <thread>

namespace mge {

namespace {

template <class W>
std::vector<W> sssp(int n, const std::vector<std::vector<std::pair<int, int>>>& adj,
                    const std::vector<W>& weights, int src, const W& inf) {
    std::vector<W> dist(n, inf);
    std::vector<char> done(n, 0);
    using Item = std::pair<W, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
    dist[src] = W(0);
    pq.emplace(W(0), src);
    while (!pq.empty()) {
        auto [d, v] = pq.top();
        pq.pop();
        if (done[v]) continue;
        done[v] = 1;
        for (auto [u, ei] : adj[v]) {
            if (done[u]) continue;
            W nd = d + weights[ei];
            if (nd < dist[u]) {
                dist[u] = nd;
                pq.emplace(nd, u);
            }
        }
    }
    return dist;
}

[[noreturn]] void throw_disconnected(const WeightedGraph& g, int a, int b) {
    auto name = [&](int v) {
        if (g.has_labels() && !g.labels[v].empty()) return g.labels[v];
        return std::to_string(v);
    };
    throw std::runtime_error("graph is disconnected: no path between vertex " +
                             name(a) + " and vertex " + name(b));
}

}  // namespace

MetricSpace MetricSpace::zeros(int n) {
    MetricSpace m;
    m.n = n;
    m.d.assign(static_cast<size_t>(n) * n, 0.0);
    return m;
}

MetricSpace shortest_path_metric(const WeightedGraph& g, int threads, int point_cap) {
    validate(g);
    if (g.n > point_cap)
        throw std::invalid_argument("graph exceeds the dense metric point cap");
    auto adj = adjacency(g);
    std::vector<double> weights(g.edges.size());
    for (size_t i = 0; i < g.edges.size(); ++i) weights[i] = g.edges[i].w;
    const double inf = std::numeric_limits<double>::infinity();

    MetricSpace m = MetricSpace::zeros(g.n);
    m.labels = g.labels;
    auto run = [&](int lo, int hi) {
        for (int s = lo; s < hi; ++s) {
            auto dist = sssp<double>(g.n, adj, weights, s, inf);
            std::copy(dist.begin(), dist.end(),
                      m.d.begin() + static_cast<size_t>(s) * g.n);
        }
    };
    threads = std::max(1, std::min(threads, g.n));
    if (threads == 1) {
        run(0, g.n);
    } else {
        std::vector<std::thread> pool;
        int chunk = (g.n + threads - 1) / threads;
        for (int t = 0; t < threads; ++t)
            pool.emplace_back(run, t * chunk, std::min(g.n, (t + 1) * chunk));
        for (auto& th : pool) th.join();
    }
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j)
            if (std::isinf(m.dist(i, j))) throw_disconnected(g, i, j);
    return m;
}

ShortestPathTree dijkstra_tree(const WeightedGraph& g, int src) {
    auto adj = adjacency(g);
    std::vector<double> weights(g.edges.size());
    for (size_t i = 0; i < g.edges.size(); ++i) weights[i] = g.edges[i].w;
    ShortestPathTree t;
    t.dist = sssp<double>(g.n, adj, weights, src,
                          std::numeric_limits<double>::infinity());
    t.parent.assign(g.n, -1);
    t.parent_edge.assign(g.n, -1);
    // Canonical parents: the smallest-index predecessor attaining the distance.
    for (int v = 0; v < g.n; ++v) {
        if (v == src) continue;
        for (auto [u, ei] : adj[v]) {
            if (approx_eq(t.dist[u] + weights[ei], t.dist[v])) {
                t.parent[v] = u;
                t.parent_edge[v] = ei;
                break;  // adj[v] is sorted by neighbor index
            }
        }
    }
    return t;
}

RationalMetric shortest_path_metric_exact(const WeightedGraph& g,
                                          const std::vector<Rat>& weights) {
    if (weights.size() != g.edges.size())
        throw std::invalid_argument("weight count mismatch");
    auto adj = adjacency(g);
    // No rational infinity; use a value above any path length.
    Rat inf = 1;
    for (const auto& w : weights) inf += w;
    RationalMetric m;
    m.n = g.n;
    m.d.assign(static_cast<size_t>(g.n) * g.n, Rat(0));
    for (int s = 0; s < g.n; ++s) {
        auto dist = sssp<Rat>(g.n, adj, weights, s, inf);
        for (int v = 0; v < g.n; ++v) {
            if (dist[v] == inf) throw_disconnected(g, s, v);
            m.dist(s, v) = dist[v];
        }
    }
    return m;
}

double diameter(const MetricSpace& m) {
    if (m.n == 0) throw std::invalid_argument("empty metric space");
    return *std::max_element(m.d.begin(), m.d.end());
}

bool is_metric(const MetricSpace& m) {
    for (int i = 0; i < m.n; ++i) {
        if (m.dist(i, i) != 0) return false;
        for (int j = i + 1; j < m.n; ++j) {
            if (!approx_eq(m.dist(i, j), m.dist(j, i))) return false;
            if (!(m.dist(i, j) > 0)) return false;
        }
    }
    for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.n; ++j)
            for (int k = 0; k < m.n; ++k)
                if (!approx_le(m.dist(i, j), m.dist(i, k) + m.dist(k, j)))
                    return false;
    return true;
}

bool is_metric_exact(const RationalMetric& m) {
    for (int i = 0; i < m.n; ++i) {
        if (m.dist(i, i) != 0) return false;
        for (int j = i + 1; j < m.n; ++j) {
            if (m.dist(i, j) != m.dist(j, i)) return false;
            if (!(m.dist(i, j) > 0)) return false;
        }
    }
    for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.n; ++j)
            for (int k = 0; k < m.n; ++k)
                if (m.dist(i, j) > m.dist(i, k) + m.dist(k, j)) return false;
    return true;
}

SeparatedSet max_separated_set(const MetricSpace& m, double delta, SearchMode mode,
                               std::uint64_t budget) {
    std::vector<int> all(m.n);
    for (int i = 0; i < m.n; ++i) all[i] = i;
    return max_separated_set_within(m, all, delta, mode, budget);
}

SeparatedSet max_separated_set_within(const MetricSpace& m,
                                      const std::vector<int>& points, double delta,
                                      SearchMode mode, std::uint64_t budget) {
    if (!(delta > 0)) throw std::invalid_argument("delta must be positive");
    int k = static_cast<int>(points.size());
    std::vector<std::pair<int, int>> conflicts;
    for (int a = 0; a < k; ++a)
        for (int b = a + 1; b < k; ++b) {
            double d = m.dist(points[a], points[b]);
            if (d < delta && !approx_eq(d, delta)) conflicts.emplace_back(a, b);
        }
    SeparatedSet out;
    out.delta = delta;
    std::vector<int> local;
    if (mode == SearchMode::Exact) {
        local = max_independent_set(k, conflicts, budget).set;
        out.certified_max = true;
    } else {
        local = greedy_independent_set(k, conflicts);
        out.certified_max = false;
    }
    out.members.reserve(local.size());
    for (int i : local) out.members.push_back(points[i]);
    std::sort(out.members.begin(), out.members.end());
    return out;
}

bool is_isometric_subspace(const std::vector<int>& sub, const MetricSpace& ambient,
                           const MetricSpace& reference) {
    if (static_cast<int>(sub.size()) != reference.n)
        throw std::invalid_argument("subspace size does not match reference");
    for (size_t i = 0; i < sub.size(); ++i)
        for (size_t j = i + 1; j < sub.size(); ++j)
            if (!approx_eq(ambient.dist(sub[i], sub[j]),
                           reference.dist(static_cast<int>(i), static_cast<int>(j))))
                return false;
    return true;
}

namespace {

// Bottom-to-top geodesic through one fixed side of every subdivision.
void side_geodesic(const DiamondStructure& s, int node, bool a_side,
                   std::vector<int>& path) {
    const Subdiamond& sd = s.subdiamonds[node];
    if (sd.is_leaf()) {
        path.push_back(sd.top);
        return;
    }
    int lo = a_side ? sd.children[0] : sd.children[2];
    int hi = a_side ? sd.children[1] : sd.children[3];
    side_geodesic(s, lo, a_side, path);
    side_geodesic(s, hi, a_side, path);
}

}  // namespace

GeodesicBigon geodesic_bigon(const DiamondStructure& s, const WeightedGraph& g) {
    if (s.level < 1)
        throw std::invalid_argument("geodesic bigon requires level >= 1");
    GeodesicBigon out;
    std::vector<int> up{s.root().bottom};
    side_geodesic(s, 0, true, up);
    std::vector<int> down;
    side_geodesic(s, 0, false, down);  // interior of the b-side plus top
    down.pop_back();                   // drop top (already in `up`)
    out.cycle = up;
    out.cycle.insert(out.cycle.end(), down.rbegin(), down.rend());

    int L = static_cast<int>(out.cycle.size());
    out.isometric = true;
    MetricSpace amb = shortest_path_metric(g);
    for (int i = 0; i < L && out.isometric; ++i)
        for (int j = i + 1; j < L; ++j) {
            double cyc = std::min(j - i, L - (j - i));
            if (!approx_eq(cyc, amb.dist(out.cycle[i], out.cycle[j]))) {
                out.isometric = false;
                break;
            }
        }
    return out;
}

std::string metric_to_csv(const MetricSpace& m) {
    std::ostringstream os;
    os.precision(17);
    auto label = [&](int i) {
        if (!m.labels.empty() && !m.labels[i].empty()) return m.labels[i];
        return std::to_string(i);
    };
    os << "point";
    for (int j = 0; j < m.n; ++j) os << "," << label(j);
    os << "\n";
    for (int i = 0; i < m.n; ++i) {
        os << label(i);
        for (int j = 0; j < m.n; ++j) os << "," << m.dist(i, j);
        os << "\n";
    }
    return os.str();
}

}  // namespace mge
