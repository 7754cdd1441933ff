#pragma once

#include "mge/graph.hpp"
#include "mge/rational.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace mge {

// Finite metric space with a dense symmetric distance matrix.
struct MetricSpace {
    int n = 0;
    std::vector<double> d;  // row-major n*n
    std::vector<std::string> labels;

    double dist(int i, int j) const { return d[static_cast<size_t>(i) * n + j]; }
    double& dist(int i, int j) { return d[static_cast<size_t>(i) * n + j]; }

    static MetricSpace zeros(int n);
};

// Default cap on dense metric sizes; every desk-scale object fits well below.
inline constexpr int kDefaultPointCap = 20000;

// Weighted shortest-path metric via one Dijkstra run per source.
// Throws std::runtime_error naming two unreachable vertices if g is
// disconnected, std::invalid_argument if g has more than `point_cap` vertices.
MetricSpace shortest_path_metric(const WeightedGraph& g, int threads = 1,
                                 int point_cap = kDefaultPointCap);

// Single-source distances plus canonical shortest-path parents. parent[v] is
// the smallest-index neighbor u with dist[u] + w(u,v) = dist[v]; parent_edge
// is the corresponding edge index. parent[src] = -1.
struct ShortestPathTree {
    std::vector<double> dist;
    std::vector<int> parent;
    std::vector<int> parent_edge;
};
ShortestPathTree dijkstra_tree(const WeightedGraph& g, int src);

// Exact variant over rational edge weights (same vertex/edge layout as g).
struct RationalMetric {
    int n = 0;
    std::vector<Rat> d;
    const Rat& dist(int i, int j) const { return d[static_cast<size_t>(i) * n + j]; }
    Rat& dist(int i, int j) { return d[static_cast<size_t>(i) * n + j]; }
};
RationalMetric shortest_path_metric_exact(const WeightedGraph& g,
                                          const std::vector<Rat>& weights);

double diameter(const MetricSpace& m);

// Validates symmetry, zero diagonal, positivity off the diagonal and the
// triangle inequality over all triples (within the global tolerance).
bool is_metric(const MetricSpace& m);
bool is_metric_exact(const RationalMetric& m);

enum class SearchMode { Exact, Greedy };

struct SeparatedSet {
    double delta = 0;
    std::vector<int> members;  // sorted
    bool certified_max = false;
};

inline constexpr std::uint64_t kDefaultNodeBudget = 10'000'000;

// Largest subset with all pairwise distances >= delta. Exact mode runs a
// branch-and-bound maximum independent set search on the conflict graph and
// throws BudgetExceeded past `budget` nodes; greedy mode returns a maximal
// set (a lower bound).
SeparatedSet max_separated_set(const MetricSpace& m, double delta,
                               SearchMode mode = SearchMode::Exact,
                               std::uint64_t budget = kDefaultNodeBudget);

// Same search restricted to a point subset (indices into m).
SeparatedSet max_separated_set_within(const MetricSpace& m,
                                      const std::vector<int>& points,
                                      double delta, SearchMode mode,
                                      std::uint64_t budget = kDefaultNodeBudget);

// True iff ambient distances restricted to `sub` (in order) equal the
// reference distances. Throws std::invalid_argument on size mismatch.
bool is_isometric_subspace(const std::vector<int>& sub, const MetricSpace& ambient,
                           const MetricSpace& reference);

// The cycle formed by the two internally disjoint bottom-top geodesics of a
// diamond (the a-side path and the b-side path), of length 2^(n+1).
struct GeodesicBigon {
    std::vector<int> cycle;  // ordered, cycle[0] = bottom
    bool isometric = false;  // cycle metric equals the induced diamond metric
};
GeodesicBigon geodesic_bigon(const DiamondStructure& s, const WeightedGraph& g);

// CSV with label headers, one row per point.
std::string metric_to_csv(const MetricSpace& m);

}  // namespace mge
