#pragma once

#include "mge/graph.hpp"
#include "mge/metric.hpp"
#include "mge/rational.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace mge {

// Complete binary tree of the given depth; vertices are the 0/1 sequences of
// length <= depth, labeled by the sequence ("" is the root). Unit weights.
WeightedGraph build_binary_tree(int depth);

struct DiamondBuild {
    WeightedGraph graph;
    DiamondStructure structure;
};

// Unit-weight diamond D_level: every edge of D_{k-1} is replaced by a
// quadrilateral at step k. 4^level edges, 2 + 2(4^level - 1)/3 vertices.
DiamondBuild build_diamond(int level);

// Weighted diamond W_level: the union of the step-k edge classes for
// k = 0..level, the step-k class carrying weight (1/2 + eps)^k. No edge is
// ever removed, so every subdiamond keeps its diagonal.
// Requires 0 < eps < 1/2.
DiamondBuild build_weighted_diamond(int level, double eps);

// Exact per-edge weights of W_level for rational eps, matching the edge
// order of build_weighted_diamond.
std::vector<Rat> weighted_diamond_exact_weights(const DiamondStructure& s,
                                                const Rat& eps);

WeightedGraph build_cycle(int n);   // n >= 3 vertices, unit weights
WeightedGraph build_path(int n);    // n edges, n + 1 vertices, unit weights

struct SeriesParallelOptions {
    // Each edge is removed independently with this probability at the end of
    // the construction; a removal that disconnects the graph is redrawn.
    double removal_prob = 0.0;
    // Alternatively, an explicit set of edge indices to remove (overrides
    // removal_prob; disconnection is an error).
    std::optional<std::vector<int>> removal_mask;
    int retries = 32;
};

// Def-style generator: start with one edge, at each step attach a new vertex
// to both endpoints of an edge chosen uniformly at random, finally remove
// edges. Deterministic for a fixed seed: edge choices come from mt19937 with
// rejection-sampled uniform draws (no distribution objects).
WeightedGraph generate_series_parallel(int steps, std::uint64_t seed,
                                       const SeriesParallelOptions& opts = {});

// Reduces an internal multigraph copy by deleting loops, merging parallel
// edges, deleting degree-1 vertices and smoothing degree-2 vertices. True iff
// the result is a single vertex or a single edge (equivalently, g is
// connected and K4-minor-free).
bool is_series_parallel(const WeightedGraph& g);

// Joins the blocks by unit-weight paths O_n .. O_{n+1} of the given integer
// lengths; each block is realized as a complete weighted graph on its points.
// Requires path_lengths[i] >= max(diam block i, diam block i+1).
GluedSpace glue(const std::vector<std::pair<MetricSpace, int>>& blocks,
                const std::vector<int>& path_lengths);

// Cartesian product with the l1 metric (sum of coordinate distances).
MetricSpace l1_product(const std::vector<MetricSpace>& spaces,
                       long long point_cap = 200000);

// Ball of the infinite dihedral group <x, g | g^2, gxg = x^-1> with
// generating set {x, x^-1, g} and the right-invariant word metric (edges join
// u and s*u). Vertices: x^k for |k| <= radius and g*x^k for |k| <= radius-1,
// 4*radius in total. Labels encode the group element ("e", "x^-2", "g*x^3").
WeightedGraph dinfinity_ball(int radius);

// Vertices whose word length is at most radius - 1; distances between them in
// the ball graph agree with the group metric (no boundary truncation).
std::vector<int> dinfinity_interior(const WeightedGraph& ball, int radius);

// Decodes a dinfinity_ball label into (in_g_coset, k). Throws on bad labels.
std::pair<bool, int> parse_dinfinity_label(const std::string& label);

}  // namespace mge
