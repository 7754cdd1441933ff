#pragma once

#include "mge/graph.hpp"
#include "mge/metric.hpp"
#include "mge/report.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace mge {

// All subdiamond node ids of height exactly 2^h. Count is 4^(n-h).
std::vector<int> subdiamonds_of_height(const DiamondStructure& s, int h);

// Top and bottom of a proper subdiamond. Throws std::invalid_argument for the
// whole diamond (it has no exterior).
std::pair<int, int> exits(const DiamondStructure& s, int node);

// Checks that deleting the two exits disconnects every interior member of
// `node` from every non-member.
bool exits_disconnect(const DiamondStructure& s, const WeightedGraph& g, int node);

// Per-vertex generation labels Z_r, r in 1..n, the two originals at 0.
std::vector<int> generations(const DiamondStructure& s);

// Locality check: the 2^(r-1)-ball around each generation-r vertex
// is contained in some subdiamond of height 2^r.
CheckReport verify_generation_neighborhood(const DiamondStructure& s,
                                           const MetricSpace& m, int r);

// Deleting Z_r leaves components of diameter < 2^r.
CheckReport verify_generation_components(const DiamondStructure& s,
                                         const WeightedGraph& g, int r);

struct EntropyOptions {
    bool force_exact = true;  // greedy-first escalation is used when false
    std::uint64_t budget = kDefaultNodeBudget;
};

// Entropy bound: in every subdiamond of height 2^h' with h' >= p, the exact
// maximum 2^p-separated cardinality is <= 2 * 4^(h'-p). Tight cases recorded.
CheckReport entropy_check(const DiamondStructure& s, const MetricSpace& m,
                          int p, const EntropyOptions& opts = {});

// Runs entropy_check for every admissible p.
CheckReport entropy_check_all(const DiamondStructure& s, const MetricSpace& m,
                              const EntropyOptions& opts = {});

// Two-sided certificate 2^p d_T(u,v) <= d_D(fu,fv) <= 2^k 2^p d_T(u,v).
struct BilipWitness {
    int u = -1, v = -1;
    double tree_dist = 0, diamond_dist = 0;
    bool lower_side = false;  // which inequality failed
};

// Checks the certificate over all pairs; nullopt means pass. On failure the
// lexicographically first violating pair is returned.
std::optional<BilipWitness> bilip_certificate_check(const std::vector<int>& f,
                                                    const MetricSpace& tree,
                                                    const MetricSpace& diamond,
                                                    int p, int k);

// Helper predicate for replaying the exit case analysis on a concrete map:
// does the path step u -> w (images fu, fw) leave through exit v, i.e.
// d(fu, v) + d(v, fw) <= 2^k 2^p?
bool leaves_through_exit(const MetricSpace& diamond, int fu, int fw, int exit_vertex,
                         int p, int k);

// Every canonical shortest path in W_n uses each weight class at most twice
// (class 0 at most once). `check_all_paths` bounds the per-pair path count
// when enumerating all shortest paths instead of the canonical one.
CheckReport claim_two_edges_per_class(const WeightedGraph& w,
                                      const DiamondStructure& s,
                                      bool check_all_paths = false,
                                      std::uint64_t path_budget = 1000000);

}  // namespace mge
