#pragma once

#include "mge/graph.hpp"
#include "mge/metric.hpp"
#include "mge/rational.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace mge {

enum class Norm { L1, L2, Linf };

std::string norm_name(Norm n);
Norm parse_norm(const std::string& s);

struct Embedding {
    Norm host = Norm::L2;
    int dim = 0;
    std::vector<std::vector<double>> coords;  // one vector per point

    int n_points() const { return static_cast<int>(coords.size()); }
    double host_dist(int i, int j) const;
};

struct DistortionReport {
    double lip = 0;       // max host / source
    double lip_inv = 0;   // max source / host (inf when non-injective)
    double distortion = 0;
    std::pair<int, int> witness_expand{-1, -1};
    std::pair<int, int> witness_contract{-1, -1};
};

// Exact maxima over all unordered pairs; witnesses are the lexicographically
// first pairs attaining each maximum.
DistortionReport distortion(const Embedding& e, const MetricSpace& m);

// Recursive l2 embedding of the weighted diamond W_n: the originals go to 0
// and e_0; each split pair lands at the parent-edge midpoint +- omega_k along
// a fresh coordinate, omega_k = sqrt(eps + eps^2) (1/2 + eps)^(k-1). The
// a-side child takes +, the b-side child takes -. dim = 1 + (4^n - 1)/3.
Embedding embed_weighted_diamond(const DiamondStructure& s, double eps);

// Exact coordinates: coordinate 0 is a plain rational; every other coordinate
// is coef * sqrt(eps + eps^2) with rational coef. Squared distances are then
// rational and compare exactly against squared edge weights.
struct ExactWdEmbedding {
    int dim = 0;
    Rat s_factor;                        // eps + eps^2
    std::vector<std::vector<Rat>> coef;  // per point
};
ExactWdEmbedding embed_weighted_diamond_exact(const DiamondStructure& s,
                                              const Rat& eps);
Rat exact_squared_dist(const ExactWdEmbedding& e, int i, int j);

// Least m >= 1 with sum_{i=1..m} (1/2+eps)^i >= 1 + (1/2+eps)^m.
int m_of_eps(double eps);

// Closed-form upper bound on sup_n lip(F_n^{-1}) (and hence on distortion,
// since lip(F_n) <= 1): 2^(m+1) / ((1/2-eps) sqrt(eps+eps^2)) * (1/2+eps).
double paper_bound_w(double eps);

// Closed form for the level-1 distortion, attained on the one non-edge pair.
double wdiamond_level1_distortion(double eps);

struct MinDistortionResult {
    double value = 0;
    std::vector<int> map;  // source index -> target index
    bool certified = false;
    std::uint64_t nodes = 0;
};

// Exact minimum distortion over injective vertex maps, via branch-and-bound
// with incumbent pruning. The witness is the lexicographically minimal
// optimal map. Distortion of a map is (max expansion) * (max contraction),
// which is scale-invariant. Requires source.n <= target.n.
MinDistortionResult min_distortion(const MetricSpace& source,
                                   const MetricSpace& target,
                                   std::uint64_t budget = 50'000'000);

struct QuasiIsometryFit {
    double a1 = 1, a2 = 1, b = 0;
};

// Minimal b >= 0 with a1 d_X - b <= d_Y(fu, fv) <= a2 d_X + b for all pairs.
QuasiIsometryFit fit_quasi_isometry(const std::vector<int>& f,
                                    const MetricSpace& source,
                                    const MetricSpace& target, double a1,
                                    double a2);

// The line map phi of the infinite dihedral ball: x^k -> k, g x^k -> k + 1/2.
// Throws on unlabeled or unparseable vertices.
Embedding dinfinity_phi(const WeightedGraph& ball);

// Distortion of an embedding restricted to a point subset.
DistortionReport distortion_on_subset(const Embedding& e, const MetricSpace& m,
                                      const std::vector<int>& subset);

// Isometric Frechet-style embedding into l_inf: point i -> (d(i, p))_p,
// translated so base -> 0. lip = lip_inv = 1.
Embedding frechet_embedding(const MetricSpace& m, int base_point);

// Glues nonexpansive block embeddings (base point at the origin; enforced by
// translation) into one host of dimension max block dim + 1: block n is
// shifted by the cumulative path length along the fresh last coordinate, and
// path vertices land on that axis at unit spacing. Throws if a block
// embedding expands some pair.
Embedding glue_embed(const std::vector<Embedding>& block_embeddings,
                     const std::vector<MetricSpace>& block_metrics,
                     const GluedSpace& glued);

std::string embedding_to_csv(const Embedding& e,
                             const std::vector<std::string>& labels);

}  // namespace mge
