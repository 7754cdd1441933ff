#include "mge/embedding.hpp"

#include "mge/families.hpp"
#include "mge/tol.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace mge {

std::string norm_name(Norm n) {
    switch (n) {
        case Norm::L1: return "l1";
        case Norm::L2: return "l2";
        case Norm::Linf: return "linf";
    }
    return "?";
}

Norm parse_norm(const std::string& s) {
    if (s == "l1") return Norm::L1;
    if (s == "l2") return Norm::L2;
    if (s == "linf") return Norm::Linf;
    throw std::invalid_argument("unknown norm: " + s);
}

double Embedding::host_dist(int i, int j) const {
    const auto& a = coords[i];
    const auto& b = coords[j];
    double acc = 0;
    switch (host) {
        case Norm::L1:
            for (int c = 0; c < dim; ++c) acc += std::abs(a[c] - b[c]);
            return acc;
        case Norm::L2:
            for (int c = 0; c < dim; ++c) acc += (a[c] - b[c]) * (a[c] - b[c]);
            return std::sqrt(acc);
        case Norm::Linf:
            for (int c = 0; c < dim; ++c) acc = std::max(acc, std::abs(a[c] - b[c]));
            return acc;
    }
    return acc;
}

DistortionReport distortion(const Embedding& e, const MetricSpace& m) {
    std::vector<int> all(m.n);
    std::iota(all.begin(), all.end(), 0);
    return distortion_on_subset(e, m, all);
}

DistortionReport distortion_on_subset(const Embedding& e, const MetricSpace& m,
                                      const std::vector<int>& subset) {
    if (e.n_points() != m.n)
        throw std::invalid_argument("embedding and metric point counts differ");
    DistortionReport rep;
    for (size_t a = 0; a < subset.size(); ++a)
        for (size_t b = a + 1; b < subset.size(); ++b) {
            int i = subset[a], j = subset[b];
            double ds = m.dist(i, j);
            double dh = e.host_dist(i, j);
            double expand = dh / ds;
            if (expand > rep.lip) {
                rep.lip = expand;
                rep.witness_expand = {i, j};
            }
            double contract =
                dh > 0 ? ds / dh : std::numeric_limits<double>::infinity();
            if (contract > rep.lip_inv) {
                rep.lip_inv = contract;
                rep.witness_contract = {i, j};
            }
        }
    rep.distortion = rep.lip * rep.lip_inv;
    return rep;
}

Embedding embed_weighted_diamond(const DiamondStructure& s, double eps) {
    if (!(eps > 0 && eps < 0.5))
        throw std::invalid_argument("eps must lie in (0, 1/2)");
    int n_vertices = static_cast<int>(s.vertex_birth.size());
    // Coordinates: 0 for e_0, then one per subdivided edge in creation order.
    // Subdivided edges are exactly those of level < n, which come first.
    int split_edges = 0;
    for (const auto& sd : s.subdiamonds)
        if (!sd.is_leaf()) ++split_edges;
    Embedding e;
    e.host = Norm::L2;
    e.dim = 1 + split_edges;
    e.coords.assign(n_vertices, std::vector<double>(e.dim, 0.0));
    e.coords[s.root().top][0] = 1.0;  // F_0: bottom -> 0, top -> e_0
    double root = std::sqrt(eps + eps * eps);
    for (int node = 0; node < static_cast<int>(s.subdiamonds.size()); ++node) {
        const Subdiamond& sd = s.subdiamonds[node];
        if (sd.is_leaf()) break;  // creation order: leaves come last
        double omega = root * std::pow(0.5 + eps, sd.level);  // omega_{level+1}
        const auto& fu = e.coords[sd.bottom];
        const auto& fv = e.coords[sd.top];
        auto& fa = e.coords[sd.vertex_a];
        auto& fb = e.coords[sd.vertex_b];
        for (int c = 0; c < e.dim; ++c) fa[c] = fb[c] = 0.5 * (fu[c] + fv[c]);
        fa[1 + node] += omega;
        fb[1 + node] -= omega;
    }
    return e;
}

ExactWdEmbedding embed_weighted_diamond_exact(const DiamondStructure& s,
                                              const Rat& eps) {
    if (!(eps > 0 && eps < Rat(1, 2)))
        throw std::invalid_argument("eps must lie in (0, 1/2)");
    int n_vertices = static_cast<int>(s.vertex_birth.size());
    int split_edges = 0;
    for (const auto& sd : s.subdiamonds)
        if (!sd.is_leaf()) ++split_edges;
    ExactWdEmbedding e;
    e.dim = 1 + split_edges;
    e.s_factor = eps + eps * eps;
    e.coef.assign(n_vertices, std::vector<Rat>(e.dim, Rat(0)));
    e.coef[s.root().top][0] = 1;
    Rat base = Rat(1, 2) + eps;
    for (int node = 0; node < static_cast<int>(s.subdiamonds.size()); ++node) {
        const Subdiamond& sd = s.subdiamonds[node];
        if (sd.is_leaf()) break;
        Rat omega_coef = rat_pow(base, sd.level);  // times sqrt(s_factor)
        const auto& fu = e.coef[sd.bottom];
        const auto& fv = e.coef[sd.top];
        auto& fa = e.coef[sd.vertex_a];
        auto& fb = e.coef[sd.vertex_b];
        for (int c = 0; c < e.dim; ++c) fa[c] = fb[c] = (fu[c] + fv[c]) / 2;
        fa[1 + node] += omega_coef;
        fb[1 + node] -= omega_coef;
    }
    return e;
}

Rat exact_squared_dist(const ExactWdEmbedding& e, int i, int j) {
    Rat d0 = e.coef[i][0] - e.coef[j][0];
    Rat rest = 0;
    for (int c = 1; c < e.dim; ++c) {
        Rat d = e.coef[i][c] - e.coef[j][c];
        rest += d * d;
    }
    return d0 * d0 + e.s_factor * rest;
}

int m_of_eps(double eps) {
    if (!(eps > 0 && eps < 0.5))
        throw std::invalid_argument("eps must lie in (0, 1/2)");
    double base = 0.5 + eps;
    double sum = 0, power = 1;
    for (int m = 1;; ++m) {
        power *= base;
        sum += power;
        if (sum >= 1 + power) return m;
    }
}

double paper_bound_w(double eps) {
    int m = m_of_eps(eps);
    return std::ldexp(1.0, m + 1) / ((0.5 - eps) * std::sqrt(eps + eps * eps)) *
           (0.5 + eps);
}

double wdiamond_level1_distortion(double eps) {
    return (1 + 2 * eps) / (2 * std::sqrt(eps + eps * eps));
}

namespace {

struct MinDistSearch {
    const MetricSpace& S;
    const MetricSpace& T;
    std::uint64_t budget;
    std::uint64_t nodes = 0;
    double incumbent = std::numeric_limits<double>::infinity();
    std::vector<int> best_map;
    bool exceeded = false;

    // order[i] = source vertex assigned at depth i.
    std::vector<int> order;
    std::vector<int> assign;  // per source vertex, -1 if free
    std::vector<char> used;   // per target vertex

    double map_value(const std::vector<int>& f) const {
        double exp = 0, con = 0;
        for (int u = 0; u < S.n; ++u)
            for (int v = u + 1; v < S.n; ++v) {
                double ds = S.dist(u, v), dt = T.dist(f[u], f[v]);
                exp = std::max(exp, dt / ds);
                con = std::max(con, ds / dt);
            }
        return exp * con;
    }

    // `find_first`: lexicographic pass that stops at the first map whose
    // value equals the incumbent exactly.
    bool dfs(size_t depth, double exp, double con, bool find_first) {
        if (depth == order.size()) {
            double value = exp * con;
            if (find_first) {
                if (value <= incumbent) {
                    best_map = assign;
                    return true;
                }
                return false;
            }
            if (value < incumbent) {
                incumbent = value;
                best_map = assign;
            }
            return false;
        }
        int u = order[depth];
        for (int c = 0; c < T.n; ++c) {
            if (used[c]) continue;
            if (++nodes > budget) {
                exceeded = true;
                return false;
            }
            double ne = exp, nc = con;
            bool feasible = true;
            for (size_t d = 0; d < depth && feasible; ++d) {
                int a = order[d];
                double ds = S.dist(u, a), dt = T.dist(c, assign[a]);
                if (dt <= 0) {
                    feasible = false;
                    break;
                }
                ne = std::max(ne, dt / ds);
                nc = std::max(nc, ds / dt);
                if (find_first ? (ne * nc > incumbent) : (ne * nc >= incumbent))
                    feasible = false;
            }
            if (!feasible) continue;
            assign[u] = c;
            used[c] = 1;
            bool done = dfs(depth + 1, ne, nc, find_first);
            used[c] = 0;
            assign[u] = -1;
            if (done || exceeded) return done;
        }
        return false;
    }
};

}  // namespace

MinDistortionResult min_distortion(const MetricSpace& source,
                                   const MetricSpace& target,
                                   std::uint64_t budget) {
    if (source.n > target.n)
        throw std::invalid_argument("source has more points than target");
    if (source.n < 2) {
        MinDistortionResult r;
        r.value = 1.0;
        r.map.assign(source.n, 0);
        r.certified = true;
        return r;
    }
    MinDistSearch search{source, target, budget};
    search.assign.assign(source.n, -1);
    search.used.assign(target.n, 0);
    // Speed pass: source vertices by decreasing eccentricity.
    search.order.resize(source.n);
    std::iota(search.order.begin(), search.order.end(), 0);
    std::vector<double> ecc(source.n, 0);
    for (int u = 0; u < source.n; ++u)
        for (int v = 0; v < source.n; ++v) ecc[u] = std::max(ecc[u], source.dist(u, v));
    std::stable_sort(search.order.begin(), search.order.end(),
                     [&](int a, int b) { return ecc[a] > ecc[b]; });
    // Greedy incumbent: identity-prefix map refined by the search itself.
    {
        std::vector<int> greedy(source.n);
        std::iota(greedy.begin(), greedy.end(), 0);
        search.incumbent = search.map_value(greedy);
        search.best_map = greedy;
    }
    search.dfs(0, 0, 0, false);

    MinDistortionResult out;
    out.value = search.incumbent;
    out.map = search.best_map;
    out.certified = !search.exceeded;
    out.nodes = search.nodes;
    if (out.certified) {
        // Witness pass: lexicographically minimal optimal map. A fresh budget;
        // the value is already certified, so an overrun here only means the
        // witness stays the speed-pass one.
        std::uint64_t speed_nodes = search.nodes;
        search.nodes = 0;
        search.exceeded = false;
        std::iota(search.order.begin(), search.order.end(), 0);
        std::vector<int> fallback = search.best_map;
        bool found = search.dfs(0, 0, 0, true);
        out.map = (found && !search.exceeded) ? search.best_map : fallback;
        out.nodes = speed_nodes + search.nodes;
    }
    return out;
}

QuasiIsometryFit fit_quasi_isometry(const std::vector<int>& f,
                                    const MetricSpace& source,
                                    const MetricSpace& target, double a1,
                                    double a2) {
    if (static_cast<int>(f.size()) != source.n)
        throw std::invalid_argument("map must be total on the source");
    if (!(a1 > 0) || !(a2 > 0) || a1 > a2)
        throw std::invalid_argument("need 0 < a1 <= a2");
    double b = 0;
    for (int u = 0; u < source.n; ++u)
        for (int v = u + 1; v < source.n; ++v) {
            double dx = source.dist(u, v), dy = target.dist(f[u], f[v]);
            b = std::max({b, a1 * dx - dy, dy - a2 * dx});
        }
    return {a1, a2, b};
}

Embedding dinfinity_phi(const WeightedGraph& ball) {
    if (!ball.has_labels())
        throw std::invalid_argument("dihedral ball must carry element labels");
    Embedding e;
    e.host = Norm::L2;
    e.dim = 1;
    e.coords.resize(ball.n);
    for (int v = 0; v < ball.n; ++v) {
        auto [coset, k] = parse_dinfinity_label(ball.labels[v]);
        e.coords[v] = {coset ? k + 0.5 : static_cast<double>(k)};
    }
    return e;
}

Embedding frechet_embedding(const MetricSpace& m, int base_point) {
    if (base_point < 0 || base_point >= m.n)
        throw std::invalid_argument("base point out of range");
    Embedding e;
    e.host = Norm::Linf;
    e.dim = m.n;
    e.coords.assign(m.n, std::vector<double>(m.n, 0));
    for (int i = 0; i < m.n; ++i)
        for (int p = 0; p < m.n; ++p)
            e.coords[i][p] = m.dist(i, p) - m.dist(base_point, p);
    return e;
}

Embedding glue_embed(const std::vector<Embedding>& block_embeddings,
                     const std::vector<MetricSpace>& block_metrics,
                     const GluedSpace& glued) {
    size_t nb = glued.blocks.size();
    if (block_embeddings.size() != nb || block_metrics.size() != nb)
        throw std::invalid_argument("one embedding and metric per block required");
    int block_dim = 0;
    Norm host = block_embeddings.empty() ? Norm::L2 : block_embeddings[0].host;
    for (const auto& be : block_embeddings) {
        block_dim = std::max(block_dim, be.dim);
        if (be.host != host)
            throw std::invalid_argument("block embeddings must share a host norm");
    }
    // Nonexpansiveness per block, after translating the base to the origin.
    std::vector<Embedding> shifted = block_embeddings;
    for (size_t b = 0; b < nb; ++b) {
        const auto& m = block_metrics[b];
        auto& e = shifted[b];
        if (e.n_points() != m.n)
            throw std::invalid_argument("block embedding size mismatch");
        auto base = e.coords[glued.blocks[b].base_point];
        for (auto& pt : e.coords)
            for (int c = 0; c < e.dim; ++c) pt[c] -= base[c];
        for (int i = 0; i < m.n; ++i)
            for (int j = i + 1; j < m.n; ++j)
                if (e.host_dist(i, j) > m.dist(i, j) * (1 + kRelTol) + kAbsTol)
                    throw std::invalid_argument(
                        "block embedding expands a pair; glue_embed needs lip <= 1");
    }
    Embedding out;
    out.host = host;
    out.dim = block_dim + 1;
    out.coords.assign(glued.combined.n, std::vector<double>(out.dim, 0.0));
    double lambda = 0;
    for (size_t b = 0; b < nb; ++b) {
        const auto& e = shifted[b];
        for (int i = 0; i < glued.blocks[b].n_points; ++i) {
            auto& pt = out.coords[glued.combined_index(static_cast<int>(b), i)];
            for (int c = 0; c < e.dim; ++c) pt[c] = e.coords[i][c];
            pt[block_dim] = lambda;
        }
        if (b < glued.path_vertices.size()) {
            const auto& interior = glued.path_vertices[b];
            for (size_t j = 0; j < interior.size(); ++j)
                out.coords[interior[j]][block_dim] =
                    lambda + static_cast<double>(j + 1);
            lambda += glued.path_lengths[b];
        }
    }
    return out;
}

std::string embedding_to_csv(const Embedding& e,
                             const std::vector<std::string>& labels) {
    std::ostringstream os;
    os.precision(17);
    os << "point_label";
    for (int c = 0; c < e.dim; ++c) os << ",x_" << c;
    os << "\n";
    for (int i = 0; i < e.n_points(); ++i) {
        if (i < static_cast<int>(labels.size()) && !labels[i].empty())
            os << labels[i];
        else
            os << i;
        for (int c = 0; c < e.dim; ++c) os << "," << e.coords[i][c];
        os << "\n";
    }
    return os.str();
}

}  // namespace mge
