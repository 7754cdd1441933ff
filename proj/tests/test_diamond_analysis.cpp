#include "mge/diamond_analysis.hpp"
#include "mge/families.hpp"
#include "mge/metric.hpp"
#include "mge/tol.hpp"

#include "doctest.h"

#include <algorithm>
#include <queue>

using namespace mge;

namespace {

// Independent oracle: largest delta-separated subset of `points`, bitmask
// enumeration. Only usable for small member lists.
int brute_max_separated_within(const MetricSpace& m, const std::vector<int>& points,
                               double delta) {
    int best = 0;
    REQUIRE(points.size() <= 20);
    for (unsigned mask = 0; mask < (1u << points.size()); ++mask) {
        std::vector<int> pts;
        for (size_t i = 0; i < points.size(); ++i)
            if (mask & (1u << i)) pts.push_back(points[i]);
        bool ok = true;
        for (size_t a = 0; a < pts.size() && ok; ++a)
            for (size_t b = a + 1; b < pts.size() && ok; ++b)
                if (m.dist(pts[a], pts[b]) < delta &&
                    !approx_eq(m.dist(pts[a], pts[b]), delta))
                    ok = false;
        if (ok) best = std::max(best, (int)pts.size());
    }
    return best;
}

// BFS component diameters after deleting `removed`, computed from scratch.
std::vector<int> component_diameters(const WeightedGraph& g,
                                     const std::vector<int>& removed) {
    std::vector<char> alive(g.n, 1);
    for (int v : removed) alive[v] = 0;
    auto adj = adjacency(g);
    std::vector<int> comp(g.n, -1), out;
    for (int s = 0; s < g.n; ++s) {
        if (!alive[s] || comp[s] >= 0) continue;
        std::vector<int> members;
        std::queue<int> q;
        q.push(s);
        comp[s] = s;
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            members.push_back(v);
            for (auto [u, e] : adj[v])
                if (alive[u] && comp[u] < 0) {
                    comp[u] = s;
                    q.push(u);
                }
        }
        int diam = 0;
        for (int src : members) {  // BFS from every member, unit weights
            std::vector<int> d(g.n, -1);
            std::queue<int> qq;
            qq.push(src);
            d[src] = 0;
            while (!qq.empty()) {
                int v = qq.front();
                qq.pop();
                diam = std::max(diam, d[v]);
                for (auto [u, e] : adj[v])
                    if (alive[u] && d[u] < 0) {
                        d[u] = d[v] + 1;
                        qq.push(u);
                    }
            }
        }
        out.push_back(diam);
    }
    return out;
}

}  // namespace

TEST_CASE("subdiamonds by height") {
    auto [g, st] = build_diamond(3);
    for (int h = 0; h <= 3; ++h) {
        auto nodes = subdiamonds_of_height(st, h);
        CHECK((long long)nodes.size() == (1LL << (2 * (3 - h))));
        for (int node : nodes) CHECK(st.subdiamonds[node].height == (1 << h));
    }
    CHECK_THROWS_AS(subdiamonds_of_height(st, 4), std::invalid_argument);
    CHECK_THROWS_AS(subdiamonds_of_height(st, -1), std::invalid_argument);
}

TEST_CASE("exits separate interior from exterior") {
    for (int n = 1; n <= 3; ++n) {
        auto [g, st] = build_diamond(n);
        CHECK_THROWS_AS(exits(st, 0), std::invalid_argument);
        for (size_t node = 1; node < st.subdiamonds.size(); ++node) {
            auto [top, bottom] = exits(st, (int)node);
            CHECK(top == st.subdiamonds[node].top);
            CHECK(bottom == st.subdiamonds[node].bottom);
            CHECK(exits_disconnect(st, g, (int)node));
        }
    }
    // sabotage: a bridge from a subdiamond interior straight to the exterior
    auto [g, st] = build_diamond(2);
    int node = 1;
    const auto& sd = st.subdiamonds[node];
    int interior = sd.vertex_a;  // inside node 1, not an exit
    int exterior = -1;
    for (int v = 0; v < g.n; ++v)
        if (!std::binary_search(sd.members.begin(), sd.members.end(), v)) exterior = v;
    REQUIRE(exterior >= 0);
    g.edges.push_back({interior, exterior, 1.0});
    CHECK_FALSE(exits_disconnect(st, g, node));
}

TEST_CASE("generation labels and counts") {
    for (int n = 1; n <= 4; ++n) {
        auto [g, st] = build_diamond(n);
        auto gen = generations(st);
        CHECK(gen == st.generation);
        std::vector<long long> count(n + 1, 0);
        for (int v = 0; v < g.n; ++v) {
            CHECK(gen[v] >= 0);
            CHECK(gen[v] <= n);
            count[gen[v]]++;
        }
        CHECK(count[0] == 2);
        for (int r = 1; r <= n; ++r) CHECK(count[r] == 2 * (1LL << (2 * (n - r))));
        // generation r vertices were born at step n - r + 1
        for (int v = 0; v < g.n; ++v)
            if (gen[v] > 0) CHECK(st.vertex_birth[v] == n - gen[v] + 1);
    }
}

TEST_CASE("generation neighborhoods sit inside one subdiamond") {
    for (int n = 1; n <= 3; ++n) {
        auto [g, st] = build_diamond(n);
        auto m = shortest_path_metric(g);
        for (int r = 1; r <= n; ++r) {
            auto rep = verify_generation_neighborhood(st, m, r);
            CHECK(rep.ok());
        }
        // and independently: for each Z_r vertex there is a height-2^r
        // subdiamond containing its full 2^(r-1)-ball
        for (int r = 1; r <= n; ++r) {
            auto heights = subdiamonds_of_height(st, r);
            for (int v = 0; v < g.n; ++v) {
                if (st.generation[v] != r) continue;
                std::vector<int> ball;
                for (int u = 0; u < g.n; ++u)
                    if (approx_le(m.dist(v, u), (double)(1 << (r - 1)))) ball.push_back(u);
                bool contained = false;
                for (int node : heights) {
                    const auto& mem = st.subdiamonds[node].members;
                    contained |= std::includes(mem.begin(), mem.end(), ball.begin(),
                                               ball.end());
                }
                CHECK(contained);
            }
        }
    }
}

TEST_CASE("deleting a generation shatters the diamond into small pieces") {
    for (int n = 1; n <= 4; ++n) {
        auto [g, st] = build_diamond(n);
        for (int r = 1; r <= n; ++r) {
            auto rep = verify_generation_components(st, g, r);
            CHECK(rep.ok());
            // oracle: recompute components and their diameters from scratch
            std::vector<int> zr;
            for (int v = 0; v < g.n; ++v)
                if (st.generation[v] == r) zr.push_back(v);
            for (int diam : component_diameters(g, zr)) CHECK(diam < (1 << r));
        }
    }
}

TEST_CASE("entropy bound against the brute-force oracle") {
    auto [g, st] = build_diamond(2);
    auto m = shortest_path_metric(g);
    for (int p = 0; p <= 2; ++p) {
        auto rep = entropy_check(st, m, p);
        CHECK(rep.ok());
        for (const auto& sd : st.subdiamonds) {
            int hp = 0;
            while ((1 << hp) < sd.height) ++hp;
            if (hp < p || sd.members.size() > 16) continue;
            int brute = brute_max_separated_within(m, sd.members, (double)(1 << p));
            CHECK(brute <= 2 * (1 << (2 * (hp - p))));
            if (hp == p) CHECK(brute == 2);
        }
    }
}

TEST_CASE("entropy tight cases are exactly the height-2^p subdiamonds") {
    auto [g, st] = build_diamond(3);
    auto m = shortest_path_metric(g);
    for (int p = 1; p <= 3; ++p) {
        auto rep = entropy_check(st, m, p);
        CHECK(rep.ok());
        int tight_at_hp = 0;
        for (const auto& t : rep.tight_cases)
            if (t.at("height").get<int>() == (1 << p)) {
                CHECK(t.at("size").get<int>() == 2);
                ++tight_at_hp;
            }
        CHECK((long long)tight_at_hp == (1LL << (2 * (3 - p))));
    }
    auto all = entropy_check_all(st, m);
    CHECK(all.ok());
}

TEST_CASE("entropy search reports uncertified when the budget runs out") {
    auto [g, st] = build_diamond(3);
    auto m = shortest_path_metric(g);
    EntropyOptions opts;
    opts.budget = 0;  // even the root search node is over budget
    auto rep = entropy_check(st, m, 1, opts);
    CHECK_FALSE(rep.certified);
    CHECK_FALSE(rep.ok());
    opts.force_exact = false;  // greedy escalation path, same contract
    auto rep2 = entropy_check(st, m, 1, opts);
    CHECK_FALSE(rep2.certified);
}

TEST_CASE("two-sided certificate checker") {
    auto [g, st] = build_diamond(1);
    auto md = shortest_path_metric(g);
    auto tree = build_binary_tree(1);
    auto mt = shortest_path_metric(tree);
    int root = find_vertex_by_label(tree, "");
    int c0 = find_vertex_by_label(tree, "0");
    int c1 = find_vertex_by_label(tree, "1");
    int bottom = find_vertex_by_label(g, "bottom");
    int top = find_vertex_by_label(g, "top");
    int ea = find_vertex_by_label(g, "e.a");
    int eb = find_vertex_by_label(g, "e.b");
    std::vector<int> f(3);
    f[root] = bottom;
    f[c0] = ea;
    f[c1] = eb;
    // the map is an isometry: certificate holds at p = 0, k = 0
    CHECK_FALSE(bilip_certificate_check(f, mt, md, 0, 0).has_value());
    // doubling the lower scale breaks the lower inequality
    auto w = bilip_certificate_check(f, mt, md, 1, 0);
    REQUIRE(w.has_value());
    CHECK(w->lower_side);
    CHECK(w->u == 0);
    CHECK(w->v == 1);
    // mapping the child to the far corner breaks the upper inequality
    f[c0] = top;
    f[c1] = ea;
    auto w2 = bilip_certificate_check(f, mt, md, 0, 0);
    REQUIRE(w2.has_value());
    CHECK_FALSE(w2->lower_side);
    CHECK(w2->tree_dist == doctest::Approx(1));
    CHECK(w2->diamond_dist == doctest::Approx(2));
}

TEST_CASE("exit passage predicate") {
    auto [g, st] = build_diamond(1);
    auto m = shortest_path_metric(g);
    int bottom = find_vertex_by_label(g, "bottom");
    int ea = find_vertex_by_label(g, "e.a");
    int eb = find_vertex_by_label(g, "e.b");
    // e.a -> bottom -> e.b costs 2: within 2^1 * 2^0 but not 2^0 * 2^0
    CHECK(leaves_through_exit(m, ea, eb, bottom, 0, 1));
    CHECK_FALSE(leaves_through_exit(m, ea, eb, bottom, 0, 0));
}

TEST_CASE("canonical shortest paths use each weight class sparingly") {
    for (int n = 1; n <= 3; ++n) {
        auto [g, st] = build_weighted_diamond(n, 0.25);
        auto rep = claim_two_edges_per_class(g, st);
        CHECK(rep.ok());
        CHECK(rep.violations.empty());
    }
    // exhaustive variant over every shortest path, small levels
    for (int n = 1; n <= 2; ++n) {
        auto [g, st] = build_weighted_diamond(n, 0.25);
        auto rep = claim_two_edges_per_class(g, st, true);
        CHECK(rep.ok());
    }
    // a different eps changes the weights but not the claim
    auto [g, st] = build_weighted_diamond(3, 0.1);
    CHECK(claim_two_edges_per_class(g, st).ok());
}
