#include "mge/mis.hpp"

#include "mge/tol.hpp"

#include <algorithm>

namespace mge {

namespace {

struct Bits {
    std::vector<std::uint64_t> w;
    explicit Bits(int n = 0) : w((n + 63) / 64, 0) {}
    void set(int i) { w[i >> 6] |= 1ULL << (i & 63); }
    void reset(int i) { w[i >> 6] &= ~(1ULL << (i & 63)); }
    bool test(int i) const { return (w[i >> 6] >> (i & 63)) & 1; }
    bool empty() const {
        for (auto x : w)
            if (x) return false;
        return true;
    }
    int count() const {
        int c = 0;
        for (auto x : w) c += __builtin_popcountll(x);
        return c;
    }
    void and_not(const Bits& o) {
        for (size_t i = 0; i < w.size(); ++i) w[i] &= ~o.w[i];
    }
    int count_and(const Bits& o) const {
        int c = 0;
        for (size_t i = 0; i < w.size(); ++i)
            c += __builtin_popcountll(w[i] & o.w[i]);
        return c;
    }
    bool subset_of(const Bits& o) const {
        for (size_t i = 0; i < w.size(); ++i)
            if (w[i] & ~o.w[i]) return false;
        return true;
    }
    template <class F>
    void for_each(F f) const {
        for (size_t i = 0; i < w.size(); ++i) {
            std::uint64_t x = w[i];
            while (x) {
                int b = __builtin_ctzll(x);
                f(static_cast<int>(i * 64 + b));
                x &= x - 1;
            }
        }
    }
};

struct Solver {
    int n;
    std::vector<Bits> nbr;
    std::uint64_t budget;
    std::uint64_t nodes = 0;
    std::vector<int> best;
    std::vector<int> cur;

    int clique_cover_bound(const Bits& p) const {
        // Greedy clique partition of the conflict graph restricted to p.
        std::vector<Bits> cliques;
        int count = 0;
        p.for_each([&](int v) {
            for (auto& c : cliques) {
                if (c.subset_of(nbr[v])) {
                    c.set(v);
                    return;
                }
            }
            cliques.emplace_back(n);
            cliques.back().set(v);
            ++count;
        });
        return count;
    }

    void search(Bits p) {
        if (++nodes > budget)
            throw BudgetExceeded("independent-set search exceeded node budget");
        // Reductions: vertices with at most one live conflict are always safe.
        bool reduced = true;
        while (reduced) {
            reduced = false;
            int pick = -1;
            p.for_each([&](int v) {
                if (pick < 0 && p.count_and(nbr[v]) <= 1) pick = v;
            });
            if (pick >= 0) {
                cur.push_back(pick);
                p.reset(pick);
                p.and_not(nbr[pick]);
                reduced = true;
            }
        }
        if (p.empty()) {
            if (cur.size() > best.size()) best = cur;
            return;
        }
        if (static_cast<int>(cur.size()) + clique_cover_bound(p) <=
            static_cast<int>(best.size()))
            return;
        // Branch on a maximum-degree vertex (smallest index on ties).
        int v = -1, deg = -1;
        p.for_each([&](int u) {
            int d = p.count_and(nbr[u]);
            if (d > deg) {
                deg = d;
                v = u;
            }
        });
        size_t mark = cur.size();
        {
            Bits q = p;
            q.reset(v);
            q.and_not(nbr[v]);
            cur.push_back(v);
            search(q);
            cur.resize(mark);
        }
        {
            Bits q = p;
            q.reset(v);
            search(q);
            cur.resize(mark);
        }
    }
};

}  // namespace

std::vector<int> greedy_independent_set(
    int n, const std::vector<std::pair<int, int>>& edges) {
    std::vector<std::vector<int>> adj(n);
    for (auto [a, b] : edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return adj[a].size() < adj[b].size();
    });
    std::vector<char> banned(n, 0);
    std::vector<int> out;
    for (int v : order) {
        if (banned[v]) continue;
        out.push_back(v);
        for (int u : adj[v]) banned[u] = 1;
    }
    std::sort(out.begin(), out.end());
    return out;
}

MisResult max_independent_set(int n, const std::vector<std::pair<int, int>>& edges,
                              std::uint64_t budget) {
    Solver s;
    s.n = n;
    s.budget = budget;
    s.nbr.assign(n, Bits(n));
    for (auto [a, b] : edges) {
        s.nbr[a].set(b);
        s.nbr[b].set(a);
    }
    s.best = greedy_independent_set(n, edges);
    Bits all(n);
    for (int i = 0; i < n; ++i) all.set(i);
    s.search(all);
    std::sort(s.best.begin(), s.best.end());
    return {s.best, s.nodes};
}

}  // namespace mge
