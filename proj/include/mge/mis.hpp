#pragma once

#include <cstdint>
#include <vector>

namespace mge {

// Exact maximum independent set via branch-and-bound with a greedy clique
// cover bound and degree<=1 reductions. Throws BudgetExceeded past `budget`
// search nodes. Deterministic: the returned set is reproducible.
struct MisResult {
    std::vector<int> set;  // sorted
    std::uint64_t nodes = 0;
};
MisResult max_independent_set(int n, const std::vector<std::pair<int, int>>& edges,
                              std::uint64_t budget);

// Maximal (not maximum) independent set: greedy by ascending degree.
std::vector<int> greedy_independent_set(int n,
                                        const std::vector<std::pair<int, int>>& edges);

}  // namespace mge
