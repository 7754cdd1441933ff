#pragma once

#include "mge/graph.hpp"

#include <vector>

namespace mge {

// All non-isomorphic free trees on n vertices, unit weights. Rooted trees are
// enumerated by level-sequence successor and deduplicated by a canonical form
// rooted at the centroid. Counts: 1, 1, 1, 2, 3, 6, 11, 23, 47, 106 for
// n = 1..10.
std::vector<WeightedGraph> all_free_trees(int n);

}  // namespace mge
