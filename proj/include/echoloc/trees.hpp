#pragma once

#include <vector>

#include "echoloc/graph.hpp"

namespace echoloc {

// All free trees on n vertices (1 <= n <= 12), one per isomorphism class,
// in a deterministic order.  Generation is by centroid-rooted canonical
// forms: a unicentroidal tree is rooted at its centroid (every root subtree
// has at most floor((n-1)/2) vertices), a bicentroidal tree is an edge
// joining two canonical rooted trees on n/2 vertices each.
std::vector<Graph> enumerate_trees(int n);

} // namespace echoloc
