#pragma once

#include <optional>
#include <vector>

#include "echoloc/graph.hpp"

namespace echoloc {

// Orbit partition of the vertices under the full automorphism group,
// computed by equitable-partition (color refinement) pruned backtracking.
// Deterministic vertex ordering: orbits and their members come back sorted.
// n <= 16.
std::vector<std::vector<int>> automorphism_orbits(const Graph& g);

// Is there an automorphism mapping u to v?  Search stops at the first hit.
bool exists_automorphism_mapping(const Graph& g, int u, int v);

// Isomorphism g -> h as a vertex mapping, or nullopt.  Same machinery,
// exposed for corpus deduplication.
std::optional<std::vector<int>> find_isomorphism(const Graph& g, const Graph& h);

} // namespace echoloc
