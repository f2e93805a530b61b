#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "gogkit/serre_graph.hpp"

namespace gogkit {

// Dart-level isomorphism: dart_map commutes with origin and inverse, and
// vertex_map is the induced vertex bijection.
struct GraphIso {
    std::vector<int> vertex_map; // domain vertex -> codomain vertex
    std::vector<Dart> dart_map;  // domain dart -> codomain dart
};

enum class IsoMode {
    // One canonical dart matching per vertex bijection.  Enough for plain
    // existence queries: permuting parallel edges or flipping loops never
    // changes whether a vertex bijection extends to darts.
    vertex_canonical,
    // Enumerate every dart-level matching (permutations of parallel bundles,
    // both orientations of loops).  Needed when a caller imposes extra
    // constraints, e.g. face matching or commuting squares.
    dart_exhaustive,
};

// Plain backtracking with valence/loop/multiplicity pruning; iterates ids in
// ascending order, so the visit order is deterministic.  visit returns true
// to stop the search; the function returns whether a visit stopped it.
bool for_each_isomorphism(const SerreGraph& g, const SerreGraph& h,
                          const std::function<bool(const GraphIso&)>& visit,
                          IsoMode mode = IsoMode::vertex_canonical);

// First isomorphism in backtracking order, or nullopt.
std::optional<GraphIso> graph_isomorphic(const SerreGraph& g, const SerreGraph& h);

} // namespace gogkit
