#pragma once

#include <utility>
#include <vector>

#include "gogkit/serre_graph.hpp"

namespace gogkit {

// Result of erasing bivalent vertices: each new edge corresponds to a chain
// of old edges, recorded as the old-dart path realizing its positive dart.
struct SmoothingResult {
    SerreGraph graph;
    std::vector<int> old_vertex_to_new;     // -1 if the vertex was smoothed away
    std::vector<EdgePath> new_edge_to_old;  // per new edge: chain of old darts

    int rewrite_vertex(int old_vertex) const;             // throws if removed
    // Re-express a path of old darts as new darts.  Requires the path to
    // traverse complete chains, i.e. it never reverses at a smoothed vertex
    // and both endpoints survive.
    EdgePath rewrite_path(const EdgePath& old_path) const;

    std::vector<std::pair<Dart, int>> old_dart_location; // old dart -> (new dart, 1-based position)
};

// Repeatedly remove unprotected valence-2 vertices, merging their two edges;
// a vertex whose two darts belong to a single loop is kept (removing it would
// leave a circle with no vertex).  chi is preserved by every step.  Vertices
// are scanned in ascending id order, so the result is deterministic.
SmoothingResult smooth_bivalent(const SerreGraph& g, const std::vector<int>& protected_vertices);

} // namespace gogkit
