#pragma once

#include <vector>

#include "gogkit/serre_graph.hpp"

namespace gogkit {

// Vertex-to-vertex graph map sending each dart to a nonempty edge path.
// Only the image of each positive dart is stored; the negative dart's image
// is the reversed path, so dmap(inv d) = reverse(dmap(d)) holds by
// construction.  Fully general topological maps (vertex into an open edge)
// are excluded by this representation.
struct GraphMorphism {
    SerreGraph domain;
    SerreGraph codomain;
    std::vector<int> vertex_map;        // domain vertex -> codomain vertex
    std::vector<EdgePath> edge_images;  // per geometric edge: image of its positive dart

    EdgePath dart_image(Dart d) const {
        const EdgePath& p = edge_images[static_cast<size_t>(d >> 1)];
        return (d & 1) ? p.reversed() : p;
    }

    // Concatenated image of a path (not freely reduced: it is the actual track).
    EdgePath map_path(const EdgePath& p) const;

    bool is_combinatorial() const; // every image has length 1
    void validate() const;         // throws ValidationError
};

GraphMorphism identity_morphism(const SerreGraph& g);

// outer(inner(x)): inner.codomain must equal outer.domain structurally.
GraphMorphism compose(const GraphMorphism& outer, const GraphMorphism& inner);

// Split each domain edge into length(image) pieces so the map becomes
// combinatorial.  New vertices are appended after the original ones; the
// pieces of edge e are laid out consecutively, in ascending e order.
struct SubdivisionResult {
    GraphMorphism map;                     // combinatorial, same codomain
    std::vector<int> old_vertex_to_new;    // identity embedding of old vertices
    std::vector<EdgePath> old_edge_to_new; // old positive dart -> path of new darts
};

SubdivisionResult subdivide_domain(const GraphMorphism& f);

// Injective on vertices and geometric edges, with every image a single dart.
bool is_combinatorial_embedding(const GraphMorphism& f);

// Injective realization: combinatorial embedding after subdividing the domain.
bool is_topological_embedding(const GraphMorphism& f);

} // namespace gogkit
