#include "gogkit/morphism.hpp"

#include <set>
#include <string>

#include "gogkit/errors.hpp"

namespace gogkit {

EdgePath GraphMorphism::map_path(const EdgePath& p) const {
    EdgePath out;
    for (Dart d : p.darts) {
        EdgePath img = dart_image(d);
        out.darts.insert(out.darts.end(), img.darts.begin(), img.darts.end());
    }
    return out;
}

bool GraphMorphism::is_combinatorial() const {
    for (const EdgePath& p : edge_images)
        if (p.length() != 1) return false;
    return true;
}

void GraphMorphism::validate() const {
    if (static_cast<int>(vertex_map.size()) != domain.num_vertices())
        throw ValidationError("morphism: vertex_map size mismatch");
    if (static_cast<int>(edge_images.size()) != domain.num_edges())
        throw ValidationError("morphism: edge_images size mismatch");
    for (int v : vertex_map)
        if (v < 0 || v >= codomain.num_vertices())
            throw ValidationError("morphism: vertex image out of range");
    for (int e = 0; e < domain.num_edges(); ++e) {
        const EdgePath& p = edge_images[static_cast<size_t>(e)];
        if (p.empty())
            throw ValidationError("morphism: empty image for edge " + domain.display_edge_name(e));
        for (Dart d : p.darts)
            if (d < 0 || d >= codomain.num_darts())
                throw ValidationError("morphism: dart image out of range");
        if (!p.composable_in(codomain))
            throw ValidationError("morphism: image of edge " + domain.display_edge_name(e) +
                                  " is not composable");
        Dart pos = SerreGraph::positive_dart(e);
        if (p.source(codomain) != vertex_map[static_cast<size_t>(domain.origin(pos))] ||
            p.target(codomain) != vertex_map[static_cast<size_t>(domain.terminus(pos))])
            throw ValidationError("morphism: image of edge " + domain.display_edge_name(e) +
                                  " has wrong endpoints");
    }
}

GraphMorphism identity_morphism(const SerreGraph& g) {
    GraphMorphism f;
    f.domain = g;
    f.codomain = g;
    f.vertex_map.resize(static_cast<size_t>(g.num_vertices()));
    for (int v = 0; v < g.num_vertices(); ++v) f.vertex_map[static_cast<size_t>(v)] = v;
    for (int e = 0; e < g.num_edges(); ++e)
        f.edge_images.push_back(EdgePath{{SerreGraph::positive_dart(e)}});
    return f;
}

GraphMorphism compose(const GraphMorphism& outer, const GraphMorphism& inner) {
    if (!inner.codomain.same_shape(outer.domain))
        throw ValidationError("compose: codomain/domain mismatch");
    GraphMorphism f;
    f.domain = inner.domain;
    f.codomain = outer.codomain;
    for (int v : inner.vertex_map)
        f.vertex_map.push_back(outer.vertex_map[static_cast<size_t>(v)]);
    for (const EdgePath& p : inner.edge_images)
        f.edge_images.push_back(outer.map_path(p));
    return f;
}

SubdivisionResult subdivide_domain(const GraphMorphism& f) {
    f.validate();
    SubdivisionResult out;
    SerreGraph& dom = out.map.domain;
    out.map.codomain = f.codomain;
    // Original vertices keep their ids; subdivision vertices are appended.
    for (int v = 0; v < f.domain.num_vertices(); ++v) {
        dom.add_vertex(f.domain.vertex_name(v));
        out.old_vertex_to_new.push_back(v);
    }
    out.map.vertex_map = f.vertex_map;

    for (int e = 0; e < f.domain.num_edges(); ++e) {
        const EdgePath& image = f.edge_images[static_cast<size_t>(e)];
        Dart pos = SerreGraph::positive_dart(e);
        int start = f.domain.origin(pos);
        int end = f.domain.terminus(pos);
        int len = image.length();
        EdgePath pieces;
        int prev = start;
        for (int i = 0; i < len; ++i) {
            int next;
            if (i == len - 1) {
                next = end;
            } else {
                next = dom.add_vertex();
                out.map.vertex_map.push_back(f.codomain.terminus(image.darts[static_cast<size_t>(i)]));
            }
            std::string name = f.domain.edge(e).name;
            if (len > 1 && !name.empty()) name += "." + std::to_string(i);
            int piece = dom.add_edge(prev, next, name);
            out.map.edge_images.push_back(EdgePath{{image.darts[static_cast<size_t>(i)]}});
            pieces.darts.push_back(SerreGraph::positive_dart(piece));
            prev = next;
        }
        out.old_edge_to_new.push_back(pieces);
    }
    out.map.validate();
    return out;
}

namespace {

bool injective_on_cells(const GraphMorphism& f) {
    std::set<int> vertex_images;
    for (int v : f.vertex_map)
        if (!vertex_images.insert(v).second) return false;
    std::set<int> edge_images;
    for (const EdgePath& p : f.edge_images) {
        if (p.length() != 1) return false;
        if (!edge_images.insert(SerreGraph::edge_of(p.darts[0])).second) return false;
    }
    return true;
}

} // namespace

bool is_combinatorial_embedding(const GraphMorphism& f) {
    f.validate();
    return f.is_combinatorial() && injective_on_cells(f);
}

bool is_topological_embedding(const GraphMorphism& f) {
    return injective_on_cells(subdivide_domain(f).map);
}

} // namespace gogkit
