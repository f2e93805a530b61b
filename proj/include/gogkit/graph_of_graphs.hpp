#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gogkit/graph_iso.hpp"
#include "gogkit/morphism.hpp"
#include "gogkit/presentation.hpp"
#include "gogkit/serre_graph.hpp"
#include "gogkit/two_complex.hpp"
#include "gogkit/whitehead.hpp"

namespace gogkit {

/// A graph of graphs: an underlying graph Gamma whose vertices carry graphs
/// X_v and whose edges carry graphs X_e together with a pair of pi1-injective
/// attaching maps f_iota: X_e -> X_{iota(e)} and f_tau: X_e -> X_{tau(e)},
/// where iota/tau are the endpoints of the positive orientation of e.
struct GraphOfGraphs {
    SerreGraph underlying;
    std::vector<SerreGraph> vertex_graphs;
    std::vector<SerreGraph> edge_graphs;
    std::vector<GraphMorphism> iota_maps;
    std::vector<GraphMorphism> tau_maps;

    /// Structure checks: one graph per cell, connected nonempty pieces, maps
    /// with matching shapes, and pi1-injectivity of every attaching map.
    void validate() const;
};

/// Exact structural identity (same ids everywhere; names ignored).
bool same_structure(const GraphOfGraphs& a, const GraphOfGraphs& b);

struct EdgeEndReport {
    bool combinatorial_embedding = false;
    bool topological_embedding = false;
    Ternary free_factor = Ternary::unknown;
};

/// Hierarchy of cleanliness conditions on the attaching maps.
///  - vh_clean: every attaching map is a combinatorial embedding;
///  - geometrically_clean: every attaching map is a topological embedding;
///  - algebraically_clean: the pi1-image of every attaching map is a free
///    factor of the target vertex group.
/// vh_clean implies geometrically_clean implies algebraically_clean.
struct CleanlinessReport {
    std::vector<EdgeEndReport> iota_ends, tau_ends;
    bool vh_clean = false;
    bool geometrically_clean = false;
    Ternary algebraically_clean = Ternary::unknown;
};

CleanlinessReport classify_cleanliness(const GraphOfGraphs& g, const FreeFactorOptions& opts = {});

/// Total space: one vertical edge per vertex-graph edge, one horizontal edge
/// per edge-graph vertex (oriented iota side -> tau side), and one band face
/// per edge-graph edge with boundary
///   bottom(iota image) . h_Q . reverse(top(tau image)) . h_P^{-1}.
/// Cell names: vertical "{gamma_v}.{edge}", horizontal "{gamma_e}.{vertex}",
/// vertices "{gamma_v}.{vertex}", bands "{gamma_e}.{edge}".
struct TotalSpaceResult {
    TwoComplex complex;

    enum class CellKind { vertical, horizontal };
    struct VertexSrc { int gamma_vertex = 0; int vertex = 0; };
    struct EdgeSrc { CellKind kind = CellKind::vertical; int gamma_cell = 0; int cell = 0; };
    struct FaceSrc { int gamma_edge = 0; int edge = 0; int bottom_len = 0; int top_len = 0; };

    std::vector<VertexSrc> vertex_src;
    std::vector<EdgeSrc> edge_src;
    std::vector<FaceSrc> face_src;

    std::vector<std::vector<int>> vertex_at;     // [gamma_v][vertex] -> complex vertex
    std::vector<std::vector<int>> vertical_at;   // [gamma_v][edge]   -> complex edge
    std::vector<std::vector<int>> horizontal_at; // [gamma_e][vertex] -> complex edge
    std::vector<std::vector<int>> band_at;       // [gamma_e][edge]   -> complex face
};

TotalSpaceResult total_space(const GraphOfGraphs& g);

/// Completes a partial assignment (values on vertical edges; entries at
/// horizontal positions are ignored) to a hom on the whole total space by
/// solving the band equations: traversing the band of an edge-graph edge
/// P -> Q forces value(h_Q) - value(h_P) = top value - bottom value.  Each
/// edge zone is seeded at its least vertex with value 0 and solved by
/// breadth-first propagation; an inconsistent system raises a
/// ConstructionError.
FiniteQuotientHom solve_horizontal_hom(const TotalSpaceResult& ts, int modulus,
                                       const std::vector<int>& vertical_values);

/// Presentation of the fundamental group relative to the lex-least spanning
/// tree of the underlying graph.  Generators: a basis "v{i}b{j}" per vertex
/// graph, then one stable letter "t{e}" per non-tree edge.  Relations: per
/// edge and per basis loop b of the edge graph, conjugation of the iota-side
/// image into the tau-side image (with the stable letter when off-tree).
PresentationData pi1_presentation(const GraphOfGraphs& g);

/// Finite cyclic cover of a graph of graphs, classified by a hom on its
/// total space.  The covering total space is reassembled zone by zone:
/// vertex-zone components become new vertices, edge-zone components (joined
/// through band lifts) become new edges.  Components are ordered by least
/// contained cover cell id.
struct GogCover {
    GraphOfGraphs gog;
    std::vector<int> vertex_base; // new underlying vertex -> base underlying vertex
    std::vector<int> edge_base;   // new underlying edge   -> base underlying edge
};

GogCover cover_gog(const GraphOfGraphs& g, const FiniteQuotientHom& h);

/// Smooths bivalent vertices: first in every edge graph (unconditionally),
/// then in every vertex graph protecting attaching-map vertex images and the
/// interior vertices at which some attaching-map image path backtracks, and
/// rewrites all attaching maps through the smoothing correspondences.
GraphOfGraphs normalize_gog(const GraphOfGraphs& g);

struct GogIso {
    GraphIso underlying;
    std::vector<GraphIso> vertex_isos;      // per domain underlying vertex
    std::vector<GraphIso> edge_isos;        // per domain underlying edge
    std::vector<bool> edge_flipped;         // image edge traversed against orientation
};

/// Isomorphism of graphs of graphs: compatible isomorphisms of the underlying
/// graph and of every vertex/edge graph making all attachment squares
/// commute; reversing an underlying edge pairs f_iota with the other side's
/// f_tau.
std::optional<GogIso> gog_isomorphic(const GraphOfGraphs& a, const GraphOfGraphs& b);

} // namespace gogkit
