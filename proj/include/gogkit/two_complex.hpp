#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gogkit/morphism.hpp"
#include "gogkit/presentation.hpp"
#include "gogkit/serre_graph.hpp"

namespace gogkit {

/// A combinatorial 2-complex: a Serre graph plus a set of faces, each
/// attached along a closed edge path in the graph.
struct TwoComplex {
    SerreGraph skeleton;
    std::vector<EdgePath> faces;
    /// Optional labels, either empty or one per face.
    std::vector<std::string> face_names;

    int num_faces() const { return static_cast<int>(faces.size()); }
    std::string display_face_name(int f) const;
    /// V - E + F.
    int euler_characteristic() const;
    void validate() const;
};

/// Rose with one petal per generator and one face per relator.
TwoComplex presentation_complex(const PresentationData& p);

/// A homomorphism from the fundamental group(oid) of a complex to Z/m,
/// presented by a value per edge (on the positive orientation).
struct FiniteQuotientHom {
    int modulus = 1;
    std::vector<int> edge_value;

    int dart_value(Dart d) const;
    int path_value(const EdgePath& p) const;
};

/// Checks shape (modulus >= 1, one value per edge, values in range) and that
/// every face boundary evaluates to 0 mod m; the latter failing is a
/// ConstructionError, the former a ValidationError.
void validate_hom(const TwoComplex& x, const FiniteQuotientHom& h);

/// The m-fold cyclic cover classified by `h`.  Cell ids follow the scheme
/// base_id * m + residue, and cell names gain a ".residue" suffix.
struct CoverComplexResult {
    TwoComplex complex;
    GraphMorphism projection; // cover skeleton -> base skeleton
    std::vector<int> vertex_base, vertex_residue;
    std::vector<int> edge_base, edge_residue;
    std::vector<int> face_base, face_residue;
};

CoverComplexResult cover_complex(const TwoComplex& x, const FiniteQuotientHom& h);

/// Lift of a path in the base to the cover, starting at the copy of the
/// path's source vertex with the given residue.  Darts use the cover's id
/// scheme (edge copies at base_edge * m + residue).
EdgePath lift_path(const TwoComplex& base, const FiniteQuotientHom& h, const EdgePath& p,
                   int start_residue);

struct ComplexIso {
    std::vector<int> vertex_map;
    std::vector<int> dart_map;
    std::vector<int> face_map;
};

/// Isomorphism of 2-complexes: a graph isomorphism of skeletons carrying each
/// face boundary to a face boundary up to rotation and reversal.
std::optional<ComplexIso> complex_isomorphic(const TwoComplex& a, const TwoComplex& b);

} // namespace gogkit
