#include "gogkit/two_complex.hpp"

#include <algorithm>
#include <set>

#include "gogkit/errors.hpp"

namespace gogkit {

std::string TwoComplex::display_face_name(int f) const {
    if (f >= 0 && f < static_cast<int>(face_names.size()) && !face_names[static_cast<size_t>(f)].empty())
        return face_names[static_cast<size_t>(f)];
    return "f" + std::to_string(f);
}

int TwoComplex::euler_characteristic() const {
    return skeleton.num_vertices() - skeleton.num_edges() + num_faces();
}

void TwoComplex::validate() const {
    if (!face_names.empty() && face_names.size() != faces.size())
        throw ValidationError("complex: face name count mismatch");
    for (const EdgePath& p : faces) {
        if (p.empty()) throw ValidationError("complex: empty face boundary");
        if (!p.composable_in(skeleton) || p.source(skeleton) != p.target(skeleton))
            throw ValidationError("complex: face boundary is not a closed path");
    }
}

TwoComplex presentation_complex(const PresentationData& p) {
    p.validate();
    TwoComplex x;
    int v = x.skeleton.add_vertex("v0");
    for (const std::string& g : p.generators) x.skeleton.add_edge(v, v, g);
    for (size_t i = 0; i < p.relators.size(); ++i) {
        const Word r = reduce(p.relators[i]);
        if (r.empty()) throw ValidationError("presentation_complex: empty relator");
        EdgePath boundary;
        for (const Letter& l : r.letters) {
            Dart d = SerreGraph::positive_dart(l.gen);
            boundary.darts.push_back(l.sign > 0 ? d : SerreGraph::inverse(d));
        }
        x.faces.push_back(boundary);
        x.face_names.push_back("r" + std::to_string(i));
    }
    x.validate();
    return x;
}

int FiniteQuotientHom::dart_value(Dart d) const {
    int v = edge_value[static_cast<size_t>(SerreGraph::edge_of(d))];
    return SerreGraph::is_positive(d) ? v : (modulus - v) % modulus;
}

int FiniteQuotientHom::path_value(const EdgePath& p) const {
    int s = 0;
    for (Dart d : p.darts) s = (s + dart_value(d)) % modulus;
    return s;
}

void validate_hom(const TwoComplex& x, const FiniteQuotientHom& h) {
    x.validate();
    if (h.modulus < 1) throw ValidationError("hom: modulus must be >= 1");
    if (static_cast<int>(h.edge_value.size()) != x.skeleton.num_edges())
        throw ValidationError("hom: one value per edge required");
    for (int v : h.edge_value)
        if (v < 0 || v >= h.modulus) throw ValidationError("hom: value out of range");
    for (size_t f = 0; f < x.faces.size(); ++f)
        if (h.path_value(x.faces[f]) != 0)
            throw ConstructionError("hom: face " + x.display_face_name(static_cast<int>(f)) +
                                    " does not evaluate to zero");
}

EdgePath lift_path(const TwoComplex& base, const FiniteQuotientHom& h, const EdgePath& p,
                   int start_residue) {
    if (!p.empty() && !p.composable_in(base.skeleton))
        throw ValidationError("lift_path: path is not composable in the base");
    const int m = h.modulus;
    EdgePath out;
    int res = start_residue % m;
    for (Dart d : p.darts) {
        int e = SerreGraph::edge_of(d);
        if (SerreGraph::is_positive(d)) {
            out.darts.push_back(SerreGraph::positive_dart(e * m + res));
            res = (res + h.edge_value[static_cast<size_t>(e)]) % m;
        } else {
            int q = (res - h.edge_value[static_cast<size_t>(e)] % m + m) % m;
            out.darts.push_back(SerreGraph::negative_dart(e * m + q));
            res = q;
        }
    }
    return out;
}

CoverComplexResult cover_complex(const TwoComplex& x, const FiniteQuotientHom& h) {
    validate_hom(x, h);
    const int m = h.modulus;
    CoverComplexResult r;
    for (int v = 0; v < x.skeleton.num_vertices(); ++v) {
        for (int q = 0; q < m; ++q) {
            r.complex.skeleton.add_vertex(x.skeleton.display_vertex_name(v) + "." + std::to_string(q));
            r.vertex_base.push_back(v);
            r.vertex_residue.push_back(q);
        }
    }
    for (int e = 0; e < x.skeleton.num_edges(); ++e) {
        int val = h.edge_value[static_cast<size_t>(e)];
        for (int q = 0; q < m; ++q) {
            r.complex.skeleton.add_edge(x.skeleton.edge(e).from * m + q,
                                        x.skeleton.edge(e).to * m + (q + val) % m,
                                        x.skeleton.display_edge_name(e) + "." + std::to_string(q));
            r.edge_base.push_back(e);
            r.edge_residue.push_back(q);
        }
    }
    for (int f = 0; f < x.num_faces(); ++f) {
        const EdgePath& p = x.faces[static_cast<size_t>(f)];
        for (int q = 0; q < m; ++q) {
            r.complex.faces.push_back(lift_path(x, h, p, q));
            r.complex.face_names.push_back(x.display_face_name(f) + "." + std::to_string(q));
            r.face_base.push_back(f);
            r.face_residue.push_back(q);
        }
    }
    r.complex.validate();

    r.projection.domain = r.complex.skeleton;
    r.projection.codomain = x.skeleton;
    for (int v = 0; v < r.complex.skeleton.num_vertices(); ++v)
        r.projection.vertex_map.push_back(r.vertex_base[static_cast<size_t>(v)]);
    for (int e = 0; e < r.complex.skeleton.num_edges(); ++e) {
        EdgePath im;
        im.darts.push_back(SerreGraph::positive_dart(r.edge_base[static_cast<size_t>(e)]));
        r.projection.edge_images.push_back(im);
    }
    r.projection.validate();
    return r;
}

namespace {

struct IsoSearch {
    const TwoComplex& A;
    const TwoComplex& B;
    std::vector<int> vmap, dmap, fmap;
    std::vector<bool> vused, dused, fused;

    IsoSearch(const TwoComplex& a, const TwoComplex& b)
        : A(a), B(b),
          vmap(static_cast<size_t>(a.skeleton.num_vertices()), -1),
          dmap(static_cast<size_t>(a.skeleton.num_darts()), -1),
          fmap(a.faces.size(), -1),
          vused(static_cast<size_t>(b.skeleton.num_vertices()), false),
          dused(static_cast<size_t>(b.skeleton.num_darts()), false),
          fused(b.faces.size(), false) {}

    struct Snapshot {
        std::vector<int> vmap, dmap, fmap;
        std::vector<bool> vused, dused, fused;
    };
    Snapshot save() const { return {vmap, dmap, fmap, vused, dused, fused}; }
    void restore(const Snapshot& s) {
        vmap = s.vmap; dmap = s.dmap; fmap = s.fmap;
        vused = s.vused; dused = s.dused; fused = s.fused;
    }

    bool assign_vertex(int v, int v2) {
        if (vmap[static_cast<size_t>(v)] != -1) return vmap[static_cast<size_t>(v)] == v2;
        if (vused[static_cast<size_t>(v2)]) return false;
        vmap[static_cast<size_t>(v)] = v2;
        vused[static_cast<size_t>(v2)] = true;
        return true;
    }

    bool assign_dart(Dart d, Dart d2) {
        if (dmap[static_cast<size_t>(d)] != -1) return dmap[static_cast<size_t>(d)] == d2;
        if (dused[static_cast<size_t>(d2)]) return false;
        if (!assign_vertex(A.skeleton.origin(d), B.skeleton.origin(d2))) return false;
        if (!assign_vertex(A.skeleton.terminus(d), B.skeleton.terminus(d2))) return false;
        dmap[static_cast<size_t>(d)] = d2;
        dmap[static_cast<size_t>(SerreGraph::inverse(d))] = SerreGraph::inverse(d2);
        dused[static_cast<size_t>(d2)] = true;
        dused[static_cast<size_t>(SerreGraph::inverse(d2))] = true;
        return true;
    }

    // Faces first: aligning a face forces the images of every dart on its
    // boundary, and shared darts then pin down neighbouring faces.
    bool solve_faces() {
        int pick = -1;
        for (size_t f = 0; f < A.faces.size(); ++f) {
            if (fmap[f] != -1) continue;
            bool touched = false;
            for (Dart d : A.faces[f].darts)
                if (dmap[static_cast<size_t>(d)] != -1) { touched = true; break; }
            if (touched) { pick = static_cast<int>(f); break; }
        }
        if (pick == -1) {
            for (size_t f = 0; f < A.faces.size(); ++f)
                if (fmap[f] == -1) { pick = static_cast<int>(f); break; }
        }
        if (pick == -1) return solve_remainder();

        const EdgePath& p = A.faces[static_cast<size_t>(pick)];
        const int L = p.length();
        for (size_t g = 0; g < B.faces.size(); ++g) {
            if (fused[g] || B.faces[g].length() != L) continue;
            for (int dir = 0; dir < 2; ++dir) {
                EdgePath q = dir ? B.faces[g].reversed() : B.faces[g];
                for (int r = 0; r < L; ++r) {
                    Snapshot snap = save();
                    fmap[static_cast<size_t>(pick)] = static_cast<int>(g);
                    fused[g] = true;
                    bool ok = true;
                    for (int i = 0; i < L && ok; ++i)
                        ok = assign_dart(p.darts[static_cast<size_t>(i)],
                                         q.darts[static_cast<size_t>((i + r) % L)]);
                    if (ok && solve_faces()) return true;
                    restore(snap);
                }
            }
        }
        return false;
    }

    // Remaining darts lie on no face; match them by plain backtracking.
    bool solve_remainder() {
        for (Dart d = 0; d < A.skeleton.num_darts(); d += 2) {
            if (dmap[static_cast<size_t>(d)] != -1) continue;
            for (Dart d2 = 0; d2 < B.skeleton.num_darts(); ++d2) {
                if (dused[static_cast<size_t>(d2)]) continue;
                Snapshot snap = save();
                if (assign_dart(d, d2) && solve_remainder()) return true;
                restore(snap);
            }
            return false;
        }
        // All darts matched; pair leftover isolated vertices in order.
        std::vector<int> free_cod;
        for (size_t v2 = 0; v2 < vused.size(); ++v2)
            if (!vused[v2]) free_cod.push_back(static_cast<int>(v2));
        size_t next = 0;
        for (size_t v = 0; v < vmap.size(); ++v) {
            if (vmap[v] != -1) continue;
            if (A.skeleton.valence(static_cast<int>(v)) != 0) return false;
            if (next >= free_cod.size() ||
                B.skeleton.valence(free_cod[next]) != 0)
                return false;
            vmap[v] = free_cod[next];
            vused[static_cast<size_t>(free_cod[next])] = true;
            ++next;
        }
        return true;
    }
};

} // namespace

std::optional<ComplexIso> complex_isomorphic(const TwoComplex& a, const TwoComplex& b) {
    a.validate();
    b.validate();
    if (a.skeleton.num_vertices() != b.skeleton.num_vertices() ||
        a.skeleton.num_edges() != b.skeleton.num_edges() || a.num_faces() != b.num_faces())
        return std::nullopt;
    auto lengths = [](const TwoComplex& x) {
        std::vector<int> ls;
        for (const EdgePath& p : x.faces) ls.push_back(p.length());
        std::sort(ls.begin(), ls.end());
        return ls;
    };
    if (lengths(a) != lengths(b)) return std::nullopt;
    auto valences = [](const SerreGraph& g) {
        std::vector<int> vs;
        for (int v = 0; v < g.num_vertices(); ++v) vs.push_back(g.valence(v));
        std::sort(vs.begin(), vs.end());
        return vs;
    };
    if (valences(a.skeleton) != valences(b.skeleton)) return std::nullopt;

    IsoSearch search(a, b);
    if (!search.solve_faces()) return std::nullopt;
    ComplexIso iso;
    iso.vertex_map = search.vmap;
    iso.dart_map = search.dmap;
    iso.face_map = search.fmap;
    return iso;
}

} // namespace gogkit
