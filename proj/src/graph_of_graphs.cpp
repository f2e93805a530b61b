#include "gogkit/graph_of_graphs.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "gogkit/errors.hpp"
#include "gogkit/smoothing.hpp"
#include "gogkit/stallings.hpp"

namespace gogkit {

void GraphOfGraphs::validate() const {
    const int nv = underlying.num_vertices();
    const int ne = underlying.num_edges();
    if (nv == 0) throw ValidationError("gog: empty underlying graph");
    if (static_cast<int>(vertex_graphs.size()) != nv ||
        static_cast<int>(edge_graphs.size()) != ne ||
        static_cast<int>(iota_maps.size()) != ne || static_cast<int>(tau_maps.size()) != ne)
        throw ValidationError("gog: cell graph / map counts do not match the underlying graph");
    for (const SerreGraph& x : vertex_graphs)
        if (x.num_vertices() == 0 || !x.connected())
            throw ValidationError("gog: vertex graph must be nonempty and connected");
    for (const SerreGraph& x : edge_graphs)
        if (x.num_vertices() == 0 || !x.connected())
            throw ValidationError("gog: edge graph must be nonempty and connected");
    for (int e = 0; e < ne; ++e) {
        const GraphMorphism& fi = iota_maps[static_cast<size_t>(e)];
        const GraphMorphism& ft = tau_maps[static_cast<size_t>(e)];
        if (!fi.domain.same_shape(edge_graphs[static_cast<size_t>(e)]) ||
            !ft.domain.same_shape(edge_graphs[static_cast<size_t>(e)]))
            throw ValidationError("gog: attaching map domain is not the edge graph");
        if (!fi.codomain.same_shape(vertex_graphs[static_cast<size_t>(underlying.edge(e).from)]))
            throw ValidationError("gog: iota map codomain mismatch");
        if (!ft.codomain.same_shape(vertex_graphs[static_cast<size_t>(underlying.edge(e).to)]))
            throw ValidationError("gog: tau map codomain mismatch");
        fi.validate();
        ft.validate();
        if (!is_pi1_injective(fi) || !is_pi1_injective(ft))
            throw ValidationError("gog: attaching map is not pi1-injective");
    }
}

bool same_structure(const GraphOfGraphs& a, const GraphOfGraphs& b) {
    auto same_morphism = [](const GraphMorphism& f, const GraphMorphism& g) {
        return f.vertex_map == g.vertex_map && f.edge_images == g.edge_images;
    };
    if (!a.underlying.same_shape(b.underlying)) return false;
    if (a.vertex_graphs.size() != b.vertex_graphs.size() ||
        a.edge_graphs.size() != b.edge_graphs.size())
        return false;
    for (size_t i = 0; i < a.vertex_graphs.size(); ++i)
        if (!a.vertex_graphs[i].same_shape(b.vertex_graphs[i])) return false;
    for (size_t i = 0; i < a.edge_graphs.size(); ++i) {
        if (!a.edge_graphs[i].same_shape(b.edge_graphs[i])) return false;
        if (!same_morphism(a.iota_maps[i], b.iota_maps[i])) return false;
        if (!same_morphism(a.tau_maps[i], b.tau_maps[i])) return false;
    }
    return true;
}

namespace {

// pi1-image of an attaching map, written in the lex-least spanning-tree basis
// of the target vertex graph, conjugated back to the tree basepoint.
std::vector<Word> end_image_words(const GraphMorphism& f) {
    SpanningTreeData dt = lex_least_spanning_tree(f.domain, 0);
    SpanningTreeData ct = lex_least_spanning_tree(f.codomain, 0);
    EdgePath conn = ct.base_path[static_cast<size_t>(f.vertex_map[0])];
    std::vector<Word> words;
    for (int k = 0; k < dt.rank(); ++k) {
        EdgePath image = f.map_path(pi1_basis_loop(dt, f.domain, k));
        EdgePath loop = concat_paths(concat_paths(conn, image), conn.reversed());
        words.push_back(tree_collapse_word(ct, loop));
    }
    return words;
}

EdgeEndReport classify_end(const GraphMorphism& f, const FreeFactorOptions& opts) {
    EdgeEndReport r;
    r.combinatorial_embedding = is_combinatorial_embedding(f);
    r.topological_embedding = is_topological_embedding(f);
    if (r.topological_embedding) {
        // An embedded subgraph carries a free factor: collapse a spanning
        // tree of the ambient graph extending one of the image.
        r.free_factor = Ternary::yes;
    } else {
        SpanningTreeData ct = lex_least_spanning_tree(f.codomain, 0);
        r.free_factor = is_free_factor(end_image_words(f), ct.rank(), opts);
    }
    return r;
}

} // namespace

CleanlinessReport classify_cleanliness(const GraphOfGraphs& g, const FreeFactorOptions& opts) {
    g.validate();
    CleanlinessReport rep;
    bool vh = true, geo = true;
    Ternary alg = Ternary::yes;
    auto fold = [](Ternary acc, Ternary t) {
        if (acc == Ternary::no || t == Ternary::no) return Ternary::no;
        if (acc == Ternary::unknown || t == Ternary::unknown) return Ternary::unknown;
        return Ternary::yes;
    };
    for (int e = 0; e < g.underlying.num_edges(); ++e) {
        rep.iota_ends.push_back(classify_end(g.iota_maps[static_cast<size_t>(e)], opts));
        rep.tau_ends.push_back(classify_end(g.tau_maps[static_cast<size_t>(e)], opts));
        for (const EdgeEndReport* r : {&rep.iota_ends.back(), &rep.tau_ends.back()}) {
            vh = vh && r->combinatorial_embedding;
            geo = geo && r->topological_embedding;
            alg = fold(alg, r->free_factor);
        }
    }
    rep.vh_clean = vh;
    rep.geometrically_clean = geo;
    rep.algebraically_clean = alg;
    return rep;
}

TotalSpaceResult total_space(const GraphOfGraphs& g) {
    g.validate();
    TotalSpaceResult ts;
    const int nv = g.underlying.num_vertices();
    const int ne = g.underlying.num_edges();

    ts.vertex_at.resize(static_cast<size_t>(nv));
    ts.vertical_at.resize(static_cast<size_t>(nv));
    ts.horizontal_at.resize(static_cast<size_t>(ne));
    ts.band_at.resize(static_cast<size_t>(ne));

    for (int gv = 0; gv < nv; ++gv) {
        const SerreGraph& x = g.vertex_graphs[static_cast<size_t>(gv)];
        const std::string prefix = g.underlying.display_vertex_name(gv) + ".";
        for (int u = 0; u < x.num_vertices(); ++u) {
            int id = ts.complex.skeleton.add_vertex(prefix + x.display_vertex_name(u));
            ts.vertex_at[static_cast<size_t>(gv)].push_back(id);
            ts.vertex_src.push_back({gv, u});
        }
    }
    for (int gv = 0; gv < nv; ++gv) {
        const SerreGraph& x = g.vertex_graphs[static_cast<size_t>(gv)];
        const std::string prefix = g.underlying.display_vertex_name(gv) + ".";
        for (int e = 0; e < x.num_edges(); ++e) {
            int id = ts.complex.skeleton.add_edge(
                ts.vertex_at[static_cast<size_t>(gv)][static_cast<size_t>(x.edge(e).from)],
                ts.vertex_at[static_cast<size_t>(gv)][static_cast<size_t>(x.edge(e).to)],
                prefix + x.display_edge_name(e));
            ts.vertical_at[static_cast<size_t>(gv)].push_back(id);
            ts.edge_src.push_back({TotalSpaceResult::CellKind::vertical, gv, e});
        }
    }
    for (int ge = 0; ge < ne; ++ge) {
        const SerreGraph& x = g.edge_graphs[static_cast<size_t>(ge)];
        const GraphMorphism& fi = g.iota_maps[static_cast<size_t>(ge)];
        const GraphMorphism& ft = g.tau_maps[static_cast<size_t>(ge)];
        const int vi = g.underlying.edge(ge).from;
        const int vt = g.underlying.edge(ge).to;
        const std::string prefix = g.underlying.display_edge_name(ge) + ".";
        for (int w = 0; w < x.num_vertices(); ++w) {
            int id = ts.complex.skeleton.add_edge(
                ts.vertex_at[static_cast<size_t>(vi)][static_cast<size_t>(fi.vertex_map[static_cast<size_t>(w)])],
                ts.vertex_at[static_cast<size_t>(vt)][static_cast<size_t>(ft.vertex_map[static_cast<size_t>(w)])],
                prefix + x.display_vertex_name(w));
            ts.horizontal_at[static_cast<size_t>(ge)].push_back(id);
            ts.edge_src.push_back({TotalSpaceResult::CellKind::horizontal, ge, w});
        }
    }

    auto vertical_path = [&](int gv, const EdgePath& p) {
        EdgePath out;
        for (Dart d : p.darts) {
            int ce = ts.vertical_at[static_cast<size_t>(gv)][static_cast<size_t>(SerreGraph::edge_of(d))];
            out.darts.push_back(SerreGraph::is_positive(d) ? SerreGraph::positive_dart(ce)
                                                           : SerreGraph::negative_dart(ce));
        }
        return out;
    };

    for (int ge = 0; ge < ne; ++ge) {
        const SerreGraph& x = g.edge_graphs[static_cast<size_t>(ge)];
        const GraphMorphism& fi = g.iota_maps[static_cast<size_t>(ge)];
        const GraphMorphism& ft = g.tau_maps[static_cast<size_t>(ge)];
        const int vi = g.underlying.edge(ge).from;
        const int vt = g.underlying.edge(ge).to;
        const std::string prefix = g.underlying.display_edge_name(ge) + ".";
        for (int eps = 0; eps < x.num_edges(); ++eps) {
            Dart d = SerreGraph::positive_dart(eps);
            int p = x.origin(d), q = x.terminus(d);
            EdgePath bottom = vertical_path(vi, fi.dart_image(d));
            EdgePath top = vertical_path(vt, ft.dart_image(d));
            EdgePath boundary = bottom;
            boundary.darts.push_back(SerreGraph::positive_dart(
                ts.horizontal_at[static_cast<size_t>(ge)][static_cast<size_t>(q)]));
            EdgePath back = top.reversed();
            boundary.darts.insert(boundary.darts.end(), back.darts.begin(), back.darts.end());
            boundary.darts.push_back(SerreGraph::negative_dart(
                ts.horizontal_at[static_cast<size_t>(ge)][static_cast<size_t>(p)]));
            ts.band_at[static_cast<size_t>(ge)].push_back(ts.complex.num_faces());
            ts.complex.faces.push_back(boundary);
            ts.complex.face_names.push_back(prefix + x.display_edge_name(eps));
            ts.face_src.push_back({ge, eps, bottom.length(), top.length()});
        }
    }
    ts.complex.validate();
    return ts;
}

FiniteQuotientHom solve_horizontal_hom(const TotalSpaceResult& ts, int modulus,
                                       const std::vector<int>& vertical_values) {
    if (modulus < 1) throw ValidationError("solve_horizontal_hom: modulus must be >= 1");
    const int ne = ts.complex.skeleton.num_edges();
    if (static_cast<int>(vertical_values.size()) != ne)
        throw ValidationError("solve_horizontal_hom: one entry per total-space edge required");

    FiniteQuotientHom hom;
    hom.modulus = modulus;
    hom.edge_value.assign(static_cast<size_t>(ne), 0);
    for (int e = 0; e < ne; ++e)
        if (ts.edge_src[static_cast<size_t>(e)].kind == TotalSpaceResult::CellKind::vertical)
            hom.edge_value[static_cast<size_t>(e)] =
                ((vertical_values[static_cast<size_t>(e)] % modulus) + modulus) % modulus;

    auto vertical_sum = [&](const EdgePath& boundary, int lo, int hi) {
        int s = 0;
        for (int i = lo; i < hi; ++i) s = (s + hom.dart_value(boundary.darts[static_cast<size_t>(i)])) % modulus;
        return s;
    };

    for (size_t ge = 0; ge < ts.band_at.size(); ++ge) {
        const int nw = static_cast<int>(ts.horizontal_at[ge].size());
        // Difference constraints val(Q) - val(P) = delta from each band.
        struct Constraint { int p, q, delta; };
        std::vector<std::vector<Constraint>> at(static_cast<size_t>(nw));
        for (int face : ts.band_at[ge]) {
            const EdgePath& boundary = ts.complex.faces[static_cast<size_t>(face)];
            const TotalSpaceResult::FaceSrc& fs = ts.face_src[static_cast<size_t>(face)];
            int bot = vertical_sum(boundary, 0, fs.bottom_len);
            int neg_top = vertical_sum(boundary, fs.bottom_len + 1, fs.bottom_len + 1 + fs.top_len);
            int top = (modulus - neg_top) % modulus;
            int delta = ((top - bot) % modulus + modulus) % modulus;
            int hq = SerreGraph::edge_of(boundary.darts[static_cast<size_t>(fs.bottom_len)]);
            int hp = SerreGraph::edge_of(boundary.darts[static_cast<size_t>(fs.bottom_len + 1 + fs.top_len)]);
            int p = ts.edge_src[static_cast<size_t>(hp)].cell;
            int q = ts.edge_src[static_cast<size_t>(hq)].cell;
            at[static_cast<size_t>(p)].push_back({p, q, delta});
            at[static_cast<size_t>(q)].push_back({p, q, delta});
        }
        std::vector<int> val(static_cast<size_t>(nw), -1);
        for (int seed = 0; seed < nw; ++seed) {
            if (val[static_cast<size_t>(seed)] != -1) continue;
            val[static_cast<size_t>(seed)] = 0;
            std::vector<int> queue = {seed};
            for (size_t qi = 0; qi < queue.size(); ++qi) {
                int w = queue[qi];
                for (const Constraint& c : at[static_cast<size_t>(w)]) {
                    int other = (c.p == w) ? c.q : c.p;
                    int want = (c.p == w) ? (val[static_cast<size_t>(w)] + c.delta) % modulus
                                          : ((val[static_cast<size_t>(w)] - c.delta) % modulus + modulus) % modulus;
                    if (val[static_cast<size_t>(other)] == -1) {
                        val[static_cast<size_t>(other)] = want;
                        queue.push_back(other);
                    } else if (val[static_cast<size_t>(other)] != want) {
                        throw ConstructionError("solve_horizontal_hom: inconsistent band equations");
                    }
                }
            }
        }
        for (int w = 0; w < nw; ++w)
            hom.edge_value[static_cast<size_t>(ts.horizontal_at[ge][static_cast<size_t>(w)])] =
                val[static_cast<size_t>(w)];
    }
    validate_hom(ts.complex, hom);
    return hom;
}

PresentationData pi1_presentation(const GraphOfGraphs& g) {
    g.validate();
    if (!g.underlying.connected())
        throw ValidationError("pi1_presentation: underlying graph must be connected");

    SpanningTreeData gamma_tree = lex_least_spanning_tree(g.underlying, 0);

    PresentationData pres;
    std::vector<int> gen_offset;
    std::vector<SpanningTreeData> vertex_trees;
    for (int v = 0; v < g.underlying.num_vertices(); ++v) {
        vertex_trees.push_back(lex_least_spanning_tree(g.vertex_graphs[static_cast<size_t>(v)], 0));
        gen_offset.push_back(pres.rank());
        for (int j = 0; j < vertex_trees.back().rank(); ++j)
            pres.generators.push_back("v" + std::to_string(v) + "b" + std::to_string(j));
    }
    std::vector<int> stable_letter(static_cast<size_t>(g.underlying.num_edges()), -1);
    for (int e : gamma_tree.nontree_edges) {
        stable_letter[static_cast<size_t>(e)] = pres.rank();
        pres.generators.push_back("t" + std::to_string(e));
    }

    auto side_word = [&](const GraphMorphism& f, int gv, const EdgePath& loop) {
        const SpanningTreeData& vt = vertex_trees[static_cast<size_t>(gv)];
        EdgePath conn = vt.base_path[static_cast<size_t>(f.vertex_map[0])];
        EdgePath full = concat_paths(concat_paths(conn, f.map_path(loop)), conn.reversed());
        Word local = tree_collapse_word(vt, full);
        Word global;
        for (const Letter& l : local.letters)
            global.letters.push_back({l.gen + gen_offset[static_cast<size_t>(gv)], l.sign});
        return global;
    };

    for (int e = 0; e < g.underlying.num_edges(); ++e) {
        SpanningTreeData et = lex_least_spanning_tree(g.edge_graphs[static_cast<size_t>(e)], 0);
        for (int k = 0; k < et.rank(); ++k) {
            EdgePath loop = pi1_basis_loop(et, g.edge_graphs[static_cast<size_t>(e)], k);
            Word wi = side_word(g.iota_maps[static_cast<size_t>(e)], g.underlying.edge(e).from, loop);
            Word wt = side_word(g.tau_maps[static_cast<size_t>(e)], g.underlying.edge(e).to, loop);
            Word rel;
            if (stable_letter[static_cast<size_t>(e)] >= 0) {
                rel.letters.push_back({stable_letter[static_cast<size_t>(e)], +1});
                rel = concat(rel, wi);
                rel.letters.push_back({stable_letter[static_cast<size_t>(e)], -1});
                rel = concat(rel, wt.inverse());
            } else {
                rel = concat(wi, wt.inverse());
            }
            pres.relators.push_back(reduce(rel));
        }
    }
    pres.validate();
    return pres;
}

namespace {

struct Partition {
    std::vector<int> parent;

    explicit Partition(int n) : parent(static_cast<size_t>(n)) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int x) {
        while (parent[static_cast<size_t>(x)] != x) {
            parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
            x = parent[static_cast<size_t>(x)];
        }
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[static_cast<size_t>(std::max(a, b))] = std::min(a, b);
    }
};

} // namespace

GogCover cover_gog(const GraphOfGraphs& g, const FiniteQuotientHom& h) {
    g.validate();
    TotalSpaceResult ts = total_space(g);
    CoverComplexResult cov = cover_complex(ts.complex, h);
    const SerreGraph& sk = cov.complex.skeleton;

    auto base_edge_src = [&](int cover_edge) -> const TotalSpaceResult::EdgeSrc& {
        return ts.edge_src[static_cast<size_t>(cov.edge_base[static_cast<size_t>(cover_edge)])];
    };
    auto is_vertical = [&](int cover_edge) {
        return base_edge_src(cover_edge).kind == TotalSpaceResult::CellKind::vertical;
    };

    // Vertex zones: cover vertices joined by vertical-edge lifts.
    Partition vzones(sk.num_vertices());
    for (int e = 0; e < sk.num_edges(); ++e)
        if (is_vertical(e)) vzones.unite(sk.edge(e).from, sk.edge(e).to);
    std::vector<int> vcomp(static_cast<size_t>(sk.num_vertices()), -1);
    int n_vcomp = 0;
    for (int v = 0; v < sk.num_vertices(); ++v) {
        int r = vzones.find(v);
        if (vcomp[static_cast<size_t>(r)] == -1) vcomp[static_cast<size_t>(r)] = n_vcomp++;
        vcomp[static_cast<size_t>(v)] = vcomp[static_cast<size_t>(r)];
    }

    GogCover out;
    out.gog.vertex_graphs.resize(static_cast<size_t>(n_vcomp));
    out.vertex_base.assign(static_cast<size_t>(n_vcomp), -1);
    std::vector<int> local_vertex(static_cast<size_t>(sk.num_vertices()), -1);
    for (int v = 0; v < sk.num_vertices(); ++v) {
        int c = vcomp[static_cast<size_t>(v)];
        local_vertex[static_cast<size_t>(v)] =
            out.gog.vertex_graphs[static_cast<size_t>(c)].add_vertex(sk.display_vertex_name(v));
        int gv = ts.vertex_src[static_cast<size_t>(cov.vertex_base[static_cast<size_t>(v)])].gamma_vertex;
        if (out.vertex_base[static_cast<size_t>(c)] == -1)
            out.vertex_base[static_cast<size_t>(c)] = gv;
    }
    std::vector<int> local_vertical(static_cast<size_t>(sk.num_edges()), -1);
    for (int e = 0; e < sk.num_edges(); ++e) {
        if (!is_vertical(e)) continue;
        int c = vcomp[static_cast<size_t>(sk.edge(e).from)];
        local_vertical[static_cast<size_t>(e)] = out.gog.vertex_graphs[static_cast<size_t>(c)].add_edge(
            local_vertex[static_cast<size_t>(sk.edge(e).from)],
            local_vertex[static_cast<size_t>(sk.edge(e).to)], sk.display_edge_name(e));
    }

    // Edge zones: horizontal-edge lifts joined through band lifts.
    Partition ezones(sk.num_edges());
    struct BandEnds { int hp, hq; };
    std::vector<BandEnds> band_ends(static_cast<size_t>(cov.complex.num_faces()));
    for (int f = 0; f < cov.complex.num_faces(); ++f) {
        const TotalSpaceResult::FaceSrc& fs =
            ts.face_src[static_cast<size_t>(cov.face_base[static_cast<size_t>(f)])];
        const EdgePath& boundary = cov.complex.faces[static_cast<size_t>(f)];
        int hq = SerreGraph::edge_of(boundary.darts[static_cast<size_t>(fs.bottom_len)]);
        int hp = SerreGraph::edge_of(
            boundary.darts[static_cast<size_t>(fs.bottom_len + 1 + fs.top_len)]);
        band_ends[static_cast<size_t>(f)] = {hp, hq};
        ezones.unite(hp, hq);
    }
    std::vector<int> ecomp(static_cast<size_t>(sk.num_edges()), -1);
    int n_ecomp = 0;
    for (int e = 0; e < sk.num_edges(); ++e) {
        if (is_vertical(e)) continue;
        int r = ezones.find(e);
        if (ecomp[static_cast<size_t>(r)] == -1) ecomp[static_cast<size_t>(r)] = n_ecomp++;
        ecomp[static_cast<size_t>(e)] = ecomp[static_cast<size_t>(r)];
    }

    out.gog.edge_graphs.resize(static_cast<size_t>(n_ecomp));
    out.edge_base.assign(static_cast<size_t>(n_ecomp), -1);
    std::vector<int> local_horizontal(static_cast<size_t>(sk.num_edges()), -1);
    std::vector<int> iota_comp(static_cast<size_t>(n_ecomp), -1);
    std::vector<int> tau_comp(static_cast<size_t>(n_ecomp), -1);
    for (int e = 0; e < sk.num_edges(); ++e) {
        if (is_vertical(e)) continue;
        int c = ecomp[static_cast<size_t>(e)];
        local_horizontal[static_cast<size_t>(e)] =
            out.gog.edge_graphs[static_cast<size_t>(c)].add_vertex(sk.display_edge_name(e));
        if (out.edge_base[static_cast<size_t>(c)] == -1) {
            out.edge_base[static_cast<size_t>(c)] = base_edge_src(e).gamma_cell;
            iota_comp[static_cast<size_t>(c)] = vcomp[static_cast<size_t>(sk.edge(e).from)];
            tau_comp[static_cast<size_t>(c)] = vcomp[static_cast<size_t>(sk.edge(e).to)];
        }
    }
    std::vector<int> band_local_edge(static_cast<size_t>(cov.complex.num_faces()), -1);
    std::vector<int> band_comp(static_cast<size_t>(cov.complex.num_faces()), -1);
    for (int f = 0; f < cov.complex.num_faces(); ++f) {
        int c = ecomp[static_cast<size_t>(band_ends[static_cast<size_t>(f)].hp)];
        band_comp[static_cast<size_t>(f)] = c;
        band_local_edge[static_cast<size_t>(f)] = out.gog.edge_graphs[static_cast<size_t>(c)].add_edge(
            local_horizontal[static_cast<size_t>(band_ends[static_cast<size_t>(f)].hp)],
            local_horizontal[static_cast<size_t>(band_ends[static_cast<size_t>(f)].hq)],
            cov.complex.display_face_name(f));
    }

    // Underlying graph of the cover.
    for (int c = 0; c < n_vcomp; ++c)
        out.gog.underlying.add_vertex(
            g.underlying.display_vertex_name(out.vertex_base[static_cast<size_t>(c)]) + "." +
            std::to_string(c));
    for (int c = 0; c < n_ecomp; ++c)
        out.gog.underlying.add_edge(
            iota_comp[static_cast<size_t>(c)], tau_comp[static_cast<size_t>(c)],
            g.underlying.display_edge_name(out.edge_base[static_cast<size_t>(c)]) + "." +
            std::to_string(c));

    // Attaching maps: vertex images from horizontal-lift endpoints, edge
    // images from the bottom/top segments of each band-lift boundary.
    auto local_vertical_path = [&](const EdgePath& cover_darts) {
        EdgePath out_path;
        for (Dart d : cover_darts.darts) {
            int le = local_vertical[static_cast<size_t>(SerreGraph::edge_of(d))];
            out_path.darts.push_back(SerreGraph::is_positive(d) ? SerreGraph::positive_dart(le)
                                                                : SerreGraph::negative_dart(le));
        }
        return out_path;
    };

    for (int c = 0; c < n_ecomp; ++c) {
        GraphMorphism fi, ft;
        fi.domain = out.gog.edge_graphs[static_cast<size_t>(c)];
        ft.domain = out.gog.edge_graphs[static_cast<size_t>(c)];
        fi.codomain = out.gog.vertex_graphs[static_cast<size_t>(iota_comp[static_cast<size_t>(c)])];
        ft.codomain = out.gog.vertex_graphs[static_cast<size_t>(tau_comp[static_cast<size_t>(c)])];
        fi.vertex_map.assign(static_cast<size_t>(fi.domain.num_vertices()), -1);
        ft.vertex_map.assign(static_cast<size_t>(ft.domain.num_vertices()), -1);
        fi.edge_images.resize(static_cast<size_t>(fi.domain.num_edges()));
        ft.edge_images.resize(static_cast<size_t>(ft.domain.num_edges()));
        out.gog.iota_maps.push_back(std::move(fi));
        out.gog.tau_maps.push_back(std::move(ft));
    }
    for (int e = 0; e < sk.num_edges(); ++e) {
        if (is_vertical(e)) continue;
        int c = ecomp[static_cast<size_t>(e)];
        int w = local_horizontal[static_cast<size_t>(e)];
        out.gog.iota_maps[static_cast<size_t>(c)].vertex_map[static_cast<size_t>(w)] =
            local_vertex[static_cast<size_t>(sk.edge(e).from)];
        out.gog.tau_maps[static_cast<size_t>(c)].vertex_map[static_cast<size_t>(w)] =
            local_vertex[static_cast<size_t>(sk.edge(e).to)];
    }
    for (int f = 0; f < cov.complex.num_faces(); ++f) {
        const TotalSpaceResult::FaceSrc& fs =
            ts.face_src[static_cast<size_t>(cov.face_base[static_cast<size_t>(f)])];
        const EdgePath& boundary = cov.complex.faces[static_cast<size_t>(f)];
        int c = band_comp[static_cast<size_t>(f)];
        int eps = band_local_edge[static_cast<size_t>(f)];
        EdgePath bottom, top;
        for (int i = 0; i < fs.bottom_len; ++i)
            bottom.darts.push_back(boundary.darts[static_cast<size_t>(i)]);
        for (int i = fs.bottom_len + fs.top_len; i > fs.bottom_len; --i)
            top.darts.push_back(SerreGraph::inverse(boundary.darts[static_cast<size_t>(i)]));
        out.gog.iota_maps[static_cast<size_t>(c)].edge_images[static_cast<size_t>(eps)] =
            local_vertical_path(bottom);
        out.gog.tau_maps[static_cast<size_t>(c)].edge_images[static_cast<size_t>(eps)] =
            local_vertical_path(top);
    }
    for (int c = 0; c < n_ecomp; ++c) {
        out.gog.iota_maps[static_cast<size_t>(c)].validate();
        out.gog.tau_maps[static_cast<size_t>(c)].validate();
    }
    out.gog.validate();
    return out;
}

GraphOfGraphs normalize_gog(const GraphOfGraphs& g0) {
    g0.validate();
    GraphOfGraphs g = g0;

    // Pass 1: smooth every edge graph and push the attaching maps through the
    // correspondence (new edge = chain of old edges, image = concatenation).
    for (int e = 0; e < g.underlying.num_edges(); ++e) {
        SmoothingResult sm = smooth_bivalent(g.edge_graphs[static_cast<size_t>(e)], {});
        std::vector<int> new_to_old(static_cast<size_t>(sm.graph.num_vertices()), -1);
        for (size_t v = 0; v < sm.old_vertex_to_new.size(); ++v)
            if (sm.old_vertex_to_new[v] >= 0)
                new_to_old[static_cast<size_t>(sm.old_vertex_to_new[v])] = static_cast<int>(v);
        auto rebuild = [&](const GraphMorphism& f) {
            GraphMorphism nf;
            nf.domain = sm.graph;
            nf.codomain = f.codomain;
            for (int v = 0; v < sm.graph.num_vertices(); ++v)
                nf.vertex_map.push_back(f.vertex_map[static_cast<size_t>(new_to_old[static_cast<size_t>(v)])]);
            for (int ne = 0; ne < sm.graph.num_edges(); ++ne) {
                EdgePath image;
                for (Dart od : sm.new_edge_to_old[static_cast<size_t>(ne)].darts) {
                    EdgePath piece = f.dart_image(od);
                    image.darts.insert(image.darts.end(), piece.darts.begin(), piece.darts.end());
                }
                nf.edge_images.push_back(image);
            }
            nf.validate();
            return nf;
        };
        g.iota_maps[static_cast<size_t>(e)] = rebuild(g.iota_maps[static_cast<size_t>(e)]);
        g.tau_maps[static_cast<size_t>(e)] = rebuild(g.tau_maps[static_cast<size_t>(e)]);
        g.edge_graphs[static_cast<size_t>(e)] = sm.graph;
    }

    // Pass 2: smooth vertex graphs, keeping every vertex met by an attaching
    // map image in a way a smoothing could not rewrite: vertex images and the
    // turning points of image paths.
    for (int v = 0; v < g.underlying.num_vertices(); ++v) {
        std::set<int> keep;
        auto scan = [&](const GraphMorphism& f) {
            for (int w : f.vertex_map) keep.insert(w);
            for (const EdgePath& p : f.edge_images)
                for (size_t i = 0; i + 1 < p.darts.size(); ++i)
                    if (p.darts[i + 1] == SerreGraph::inverse(p.darts[i]))
                        keep.insert(f.codomain.terminus(p.darts[i]));
        };
        for (int e = 0; e < g.underlying.num_edges(); ++e) {
            if (g.underlying.edge(e).from == v) scan(g.iota_maps[static_cast<size_t>(e)]);
            if (g.underlying.edge(e).to == v) scan(g.tau_maps[static_cast<size_t>(e)]);
        }
        SmoothingResult sm = smooth_bivalent(g.vertex_graphs[static_cast<size_t>(v)],
                                             std::vector<int>(keep.begin(), keep.end()));
        auto rewrite = [&](GraphMorphism& f) {
            f.codomain = sm.graph;
            for (int& w : f.vertex_map) w = sm.rewrite_vertex(w);
            for (EdgePath& p : f.edge_images) p = sm.rewrite_path(p);
            f.validate();
        };
        for (int e = 0; e < g.underlying.num_edges(); ++e) {
            if (g.underlying.edge(e).from == v) rewrite(g.iota_maps[static_cast<size_t>(e)]);
            if (g.underlying.edge(e).to == v) rewrite(g.tau_maps[static_cast<size_t>(e)]);
        }
        g.vertex_graphs[static_cast<size_t>(v)] = sm.graph;
    }
    g.validate();
    return g;
}

namespace {

bool squares_commute(const GraphMorphism& fa, const GraphMorphism& fb, const GraphIso& psi_v,
                     const GraphIso& psi_e) {
    for (size_t w = 0; w < fa.vertex_map.size(); ++w) {
        if (fb.vertex_map[static_cast<size_t>(psi_e.vertex_map[w])] !=
            psi_v.vertex_map[static_cast<size_t>(fa.vertex_map[w])])
            return false;
    }
    for (int eps = 0; eps < fa.domain.num_edges(); ++eps) {
        Dart d = SerreGraph::positive_dart(eps);
        EdgePath lhs = fb.dart_image(psi_e.dart_map[static_cast<size_t>(d)]);
        EdgePath rhs;
        for (Dart x : fa.dart_image(d).darts)
            rhs.darts.push_back(psi_v.dart_map[static_cast<size_t>(x)]);
        if (lhs != rhs) return false;
    }
    return true;
}

struct GogIsoSearch {
    const GraphOfGraphs& a;
    const GraphOfGraphs& b;
    const GraphIso& phi;
    GogIso result;

    GogIsoSearch(const GraphOfGraphs& a_, const GraphOfGraphs& b_, const GraphIso& phi_)
        : a(a_), b(b_), phi(phi_) {
        result.underlying = phi;
        result.vertex_isos.resize(a.vertex_graphs.size());
        result.edge_isos.resize(a.edge_graphs.size());
        result.edge_flipped.resize(a.edge_graphs.size());
    }

    // Finds an edge-graph isomorphism making both attachment squares commute;
    // any hit works, since nothing else constrains it.
    bool bind_edge(int e) {
        Dart image_dart = phi.dart_map[static_cast<size_t>(SerreGraph::positive_dart(e))];
        int e2 = SerreGraph::edge_of(image_dart);
        bool flipped = !SerreGraph::is_positive(image_dart);
        const GraphMorphism& bi = flipped ? b.tau_maps[static_cast<size_t>(e2)]
                                          : b.iota_maps[static_cast<size_t>(e2)];
        const GraphMorphism& bt = flipped ? b.iota_maps[static_cast<size_t>(e2)]
                                          : b.tau_maps[static_cast<size_t>(e2)];
        const GraphIso& psi_i = result.vertex_isos[static_cast<size_t>(a.underlying.edge(e).from)];
        const GraphIso& psi_t = result.vertex_isos[static_cast<size_t>(a.underlying.edge(e).to)];
        bool hit = for_each_isomorphism(
            a.edge_graphs[static_cast<size_t>(e)], b.edge_graphs[static_cast<size_t>(e2)],
            [&](const GraphIso& psi_e) {
                if (!squares_commute(a.iota_maps[static_cast<size_t>(e)], bi, psi_i, psi_e))
                    return false;
                if (!squares_commute(a.tau_maps[static_cast<size_t>(e)], bt, psi_t, psi_e))
                    return false;
                result.edge_isos[static_cast<size_t>(e)] = psi_e;
                result.edge_flipped[static_cast<size_t>(e)] = flipped;
                return true;
            },
            IsoMode::dart_exhaustive);
        return hit;
    }

    bool assign_vertices(int idx) {
        if (idx == a.underlying.num_vertices()) return true;
        int target = phi.vertex_map[static_cast<size_t>(idx)];
        return for_each_isomorphism(
            a.vertex_graphs[static_cast<size_t>(idx)], b.vertex_graphs[static_cast<size_t>(target)],
            [&](const GraphIso& psi) {
                result.vertex_isos[static_cast<size_t>(idx)] = psi;
                for (int e = 0; e < a.underlying.num_edges(); ++e) {
                    int vi = a.underlying.edge(e).from, vt = a.underlying.edge(e).to;
                    if (std::max(vi, vt) != idx) continue; // becomes bound exactly now
                    if (!bind_edge(e)) return false;
                }
                return assign_vertices(idx + 1);
            },
            IsoMode::dart_exhaustive);
    }
};

} // namespace

std::optional<GogIso> gog_isomorphic(const GraphOfGraphs& a, const GraphOfGraphs& b) {
    a.validate();
    b.validate();
    if (a.underlying.num_vertices() != b.underlying.num_vertices() ||
        a.underlying.num_edges() != b.underlying.num_edges())
        return std::nullopt;
    std::optional<GogIso> found;
    for_each_isomorphism(
        a.underlying, b.underlying,
        [&](const GraphIso& phi) {
            GogIsoSearch search(a, b, phi);
            if (search.assign_vertices(0)) {
                found = search.result;
                return true;
            }
            return false;
        },
        IsoMode::dart_exhaustive);
    return found;
}

} // namespace gogkit
