#include "gogkit/constructions.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "gogkit/errors.hpp"
#include "gogkit/stallings.hpp"

namespace gogkit {

SerreGraph rose_graph(const std::vector<std::string>& labels) {
    SerreGraph g;
    int v = g.add_vertex("o");
    for (const std::string& l : labels) g.add_edge(v, v, l);
    return g;
}

SerreGraph bigon_with_loops() {
    SerreGraph g;
    int p = g.add_vertex("p");
    int q = g.add_vertex("q");
    g.add_edge(p, q, "alpha");
    g.add_edge(q, p, "beta");
    g.add_edge(p, p, "lp");
    g.add_edge(q, q, "lq");
    return g;
}

SerreGraph theta_graph(int n) {
    if (n < 1) throw ValidationError("theta_graph: need at least one edge");
    SerreGraph g;
    int u = g.add_vertex("u");
    int v = g.add_vertex("v");
    for (int i = 0; i < n; ++i) g.add_edge(u, v);
    return g;
}

SerreGraph cycle_with_loops(int n) {
    if (n < 1) throw ValidationError("cycle_with_loops: need at least one vertex");
    SerreGraph g;
    for (int i = 0; i < n; ++i) g.add_vertex();
    for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
    for (int i = 0; i < n; ++i) g.add_edge(i, i);
    return g;
}

namespace {

int half_parameter(int n) { return (n - 1) / 2; }

void require_odd(int n) {
    if (n < 3 || n % 2 == 0)
        throw ValidationError("family parameter must be an odd integer >= 3");
}

} // namespace

PresentationData artin_presentation(int n) {
    require_odd(n);
    PresentationData p;
    p.generators = {"a", "b", "c"};
    FreeBasis basis = standard_basis(p.generators);
    p.relators.push_back(parse_word("a b a^-1 b^-1", basis));
    Word alt_bc, alt_cb;
    for (int i = 0; i < n; ++i) {
        alt_bc.letters.push_back({i % 2 == 0 ? 1 : 2, +1});
        alt_cb.letters.push_back({i % 2 == 0 ? 2 : 1, +1});
    }
    p.relators.push_back(reduce(concat(alt_bc, alt_cb.inverse())));
    p.validate();
    return p;
}

PresentationData rewritten_presentation(int n) {
    require_odd(n);
    const int k = half_parameter(n);
    PresentationData p;
    p.generators = {"a", "b", "x"};
    FreeBasis basis = standard_basis(p.generators);
    p.relators.push_back(parse_word("a b a^-1 b^-1", basis));
    std::ostringstream braid;
    braid << "b x^" << k << " b x^-" << (k + 1);
    p.relators.push_back(parse_word(braid.str(), basis));
    p.validate();

    // Cross-check the change of generators in both directions: c = x b^-1,
    // x = c b, relator by relator.
    PresentationData artin = artin_presentation(n);
    FreeBasis abasis = standard_basis(artin.generators);
    std::map<int, Word> c_to_x = {{0, parse_word("a", basis)},
                                  {1, parse_word("b", basis)},
                                  {2, parse_word("x b^-1", basis)}};
    std::map<int, Word> x_to_c = {{0, parse_word("a", abasis)},
                                  {1, parse_word("b", abasis)},
                                  {2, parse_word("c b", abasis)}};
    for (size_t i = 0; i < p.relators.size(); ++i) {
        if (substitute(artin.relators[i], c_to_x) != p.relators[i])
            throw ConstructionError("rewritten_presentation: substituting c = x b^-1 does not "
                                    "reproduce relator " + std::to_string(i));
        if (substitute(p.relators[i], x_to_c) != artin.relators[i])
            throw ConstructionError("rewritten_presentation: substituting x = c b does not "
                                    "reproduce relator " + std::to_string(i));
    }
    return p;
}

FiniteQuotientHom mod2_hom() {
    FiniteQuotientHom h;
    h.modulus = 2;
    h.edge_value = {0, 1, 0}; // a, b, x
    return h;
}

GraphOfGraphs double_cover_gog(int n) {
    require_odd(n);
    const int k = half_parameter(n);

    GraphOfGraphs g;
    int v1 = g.underlying.add_vertex("v1");
    int v2 = g.underlying.add_vertex("v2");
    g.underlying.add_edge(v1, v2, "e0");
    g.vertex_graphs.push_back(rose_graph({"a", "x"}));
    g.vertex_graphs.push_back(rose_graph({"abar", "xbar"}));
    g.edge_graphs.push_back(bigon_with_loops());

    auto run = [](int edge, int count) {
        EdgePath p;
        for (int i = 0; i < count; ++i) p.darts.push_back(SerreGraph::positive_dart(edge));
        return p;
    };
    GraphMorphism fi;
    fi.domain = g.edge_graphs[0];
    fi.codomain = g.vertex_graphs[0];
    fi.vertex_map = {0, 0};
    fi.edge_images = {run(1, k + 1), run(1, k), run(0, 1), run(0, 1)};
    GraphMorphism ft;
    ft.domain = g.edge_graphs[0];
    ft.codomain = g.vertex_graphs[1];
    ft.vertex_map = {0, 0};
    ft.edge_images = {run(1, k), run(1, k + 1), run(0, 1), run(0, 1)};
    g.iota_maps.push_back(std::move(fi));
    g.tau_maps.push_back(std::move(ft));
    g.validate();

    TotalSpaceResult ts = total_space(g);
    CoverComplexResult cc2 = cover_complex(presentation_complex(rewritten_presentation(n)), mod2_hom());
    if (!complex_isomorphic(ts.complex, cc2.complex))
        throw ConstructionError("double_cover_gog: total space does not match the 2-fold cover");
    return g;
}

FiniteQuotientHom zn_hom(const GraphOfGraphs& cover, const TotalSpaceResult& ts, int n) {
    require_odd(n);
    std::vector<int> vertical(static_cast<size_t>(ts.complex.skeleton.num_edges()), 0);
    for (int e = 0; e < ts.complex.skeleton.num_edges(); ++e) {
        const TotalSpaceResult::EdgeSrc& src = ts.edge_src[static_cast<size_t>(e)];
        if (src.kind != TotalSpaceResult::CellKind::vertical) continue;
        const std::string name =
            cover.vertex_graphs[static_cast<size_t>(src.gamma_cell)].display_edge_name(src.cell);
        if (name == "x" || name == "xbar") vertical[static_cast<size_t>(e)] = 1;
    }
    return solve_horizontal_hom(ts, n, vertical);
}

GraphOfGraphs theta_family(int n) {
    require_odd(n);
    GraphOfGraphs base = double_cover_gog(n);
    TotalSpaceResult ts = total_space(base);
    FiniteQuotientHom k = zn_hom(base, ts, n);
    GraphOfGraphs theta = normalize_gog(cover_gog(base, k).gog);

    if (!graph_isomorphic(theta.underlying, theta_graph(n)))
        throw ConstructionError("theta_family: underlying graph is not the n-edge theta graph");
    for (const SerreGraph& xv : theta.vertex_graphs)
        if (!graph_isomorphic(xv, cycle_with_loops(n)))
            throw ConstructionError("theta_family: vertex graph is not an n-cycle with loops");
    for (const SerreGraph& xe : theta.edge_graphs)
        if (!graph_isomorphic(xe, bigon_with_loops()))
            throw ConstructionError("theta_family: edge graph is not a bigon with loops");
    return theta;
}

int VerifyReport::total_checks() const {
    int t = 0;
    for (const VerifyStage& s : stages) t += static_cast<int>(s.checks.size());
    return t;
}

int VerifyReport::passed_checks() const {
    int t = 0;
    for (const VerifyStage& s : stages)
        for (const VerifyCheck& c : s.checks) t += c.pass ? 1 : 0;
    return t;
}

namespace {

VerifyCheck check(std::string name, bool pass, std::string detail = {}) {
    return {std::move(name), pass, std::move(detail)};
}

std::string describe_abelianization(const AbelianizationData& a) {
    std::string s = "betti " + std::to_string(a.betti);
    if (!a.torsion.empty()) {
        s += ", torsion";
        for (std::int64_t d : a.torsion) s += " " + std::to_string(d);
    }
    return s;
}

std::string join_words(const std::vector<Word>& ws, const FreeBasis& basis) {
    std::string s;
    for (size_t i = 0; i < ws.size(); ++i) {
        if (i) s += ", ";
        s += format_word(ws[i], basis);
    }
    return s;
}

} // namespace

VerifyReport run_verification(int n, const FreeFactorOptions& opts) {
    require_odd(n);
    const int k = half_parameter(n);
    VerifyReport rep;
    rep.n = n;

    // ---- stage: presentations ----
    PresentationData artin = artin_presentation(n);
    PresentationData rew = rewritten_presentation(n); // throws if the rewriting fails
    {
        VerifyStage st{"group presentations", {}};
        st.checks.push_back(check(
            "alternating relator has length 2n",
            artin.relators.size() == 2 && artin.relators[1].length() == 2 * n,
            "length " + std::to_string(artin.relators[1].length())));
        st.checks.push_back(check(
            "change of generators x = cb verified in both directions", true,
            "second relator becomes b x^" + std::to_string(k) + " b x^-" + std::to_string(k + 1)));
        st.checks.push_back(check("abelianizations of the two presentations agree",
                                  abelianization(artin) == abelianization(rew),
                                  describe_abelianization(abelianization(rew))));
        rep.stages.push_back(std::move(st));
    }

    // ---- stage: double cover of the presentation complex ----
    TwoComplex pc = presentation_complex(rew);
    FiniteQuotientHom h2 = mod2_hom();
    validate_hom(pc, h2);
    CoverComplexResult cc2 = cover_complex(pc, h2);
    {
        VerifyStage st{"double cover of the presentation complex", {}};
        st.checks.push_back(check("mod-2 assignment kills both relators", true, "b -> 1, a, x -> 0"));
        st.checks.push_back(check(
            "cover cell counts (2, 6, 4)",
            cc2.complex.skeleton.num_vertices() == 2 && cc2.complex.skeleton.num_edges() == 6 &&
                cc2.complex.num_faces() == 4));
        st.checks.push_back(check("cover Euler characteristic is 0",
                                  cc2.complex.euler_characteristic() == 0 &&
                                      pc.euler_characteristic() == 0));
        std::vector<int> lens;
        for (const EdgePath& f : cc2.complex.faces) lens.push_back(f.length());
        std::sort(lens.begin(), lens.end());
        st.checks.push_back(check("cover face lengths are 4, 4, n+2, n+2",
                                  lens == std::vector<int>{4, 4, n + 2, n + 2}));
        rep.stages.push_back(std::move(st));
    }

    // ---- stage: the cover as a graph of graphs ----
    GraphOfGraphs ycover = double_cover_gog(n);
    TotalSpaceResult ts = total_space(ycover);
    std::optional<ComplexIso> to_cc2 = complex_isomorphic(ts.complex, cc2.complex);
    {
        VerifyStage st{"graph-of-graphs decomposition of the cover", {}};
        st.checks.push_back(check("total space is isomorphic to the 2-fold cover", to_cc2.has_value()));
        EulerRank rv1 = graph_euler_and_rank(ycover.vertex_graphs[0]);
        EulerRank rv2 = graph_euler_and_rank(ycover.vertex_graphs[1]);
        EulerRank re = graph_euler_and_rank(ycover.edge_graphs[0]);
        st.checks.push_back(check("amalgam ranks are (2, 3, 2)",
                                  rv1.rank == 2 && re.rank == 3 && rv2.rank == 2));
        PresentationData pres = pi1_presentation(ycover);
        st.checks.push_back(check(
            "fundamental group presentation has 4 generators, 3 relations",
            pres.rank() == 4 && pres.relators.size() == 3 && pres.euler_characteristic() == 0));
        // Read an independent presentation off the cover complex itself and
        // compare abelianizations.
        SpanningTreeData tree = lex_least_spanning_tree(cc2.complex.skeleton, 0);
        PresentationData from_cover;
        for (int i = 0; i < tree.rank(); ++i) from_cover.generators.push_back("g" + std::to_string(i));
        for (const EdgePath& f : cc2.complex.faces)
            from_cover.relators.push_back(tree_collapse_word(tree, f));
        st.checks.push_back(check("abelianization of the decomposition matches the cover complex",
                                  abelianization(pres) == abelianization(from_cover),
                                  describe_abelianization(abelianization(pres))));
        rep.stages.push_back(std::move(st));
    }

    // ---- stage: side subgroups ----
    FreeBasis side1 = standard_basis({"a", "x"});
    FreeBasis side2 = standard_basis({"abar", "xbar"});
    Word xw = parse_word("x", side1);
    Word aw = parse_word("a", side1);
    Word xbw = parse_word("xbar", side2);
    Word abw = parse_word("abar", side2);
    std::vector<Word> tuple1 = {power(xw, n), aw,
                                concat(concat(power(xw, k + 1), aw), power(xw, -(k + 1)))};
    std::vector<Word> tuple2 = {power(xbw, n), abw,
                                concat(concat(power(xbw, k), abw), power(xbw, -k))};
    StallingsGraph s1 = pi1_image(ycover.iota_maps[0], 0);
    StallingsGraph s2 = pi1_image(ycover.tau_maps[0], 0);
    {
        VerifyStage st{"edge-group images on the two sides", {}};
        st.checks.push_back(check("left image is <x^n, a, x^k+1 a x^-(k+1)>",
                                  s1 == subgroup_graph(tuple1, 2),
                                  "basis " + join_words(subgroup_basis(s1), side1)));
        st.checks.push_back(check("right image is <xbar^n, abar, xbar^k abar xbar^-k>",
                                  s2 == subgroup_graph(tuple2, 2),
                                  "basis " + join_words(subgroup_basis(s2), side2)));
        std::vector<Word> expected1 = {aw, power(xw, n),
                                       concat(concat(power(xw, -k), aw), power(xw, k))};
        st.checks.push_back(check("left canonical basis is (a, x^n, x^-k a x^k)",
                                  subgroup_basis(s1) == expected1));
        Word probe = concat(concat(power(xw, -k), aw), power(xw, k));
        auto expr = express_in_tuple(tuple1, 2, probe);
        bool ident = false;
        std::string detail;
        if (expr) {
            std::map<int, Word> to_side2 = {{0, tuple2[0]}, {1, tuple2[1]}, {2, tuple2[2]}};
            Word image = substitute(*expr, to_side2);
            Word expected = concat(concat(power(xbw, -(k + 1)), abw), power(xbw, k + 1));
            ident = (image == expected);
            FreeBasis tuple_names = standard_basis({"g1", "g2", "g3"});
            detail = format_word(*expr, tuple_names) + " maps to " + format_word(image, side2);
        }
        st.checks.push_back(
            check("conjugated generator crosses to xbar^-(k+1) abar xbar^k+1", ident, detail));
        st.checks.push_back(check("side images have infinite index",
                                  !subgroup_index(s1).has_value() && !subgroup_index(s2).has_value()));
        rep.stages.push_back(std::move(st));
    }

    // ---- stage: the Z/n assignment ----
    FiniteQuotientHom kq = zn_hom(ycover, ts, n);
    {
        VerifyStage st{"cyclic assignment on the total space", {}};
        st.checks.push_back(check("band equations have a consistent solution", true));
        int hp = ts.horizontal_at[0][0];
        int hq = ts.horizontal_at[0][1];
        int diff = ((kq.edge_value[static_cast<size_t>(hp)] -
                     kq.edge_value[static_cast<size_t>(hq)]) % n + n) % n;
        st.checks.push_back(check("horizontal values differ by 1",
                                  diff == 1,
                                  "value(p-edge) - value(q-edge) = " + std::to_string(diff)));
        auto side_value = [&](const Word& w, int side) {
            int s = 0;
            for (const Letter& l : w.letters) {
                int edge = ts.vertical_at[static_cast<size_t>(side)][static_cast<size_t>(l.gen)];
                int v = kq.edge_value[static_cast<size_t>(edge)];
                s = ((s + l.sign * v) % n + n) % n;
            }
            return s;
        };
        bool vanish = true;
        for (const Word& w : subgroup_basis(s1)) vanish = vanish && side_value(w, 0) == 0;
        for (const Word& w : subgroup_basis(s2)) vanish = vanish && side_value(w, 1) == 0;
        st.checks.push_back(check("assignment vanishes on both side subgroups", vanish));
        rep.stages.push_back(std::move(st));
    }

    // ---- stage: the cyclic cover family ----
    GogCover cover = cover_gog(ycover, kq);
    GraphOfGraphs theta = normalize_gog(cover.gog);
    CoverComplexResult ccn = cover_complex(ts.complex, kq);
    {
        VerifyStage st{"the cyclic cover family", {}};
        st.checks.push_back(check("underlying graph is the theta graph with n edges",
                                  graph_isomorphic(theta.underlying, theta_graph(n)).has_value()));
        bool vshape = theta.vertex_graphs.size() == 2;
        for (const SerreGraph& xv : theta.vertex_graphs)
            vshape = vshape && graph_isomorphic(xv, cycle_with_loops(n)).has_value() &&
                     graph_euler_and_rank(xv).rank == n + 1;
        st.checks.push_back(check("both vertex graphs are n-cycles with loops, rank n+1", vshape));
        bool eshape = static_cast<int>(theta.edge_graphs.size()) == n;
        for (const SerreGraph& xe : theta.edge_graphs)
            eshape = eshape && graph_isomorphic(xe, bigon_with_loops()).has_value() &&
                     graph_euler_and_rank(xe).rank == 3;
        st.checks.push_back(check("all n edge graphs are bigons with loops, rank 3", eshape));
        st.checks.push_back(check(
            "total space of the cover matches the cyclic cover complex",
            complex_isomorphic(total_space(cover.gog).complex, ccn.complex).has_value()));
        PresentationData pres = pi1_presentation(theta);
        st.checks.push_back(check(
            "fundamental group presentation has 3n+1 generators, 3n relations",
            pres.rank() == 3 * n + 1 && static_cast<int>(pres.relators.size()) == 3 * n &&
                pres.euler_characteristic() == 0));
        rep.stages.push_back(std::move(st));
    }

    // ---- stage: cleanliness verdicts ----
    {
        VerifyStage st{"cleanliness of the family", {}};
        CleanlinessReport cl = classify_cleanliness(theta, opts);
        bool has_long_image = false;
        for (const EdgeEndReport& r : cl.iota_ends)
            has_long_image = has_long_image || !r.combinatorial_embedding;
        for (const EdgeEndReport& r : cl.tau_ends)
            has_long_image = has_long_image || !r.combinatorial_embedding;
        st.checks.push_back(check("not VH-clean", !cl.vh_clean,
                                  has_long_image ? "some attaching image crosses several edges"
                                                 : ""));
        st.checks.push_back(check("geometrically clean", cl.geometrically_clean,
                                  "every attaching map embeds after subdivision"));
        st.checks.push_back(check("algebraically clean", cl.algebraically_clean == Ternary::yes,
                                  std::string("free-factor verdicts all ") +
                                      to_string(cl.algebraically_clean)));
        rep.stages.push_back(std::move(st));
    }

    // ---- stage: the composite finite cover ----
    {
        VerifyStage st{"composite finite cover", {}};
        bool index_ok = false;
        bool routes_agree = false;
        std::string detail;
        if (to_cc2) {
            // Transport the cyclic assignment through the isomorphism with the
            // 2-fold cover, whose edges project onto the three generators.
            FiniteQuotientHom k2;
            k2.modulus = n;
            k2.edge_value.assign(static_cast<size_t>(cc2.complex.skeleton.num_edges()), 0);
            for (int e = 0; e < ts.complex.skeleton.num_edges(); ++e) {
                Dart d2 = to_cc2->dart_map[static_cast<size_t>(SerreGraph::positive_dart(e))];
                int v = kq.edge_value[static_cast<size_t>(e)];
                k2.edge_value[static_cast<size_t>(SerreGraph::edge_of(d2))] =
                    SerreGraph::is_positive(d2) ? v : (n - v) % n;
            }
            CoverComplexResult c2n = cover_complex(cc2.complex, k2);
            routes_agree = complex_isomorphic(c2n.complex, ccn.complex).has_value();
            std::vector<int> labels;
            for (int e = 0; e < c2n.complex.skeleton.num_edges(); ++e)
                labels.push_back(
                    cc2.edge_base[static_cast<size_t>(c2n.edge_base[static_cast<size_t>(e)])]);
            StallingsGraph skel = stallings_from_labeled(c2n.complex.skeleton, labels, 0, 3);
            auto idx = subgroup_index(skel);
            index_ok = idx.has_value() && *idx == 2 * n;
            detail = "index " + (idx ? std::to_string(*idx) : std::string("infinite")) +
                     ", skeleton subgroup rank " + std::to_string(skel.rank());
        }
        st.checks.push_back(check("both cover routes give the same complex", routes_agree));
        st.checks.push_back(check("composite cover has index 2n over the base rose", index_ok, detail));
        rep.stages.push_back(std::move(st));
    }

    return rep;
}

std::string render_text(const VerifyReport& r) {
    std::ostringstream out;
    out << "verification report (n = " << r.n << ")\n";
    for (const VerifyStage& st : r.stages) {
        out << "\n[" << st.title << "]\n";
        for (const VerifyCheck& c : st.checks) {
            out << "  " << (c.pass ? "PASS" : "FAIL") << "  " << c.name;
            if (!c.detail.empty()) out << "  (" << c.detail << ")";
            out << "\n";
        }
    }
    out << "\nresult: " << (r.all_pass() ? "PASS" : "FAIL") << " (" << r.passed_checks() << "/"
        << r.total_checks() << " checks)\n";
    return out.str();
}

} // namespace gogkit
