#include "doctest.h"

#include <cstdio>
#include <fstream>

#include "gogkit/constructions.hpp"
#include "gogkit/dot.hpp"
#include "gogkit/errors.hpp"
#include "gogkit/io.hpp"
#include "gogkit/morphism.hpp"
#include "oracles.hpp"

using namespace gogkit;

namespace {

GraphMorphism sample_morphism() {
    GraphMorphism f;
    f.domain = rose_graph({"u"});
    f.codomain = rose_graph({"a", "x"});
    f.vertex_map = {0};
    f.edge_images = {EdgePath{{SerreGraph::positive_dart(1), SerreGraph::positive_dart(0),
                               SerreGraph::inverse(SerreGraph::positive_dart(1))}}};
    f.validate();
    return f;
}

} // namespace

TEST_CASE("graph documents round-trip") {
    SerreGraph g = cycle_with_loops(3);
    ordered_json j = graph_to_json(g);
    SerreGraph back = graph_from_json(j);
    // Unnamed cells come back under their fallback names, so compare shape
    // and display names, and require the serialized form to be a fixed point.
    CHECK(back.same_shape(g));
    for (int v = 0; v < g.num_vertices(); ++v)
        CHECK(back.display_vertex_name(v) == g.display_vertex_name(v));
    for (int e = 0; e < g.num_edges(); ++e)
        CHECK(back.display_edge_name(e) == g.display_edge_name(e));
    CHECK(graph_to_json(back) == j);
    CHECK(detect_kind(j) == DocumentKind::graph);
    // Unnamed cells serialize under their fallback display names and stay put.
    SerreGraph anon = theta_graph(2);
    ordered_json ja = graph_to_json(anon);
    CHECK(ja["edges"][0]["id"] == "e0");
    CHECK(graph_to_json(graph_from_json(ja)) == ja);
}

TEST_CASE("morphism documents round-trip") {
    GraphMorphism f = sample_morphism();
    ordered_json j = morphism_to_json(f);
    GraphMorphism back = morphism_from_json(j);
    CHECK(morphism_to_json(back) == j);
    CHECK(back.vertex_map == f.vertex_map);
    CHECK(back.edge_images[0].darts == f.edge_images[0].darts);
    CHECK(detect_kind(j) == DocumentKind::morphism);
    CHECK(j["edge_map"]["u"] == ordered_json::array({"x+", "a+", "x-"}));
}

TEST_CASE("presentation documents round-trip") {
    PresentationData p = rewritten_presentation(5);
    ordered_json j = presentation_to_json(p);
    CHECK(j["relators"][1] == "b x^2 b x^-3");
    PresentationData back = presentation_from_json(j);
    CHECK(back.generators == p.generators);
    CHECK(back.relators == p.relators);
    CHECK(presentation_to_json(back) == j);
    CHECK(detect_kind(j) == DocumentKind::presentation);
}

TEST_CASE("complex documents round-trip") {
    TwoComplex x = cover_complex(presentation_complex(rewritten_presentation(3)), mod2_hom())
                       .complex;
    ordered_json j = complex_to_json(x);
    TwoComplex back = complex_from_json(j);
    CHECK(complex_to_json(back) == j);
    CHECK(back.skeleton == x.skeleton);
    CHECK(back.faces.size() == x.faces.size());
    CHECK(detect_kind(j) == DocumentKind::complex_);
    CHECK(complex_isomorphic(back, x).has_value());
}

TEST_CASE("hom documents round-trip with sparse values") {
    SerreGraph g = rose_graph({"a", "b", "x"});
    ordered_json j;
    j["modulus"] = 3;
    j["values"] = ordered_json::object({{"b", -1}, {"x", 7}});
    FiniteQuotientHom h = hom_from_json(j, g);
    CHECK(h.modulus == 3);
    CHECK(h.edge_value == std::vector<int>{0, 2, 1}); // missing a -> 0, residues normalized
    ordered_json full = hom_to_json(h, g);
    CHECK(hom_from_json(full, g).edge_value == h.edge_value);
    CHECK(detect_kind(full) == DocumentKind::hom);

    ordered_json bad = full;
    bad["values"]["zzz"] = 1;
    CHECK_THROWS_AS(hom_from_json(bad, g), ValidationError);
    ordered_json nonpos = full;
    nonpos["modulus"] = 0;
    CHECK_THROWS_AS(hom_from_json(nonpos, g), ValidationError);
}

TEST_CASE("gog documents round-trip") {
    for (const GraphOfGraphs* g :
         {&testsupport::double_cover3(), &testsupport::theta3()}) {
        ordered_json j = gog_to_json(*g);
        GraphOfGraphs back = gog_from_json(j);
        CHECK(gog_to_json(back) == j);
        CHECK(same_structure(back, *g));
        CHECK(detect_kind(j) == DocumentKind::gog);
    }
}

TEST_CASE("malformed documents are rejected") {
    CHECK_THROWS_AS(graph_from_json(ordered_json::object()), ValidationError);
    CHECK_THROWS_AS(graph_from_json(ordered_json::parse(R"({"vertices": ["v", "v"],
        "edges": []})")),
                    ValidationError);
    CHECK_THROWS_AS(graph_from_json(ordered_json::parse(R"({"vertices": ["v"],
        "edges": [{"from": "v", "to": "w"}]})")),
                    ValidationError);
    CHECK_THROWS_AS(graph_from_json(ordered_json::parse(R"({"vertices": ["v"],
        "edges": [{"id": "e", "from": "v", "to": "v"},
                  {"id": "e", "from": "v", "to": "v"}]})")),
                    ValidationError);
    CHECK_THROWS_AS(detect_kind(ordered_json::parse(R"({"nonsense": 1})")), ValidationError);
    CHECK_THROWS_AS(detect_kind(ordered_json::parse("[1, 2]")), ValidationError);

    ordered_json fj = morphism_to_json(sample_morphism());
    ordered_json missing = fj;
    missing["vertex_map"].erase("o");
    CHECK_THROWS_AS(morphism_from_json(missing), ValidationError);
    ordered_json badtoken = fj;
    badtoken["edge_map"]["u"] = ordered_json::array({"a*"});
    CHECK_THROWS_AS(morphism_from_json(badtoken), ValidationError);
    ordered_json unknownedge = fj;
    unknownedge["edge_map"]["u"] = ordered_json::array({"qq+"});
    CHECK_THROWS_AS(morphism_from_json(unknownedge), ValidationError);

    // A face that is not a closed path fails complex validation.
    ordered_json cj = graph_to_json(theta_graph(2));
    cj["faces"] = ordered_json::array({ordered_json::array({"e0+"})});
    CHECK_THROWS_AS(complex_from_json(cj), ValidationError);

    ordered_json gj = gog_to_json(testsupport::double_cover3());
    ordered_json mismatched = gj;
    mismatched["edge_graphs"]["e0"]["vertices"].push_back("stray");
    CHECK_THROWS_AS(gog_from_json(mismatched), ValidationError);
}

TEST_CASE("file loading reports IO and syntax problems") {
    CHECK_THROWS_AS(load_json_file("definitely_not_here.json"), ValidationError);
    const std::string path = "io_test_bad.json";
    {
        std::ofstream out(path);
        out << "{ not json";
    }
    CHECK_THROWS_AS(load_json_file(path), ValidationError);
    {
        std::ofstream out(path);
        out << pretty(graph_to_json(rose_graph({"a"})));
    }
    CHECK(graph_from_json(load_json_file(path)) == rose_graph({"a"}));
    std::remove(path.c_str());
}

TEST_CASE("pretty output is canonical") {
    ordered_json j = graph_to_json(rose_graph({"a"}));
    std::string s = pretty(j);
    CHECK(s.back() == '\n');
    CHECK(ordered_json::parse(s) == j);
    CHECK(pretty(j) == s);
}

TEST_CASE("dot output is stable and readable") {
    std::string d = dot_of_graph(rose_graph({"a"}));
    CHECK(d ==
          "digraph g {\n"
          "  \"o\";\n"
          "  \"o\" -> \"o\" [label=\"a\"];\n"
          "}\n");
    std::string t = dot_of_graph(theta_graph(2));
    CHECK(t.find("\"u\" -> \"v\" [label=\"e0\"]") != std::string::npos);
    CHECK(t.find("\"u\" -> \"v\" [label=\"e1\"]") != std::string::npos);

    std::string gd = dot_of_gog(testsupport::double_cover3());
    CHECK(gd.rfind("digraph gog {", 0) == 0);
    CHECK(gd.find("cluster_v0") != std::string::npos);
    CHECK(gd.find("cluster_e0") != std::string::npos);
    CHECK(gd.find("label=\"iota\"") != std::string::npos);
    CHECK(gd.find("label=\"tau\"") != std::string::npos);
    CHECK(gd == dot_of_gog(testsupport::double_cover3()));
}

TEST_CASE("verification reports serialize with stable keys") {
    VerifyReport r = run_verification(3);
    ordered_json j = report_to_json(r);
    CHECK(j["n"] == 3);
    CHECK(j["all_pass"] == true);
    CHECK(j["passed"] == j["total"]);
    CHECK(j["stages"].size() == 8);
    CHECK(j["stages"][0]["title"] == "group presentations");
    CHECK(j["stages"][0]["checks"][0].contains("name"));
    CHECK(j["stages"][0]["checks"][0].contains("pass"));
    CHECK(report_to_json(run_verification(3)) == j);
}
