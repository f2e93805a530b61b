#include "doctest.h"

#include <algorithm>
#include <random>

#include "gogkit/constructions.hpp"
#include "gogkit/errors.hpp"
#include "gogkit/stallings.hpp"
#include "gogkit/word.hpp"
#include "oracles.hpp"

using namespace gogkit;

namespace {
const FreeBasis ax = standard_basis({"a", "x"});
const FreeBasis ab = standard_basis({"a", "b"});

std::vector<Word> parse_all(const std::vector<std::string>& texts, const FreeBasis& basis) {
    std::vector<Word> out;
    for (const std::string& t : texts) out.push_back(parse_word(t, basis));
    return out;
}
} // namespace

TEST_CASE("the whole group folds to a rose") {
    StallingsGraph sg = subgroup_graph(parse_all({"a", "b"}, ab), 2);
    CHECK(sg.graph.num_vertices() == 1);
    CHECK(sg.graph.num_edges() == 2);
    CHECK(sg.rank() == 2);
    CHECK(subgroup_index(sg) == 1);
}

TEST_CASE("the amalgam edge subgroup folds to the 3-vertex graph") {
    StallingsGraph sg = subgroup_graph(parse_all({"x^3", "a", "x^-1 a x"}, ax), 2);
    CHECK(sg.graph.num_vertices() == 3);
    CHECK(sg.graph.num_edges() == 5);
    CHECK(sg.rank() == 3);
    CHECK_FALSE(subgroup_index(sg).has_value());

    // Two a-loops and three x-edges forming a cycle through the basepoint.
    int a_loops = 0, x_edges = 0;
    for (int e = 0; e < sg.graph.num_edges(); ++e) {
        if (sg.edge_generator[static_cast<size_t>(e)] == 0) {
            CHECK(sg.graph.edge(e).from == sg.graph.edge(e).to);
            ++a_loops;
        } else {
            CHECK(sg.graph.edge(e).from != sg.graph.edge(e).to);
            ++x_edges;
        }
    }
    CHECK(a_loops == 2);
    CHECK(x_edges == 3);
}

TEST_CASE("mod-2 kernel subgroup has Nielsen-Schreier rank 3 and index 2") {
    StallingsGraph sg = subgroup_graph(parse_all({"b^2", "a", "b a b^-1"}, ab), 2);
    CHECK(sg.rank() == 3);
    CHECK(subgroup_index(sg) == 2);
}

TEST_CASE("mod-3 kernel subgroup has index 3") {
    StallingsGraph sg =
        subgroup_graph(parse_all({"x^3", "a", "x a x^-1", "x^2 a x^-2"}, ax), 2);
    CHECK(sg.rank() == 4);
    CHECK(subgroup_index(sg) == 3);
}

TEST_CASE("membership and coordinates in a cyclic subgroup") {
    StallingsGraph sg = subgroup_graph({parse_word("a", ax)}, 2);
    Word a = parse_word("a", ax);
    CHECK(membership(sg, a));
    auto coords = subgroup_coordinates(sg, a);
    REQUIRE(coords.has_value());
    CHECK(*coords == Word{{{0, +1}}}); // b1
    CHECK_FALSE(membership(sg, parse_word("x", ax)));
}

TEST_CASE("x is not in the amalgam edge subgroup") {
    std::vector<Word> gens = parse_all({"x^3", "a", "x^-1 a x"}, ax);
    StallingsGraph sg = subgroup_graph(gens, 2);
    Word x = parse_word("x", ax);
    CHECK_FALSE(membership(sg, x));
    CHECK_FALSE(testsupport::product_membership(gens, x, 3));
    CHECK(membership(sg, parse_word("x^3", ax)));
    CHECK(membership(sg, parse_word("x^-1 a x", ax)));
    CHECK(membership(sg, parse_word("x^2 a x^-2", ax))); // x^3 (x^-1 a x) x^-3
}

TEST_CASE("coordinates re-expand to the original word") {
    std::vector<Word> gens = parse_all({"x^3", "a", "x^-1 a x"}, ax);
    StallingsGraph sg = subgroup_graph(gens, 2);
    std::vector<Word> basis = subgroup_basis(sg);
    REQUIRE(basis.size() == 3);
    Word member = parse_word("x^3 a x^-1 a^-1 x^-2", ax);
    auto coords = subgroup_coordinates(sg, member);
    REQUIRE(coords.has_value());
    std::map<int, Word> images;
    for (size_t i = 0; i < basis.size(); ++i) images[static_cast<int>(i)] = basis[i];
    CHECK(substitute(*coords, images) == reduce(member));
}

TEST_CASE("canonical basis of the side-1 subgroup") {
    StallingsGraph sg = subgroup_graph(parse_all({"x^3", "a", "x^2 a x^-2"}, ax), 2);
    std::vector<Word> basis = subgroup_basis(sg);
    REQUIRE(basis.size() == 3);
    CHECK(basis[0] == parse_word("a", ax));
    CHECK(basis[1] == parse_word("x^3", ax));
    CHECK(basis[2] == parse_word("x^-1 a x", ax));
}

TEST_CASE("expressing a member over a given free generating tuple") {
    std::vector<Word> tuple = parse_all({"a", "x^-2 a x^2", "x^-3"}, ax);
    auto expr = express_in_tuple(tuple, 2, parse_word("x a x^-1", ax));
    REQUIRE(expr.has_value());
    Word expected; // b3^-1 b2 b3
    expected.letters = {{2, -1}, {1, +1}, {2, +1}};
    CHECK(*expr == expected);

    CHECK_FALSE(express_in_tuple(tuple, 2, parse_word("x", ax)).has_value());
    CHECK_THROWS_AS(express_in_tuple(parse_all({"a", "a^2"}, ax), 2, parse_word("a", ax)),
                    ValidationError);
}

TEST_CASE("canonical form is insertion-order independent") {
    std::vector<Word> gens = parse_all({"x^3", "a", "x^-1 a x"}, ax);
    std::vector<Word> permuted = {gens[2], gens[0], gens[1]};
    CHECK(subgroup_graph(gens, 2) == subgroup_graph(permuted, 2));
}

TEST_CASE("stallings_from_labeled wraps an explicit cover of the rose") {
    // The mod-2 kernel of F(a,b) via b: two vertices swapped by b, a-loops.
    SerreGraph g;
    g.add_vertex();
    g.add_vertex();
    int a0 = g.add_edge(0, 0);
    int a1 = g.add_edge(1, 1);
    int b01 = g.add_edge(0, 1);
    int b10 = g.add_edge(1, 0);
    (void)a0;
    (void)a1;
    (void)b01;
    (void)b10;
    StallingsGraph sg = stallings_from_labeled(g, {0, 0, 1, 1}, 0, 2);
    CHECK(sg.rank() == 3);
    CHECK(subgroup_index(sg) == 2);
    CHECK(sg == subgroup_graph(parse_all({"a", "b^2", "b a b^-1"}, ab), 2));

    // An unfolded graph is rejected.
    SerreGraph bad;
    bad.add_vertex();
    bad.add_vertex();
    bad.add_edge(0, 0);
    bad.add_edge(0, 1);
    CHECK_THROWS_AS(stallings_from_labeled(bad, {0, 0}, 0, 1), ValidationError);
}

TEST_CASE("pi1 machinery: spanning trees, loops and collapse words") {
    SerreGraph theta = theta_graph(3);
    SpanningTreeData tree = lex_least_spanning_tree(theta, 0);
    CHECK(tree.rank() == 2);
    CHECK(tree.in_tree == std::vector<bool>{true, false, false});
    for (int k = 0; k < tree.rank(); ++k) {
        EdgePath loop = pi1_basis_loop(tree, theta, k);
        CHECK(loop.closed_in(theta));
        CHECK(loop.source(theta) == 0);
        Word w = tree_collapse_word(tree, loop);
        CHECK(w == Word{{{k, +1}}});
    }
}

TEST_CASE("pi1_image of a subgraph inclusion is the expected factor") {
    GraphMorphism f;
    f.domain = rose_graph({"a"});
    f.codomain = rose_graph({"a", "x"});
    f.vertex_map = {0};
    f.edge_images = {EdgePath{{SerreGraph::positive_dart(0)}}};
    f.validate();
    StallingsGraph image = pi1_image(f, 0);
    CHECK(image == subgroup_graph({parse_word("a", ax)}, 2));
    CHECK(is_pi1_injective(f));
}

TEST_CASE("pi1_injectivity fails when rank drops") {
    GraphMorphism f;
    f.domain = rose_graph({"a", "b"});
    f.codomain = rose_graph({"z"});
    f.vertex_map = {0};
    f.edge_images = {EdgePath{{SerreGraph::positive_dart(0)}},
                     EdgePath{{SerreGraph::positive_dart(0)}}};
    f.validate();
    CHECK_FALSE(is_pi1_injective(f));
}
