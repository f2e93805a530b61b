#include "doctest.h"

#include <algorithm>
#include <random>

#include "gogkit/constructions.hpp"
#include "gogkit/errors.hpp"
#include "gogkit/presentation.hpp"
#include "gogkit/word.hpp"

using namespace gogkit;

namespace {
PresentationData make(const std::vector<std::string>& gens,
                      const std::vector<std::string>& relators) {
    PresentationData p;
    p.generators = gens;
    FreeBasis basis = standard_basis(gens);
    for (const std::string& r : relators) p.relators.push_back(parse_word(r, basis));
    p.validate();
    return p;
}
} // namespace

TEST_CASE("presentation bookkeeping") {
    PresentationData p = make({"a", "b"}, {"a b a^-1 b^-1"});
    CHECK(p.rank() == 2);
    CHECK(p.euler_characteristic() == 0);

    PresentationData free2 = make({"a", "b"}, {});
    CHECK(free2.euler_characteristic() == -1);

    PresentationData bad;
    bad.generators = {"a", "a"};
    CHECK_THROWS_AS(bad.validate(), ValidationError);

    PresentationData out_of_range;
    out_of_range.generators = {"a"};
    out_of_range.relators = {Word{{{3, +1}}}};
    CHECK_THROWS_AS(out_of_range.validate(), ValidationError);
}

TEST_CASE("smith normal form diagonals") {
    CHECK(smith_diagonal({{2, 0}, {0, 3}}) == std::vector<std::int64_t>{1, 6});
    CHECK(smith_diagonal({{1, 0}, {0, 1}}) == std::vector<std::int64_t>{1, 1});
    CHECK(smith_diagonal({{0, 0}, {0, 0}}).empty());
    CHECK(smith_diagonal({{4}}) == std::vector<std::int64_t>{4});
    CHECK(smith_diagonal({{2, 4}, {4, 8}}) == std::vector<std::int64_t>{2});
    CHECK(smith_diagonal({{6, 10}, {10, 6}}) == std::vector<std::int64_t>{2, 32});
    CHECK(smith_diagonal({{-3}}) == std::vector<std::int64_t>{3});
}

TEST_CASE("abelianization of standard examples") {
    AbelianizationData torus = abelianization(make({"a", "b"}, {"a b a^-1 b^-1"}));
    CHECK(torus.betti == 2);
    CHECK(torus.torsion.empty());

    AbelianizationData z3 = abelianization(make({"a"}, {"a^3"}));
    CHECK(z3.betti == 0);
    CHECK(z3.torsion == std::vector<std::int64_t>{3});

    AbelianizationData rewritten = abelianization(rewritten_presentation(3));
    CHECK(rewritten.betti == 2);
    CHECK(rewritten.torsion.empty());

    AbelianizationData free_group = abelianization(make({"a", "b", "c"}, {}));
    CHECK(free_group.betti == 3);
    CHECK(free_group.torsion.empty());

    AbelianizationData trivial = abelianization(make({"a"}, {"a"}));
    CHECK(trivial.betti == 0);
    CHECK(trivial.torsion.empty());
}

TEST_CASE("abelianization is invariant under relator order and renaming") {
    std::mt19937 rng(987123);
    for (int trial = 0; trial < 50; ++trial) {
        std::uniform_int_distribution<int> nrel(0, 3);
        std::uniform_int_distribution<int> len(1, 6);
        std::uniform_int_distribution<int> gen(0, 2);
        std::uniform_int_distribution<int> coin(0, 1);
        PresentationData p;
        p.generators = {"a", "b", "c"};
        int rels = nrel(rng);
        for (int r = 0; r < rels; ++r) {
            Word w;
            int l = len(rng);
            for (int i = 0; i < l; ++i) w.letters.push_back({gen(rng), coin(rng) ? 1 : -1});
            w = reduce(w);
            if (!w.empty()) p.relators.push_back(w);
        }
        PresentationData permuted = p;
        std::reverse(permuted.relators.begin(), permuted.relators.end());
        PresentationData renamed = p;
        renamed.generators = {"u", "v", "w"};
        REQUIRE(abelianization(p) == abelianization(permuted));
        REQUIRE(abelianization(p) == abelianization(renamed));
    }
}
