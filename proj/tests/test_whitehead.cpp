#include "doctest.h"

#include "gogkit/whitehead.hpp"
#include "gogkit/word.hpp"

using namespace gogkit;

namespace {
const FreeBasis ax = standard_basis({"a", "x"});
const FreeBasis abx = standard_basis({"a", "b", "x"});

int total_length(const std::vector<Word>& tuple) {
    int sum = 0;
    for (const Word& w : tuple) sum += w.length();
    return sum;
}
} // namespace

TEST_CASE("minimization shortens conjugates and fixes bases") {
    WhiteheadResult one = whitehead_minimize({parse_word("x a x^-1", ax)}, 2);
    CHECK(total_length(one.tuple) == 1);

    WhiteheadResult basis = whitehead_minimize({parse_word("a", ax), parse_word("x", ax)}, 2);
    CHECK(total_length(basis.tuple) == 2);

    // (a, xax^-1) cannot drop below total length 4.
    WhiteheadResult stuck =
        whitehead_minimize({parse_word("a", ax), parse_word("x a x^-1", ax)}, 2);
    CHECK(total_length(stuck.tuple) == 4);
}

TEST_CASE("single generators span free factors") {
    CHECK(is_free_factor({parse_word("a", ax)}, 2) == Ternary::yes);
    CHECK(is_free_factor({parse_word("x a x^-1", ax)}, 2) == Ternary::yes);
    CHECK(is_free_factor({parse_word("a", abx), parse_word("x", abx)}, 3) == Ternary::yes);
    CHECK(is_free_factor({parse_word("a x", ax)}, 2) == Ternary::yes); // part of the basis (ax, x)
}

TEST_CASE("proper powers and their conjugates are not free factors") {
    CHECK(is_free_factor({parse_word("a^3", ax)}, 2) == Ternary::no);
    CHECK(is_free_factor({parse_word("x a^3 x^-1", ax)}, 2) == Ternary::no);
}

TEST_CASE("rank outgrowing the ambient group settles the question") {
    // The even-length kernel has rank 3 inside the rank-2 ambient group.
    std::vector<Word> big = {parse_word("a^2", ax), parse_word("x^2", ax),
                             parse_word("a x", ax)};
    CHECK(is_free_factor(big, 2) == Ternary::no);
    // A redundant tuple generating the whole group is still a free factor.
    std::vector<Word> whole = {parse_word("a", ax), parse_word("x", ax),
                               parse_word("x a x^-1", ax)};
    CHECK(is_free_factor(whole, 2) == Ternary::yes);
}

TEST_CASE("the paper's malnormality witness is not a free factor") {
    std::vector<Word> tuple = {parse_word("a", ax), parse_word("x a x^-1", ax)};
    CHECK(is_free_factor(tuple, 2) == Ternary::no);
}

TEST_CASE("non-basis generating tuples are reduced to a basis first") {
    // <a, a^2> = <a>, a free factor presented by a redundant tuple.
    CHECK(is_free_factor({parse_word("a", ax), parse_word("a^2", ax)}, 2) == Ternary::yes);
}

TEST_CASE("subgroups with cyclically reducible generators are judged correctly") {
    // <ab, bab^-1> is a proper rank-2 subgroup of F2, hence not a free
    // factor, even though its cyclic reductions generate everything.
    FreeBasis abb = standard_basis({"a", "b"});
    std::vector<Word> tuple = {parse_word("a b", abb), parse_word("b a b^-1", abb)};
    CHECK(is_free_factor(tuple, 2) == Ternary::no);
}

TEST_CASE("the whole group is a free factor of itself") {
    CHECK(is_free_factor({parse_word("a", ax), parse_word("x", ax)}, 2) == Ternary::yes);
}

TEST_CASE("conservative mode never reports a definite verdict it cannot back") {
    FreeFactorOptions conservative;
    conservative.conservative = true;
    // Definite positives survive conservative mode.
    CHECK(is_free_factor({parse_word("a", ax)}, 2, conservative) == Ternary::yes);
    // Inconclusive searches degrade to unknown rather than no.
    Ternary verdict =
        is_free_factor({parse_word("a", ax), parse_word("x a x^-1", ax)}, 2, conservative);
    CHECK(verdict != Ternary::yes);
}

TEST_CASE("ternary names render for reports") {
    CHECK(std::string(to_string(Ternary::yes)) == "yes");
    CHECK(std::string(to_string(Ternary::no)) == "no");
    CHECK(std::string(to_string(Ternary::unknown)) == "unknown");
}
