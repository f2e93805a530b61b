// Acceptance harness: exercises the complete pipeline end to end and prints
// one PASS/FAIL line per criterion.  Exit code 0 iff everything passes.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "gogkit/constructions.hpp"
#include "gogkit/errors.hpp"
#include "gogkit/graph_of_graphs.hpp"
#include "gogkit/io.hpp"
#include "gogkit/stallings.hpp"
#include "gogkit/two_complex.hpp"
#include "gogkit/word.hpp"
#include "oracles.hpp"

using namespace gogkit;

namespace {

struct Tally {
    int failures = 0;
    std::string first_failure;
    void expect(bool ok, const std::string& what) {
        if (!ok) {
            if (failures == 0) first_failure = what;
            ++failures;
        }
    }
};

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run_command(const std::string& cmd) {
    RunResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    char buf[4096];
    size_t got;
    while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) r.output.append(buf, got);
    int status = pclose(pipe);
    if (WIFEXITED(status)) r.exit_code = WEXITSTATUS(status);
    return r;
}

std::string quoted(const std::string& s) { return "\"" + s + "\""; }

void report(int number, bool pass, const std::string& text, const std::string& detail = {}) {
    std::cout << "criterion " << number << ": " << (pass ? "PASS" : "FAIL") << " - " << text;
    if (!detail.empty()) std::cout << " [" << detail << "]";
    std::cout << "\n";
}

// ---- criterion 1: presentation rewriting ----

bool criterion_rewriting(std::string& detail) {
    PresentationData artin = artin_presentation(3);
    PresentationData rew = rewritten_presentation(3);
    FreeBasis ab = standard_basis(artin.generators);
    FreeBasis rb = standard_basis(rew.generators);
    bool ok = artin.relators.size() == 2 && rew.relators.size() == 2;
    ok = ok && artin.relators[1] == parse_word("b c b c^-1 b^-1 c^-1", ab);
    ok = ok && artin.relators[1].length() == 6;
    ok = ok && rew.relators[1] == parse_word("b x b x^-2", rb);
    std::map<int, Word> x_to_c = {{0, parse_word("a", ab)},
                                  {1, parse_word("b", ab)},
                                  {2, parse_word("c b", ab)}};
    std::map<int, Word> c_to_x = {{0, parse_word("a", rb)},
                                  {1, parse_word("b", rb)},
                                  {2, parse_word("x b^-1", rb)}};
    for (size_t i = 0; i < 2; ++i) {
        ok = ok && substitute(rew.relators[i], x_to_c) == artin.relators[i];
        ok = ok && substitute(artin.relators[i], c_to_x) == rew.relators[i];
    }
    detail = "second relator " + format_word(rew.relators[1], rb);
    return ok;
}

// ---- criterion 2: the double cover and its decomposition ----

bool criterion_double_cover(std::string& detail) {
    TwoComplex base = presentation_complex(rewritten_presentation(3));
    CoverComplexResult cc2 = cover_complex(base, mod2_hom());
    bool ok = cc2.complex.skeleton.num_vertices() == 2 &&
              cc2.complex.skeleton.num_edges() == 6 && cc2.complex.num_faces() == 4 &&
              cc2.complex.euler_characteristic() == 0;
    const GraphOfGraphs& dc = testsupport::double_cover3();
    ok = ok && complex_isomorphic(total_space(dc).complex, cc2.complex).has_value();
    EulerRank r1 = graph_euler_and_rank(dc.vertex_graphs[0]);
    EulerRank re = graph_euler_and_rank(dc.edge_graphs[0]);
    EulerRank r2 = graph_euler_and_rank(dc.vertex_graphs[1]);
    ok = ok && r1.rank == 2 && re.rank == 3 && r2.rank == 2;
    detail = "cells (2, 6, 4), ranks (2, 3, 2)";
    return ok;
}

// ---- criterion 3: side subgroups and the crossing identification ----

bool criterion_side_subgroups(std::string& detail) {
    const GraphOfGraphs& dc = testsupport::double_cover3();
    FreeBasis side1 = standard_basis({"a", "x"});
    FreeBasis side2 = standard_basis({"abar", "xbar"});
    std::vector<Word> tuple1 = {parse_word("x^3", side1), parse_word("a", side1),
                                parse_word("x^2 a x^-2", side1)};
    std::vector<Word> tuple2 = {parse_word("xbar^3", side2), parse_word("abar", side2),
                                parse_word("xbar abar xbar^-1", side2)};
    StallingsGraph s1 = pi1_image(dc.iota_maps[0], 0);
    StallingsGraph s2 = pi1_image(dc.tau_maps[0], 0);
    bool ok = (s1 == subgroup_graph(tuple1, 2)) && (s2 == subgroup_graph(tuple2, 2));
    ok = ok && subgroup_basis(s1) ==
                   std::vector<Word>{parse_word("a", side1), parse_word("x^3", side1),
                                     parse_word("x^-1 a x", side1)};
    std::optional<Word> expr = express_in_tuple(tuple1, 2, parse_word("x^-1 a x", side1));
    ok = ok && expr.has_value();
    if (expr) {
        std::map<int, Word> across = {{0, tuple2[0]}, {1, tuple2[1]}, {2, tuple2[2]}};
        Word crossed = substitute(*expr, across);
        ok = ok && crossed == parse_word("xbar^-2 abar xbar^2", side2);
        detail = "x^-1 a x crosses to " + format_word(crossed, side2);
    }
    return ok;
}

// ---- criterion 4: the cyclic assignment and the composite cover ----

bool criterion_assignment(std::string& detail) {
    const GraphOfGraphs& dc = testsupport::double_cover3();
    TotalSpaceResult ts = total_space(dc);
    FiniteQuotientHom kq = zn_hom(dc, ts, 3);
    try {
        validate_hom(ts.complex, kq);
    } catch (const std::exception&) {
        detail = "assignment fails validation";
        return false;
    }
    auto side_value = [&](const Word& w, int side) {
        int s = 0;
        for (const Letter& l : w.letters) {
            int e = ts.vertical_at[static_cast<size_t>(side)][static_cast<size_t>(l.gen)];
            s = ((s + l.sign * kq.edge_value[static_cast<size_t>(e)]) % 3 + 3) % 3;
        }
        return s;
    };
    bool ok = true;
    for (const Word& w : subgroup_basis(pi1_image(dc.iota_maps[0], 0)))
        ok = ok && side_value(w, 0) == 0;
    for (const Word& w : subgroup_basis(pi1_image(dc.tau_maps[0], 0)))
        ok = ok && side_value(w, 1) == 0;

    GraphOfGraphs theta = normalize_gog(cover_gog(dc, kq).gog);
    ok = ok && graph_isomorphic(theta.underlying, theta_graph(3)).has_value();
    for (const SerreGraph& xv : theta.vertex_graphs)
        ok = ok && graph_euler_and_rank(xv).rank == 4;
    ok = ok && theta.edge_graphs.size() == 3;
    for (const SerreGraph& xe : theta.edge_graphs)
        ok = ok && graph_euler_and_rank(xe).rank == 3;

    // Composite finite cover: transport the assignment to the plain double
    // cover, take the cyclic cover there, and fold its skeleton over the
    // base rose on three letters.
    TwoComplex base = presentation_complex(rewritten_presentation(3));
    CoverComplexResult cc2 = cover_complex(base, mod2_hom());
    std::optional<ComplexIso> iso = complex_isomorphic(ts.complex, cc2.complex);
    ok = ok && iso.has_value();
    if (iso) {
        FiniteQuotientHom k2;
        k2.modulus = 3;
        k2.edge_value.assign(static_cast<size_t>(cc2.complex.skeleton.num_edges()), 0);
        for (int e = 0; e < ts.complex.skeleton.num_edges(); ++e) {
            Dart d2 = iso->dart_map[static_cast<size_t>(SerreGraph::positive_dart(e))];
            int v = kq.edge_value[static_cast<size_t>(e)];
            k2.edge_value[static_cast<size_t>(SerreGraph::edge_of(d2))] =
                SerreGraph::is_positive(d2) ? v : (3 - v) % 3;
        }
        CoverComplexResult c6 = cover_complex(cc2.complex, k2);
        std::vector<int> labels;
        for (int e = 0; e < c6.complex.skeleton.num_edges(); ++e)
            labels.push_back(
                cc2.edge_base[static_cast<size_t>(c6.edge_base[static_cast<size_t>(e)])]);
        StallingsGraph skel = stallings_from_labeled(c6.complex.skeleton, labels, 0, 3);
        std::optional<int> idx = subgroup_index(skel);
        ok = ok && idx.has_value() && *idx == 6;
        detail = "index " + (idx ? std::to_string(*idx) : std::string("infinite")) +
                 ", subgroup rank " + std::to_string(skel.rank());
    }
    return ok;
}

// ---- criterion 5: cleanliness verdicts for the first member ----

bool criterion_cleanliness(std::string& detail) {
    CleanlinessReport cl = classify_cleanliness(testsupport::theta3());
    detail = std::string("vh ") + (cl.vh_clean ? "true" : "false") + ", geometric " +
             (cl.geometrically_clean ? "true" : "false") + ", algebraic " +
             to_string(cl.algebraically_clean);
    return !cl.vh_clean && cl.geometrically_clean && cl.algebraically_clean == Ternary::yes;
}

// ---- criterion 6: the family beyond the first member ----

bool criterion_family(std::string& detail) {
    bool ok = true;
    for (int n : {5, 7}) {
        const GraphOfGraphs& t = (n == 5) ? testsupport::theta5() : testsupport::theta7();
        ok = ok && graph_isomorphic(t.underlying, theta_graph(n)).has_value();
        ok = ok && t.vertex_graphs.size() == 2 && static_cast<int>(t.edge_graphs.size()) == n;
        for (const SerreGraph& xv : t.vertex_graphs)
            ok = ok && graph_isomorphic(xv, cycle_with_loops(n)).has_value() &&
                 graph_euler_and_rank(xv).rank == n + 1;
        for (const SerreGraph& xe : t.edge_graphs)
            ok = ok && graph_isomorphic(xe, bigon_with_loops()).has_value();
        VerifyReport rep = run_verification(n);
        ok = ok && rep.all_pass();
        const VerifyCheck& last = rep.stages.back().checks.back();
        ok = ok && last.detail == ("index " + std::to_string(2 * n) +
                                   ", skeleton subgroup rank " + std::to_string(4 * n + 1));
        if (n == 7) detail = last.detail;
    }
    return ok;
}

// ---- criterion 7: randomized suites ----

bool criterion_randomized(std::string& detail) {
    Tally t;

    std::mt19937 rng1(903001);
    for (int trial = 0; trial < 200; ++trial) {
        int rank = 2 + static_cast<int>(rng1() % 2);
        std::vector<Word> tuple =
            testsupport::random_tuple(rng1, rank, 1 + static_cast<int>(rng1() % 4), 6);
        StallingsGraph sg = subgroup_graph(tuple, rank);
        std::vector<Word> shuffled = tuple;
        std::shuffle(shuffled.begin(), shuffled.end(), rng1);
        t.expect(subgroup_graph(shuffled, rank) == sg, "fold order");
        std::vector<Word> redundant = tuple;
        redundant.push_back(testsupport::random_product(rng1, tuple, 3));
        t.expect(subgroup_graph(redundant, rank) == sg, "fold redundancy");
    }

    std::mt19937 rng2(903002);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<Word> tuple = testsupport::random_tuple(rng2, 2, 2, 4);
        StallingsGraph sg = subgroup_graph(tuple, 2);
        Word inside = testsupport::random_product(rng2, tuple, 4);
        t.expect(membership(sg, inside), "product membership");
        std::vector<Word> basis = subgroup_basis(sg);
        Word probe = testsupport::random_word(rng2, 2, 1 + static_cast<int>(rng2() % 4));
        bool oracle = testsupport::product_membership(basis, reduce(probe), 3);
        bool member = membership(sg, probe);
        if (oracle) t.expect(member, "oracle implies member");
        if (member) {
            auto c = subgroup_coordinates(sg, probe);
            t.expect(c.has_value(), "member has coordinates");
            if (c && c->length() <= 3) t.expect(oracle, "short member found by oracle");
        }
    }

    std::mt19937 rng3(903003);
    for (int trial = 0; trial < 100; ++trial) {
        TwoComplex x = testsupport::random_complex(rng3);
        int m = 2 + static_cast<int>(rng3() % 4);
        FiniteQuotientHom h = testsupport::random_valid_hom(rng3, x, m);
        CoverComplexResult c = cover_complex(x, h);
        t.expect(c.complex.skeleton.num_vertices() == m * x.skeleton.num_vertices(),
                 "cover vertices");
        t.expect(c.complex.skeleton.num_edges() == m * x.skeleton.num_edges(), "cover edges");
        t.expect(c.complex.num_faces() == m * x.num_faces(), "cover faces");
        t.expect(c.complex.euler_characteristic() == m * x.euler_characteristic(), "cover chi");
        for (int v = 0; v < c.complex.skeleton.num_vertices(); ++v) {
            std::vector<Dart> down;
            for (Dart d : c.complex.skeleton.darts_at(v))
                down.push_back(c.projection.dart_image(d).darts[0]);
            std::sort(down.begin(), down.end());
            t.expect(down == x.skeleton.darts_at(c.projection.vertex_map[static_cast<size_t>(v)]),
                     "star bijection");
        }
    }

    for (const GraphOfGraphs* g :
         {&testsupport::double_cover3(), &testsupport::theta3(), &testsupport::theta5()}) {
        CleanlinessReport r = classify_cleanliness(*g);
        if (r.vh_clean) t.expect(r.geometrically_clean, "vh implies geometric");
        if (r.geometrically_clean)
            t.expect(r.algebraically_clean == Ternary::yes, "geometric implies algebraic");
        t.expect(pi1_presentation(*g).euler_characteristic() ==
                     total_space(*g).complex.euler_characteristic(),
                 "presentation chi");
    }

    detail = t.failures == 0 ? "500 randomized trials, no failures"
                             : std::to_string(t.failures) + " failures, first: " + t.first_failure;
    return t.failures == 0;
}

// ---- criterion 8: deterministic command-line verification ----

bool criterion_cli_determinism(const std::string& cli, std::string& detail) {
    const std::string cmd = quoted(cli) + " verify --n 3 2>/dev/null";
    RunResult a = run_command(cmd);
    RunResult b = run_command(cmd);
    bool ok = a.exit_code == 0 && b.exit_code == 0 && !a.output.empty() && a.output == b.output;
    ok = ok && a.output.find("result: PASS") != std::string::npos;
    detail = "two runs, " + std::to_string(a.output.size()) + " bytes each" +
             (a.output == b.output ? ", identical" : ", DIFFER");
    return ok;
}

// ---- additional command-line contract checks (not a numbered criterion) ----

bool cli_contract(const std::string& cli, std::string& detail) {
    Tally t;

    RunResult even = run_command(quoted(cli) + " verify --n 4 2>/dev/null");
    t.expect(even.exit_code == 2, "even n exits 2");
    RunResult toobig = run_command(quoted(cli) + " verify --n 17 2>/dev/null");
    t.expect(toobig.exit_code == 2, "n over the cap exits 2");
    RunResult lowered = run_command(quoted(cli) + " verify --n 7 --max-n 5 2>/dev/null");
    t.expect(lowered.exit_code == 2, "lowered cap rejects n=7");
    RunResult noargs = run_command(quoted(cli) + " 2>/dev/null");
    t.expect(noargs.exit_code == 2, "missing subcommand exits 2");

    RunResult js = run_command(quoted(cli) + " verify --n 3 --json 2>/dev/null");
    t.expect(js.exit_code == 0, "json verify runs");
    try {
        ordered_json rep = ordered_json::parse(js.output);
        t.expect(rep["all_pass"] == true, "json all_pass");
        t.expect(rep["n"] == 3, "json n");
    } catch (...) {
        t.expect(false, "json output parses");
    }

    RunResult fam = run_command(quoted(cli) + " build family --n 3 2>/dev/null");
    t.expect(fam.exit_code == 0, "build family runs");
    const std::string path = "acceptance_family.json";
    {
        std::ofstream out(path);
        out << fam.output;
    }
    try {
        GraphOfGraphs parsed = gog_from_json(load_json_file(path));
        t.expect(same_structure(parsed, testsupport::theta3()), "built family round-trips");
    } catch (...) {
        t.expect(false, "built family parses");
    }
    RunResult native = run_command(quoted(cli) + " export --format native " + path +
                                   " 2>/dev/null");
    t.expect(native.exit_code == 0 && native.output == fam.output, "native export is canonical");
    RunResult dot = run_command(quoted(cli) + " export --format dot " + path + " 2>/dev/null");
    t.expect(dot.exit_code == 0 && dot.output.rfind("digraph gog {", 0) == 0, "dot export");
    RunResult clean = run_command(quoted(cli) + " check-clean " + path + " 2>/dev/null");
    t.expect(clean.exit_code == 0, "check-clean runs");
    t.expect(clean.output.find("vh-clean: false") != std::string::npos, "check-clean vh");
    t.expect(clean.output.find("geometrically clean: true") != std::string::npos,
             "check-clean geometric");
    t.expect(clean.output.find("algebraically clean: yes") != std::string::npos,
             "check-clean algebraic");
    std::remove(path.c_str());

    RunResult sub = run_command(quoted(cli) +
                                " subgroup --rank 2 --gens a,x --basis \"x^3\" \"a\" "
                                "\"x^2 a x^-2\" 2>/dev/null");
    t.expect(sub.exit_code == 0, "subgroup runs");
    t.expect(sub.output.find("rank: 3") != std::string::npos, "subgroup rank");
    t.expect(sub.output.find("index: infinite") != std::string::npos, "subgroup index");
    t.expect(sub.output.find("basis: a, x^3, x^-1 a x") != std::string::npos, "subgroup basis");

    detail = t.failures == 0 ? "usage, exit codes and round-trips all behave"
                             : std::to_string(t.failures) + " failures, first: " + t.first_failure;
    return t.failures == 0;
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: acceptance <path-to-cli-binary>\n";
        return 2;
    }
    const std::string cli = argv[1];
    bool all = true;
    auto run = [&](int number, const std::string& text, auto&& fn) {
        std::string detail;
        bool pass = false;
        try {
            pass = fn(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        report(number, pass, text, detail);
        all = all && pass;
    };

    run(1, "rewriting the Artin-type presentation", criterion_rewriting);
    run(2, "double cover cell counts and decomposition ranks", criterion_double_cover);
    run(3, "side subgroups fold equal and identify across the edge", criterion_side_subgroups);
    run(4, "cyclic assignment, family anatomy and composite index", criterion_assignment);
    run(5, "family member is geometrically but not VH-clean", criterion_cleanliness);
    run(6, "larger family members verify with index 2n", criterion_family);
    run(7, "randomized fold, membership, cover and hierarchy suites", criterion_randomized);
    run(8, "command-line verification is deterministic",
        [&](std::string& d) { return criterion_cli_determinism(cli, d); });

    std::string contract_detail;
    bool contract = false;
    try {
        contract = cli_contract(cli, contract_detail);
    } catch (const std::exception& e) {
        contract_detail = std::string("exception: ") + e.what();
    }
    std::cout << "cli contract: " << (contract ? "PASS" : "FAIL") << " - " << contract_detail
              << "\n";
    all = all && contract;

    std::cout << (all ? "acceptance: all criteria pass" : "acceptance: FAILURES above") << "\n";
    return all ? 0 : 1;
}
