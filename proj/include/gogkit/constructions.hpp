#pragma once

#include <string>
#include <vector>

#include "gogkit/graph_of_graphs.hpp"
#include "gogkit/presentation.hpp"
#include "gogkit/serre_graph.hpp"
#include "gogkit/two_complex.hpp"
#include "gogkit/whitehead.hpp"
#include "gogkit/word.hpp"

namespace gogkit {

// ---- small reference graphs ----

/// One vertex "o", one loop per label.
SerreGraph rose_graph(const std::vector<std::string>& labels);
/// Vertices p, q; edges alpha: p->q, beta: q->p, loops lp at p and lq at q.
SerreGraph bigon_with_loops();
/// Two vertices joined by n parallel edges.
SerreGraph theta_graph(int n);
/// An n-cycle with one loop attached at every vertex.
SerreGraph cycle_with_loops(int n);

// ---- the odd-parameter family pipeline ----

/// <a, b, c | [a, b], alt(b,c;n) alt(c,b;n)^-1> for odd n >= 3, where
/// alt(s,t;n) is the alternating product s t s t ... of length n.
PresentationData artin_presentation(int n);

/// <a, b, x | [a, b], b x^k b x^-(k+1)> with n = 2k+1.  Obtained from the
/// presentation above by the change of generators x = cb; construction
/// cross-checks the substitution in both directions and throws a
/// ConstructionError on mismatch.
PresentationData rewritten_presentation(int n);

/// The mod-2 edge assignment b -> 1, a, x -> 0 on the rewritten complex.
FiniteQuotientHom mod2_hom();

/// The double cover of the rewritten presentation complex, assembled as a
/// graph of graphs: two rank-2 roses ("a","x" and "abar","xbar") joined along
/// a bigon-with-loops edge graph, attaching by
///   iota: alpha -> x^{k+1}, beta -> x^k,    loops -> a,
///   tau:  alpha -> xbar^k,  beta -> xbar^{k+1}, loops -> abar.
/// The construction self-checks that its total space is isomorphic to the
/// genuine 2-fold cover.
GraphOfGraphs double_cover_gog(int n);

/// The Z/n assignment on the total space of the double cover: x-type vertical
/// edges ("x", "xbar") map to 1, a-type to 0, horizontal values solved from
/// the band equations.
FiniteQuotientHom zn_hom(const GraphOfGraphs& cover, const TotalSpaceResult& ts, int n);

/// The Z/n cover of the double-cover graph of graphs, normalized.  Structure
/// is checked: theta-graph underlying shape, cycle-with-loops vertex graphs,
/// bigon-with-loops edge graphs.
GraphOfGraphs theta_family(int n);

// ---- whole-pipeline verification ----

struct VerifyCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct VerifyStage {
    std::string title;
    std::vector<VerifyCheck> checks;
};

struct VerifyReport {
    int n = 0;
    std::vector<VerifyStage> stages;

    int total_checks() const;
    int passed_checks() const;
    bool all_pass() const { return total_checks() == passed_checks(); }
};

/// Runs the whole pipeline for parameter n and records every claim it checks.
/// Output is deterministic: running twice yields identical reports.
VerifyReport run_verification(int n, const FreeFactorOptions& opts = {});

std::string render_text(const VerifyReport& r);

} // namespace gogkit
