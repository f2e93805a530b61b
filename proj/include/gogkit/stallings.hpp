#pragma once

#include <optional>
#include <vector>

#include "gogkit/morphism.hpp"
#include "gogkit/serre_graph.hpp"
#include "gogkit/word.hpp"

namespace gogkit {

// Folded, based, core labeled graph for a finitely generated subgroup of a
// free group.  Each geometric edge carries a generator; reading the positive
// dart gives gen^{+1}, the negative dart gen^{-1}.  subgroup_graph returns
// the canonical (BFS-renumbered) form, so equality of StallingsGraphs is
// label-isomorphism of based folded graphs.
struct StallingsGraph {
    SerreGraph graph;
    std::vector<int> edge_generator;
    int basepoint = 0;
    int ambient_rank = 0;

    Letter dart_label(Dart d) const {
        return {edge_generator[static_cast<size_t>(d >> 1)], (d & 1) ? -1 : +1};
    }
    int rank() const { return graph.num_edges() - graph.num_vertices() + 1; }
    bool is_folded() const;
    void validate() const; // connected, labels in range, folded

    bool operator==(const StallingsGraph&) const = default;
};

// Petals for the given words, folded to a fixed point, trimmed to the core,
// canonicalized.  Trivial (empty) words are skipped.
StallingsGraph subgroup_graph(const std::vector<Word>& generators, int ambient_rank);

// BFS renumbering from the basepoint, exploring darts by (generator, sign);
// identical for any label-isomorphic based presentation of the same graph.
StallingsGraph canonicalize(const StallingsGraph& sg);

// Wrap an externally built labeled graph (e.g. the skeleton of a cover of a
// rose).  Canonicalizes; throws if not folded or not connected.
StallingsGraph stallings_from_labeled(const SerreGraph& graph, const std::vector<int>& edge_generator,
                                      int basepoint, int ambient_rank);

bool membership(const StallingsGraph& sg, const Word& w);

// Coordinates over the spanning-tree basis (tree = lexicographically least by
// edge id, basis elements ordered by their non-tree edge id); nullopt when w
// is not a member.
std::optional<Word> subgroup_coordinates(const StallingsGraph& sg, const Word& w);

// The spanning-tree basis itself, as words in the ambient generators.
std::vector<Word> subgroup_basis(const StallingsGraph& sg);

// Vertex count when the graph is a full cover of the rose, nullopt (infinite
// index) otherwise.
std::optional<int> subgroup_index(const StallingsGraph& sg);

// ---- pi1 of a plain graph via its lex-least spanning tree ----

struct SpanningTreeData {
    int base = 0;
    std::vector<bool> in_tree;       // per edge
    std::vector<int> nontree_edges;  // ascending; positions index the pi1 basis
    std::vector<EdgePath> base_path; // tree path base -> v, per vertex

    int rank() const { return static_cast<int>(nontree_edges.size()); }
};

SpanningTreeData lex_least_spanning_tree(const SerreGraph& g, int base); // requires connected

// Loop for the k-th basis element: tree path, the non-tree edge, tree path back.
EdgePath pi1_basis_loop(const SpanningTreeData& t, const SerreGraph& g, int k);

// Collapse the tree: read off one letter per non-tree dart of the path.
Word tree_collapse_word(const SpanningTreeData& t, const EdgePath& p);

// Image of pi1(domain, base) in pi1(codomain), with pi1(codomain) identified
// with the free group on the non-tree edges of its lex-least spanning tree.
StallingsGraph pi1_image(const GraphMorphism& f, int base);

// Rank comparison; free groups are Hopfian, so rank preservation is injectivity.
bool is_pi1_injective(const GraphMorphism& f);

// Coordinates of w over a given free generating tuple of the subgroup it
// generates (Nielsen reduction with move memory).  Letter i of the result
// refers to gens[i].  nullopt when w is not in the subgroup; throws
// ValidationError when gens is not a free basis of it.
std::optional<Word> express_in_tuple(const std::vector<Word>& gens, int ambient_rank, const Word& w);

} // namespace gogkit
