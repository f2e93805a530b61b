#pragma once

#include <vector>

#include "gogkit/word.hpp"

namespace gogkit {

/// Three-valued verdict for procedures that may legitimately give up.
enum class Ternary { yes, no, unknown };

const char* to_string(Ternary t);

struct FreeFactorOptions {
    /// When true, the inconclusive branches report `unknown` instead of `no`.
    bool conservative = false;
    /// Upper bound on tuple expansions explored during peak-reduction search.
    int max_expansions = 10000;
};

struct WhiteheadResult {
    /// Minimized tuple (entries reduced; sum of lengths is minimal over the
    /// automorphisms explored).
    std::vector<Word> tuple;
    /// Number of automorphism applications performed.
    int moves = 0;
};

/// Greedily applies Whitehead automorphisms of the free group of the given
/// rank while they strictly decrease the total length of the tuple.
WhiteheadResult whitehead_minimize(const std::vector<Word>& tuple, int rank);

/// Decides whether the subgroup generated by `tuple` is a free factor of the
/// free group of rank `ambient_rank`.
Ternary is_free_factor(const std::vector<Word>& tuple, int ambient_rank,
                       const FreeFactorOptions& opts = {});

} // namespace gogkit
