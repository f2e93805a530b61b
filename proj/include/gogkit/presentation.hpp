#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gogkit/word.hpp"

namespace gogkit {

/// A finite presentation < generators | relators >.
struct PresentationData {
    std::vector<std::string> generators;
    std::vector<Word> relators;

    int rank() const { return static_cast<int>(generators.size()); }
    /// Euler characteristic of the presentation 2-complex: 1 - gens + rels.
    int euler_characteristic() const {
        return 1 - static_cast<int>(generators.size()) + static_cast<int>(relators.size());
    }
    void validate() const;
};

/// Abelianization invariants: free rank plus torsion coefficients d_1 | d_2 |
/// ... (each > 1), computed from the Smith normal form of the relator matrix.
struct AbelianizationData {
    int betti = 0;
    std::vector<std::int64_t> torsion;

    bool operator==(const AbelianizationData&) const = default;
};

AbelianizationData abelianization(const PresentationData& p);

/// Smith normal form diagonal of an integer matrix (rows x cols), returned as
/// the nonzero diagonal entries d_1 | d_2 | ..., all positive.
std::vector<std::int64_t> smith_diagonal(std::vector<std::vector<std::int64_t>> m);

} // namespace gogkit
