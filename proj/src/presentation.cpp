#include "gogkit/presentation.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>

#include "gogkit/errors.hpp"

namespace gogkit {

void PresentationData::validate() const {
    std::set<std::string> seen;
    for (const std::string& g : generators) {
        if (g.empty()) throw ValidationError("presentation: empty generator name");
        if (!seen.insert(g).second) throw ValidationError("presentation: duplicate generator " + g);
    }
    for (const Word& r : relators)
        if (r.max_gen() >= rank())
            throw ValidationError("presentation: relator uses an unknown generator");
}

std::vector<std::int64_t> smith_diagonal(std::vector<std::vector<std::int64_t>> m) {
    const int rows = static_cast<int>(m.size());
    const int cols = rows ? static_cast<int>(m[0].size()) : 0;
    std::vector<std::int64_t> diag;
    int r0 = 0, c0 = 0;
    while (r0 < rows && c0 < cols) {
        // Find a nonzero pivot of least absolute value in the remaining block.
        int pr = -1, pc = -1;
        std::int64_t best = 0;
        for (int i = r0; i < rows; ++i)
            for (int j = c0; j < cols; ++j)
                if (m[i][j] != 0 && (pr == -1 || std::llabs(m[i][j]) < best)) {
                    pr = i; pc = j; best = std::llabs(m[i][j]);
                }
        if (pr == -1) break; // block is zero
        std::swap(m[r0], m[pr]);
        for (int i = 0; i < rows; ++i) std::swap(m[i][c0], m[i][pc]);

        // Clear the pivot row and column; restart if a remainder appears
        // (it is strictly smaller, so this terminates).
        bool clean = true;
        for (int i = r0 + 1; i < rows; ++i) {
            std::int64_t q = m[i][c0] / m[r0][c0];
            for (int j = c0; j < cols; ++j) m[i][j] -= q * m[r0][j];
            if (m[i][c0] != 0) clean = false;
        }
        for (int j = c0 + 1; j < cols; ++j) {
            std::int64_t q = m[r0][j] / m[r0][c0];
            for (int i = r0; i < rows; ++i) m[i][j] -= q * m[i][c0];
            if (m[r0][j] != 0) clean = false;
        }
        if (!clean) continue;

        // Divisibility: the pivot must divide every later entry.
        bool divides = true;
        for (int i = r0 + 1; i < rows && divides; ++i)
            for (int j = c0 + 1; j < cols && divides; ++j)
                if (m[i][j] % m[r0][c0] != 0) {
                    // Add row i to row r0 and redo this pivot.
                    for (int jj = c0; jj < cols; ++jj) m[r0][jj] += m[i][jj];
                    divides = false;
                }
        if (!divides) continue;

        diag.push_back(std::llabs(m[r0][c0]));
        ++r0;
        ++c0;
    }
    return diag;
}

AbelianizationData abelianization(const PresentationData& p) {
    p.validate();
    const int n = p.rank();
    std::vector<std::vector<std::int64_t>> m;
    for (const Word& r : p.relators) {
        std::vector<std::int64_t> row(static_cast<size_t>(n), 0);
        for (const Letter& l : r.letters) row[static_cast<size_t>(l.gen)] += l.sign;
        m.push_back(std::move(row));
    }
    std::vector<std::int64_t> diag = m.empty() ? std::vector<std::int64_t>{} : smith_diagonal(m);
    AbelianizationData a;
    a.betti = n - static_cast<int>(diag.size());
    for (std::int64_t d : diag)
        if (d > 1) a.torsion.push_back(d);
    return a;
}

} // namespace gogkit
