#pragma once

#include <map>
#include <string>
#include <vector>

namespace gogkit {

// One signed generator occurrence.
struct Letter {
    int gen = 0;
    int sign = +1; // +1 or -1

    Letter inverse() const { return {gen, -sign}; }
    bool operator==(const Letter&) const = default;
    auto operator<=>(const Letter&) const = default;
};

// Reduced or unreduced sequence of letters; the empty word is the identity.
struct Word {
    std::vector<Letter> letters;

    bool empty() const { return letters.empty(); }
    int length() const { return static_cast<int>(letters.size()); }
    Word inverse() const;
    int max_gen() const; // -1 for the empty word

    bool operator==(const Word&) const = default;
    auto operator<=>(const Word&) const = default;
};

// Free reduction (single stack pass).
Word reduce(const Word& w);
Word concat(const Word& a, const Word& b); // reduced product
Word power(const Word& w, int k);
// Remove matching prefix w^-1 ... w pairs.
Word cyclic_reduce(const Word& w);
/// True when a and b are conjugate as far as cyclic words detect it:
// cyclic reductions agree up to rotation.
bool conjugate_words(const Word& a, const Word& b);

// Replace each generator by its image word; throws if a generator of w has
// no image.  The identity substitution therefore acts as reduce.
Word substitute(const Word& w, const std::map<int, Word>& images);

// Generator names for parsing and printing.
struct FreeBasis {
    std::vector<std::string> names;

    int rank() const { return static_cast<int>(names.size()); }
    int index_of(const std::string& name) const; // -1 if absent
};

FreeBasis standard_basis(const std::vector<std::string>& names);

// Word syntax: whitespace-separated tokens with caret powers, e.g.
// "x^3", "x^-1 a x"; "1" denotes the empty word.  The result is reduced.
Word parse_word(const std::string& text, const FreeBasis& basis);
std::string format_word(const Word& w, const FreeBasis& basis);

} // namespace gogkit
