#include "gogkit/word.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "gogkit/errors.hpp"

namespace gogkit {

Word Word::inverse() const {
    Word out;
    out.letters.reserve(letters.size());
    for (auto it = letters.rbegin(); it != letters.rend(); ++it)
        out.letters.push_back(it->inverse());
    return out;
}

int Word::max_gen() const {
    int m = -1;
    for (const Letter& l : letters) m = std::max(m, l.gen);
    return m;
}

Word reduce(const Word& w) {
    Word out;
    for (const Letter& l : w.letters) {
        if (!out.letters.empty() && out.letters.back() == l.inverse())
            out.letters.pop_back();
        else
            out.letters.push_back(l);
    }
    return out;
}

Word concat(const Word& a, const Word& b) {
    Word joined = a;
    joined.letters.insert(joined.letters.end(), b.letters.begin(), b.letters.end());
    return reduce(joined);
}

Word power(const Word& w, int k) {
    Word base = k >= 0 ? w : w.inverse();
    Word out;
    for (int i = 0; i < std::abs(k); ++i) out = concat(out, base);
    return out;
}

Word cyclic_reduce(const Word& w) {
    Word r = reduce(w);
    while (r.length() >= 2 && r.letters.front() == r.letters.back().inverse()) {
        r.letters.erase(r.letters.begin());
        r.letters.pop_back();
    }
    return r;
}

bool conjugate_words(const Word& a, const Word& b) {
    Word ca = cyclic_reduce(a), cb = cyclic_reduce(b);
    if (ca.length() != cb.length()) return false;
    if (ca.empty()) return true;
    for (int rot = 0; rot < ca.length(); ++rot) {
        bool match = true;
        for (int i = 0; i < ca.length() && match; ++i)
            match = ca.letters[static_cast<size_t>((rot + i) % ca.length())] ==
                    cb.letters[static_cast<size_t>(i)];
        if (match) return true;
    }
    return false;
}

Word substitute(const Word& w, const std::map<int, Word>& images) {
    Word out;
    for (const Letter& l : w.letters) {
        auto it = images.find(l.gen);
        if (it == images.end())
            throw ValidationError("substitute: no image for generator " + std::to_string(l.gen));
        const Word& img = l.sign > 0 ? it->second : it->second.inverse();
        out.letters.insert(out.letters.end(), img.letters.begin(), img.letters.end());
    }
    return reduce(out);
}

int FreeBasis::index_of(const std::string& name) const {
    for (size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return static_cast<int>(i);
    return -1;
}

FreeBasis standard_basis(const std::vector<std::string>& names) {
    FreeBasis b;
    b.names = names;
    for (size_t i = 0; i < b.names.size(); ++i)
        for (size_t j = i + 1; j < b.names.size(); ++j)
            if (b.names[i] == b.names[j])
                throw ValidationError("basis: duplicate generator name '" + b.names[i] + "'");
    return b;
}

Word parse_word(const std::string& text, const FreeBasis& basis) {
    Word out;
    std::istringstream in(text);
    std::string token;
    bool any = false;
    while (in >> token) {
        any = true;
        if (token == "1") continue;
        std::string name = token;
        long long exponent = 1;
        size_t caret = token.find('^');
        if (caret != std::string::npos) {
            name = token.substr(0, caret);
            std::string exp = token.substr(caret + 1);
            if (exp.empty() || exp.find('^') != std::string::npos)
                throw ValidationError("word syntax: bad exponent in '" + token + "'");
            size_t pos = 0;
            try {
                exponent = std::stoll(exp, &pos);
            } catch (const std::exception&) {
                throw ValidationError("word syntax: bad exponent in '" + token + "'");
            }
            if (pos != exp.size())
                throw ValidationError("word syntax: bad exponent in '" + token + "'");
        }
        if (name.empty())
            throw ValidationError("word syntax: empty generator in '" + token + "'");
        int gen = basis.index_of(name);
        if (gen < 0)
            throw ValidationError("word syntax: unknown generator '" + name + "'");
        int sign = exponent >= 0 ? +1 : -1;
        for (long long i = 0; i < std::llabs(exponent); ++i)
            out.letters.push_back({gen, sign});
    }
    (void)any; // whitespace-only input is the empty word
    return reduce(out);
}

std::string format_word(const Word& w, const FreeBasis& basis) {
    if (w.empty()) return "1";
    std::ostringstream out;
    size_t i = 0;
    bool first = true;
    while (i < w.letters.size()) {
        size_t j = i;
        while (j < w.letters.size() && w.letters[j] == w.letters[i]) ++j;
        long long exponent = static_cast<long long>(j - i) * w.letters[i].sign;
        if (!first) out << ' ';
        first = false;
        const int gen = w.letters[i].gen;
        if (gen < 0 || gen >= basis.rank())
            throw ValidationError("format_word: unknown generator id " + std::to_string(gen));
        out << basis.names[static_cast<size_t>(gen)];
        if (exponent != 1) out << '^' << exponent;
        i = j;
    }
    return out.str();
}

} // namespace gogkit
