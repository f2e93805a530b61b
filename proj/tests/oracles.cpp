#include "oracles.hpp"

#include <algorithm>
#include <set>

#include "gogkit/constructions.hpp"

namespace testsupport {

using namespace gogkit;

Word naive_reduce(const Word& w) {
    std::vector<Letter> letters = w.letters;
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i + 1 < letters.size(); ++i) {
            if (letters[i + 1] == letters[i].inverse()) {
                letters.erase(letters.begin() + static_cast<long>(i),
                              letters.begin() + static_cast<long>(i) + 2);
                changed = true;
                break;
            }
        }
    }
    return Word{letters};
}

Word random_word(std::mt19937& rng, int rank, int len) {
    std::uniform_int_distribution<int> gen(0, rank - 1);
    std::uniform_int_distribution<int> coin(0, 1);
    Word w;
    for (int i = 0; i < len; ++i) w.letters.push_back({gen(rng), coin(rng) ? +1 : -1});
    return w;
}

Word random_reduced_word(std::mt19937& rng, int rank, int len) {
    std::uniform_int_distribution<int> gen(0, rank - 1);
    std::uniform_int_distribution<int> coin(0, 1);
    Word w;
    while (w.length() < std::max(1, len)) {
        Letter l{gen(rng), coin(rng) ? +1 : -1};
        if (!w.empty() && l == w.letters.back().inverse()) continue;
        w.letters.push_back(l);
    }
    return w;
}

std::vector<Word> random_tuple(std::mt19937& rng, int rank, int count, int max_len) {
    std::uniform_int_distribution<int> len(1, max_len);
    std::vector<Word> tuple;
    for (int i = 0; i < count; ++i) tuple.push_back(random_reduced_word(rng, rank, len(rng)));
    return tuple;
}

Word random_product(std::mt19937& rng, const std::vector<Word>& gens, int factors) {
    std::uniform_int_distribution<int> pick(0, static_cast<int>(gens.size()) - 1);
    std::uniform_int_distribution<int> coin(0, 1);
    Word w;
    for (int i = 0; i < factors; ++i) {
        const Word& g = gens[static_cast<size_t>(pick(rng))];
        w = concat(w, coin(rng) ? g : g.inverse());
    }
    return w;
}

bool product_membership(const std::vector<Word>& gens, const Word& target, int max_factors) {
    Word goal = reduce(target);
    std::set<Word> seen;
    std::vector<Word> frontier{Word{}};
    seen.insert(Word{});
    for (int depth = 0; depth < max_factors; ++depth) {
        std::vector<Word> next;
        for (const Word& w : frontier) {
            for (const Word& g : gens) {
                for (const Word& step : {concat(w, g), concat(w, g.inverse())}) {
                    if (seen.insert(step).second) next.push_back(step);
                }
            }
        }
        frontier = std::move(next);
    }
    return seen.count(goal) > 0;
}

int exponent_sum(const Word& w, int gen) {
    int sum = 0;
    for (const Letter& l : w.letters)
        if (l.gen == gen) sum += l.sign;
    return sum;
}

SerreGraph random_connected_graph(std::mt19937& rng, int extra_vertices, int extra_edges) {
    SerreGraph g;
    g.add_vertex();
    std::uniform_int_distribution<int> nv(0, extra_vertices);
    int grow = nv(rng);
    for (int i = 0; i < grow; ++i) {
        std::uniform_int_distribution<int> anchor(0, g.num_vertices() - 1);
        int v = g.add_vertex();
        g.add_edge(anchor(rng), v);
    }
    std::uniform_int_distribution<int> ne(1, extra_edges);
    int more = ne(rng);
    for (int i = 0; i < more; ++i) {
        std::uniform_int_distribution<int> any(0, g.num_vertices() - 1);
        g.add_edge(any(rng), any(rng));
    }
    return g;
}

TwoComplex random_complex(std::mt19937& rng) {
    TwoComplex x;
    x.skeleton = random_connected_graph(rng, 3, 4);
    std::uniform_int_distribution<int> nf(0, 3);
    int want = nf(rng);
    for (int f = 0; f < want; ++f) {
        // Random closed walk: step through random incident darts and keep the
        // walk only if it returns to its start within the cap.
        std::uniform_int_distribution<int> sv(0, x.skeleton.num_vertices() - 1);
        for (int attempt = 0; attempt < 12; ++attempt) {
            int start = sv(rng);
            EdgePath p;
            int at = start;
            bool closed = false;
            for (int step = 0; step < 8; ++step) {
                std::vector<Dart> out = x.skeleton.darts_at(at);
                if (out.empty()) break;
                std::uniform_int_distribution<int> pick(0, static_cast<int>(out.size()) - 1);
                Dart d = out[static_cast<size_t>(pick(rng))];
                p.darts.push_back(d);
                at = x.skeleton.terminus(d);
                if (at == start) {
                    closed = true;
                    break;
                }
            }
            if (closed) {
                x.faces.push_back(p);
                break;
            }
        }
    }
    return x;
}

FiniteQuotientHom random_valid_hom(std::mt19937& rng, const TwoComplex& x, int modulus) {
    std::uniform_int_distribution<int> val(0, modulus - 1);
    for (int attempt = 0; attempt < 200; ++attempt) {
        FiniteQuotientHom h;
        h.modulus = modulus;
        for (int e = 0; e < x.skeleton.num_edges(); ++e) h.edge_value.push_back(val(rng));
        bool ok = true;
        for (const EdgePath& f : x.faces)
            if (h.path_value(f) % modulus != 0) ok = false;
        if (ok) return h;
    }
    FiniteQuotientHom zero;
    zero.modulus = modulus;
    zero.edge_value.assign(static_cast<size_t>(x.skeleton.num_edges()), 0);
    return zero;
}

const GraphOfGraphs& double_cover3() {
    static GraphOfGraphs g = double_cover_gog(3);
    return g;
}

const GraphOfGraphs& double_cover5() {
    static GraphOfGraphs g = double_cover_gog(5);
    return g;
}

const GraphOfGraphs& theta3() {
    static GraphOfGraphs g = theta_family(3);
    return g;
}

const GraphOfGraphs& theta5() {
    static GraphOfGraphs g = theta_family(5);
    return g;
}

const GraphOfGraphs& theta7() {
    static GraphOfGraphs g = theta_family(7);
    return g;
}

} // namespace testsupport
