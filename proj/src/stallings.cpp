#include "gogkit/stallings.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

#include "gogkit/errors.hpp"

namespace gogkit {

namespace {

struct LabeledEdge {
    int u = 0;   // origin of the gen^{+1} dart
    int v = 0;
    int gen = 0;
    bool alive = true;
};

struct UnionFind {
    std::vector<int> parent;

    explicit UnionFind(int n) : parent(static_cast<size_t>(n)) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int x) {
        while (parent[static_cast<size_t>(x)] != x) {
            parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
            x = parent[static_cast<size_t>(x)];
        }
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[static_cast<size_t>(std::max(a, b))] = std::min(a, b);
    }
};

// Fold to a fixed point: whenever two live edges present the same (vertex,
// generator, sign) dart, identify their far endpoints and drop the larger
// edge.  Scans ascending ids, so the fold sequence is deterministic.
void fold(std::vector<LabeledEdge>& edges, UnionFind& uf) {
    bool changed = true;
    while (changed) {
        changed = false;
        std::map<std::tuple<int, int, int>, std::pair<size_t, int>> seen;
        for (size_t e = 0; e < edges.size() && !changed; ++e) {
            if (!edges[e].alive) continue;
            int ru = uf.find(edges[e].u), rv = uf.find(edges[e].v);
            const std::pair<std::tuple<int, int, int>, int> darts[2] = {
                {{ru, edges[e].gen, +1}, rv},
                {{rv, edges[e].gen, -1}, ru},
            };
            for (const auto& [key, other] : darts) {
                auto it = seen.find(key);
                if (it == seen.end()) {
                    seen.emplace(key, std::make_pair(e, other));
                } else if (it->second.first != e) {
                    uf.unite(it->second.second, other);
                    edges[e].alive = false;
                    changed = true;
                    break;
                }
            }
        }
    }
}

struct ConcreteGraph {
    SerreGraph graph;
    std::vector<int> gens;
    int basepoint = 0;
};

ConcreteGraph quotient(const std::vector<LabeledEdge>& edges, UnionFind& uf, int base, int n_vertices) {
    ConcreteGraph out;
    std::vector<int> new_id(static_cast<size_t>(n_vertices), -1);
    for (int v = 0; v < n_vertices; ++v) {
        int r = uf.find(v);
        if (new_id[static_cast<size_t>(r)] == -1) new_id[static_cast<size_t>(r)] = out.graph.add_vertex();
        new_id[static_cast<size_t>(v)] = new_id[static_cast<size_t>(r)];
    }
    for (const LabeledEdge& e : edges) {
        if (!e.alive) continue;
        out.graph.add_edge(new_id[static_cast<size_t>(uf.find(e.u))],
                           new_id[static_cast<size_t>(uf.find(e.v))]);
        out.gens.push_back(e.gen);
    }
    out.basepoint = new_id[static_cast<size_t>(uf.find(base))];
    return out;
}

// Remove valence <= 1 vertices other than the basepoint until none remain.
ConcreteGraph trim_to_core(const ConcreteGraph& in) {
    std::vector<bool> vertex_dead(static_cast<size_t>(in.graph.num_vertices()), false);
    std::vector<bool> edge_dead(static_cast<size_t>(in.graph.num_edges()), false);
    bool changed = true;
    while (changed) {
        changed = false;
        for (int v = 0; v < in.graph.num_vertices(); ++v) {
            if (vertex_dead[static_cast<size_t>(v)] || v == in.basepoint) continue;
            int valence = 0;
            int incident = -1;
            for (int e = 0; e < in.graph.num_edges(); ++e) {
                if (edge_dead[static_cast<size_t>(e)]) continue;
                if (in.graph.edge(e).from == v) { ++valence; incident = e; }
                if (in.graph.edge(e).to == v) { ++valence; incident = e; }
            }
            if (valence <= 1) {
                vertex_dead[static_cast<size_t>(v)] = true;
                if (incident >= 0) edge_dead[static_cast<size_t>(incident)] = true;
                changed = true;
            }
        }
    }
    ConcreteGraph out;
    std::vector<int> new_id(static_cast<size_t>(in.graph.num_vertices()), -1);
    for (int v = 0; v < in.graph.num_vertices(); ++v)
        if (!vertex_dead[static_cast<size_t>(v)]) new_id[static_cast<size_t>(v)] = out.graph.add_vertex();
    for (int e = 0; e < in.graph.num_edges(); ++e) {
        if (edge_dead[static_cast<size_t>(e)]) continue;
        out.graph.add_edge(new_id[static_cast<size_t>(in.graph.edge(e).from)],
                           new_id[static_cast<size_t>(in.graph.edge(e).to)]);
        out.gens.push_back(in.gens[static_cast<size_t>(e)]);
    }
    out.basepoint = new_id[static_cast<size_t>(in.basepoint)];
    return out;
}

// Sorted (gen, sign, dart) table per vertex.
std::vector<std::vector<std::tuple<int, int, Dart>>> label_adjacency(const SerreGraph& g,
                                                                     const std::vector<int>& gens) {
    std::vector<std::vector<std::tuple<int, int, Dart>>> at(static_cast<size_t>(g.num_vertices()));
    for (Dart d = 0; d < g.num_darts(); ++d) {
        int gen = gens[static_cast<size_t>(d >> 1)];
        int sign = (d & 1) ? -1 : +1;
        at[static_cast<size_t>(g.origin(d))].push_back({gen, sign, d});
    }
    // Ascending generator, positive dart before negative: the exploration
    // order that defines the canonical numbering.
    for (auto& row : at)
        std::sort(row.begin(), row.end(), [](const auto& x, const auto& y) {
            return std::tuple(std::get<0>(x), -std::get<1>(x), std::get<2>(x)) <
                   std::tuple(std::get<0>(y), -std::get<1>(y), std::get<2>(y));
        });
    return at;
}

} // namespace

bool StallingsGraph::is_folded() const {
    for (int v = 0; v < graph.num_vertices(); ++v) {
        std::set<std::pair<int, int>> labels;
        for (Dart d : graph.darts_at(v)) {
            Letter l = dart_label(d);
            if (!labels.insert({l.gen, l.sign}).second) return false;
        }
    }
    return true;
}

void StallingsGraph::validate() const {
    if (static_cast<int>(edge_generator.size()) != graph.num_edges())
        throw ValidationError("stallings: label count mismatch");
    for (int g : edge_generator)
        if (g < 0 || g >= ambient_rank)
            throw ValidationError("stallings: generator label out of range");
    if (graph.num_vertices() == 0 || basepoint < 0 || basepoint >= graph.num_vertices())
        throw ValidationError("stallings: bad basepoint");
    if (!graph.connected())
        throw ValidationError("stallings: graph not connected");
    if (!is_folded())
        throw ValidationError("stallings: graph not folded");
}

StallingsGraph canonicalize(const StallingsGraph& sg) {
    const SerreGraph& g = sg.graph;
    auto at = label_adjacency(g, sg.edge_generator);

    std::vector<int> vertex_order; // discovery order
    std::vector<int> new_vertex(static_cast<size_t>(g.num_vertices()), -1);
    std::vector<int> edge_order;
    std::vector<int> new_edge(static_cast<size_t>(g.num_edges()), -1);

    new_vertex[static_cast<size_t>(sg.basepoint)] = 0;
    vertex_order.push_back(sg.basepoint);
    for (size_t qi = 0; qi < vertex_order.size(); ++qi) {
        int v = vertex_order[qi];
        for (const auto& [gen, sign, d] : at[static_cast<size_t>(v)]) {
            int e = SerreGraph::edge_of(d);
            if (new_edge[static_cast<size_t>(e)] == -1) {
                new_edge[static_cast<size_t>(e)] = static_cast<int>(edge_order.size());
                edge_order.push_back(e);
            }
            int w = g.terminus(d);
            if (new_vertex[static_cast<size_t>(w)] == -1) {
                new_vertex[static_cast<size_t>(w)] = static_cast<int>(vertex_order.size());
                vertex_order.push_back(w);
            }
        }
    }
    if (vertex_order.size() != static_cast<size_t>(g.num_vertices()))
        throw ValidationError("canonicalize: graph not connected");

    StallingsGraph out;
    out.ambient_rank = sg.ambient_rank;
    out.basepoint = 0;
    for (size_t i = 0; i < vertex_order.size(); ++i) out.graph.add_vertex();
    for (int old_e : edge_order) {
        out.graph.add_edge(new_vertex[static_cast<size_t>(g.edge(old_e).from)],
                           new_vertex[static_cast<size_t>(g.edge(old_e).to)]);
        out.edge_generator.push_back(sg.edge_generator[static_cast<size_t>(old_e)]);
    }
    return out;
}

StallingsGraph subgroup_graph(const std::vector<Word>& generators, int ambient_rank) {
    if (ambient_rank < 0) throw ValidationError("subgroup_graph: negative rank");
    int n_vertices = 1;
    std::vector<LabeledEdge> edges;
    for (const Word& raw : generators) {
        Word w = reduce(raw);
        if (w.empty()) continue;
        int prev = 0;
        for (int i = 0; i < w.length(); ++i) {
            const Letter& l = w.letters[static_cast<size_t>(i)];
            if (l.gen < 0 || l.gen >= ambient_rank)
                throw ValidationError("subgroup_graph: generator out of range");
            int next = (i == w.length() - 1) ? 0 : n_vertices++;
            if (l.sign > 0)
                edges.push_back(LabeledEdge{prev, next, l.gen, true});
            else
                edges.push_back(LabeledEdge{next, prev, l.gen, true});
            prev = next;
        }
    }
    UnionFind uf(n_vertices);
    fold(edges, uf);
    ConcreteGraph folded = trim_to_core(quotient(edges, uf, 0, n_vertices));

    StallingsGraph sg;
    sg.graph = folded.graph;
    sg.edge_generator = folded.gens;
    sg.basepoint = folded.basepoint;
    sg.ambient_rank = ambient_rank;
    sg = canonicalize(sg);
    sg.validate();
    return sg;
}

StallingsGraph stallings_from_labeled(const SerreGraph& graph, const std::vector<int>& edge_generator,
                                      int basepoint, int ambient_rank) {
    StallingsGraph sg;
    sg.graph = graph;
    sg.edge_generator = edge_generator;
    sg.basepoint = basepoint;
    sg.ambient_rank = ambient_rank;
    sg.validate();
    sg = canonicalize(sg);
    return sg;
}

namespace {

// Walk the reduced word from the basepoint; records darts used or fails.
std::optional<EdgePath> trace_word(const StallingsGraph& sg, const Word& w) {
    auto at = label_adjacency(sg.graph, sg.edge_generator);
    EdgePath path;
    int v = sg.basepoint;
    for (const Letter& l : reduce(w).letters) {
        Dart found = -1;
        for (const auto& [gen, sign, d] : at[static_cast<size_t>(v)]) {
            if (gen == l.gen && sign == l.sign) { found = d; break; }
        }
        if (found < 0) return std::nullopt;
        path.darts.push_back(found);
        v = sg.graph.terminus(found);
    }
    if (v != sg.basepoint) return std::nullopt;
    return path;
}

} // namespace

bool membership(const StallingsGraph& sg, const Word& w) {
    return trace_word(sg, w).has_value();
}

SpanningTreeData lex_least_spanning_tree(const SerreGraph& g, int base) {
    if (!g.connected()) throw ValidationError("spanning tree: graph not connected");
    SpanningTreeData t;
    t.base = base;
    t.in_tree.assign(static_cast<size_t>(g.num_edges()), false);
    UnionFind uf(g.num_vertices());
    for (int e = 0; e < g.num_edges(); ++e) {
        int a = uf.find(g.edge(e).from), b = uf.find(g.edge(e).to);
        if (a != b) {
            uf.unite(a, b);
            t.in_tree[static_cast<size_t>(e)] = true;
        } else {
            t.nontree_edges.push_back(e);
        }
    }
    // Tree paths from the base by BFS over tree edges.
    t.base_path.assign(static_cast<size_t>(g.num_vertices()), EdgePath{});
    std::vector<bool> seen(static_cast<size_t>(g.num_vertices()), false);
    std::vector<int> queue = {base};
    seen[static_cast<size_t>(base)] = true;
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        int v = queue[qi];
        for (Dart d : g.darts_at(v)) {
            if (!t.in_tree[static_cast<size_t>(SerreGraph::edge_of(d))]) continue;
            int w = g.terminus(d);
            if (seen[static_cast<size_t>(w)]) continue;
            seen[static_cast<size_t>(w)] = true;
            t.base_path[static_cast<size_t>(w)] = t.base_path[static_cast<size_t>(v)];
            t.base_path[static_cast<size_t>(w)].darts.push_back(d);
            queue.push_back(w);
        }
    }
    return t;
}

EdgePath pi1_basis_loop(const SpanningTreeData& t, const SerreGraph& g, int k) {
    int e = t.nontree_edges[static_cast<size_t>(k)];
    Dart pos = SerreGraph::positive_dart(e);
    EdgePath loop = t.base_path[static_cast<size_t>(g.origin(pos))];
    loop.darts.push_back(pos);
    EdgePath back = t.base_path[static_cast<size_t>(g.terminus(pos))].reversed();
    loop.darts.insert(loop.darts.end(), back.darts.begin(), back.darts.end());
    return loop;
}

Word tree_collapse_word(const SpanningTreeData& t, const EdgePath& p) {
    Word w;
    for (Dart d : p.darts) {
        int e = SerreGraph::edge_of(d);
        if (t.in_tree[static_cast<size_t>(e)]) continue;
        auto it = std::lower_bound(t.nontree_edges.begin(), t.nontree_edges.end(), e);
        int k = static_cast<int>(it - t.nontree_edges.begin());
        w.letters.push_back({k, SerreGraph::is_positive(d) ? +1 : -1});
    }
    return reduce(w);
}

std::optional<Word> subgroup_coordinates(const StallingsGraph& sg, const Word& w) {
    auto path = trace_word(sg, w);
    if (!path) return std::nullopt;
    SpanningTreeData t = lex_least_spanning_tree(sg.graph, sg.basepoint);
    return tree_collapse_word(t, *path);
}

std::vector<Word> subgroup_basis(const StallingsGraph& sg) {
    SpanningTreeData t = lex_least_spanning_tree(sg.graph, sg.basepoint);
    std::vector<Word> basis;
    for (int k = 0; k < t.rank(); ++k) {
        EdgePath loop = pi1_basis_loop(t, sg.graph, k);
        Word w;
        for (Dart d : loop.darts) w.letters.push_back(sg.dart_label(d));
        basis.push_back(reduce(w));
    }
    return basis;
}

std::optional<int> subgroup_index(const StallingsGraph& sg) {
    sg.validate();
    for (int v = 0; v < sg.graph.num_vertices(); ++v)
        if (sg.graph.valence(v) != 2 * sg.ambient_rank) return std::nullopt;
    return sg.graph.num_vertices();
}

StallingsGraph pi1_image(const GraphMorphism& f, int base) {
    f.validate();
    SpanningTreeData dom_tree = lex_least_spanning_tree(f.domain, base);
    SpanningTreeData cod_tree = lex_least_spanning_tree(f.codomain, 0);
    std::vector<Word> words;
    for (int k = 0; k < dom_tree.rank(); ++k) {
        EdgePath loop = pi1_basis_loop(dom_tree, f.domain, k);
        words.push_back(tree_collapse_word(cod_tree, f.map_path(loop)));
    }
    return subgroup_graph(words, cod_tree.rank());
}

bool is_pi1_injective(const GraphMorphism& f) {
    int domain_rank = f.domain.num_edges() - f.domain.num_vertices() + 1;
    return pi1_image(f, 0).rank() == domain_rank;
}

namespace {

// Nielsen state: tuple over the canonical basis plus, per entry, its
// expression in the original generators g_0..g_{k-1}.
struct NielsenState {
    std::vector<Word> tuple;
    std::vector<Word> memory;

    int total() const {
        int t = 0;
        for (const Word& w : tuple) t += w.length();
        return t;
    }
};

bool all_single_distinct(const std::vector<Word>& tuple) {
    std::set<int> gens;
    for (const Word& w : tuple) {
        if (w.length() != 1) return false;
        if (!gens.insert(w.letters[0].gen).second) return false;
    }
    return true;
}

// Greedy strict length descent by elementary Nielsen moves.
void nielsen_reduce(NielsenState& s) {
    const int k = static_cast<int>(s.tuple.size());
    bool changed = true;
    while (changed) {
        changed = false;
        for (int i = 0; i < k && !changed; ++i) {
            for (int j = 0; j < k && !changed; ++j) {
                if (i == j) continue;
                for (int sign : {+1, -1}) {
                    Word vj = sign > 0 ? s.tuple[static_cast<size_t>(j)]
                                       : s.tuple[static_cast<size_t>(j)].inverse();
                    Word mj = sign > 0 ? s.memory[static_cast<size_t>(j)]
                                       : s.memory[static_cast<size_t>(j)].inverse();
                    Word right = concat(s.tuple[static_cast<size_t>(i)], vj);
                    if (right.length() < s.tuple[static_cast<size_t>(i)].length()) {
                        s.tuple[static_cast<size_t>(i)] = right;
                        s.memory[static_cast<size_t>(i)] =
                            concat(s.memory[static_cast<size_t>(i)], mj);
                        changed = true;
                        break;
                    }
                    Word left = concat(vj, s.tuple[static_cast<size_t>(i)]);
                    if (left.length() < s.tuple[static_cast<size_t>(i)].length()) {
                        s.tuple[static_cast<size_t>(i)] = left;
                        s.memory[static_cast<size_t>(i)] =
                            concat(mj, s.memory[static_cast<size_t>(i)]);
                        changed = true;
                        break;
                    }
                }
            }
        }
    }
}

// Breadth-first fallback over length-non-increasing moves for the rare tuples
// where greedy descent stalls before reaching single letters.
bool nielsen_search(NielsenState& s, int budget) {
    std::set<std::vector<Word>> visited;
    std::vector<NielsenState> queue = {s};
    visited.insert(s.tuple);
    for (size_t qi = 0; qi < queue.size() && static_cast<int>(qi) < budget; ++qi) {
        NielsenState cur = queue[qi];
        if (all_single_distinct(cur.tuple)) {
            s = cur;
            return true;
        }
        const int k = static_cast<int>(cur.tuple.size());
        for (int i = 0; i < k; ++i) {
            for (int j = 0; j < k; ++j) {
                if (i == j) continue;
                for (int sign : {+1, -1}) {
                    for (int side : {0, 1}) {
                        NielsenState next = cur;
                        Word vj = sign > 0 ? cur.tuple[static_cast<size_t>(j)]
                                           : cur.tuple[static_cast<size_t>(j)].inverse();
                        Word mj = sign > 0 ? cur.memory[static_cast<size_t>(j)]
                                           : cur.memory[static_cast<size_t>(j)].inverse();
                        if (side == 0) {
                            next.tuple[static_cast<size_t>(i)] =
                                concat(cur.tuple[static_cast<size_t>(i)], vj);
                            next.memory[static_cast<size_t>(i)] =
                                concat(cur.memory[static_cast<size_t>(i)], mj);
                        } else {
                            next.tuple[static_cast<size_t>(i)] =
                                concat(vj, cur.tuple[static_cast<size_t>(i)]);
                            next.memory[static_cast<size_t>(i)] =
                                concat(mj, cur.memory[static_cast<size_t>(i)]);
                        }
                        if (next.total() > cur.total()) continue;
                        if (!visited.insert(next.tuple).second) continue;
                        queue.push_back(std::move(next));
                    }
                }
            }
        }
    }
    return false;
}

} // namespace

std::optional<Word> express_in_tuple(const std::vector<Word>& gens, int ambient_rank, const Word& w) {
    const int k = static_cast<int>(gens.size());
    StallingsGraph sg = subgroup_graph(gens, ambient_rank);
    if (sg.rank() != k)
        throw ValidationError("express_in_tuple: tuple is not a free basis of its subgroup");
    auto coords = subgroup_coordinates(sg, w);
    if (!coords) return std::nullopt;

    NielsenState s;
    for (int i = 0; i < k; ++i) {
        auto ui = subgroup_coordinates(sg, gens[static_cast<size_t>(i)]);
        if (!ui) throw ValidationError("express_in_tuple: generator fails membership");
        s.tuple.push_back(*ui);
        s.memory.push_back(Word{{Letter{i, +1}}});
    }
    nielsen_reduce(s);
    if (!all_single_distinct(s.tuple)) {
        if (!nielsen_search(s, 20000))
            throw ValidationError("express_in_tuple: could not invert the tuple");
    }

    // c_j = tuple[i]^sign  =>  expression of c_j is memory[i]^sign.
    std::map<int, Word> images;
    for (int i = 0; i < k; ++i) {
        const Letter& l = s.tuple[static_cast<size_t>(i)].letters[0];
        images[l.gen] = l.sign > 0 ? s.memory[static_cast<size_t>(i)]
                                   : s.memory[static_cast<size_t>(i)].inverse();
    }
    Word expression = substitute(*coords, images);

    // Cross-check by expanding back to the ambient group.
    std::map<int, Word> expand;
    for (int i = 0; i < k; ++i) expand[i] = gens[static_cast<size_t>(i)];
    if (substitute(expression, expand) != reduce(w))
        throw ConstructionError("express_in_tuple: expression failed to re-expand");
    return expression;
}

} // namespace gogkit
