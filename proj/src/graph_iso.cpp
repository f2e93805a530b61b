#include "gogkit/graph_iso.hpp"

#include <algorithm>
#include <map>

namespace gogkit {

namespace {

// Multiset of non-loop edge counts between u and v (unordered), loops excluded.
int multiplicity(const SerreGraph& g, int u, int v) {
    int count = 0;
    for (const auto& e : g.edges()) {
        if (e.from == e.to) continue;
        if ((e.from == u && e.to == v) || (e.from == v && e.to == u)) ++count;
    }
    return count;
}

struct Searcher {
    const SerreGraph& g;
    const SerreGraph& h;
    const std::function<bool(const GraphIso&)>& visit;
    IsoMode mode;

    std::vector<int> order;       // domain vertices in assignment order
    std::vector<bool> is_root;    // order[i] starts a new component
    std::vector<int> vmap;        // domain vertex -> codomain vertex or -1
    std::vector<bool> used;       // codomain vertex used
    bool stopped = false;

    Searcher(const SerreGraph& g_, const SerreGraph& h_,
             const std::function<bool(const GraphIso&)>& visit_, IsoMode mode_)
        : g(g_), h(h_), visit(visit_), mode(mode_) {}

    void build_order() {
        std::vector<bool> seen(static_cast<size_t>(g.num_vertices()), false);
        for (int start = 0; start < g.num_vertices(); ++start) {
            if (seen[static_cast<size_t>(start)]) continue;
            // BFS of the component from its least vertex.
            std::vector<int> queue = {start};
            seen[static_cast<size_t>(start)] = true;
            order.push_back(start);
            is_root.push_back(true);
            for (size_t qi = 0; qi < queue.size(); ++qi) {
                int v = queue[qi];
                for (Dart d : g.darts_at(v)) {
                    int w = g.terminus(d);
                    if (!seen[static_cast<size_t>(w)]) {
                        seen[static_cast<size_t>(w)] = true;
                        order.push_back(w);
                        is_root.push_back(false);
                        queue.push_back(w);
                    }
                }
            }
        }
    }

    bool compatible(int v, int w) const {
        if (g.valence(v) != h.valence(w)) return false;
        if (g.loops_at(v) != h.loops_at(w)) return false;
        for (int u = 0; u < g.num_vertices(); ++u) {
            int wu = vmap[static_cast<size_t>(u)];
            if (wu < 0) continue;
            if (multiplicity(g, v, u) != multiplicity(h, w, wu)) return false;
        }
        return true;
    }

    void assign(size_t pos) {
        if (stopped) return;
        if (pos == order.size()) {
            emit_darts();
            return;
        }
        int v = order[pos];
        for (int w = 0; w < h.num_vertices() && !stopped; ++w) {
            if (used[static_cast<size_t>(w)]) continue;
            if (!compatible(v, w)) continue;
            vmap[static_cast<size_t>(v)] = w;
            used[static_cast<size_t>(w)] = true;
            assign(pos + 1);
            vmap[static_cast<size_t>(v)] = -1;
            used[static_cast<size_t>(w)] = false;
        }
    }

    // With the vertex bijection fixed, match edges bundle by bundle.
    void emit_darts() {
        // key: endpoint pair of the image (min,max); loops keyed by (v,v).
        std::map<std::pair<int, int>, std::vector<int>> dom_bundles, cod_bundles;
        for (int e = 0; e < g.num_edges(); ++e) {
            int a = vmap[static_cast<size_t>(g.edge(e).from)];
            int b = vmap[static_cast<size_t>(g.edge(e).to)];
            dom_bundles[{std::min(a, b), std::max(a, b)}].push_back(e);
        }
        for (int e = 0; e < h.num_edges(); ++e) {
            int a = h.edge(e).from, b = h.edge(e).to;
            cod_bundles[{std::min(a, b), std::max(a, b)}].push_back(e);
        }
        if (dom_bundles.size() != cod_bundles.size()) return;
        for (auto& [key, dom] : dom_bundles) {
            auto it = cod_bundles.find(key);
            if (it == cod_bundles.end() || it->second.size() != dom.size()) return;
        }

        std::vector<Dart> dart_map(static_cast<size_t>(g.num_darts()), -1);
        std::vector<std::pair<const std::vector<int>*, const std::vector<int>*>> bundles;
        for (auto& [key, dom] : dom_bundles)
            bundles.push_back({&dom, &cod_bundles.at(key)});
        match_bundle(bundles, 0, dart_map);
    }

    // Orient domain edge e onto codomain edge f (they must span the same
    // image endpoints); returns false if a loop maps to a non-loop.
    bool place(int e, int f, bool flip_loop, std::vector<Dart>& dart_map) const {
        int a = vmap[static_cast<size_t>(g.edge(e).from)];
        int fa = h.edge(f).from, fb = h.edge(f).to;
        bool loop = fa == fb;
        if ((g.edge(e).from == g.edge(e).to) != loop) return false;
        Dart image_pos;
        if (loop) {
            image_pos = flip_loop ? SerreGraph::negative_dart(f) : SerreGraph::positive_dart(f);
        } else {
            image_pos = (a == fa) ? SerreGraph::positive_dart(f) : SerreGraph::negative_dart(f);
        }
        dart_map[static_cast<size_t>(SerreGraph::positive_dart(e))] = image_pos;
        dart_map[static_cast<size_t>(SerreGraph::negative_dart(e))] = SerreGraph::inverse(image_pos);
        return true;
    }

    void match_bundle(const std::vector<std::pair<const std::vector<int>*, const std::vector<int>*>>& bundles,
                      size_t bi, std::vector<Dart>& dart_map) {
        if (stopped) return;
        if (bi == bundles.size()) {
            GraphIso iso;
            iso.vertex_map = vmap;
            iso.dart_map = dart_map;
            if (visit(iso)) stopped = true;
            return;
        }
        const std::vector<int>& dom = *bundles[bi].first;
        const std::vector<int>& cod = *bundles[bi].second;
        if (mode == IsoMode::vertex_canonical) {
            for (size_t i = 0; i < dom.size(); ++i)
                if (!place(dom[i], cod[i], false, dart_map)) return;
            match_bundle(bundles, bi + 1, dart_map);
            return;
        }
        // dart_exhaustive: all assignments within the bundle, plus loop flips.
        std::vector<int> perm(cod.begin(), cod.end());
        std::sort(perm.begin(), perm.end());
        do {
            bool loops = g.edge(dom[0]).from == g.edge(dom[0]).to;
            int flips = loops ? (1 << dom.size()) : 1;
            for (int mask = 0; mask < flips && !stopped; ++mask) {
                bool ok = true;
                for (size_t i = 0; i < dom.size() && ok; ++i)
                    ok = place(dom[i], perm[i], (mask >> i) & 1, dart_map);
                if (ok) match_bundle(bundles, bi + 1, dart_map);
            }
        } while (!stopped && std::next_permutation(perm.begin(), perm.end()));
    }
};

} // namespace

bool for_each_isomorphism(const SerreGraph& g, const SerreGraph& h,
                          const std::function<bool(const GraphIso&)>& visit, IsoMode mode) {
    if (g.num_vertices() != h.num_vertices() || g.num_edges() != h.num_edges()) return false;
    auto sorted = [](std::vector<int> v) { std::sort(v.begin(), v.end()); return v; };
    std::vector<int> gv, hv, gl, hl;
    for (int v = 0; v < g.num_vertices(); ++v) { gv.push_back(g.valence(v)); gl.push_back(g.loops_at(v)); }
    for (int v = 0; v < h.num_vertices(); ++v) { hv.push_back(h.valence(v)); hl.push_back(h.loops_at(v)); }
    if (sorted(gv) != sorted(hv) || sorted(gl) != sorted(hl)) return false;

    Searcher s(g, h, visit, mode);
    s.vmap.assign(static_cast<size_t>(g.num_vertices()), -1);
    s.used.assign(static_cast<size_t>(h.num_vertices()), false);
    s.build_order();
    if (g.num_vertices() == 0) {
        GraphIso iso;
        return visit(iso);
    }
    s.assign(0);
    return s.stopped;
}

std::optional<GraphIso> graph_isomorphic(const SerreGraph& g, const SerreGraph& h) {
    std::optional<GraphIso> found;
    for_each_isomorphism(g, h, [&found](const GraphIso& iso) {
        found = iso;
        return true;
    });
    return found;
}

} // namespace gogkit
