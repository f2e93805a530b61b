#include "gogkit/smoothing.hpp"

#include <algorithm>

#include "gogkit/errors.hpp"

namespace gogkit {

namespace {

// Working edge during smoothing: endpoints in old-vertex ids plus the chain
// of old darts its positive dart traverses.
struct Chain {
    int from;
    int to;
    EdgePath path;
    std::string name;
};

EdgePath realize(const Chain& c, int sign) {
    return sign > 0 ? c.path : c.path.reversed();
}

} // namespace

SmoothingResult smooth_bivalent(const SerreGraph& g, const std::vector<int>& protected_vertices) {
    std::vector<bool> protect(static_cast<size_t>(g.num_vertices()), false);
    for (int v : protected_vertices) {
        if (v < 0 || v >= g.num_vertices())
            throw ValidationError("smooth_bivalent: protected vertex out of range");
        protect[static_cast<size_t>(v)] = true;
    }

    std::vector<Chain> chains;
    for (int e = 0; e < g.num_edges(); ++e)
        chains.push_back(Chain{g.edge(e).from, g.edge(e).to,
                               EdgePath{{SerreGraph::positive_dart(e)}}, g.edge(e).name});
    std::vector<bool> removed(static_cast<size_t>(g.num_vertices()), false);

    for (;;) {
        // Incident (chain, sign) pairs at each surviving vertex.
        std::vector<std::vector<std::pair<int, int>>> at(static_cast<size_t>(g.num_vertices()));
        for (size_t c = 0; c < chains.size(); ++c) {
            at[static_cast<size_t>(chains[c].from)].push_back({static_cast<int>(c), +1});
            at[static_cast<size_t>(chains[c].to)].push_back({static_cast<int>(c), -1});
        }
        int target = -1;
        for (int v = 0; v < g.num_vertices(); ++v) {
            if (removed[static_cast<size_t>(v)] || protect[static_cast<size_t>(v)]) continue;
            const auto& inc = at[static_cast<size_t>(v)];
            if (inc.size() != 2) continue;
            if (inc[0].first == inc[1].first) continue; // lone circle vertex
            target = v;
            break;
        }
        if (target < 0) break;

        auto [c1, s1] = at[static_cast<size_t>(target)][0];
        auto [c2, s2] = at[static_cast<size_t>(target)][1];
        // The dart of c1 at the vertex points away from it; reverse to arrive.
        Chain merged;
        merged.path = concat_paths(realize(chains[static_cast<size_t>(c1)], s1).reversed(),
                                   realize(chains[static_cast<size_t>(c2)], s2));
        merged.from = merged.path.source(g);
        merged.to = merged.path.target(g);
        merged.name = {};
        int keep = std::min(c1, c2), drop = std::max(c1, c2);
        chains[static_cast<size_t>(keep)] = merged;
        chains.erase(chains.begin() + drop);
        removed[static_cast<size_t>(target)] = true;
    }

    SmoothingResult out;
    out.old_vertex_to_new.assign(static_cast<size_t>(g.num_vertices()), -1);
    for (int v = 0; v < g.num_vertices(); ++v) {
        if (!removed[static_cast<size_t>(v)])
            out.old_vertex_to_new[static_cast<size_t>(v)] = out.graph.add_vertex(g.vertex_name(v));
    }
    out.old_dart_location.assign(static_cast<size_t>(g.num_darts()), {-1, -1});
    for (const Chain& c : chains) {
        int e = out.graph.add_edge(out.old_vertex_to_new[static_cast<size_t>(c.from)],
                                   out.old_vertex_to_new[static_cast<size_t>(c.to)],
                                   c.path.length() == 1 ? c.name : std::string{});
        out.new_edge_to_old.push_back(c.path);
        int m = c.path.length();
        for (int i = 0; i < m; ++i) {
            Dart q = c.path.darts[static_cast<size_t>(i)];
            out.old_dart_location[static_cast<size_t>(q)] = {SerreGraph::positive_dart(e), i + 1};
            out.old_dart_location[static_cast<size_t>(SerreGraph::inverse(q))] =
                {SerreGraph::negative_dart(e), m - i};
        }
    }
    return out;
}

int SmoothingResult::rewrite_vertex(int old_vertex) const {
    int v = old_vertex_to_new[static_cast<size_t>(old_vertex)];
    if (v < 0) throw ValidationError("rewrite_vertex: vertex was smoothed away");
    return v;
}

EdgePath SmoothingResult::rewrite_path(const EdgePath& old_path) const {
    EdgePath out;
    size_t i = 0;
    while (i < old_path.darts.size()) {
        auto [nd, pos] = old_dart_location[static_cast<size_t>(old_path.darts[i])];
        if (pos != 1)
            throw ValidationError("rewrite_path: path enters a smoothed chain mid-way");
        int len = new_edge_to_old[static_cast<size_t>(SerreGraph::edge_of(nd))].length();
        for (int k = 1; k <= len; ++k, ++i) {
            if (i >= old_path.darts.size())
                throw ValidationError("rewrite_path: path stops inside a smoothed chain");
            auto [nd2, pos2] = old_dart_location[static_cast<size_t>(old_path.darts[i])];
            if (nd2 != nd || pos2 != k)
                throw ValidationError("rewrite_path: path does not follow the chain");
        }
        out.darts.push_back(nd);
    }
    return out;
}

} // namespace gogkit
