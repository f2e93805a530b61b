#include "gogkit/serre_graph.hpp"

#include <algorithm>
#include <numeric>

#include "gogkit/errors.hpp"

namespace gogkit {

int SerreGraph::add_vertex(std::string name) {
    vertex_names_.push_back(std::move(name));
    return num_vertices() - 1;
}

int SerreGraph::add_edge(int from, int to, std::string name) {
    if (from < 0 || from >= num_vertices() || to < 0 || to >= num_vertices())
        throw ValidationError("add_edge: endpoint out of range");
    edges_.push_back(Edge{from, to, std::move(name)});
    return num_edges() - 1;
}

std::string SerreGraph::display_vertex_name(int v) const {
    const std::string& n = vertex_names_[static_cast<size_t>(v)];
    return n.empty() ? "v" + std::to_string(v) : n;
}

std::string SerreGraph::display_edge_name(int e) const {
    const std::string& n = edges_[static_cast<size_t>(e)].name;
    return n.empty() ? "e" + std::to_string(e) : n;
}

int SerreGraph::valence(int v) const {
    int count = 0;
    for (const Edge& e : edges_) {
        if (e.from == v) ++count;
        if (e.to == v) ++count;
    }
    return count;
}

std::vector<Dart> SerreGraph::darts_at(int v) const {
    std::vector<Dart> out;
    for (Dart d = 0; d < num_darts(); ++d)
        if (origin(d) == v) out.push_back(d);
    return out;
}

int SerreGraph::loops_at(int v) const {
    int count = 0;
    for (const Edge& e : edges_)
        if (e.from == v && e.to == v) ++count;
    return count;
}

std::vector<int> SerreGraph::component_ids() const {
    std::vector<int> parent(static_cast<size_t>(num_vertices()));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&parent](int x) {
        while (parent[static_cast<size_t>(x)] != x) {
            parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
            x = parent[static_cast<size_t>(x)];
        }
        return x;
    };
    for (const Edge& e : edges_) {
        int a = find(e.from), b = find(e.to);
        if (a != b) parent[static_cast<size_t>(std::max(a, b))] = std::min(a, b);
    }
    std::vector<int> ids(static_cast<size_t>(num_vertices()), -1);
    int next = 0;
    for (int v = 0; v < num_vertices(); ++v) {
        int root = find(v);
        if (ids[static_cast<size_t>(root)] == -1) ids[static_cast<size_t>(root)] = next++;
        ids[static_cast<size_t>(v)] = ids[static_cast<size_t>(root)];
    }
    return ids;
}

int SerreGraph::num_components() const {
    if (num_vertices() == 0) return 0;
    std::vector<int> ids = component_ids();
    return *std::max_element(ids.begin(), ids.end()) + 1;
}

bool SerreGraph::connected() const { return num_components() <= 1; }

bool SerreGraph::same_shape(const SerreGraph& other) const {
    if (num_vertices() != other.num_vertices() || num_edges() != other.num_edges()) return false;
    for (int e = 0; e < num_edges(); ++e)
        if (edge(e).from != other.edge(e).from || edge(e).to != other.edge(e).to) return false;
    return true;
}

EulerRank graph_euler_and_rank(const SerreGraph& g) {
    EulerRank out;
    out.chi = g.num_vertices() - g.num_edges();
    out.rank = g.num_edges() - g.num_vertices() + g.num_components();
    return out;
}

EdgePath EdgePath::reversed() const {
    EdgePath out;
    out.darts.reserve(darts.size());
    for (auto it = darts.rbegin(); it != darts.rend(); ++it)
        out.darts.push_back(SerreGraph::inverse(*it));
    return out;
}

bool EdgePath::composable_in(const SerreGraph& g) const {
    for (size_t i = 0; i + 1 < darts.size(); ++i)
        if (g.terminus(darts[i]) != g.origin(darts[i + 1])) return false;
    return true;
}

bool EdgePath::closed_in(const SerreGraph& g) const {
    return !empty() && composable_in(g) && source(g) == target(g);
}

EdgePath concat_paths(const EdgePath& a, const EdgePath& b) {
    EdgePath out = a;
    out.darts.insert(out.darts.end(), b.darts.begin(), b.darts.end());
    return out;
}

} // namespace gogkit
