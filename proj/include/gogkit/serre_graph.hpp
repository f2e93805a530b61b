#pragma once

#include <string>
#include <vector>

namespace gogkit {

// A dart is an oriented edge. Geometric edge e owns darts 2e (positive,
// from -> to) and 2e+1 (negative, to -> from); inverse(d) = d ^ 1 is a
// fixed-point-free involution. Loops and multi-edges are allowed.
using Dart = int;

class SerreGraph {
public:
    struct Edge {
        int from = 0;
        int to = 0;
        std::string name; // empty = auto ("e<i>") at serialization time

        bool operator==(const Edge&) const = default;
    };

    int add_vertex(std::string name = {});
    int add_edge(int from, int to, std::string name = {});

    int num_vertices() const { return static_cast<int>(vertex_names_.size()); }
    int num_edges() const { return static_cast<int>(edges_.size()); }
    int num_darts() const { return 2 * num_edges(); }

    static Dart positive_dart(int edge) { return 2 * edge; }
    static Dart negative_dart(int edge) { return 2 * edge + 1; }
    static Dart inverse(Dart d) { return d ^ 1; }
    static int edge_of(Dart d) { return d >> 1; }
    static bool is_positive(Dart d) { return (d & 1) == 0; }

    int origin(Dart d) const {
        const Edge& e = edges_[static_cast<size_t>(d >> 1)];
        return (d & 1) ? e.to : e.from;
    }
    int terminus(Dart d) const { return origin(inverse(d)); }

    const Edge& edge(int i) const { return edges_[static_cast<size_t>(i)]; }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::string& vertex_name(int v) const { return vertex_names_[static_cast<size_t>(v)]; }
    void set_vertex_name(int v, std::string name) { vertex_names_[static_cast<size_t>(v)] = std::move(name); }
    void set_edge_name(int e, std::string name) { edges_[static_cast<size_t>(e)].name = std::move(name); }

    // Name used in serialized output: the stored name, or "v<i>"/"e<i>".
    std::string display_vertex_name(int v) const;
    std::string display_edge_name(int e) const;

    // Number of incident darts; a loop contributes 2.
    int valence(int v) const;
    // Darts with origin v, ascending.
    std::vector<Dart> darts_at(int v) const;
    int loops_at(int v) const;

    // Component id per vertex: components numbered by least contained vertex.
    std::vector<int> component_ids() const;
    int num_components() const;
    bool connected() const;

    bool same_shape(const SerreGraph& other) const; // ignores names
    bool operator==(const SerreGraph&) const = default; // includes names

private:
    std::vector<std::string> vertex_names_;
    std::vector<Edge> edges_;
};

struct EulerRank {
    int chi = 0;  // V - E (geometric edges)
    int rank = 0; // sum over components of (1 - chi(component)) = first Betti number
};

EulerRank graph_euler_and_rank(const SerreGraph& g);

// A walk through consecutive darts.  May be empty as a value; operations
// that require nonempty paths (morphism images) validate that themselves.
struct EdgePath {
    std::vector<Dart> darts;

    bool empty() const { return darts.empty(); }
    int length() const { return static_cast<int>(darts.size()); }
    int source(const SerreGraph& g) const { return g.origin(darts.front()); }
    int target(const SerreGraph& g) const { return g.terminus(darts.back()); }
    EdgePath reversed() const;
    bool composable_in(const SerreGraph& g) const; // consecutive endpoints match
    bool closed_in(const SerreGraph& g) const;

    bool operator==(const EdgePath&) const = default;
};

EdgePath concat_paths(const EdgePath& a, const EdgePath& b);

} // namespace gogkit
