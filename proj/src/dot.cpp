#include "gogkit/dot.hpp"

#include <sstream>

namespace gogkit {

namespace {

std::string quoted(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

void emit_graph_body(std::ostringstream& out, const SerreGraph& g, const std::string& prefix,
                     const std::string& indent) {
    for (int v = 0; v < g.num_vertices(); ++v)
        out << indent << quoted(prefix + g.display_vertex_name(v)) << ";\n";
    for (int e = 0; e < g.num_edges(); ++e)
        out << indent << quoted(prefix + g.display_vertex_name(g.edge(e).from)) << " -> "
            << quoted(prefix + g.display_vertex_name(g.edge(e).to))
            << " [label=" << quoted(g.display_edge_name(e)) << "];\n";
}

} // namespace

std::string dot_of_graph(const SerreGraph& g) {
    std::ostringstream out;
    out << "digraph g {\n";
    emit_graph_body(out, g, "", "  ");
    out << "}\n";
    return out.str();
}

std::string dot_of_gog(const GraphOfGraphs& g) {
    std::ostringstream out;
    out << "digraph gog {\n  compound=true;\n";
    for (int v = 0; v < g.underlying.num_vertices(); ++v) {
        out << "  subgraph cluster_v" << v << " {\n"
            << "    label=" << quoted(g.underlying.display_vertex_name(v)) << ";\n";
        emit_graph_body(out, g.vertex_graphs[static_cast<size_t>(v)],
                        "v" + std::to_string(v) + "/", "    ");
        out << "  }\n";
    }
    for (int e = 0; e < g.underlying.num_edges(); ++e) {
        out << "  subgraph cluster_e" << e << " {\n"
            << "    label=" << quoted(g.underlying.display_edge_name(e)) << ";\n";
        emit_graph_body(out, g.edge_graphs[static_cast<size_t>(e)],
                        "e" + std::to_string(e) + "/", "    ");
        out << "  }\n";
    }
    for (int e = 0; e < g.underlying.num_edges(); ++e) {
        const SerreGraph& xe = g.edge_graphs[static_cast<size_t>(e)];
        if (xe.num_vertices() == 0) continue;
        const std::string from = "e" + std::to_string(e) + "/" + xe.display_vertex_name(0);
        auto arrow = [&](int gv, const char* side) {
            const SerreGraph& xv = g.vertex_graphs[static_cast<size_t>(gv)];
            if (xv.num_vertices() == 0) return;
            const std::string to = "v" + std::to_string(gv) + "/" + xv.display_vertex_name(0);
            out << "  " << quoted(from) << " -> " << quoted(to) << " [ltail=cluster_e" << e
                << ", lhead=cluster_v" << gv << ", style=dashed, label=\"" << side << "\"];\n";
        };
        arrow(g.underlying.edge(e).from, "iota");
        arrow(g.underlying.edge(e).to, "tau");
    }
    out << "}\n";
    return out.str();
}

} // namespace gogkit
