#pragma once

#include <string>

#include "gogkit/graph_of_graphs.hpp"
#include "gogkit/serre_graph.hpp"

namespace gogkit {

// DOT renderings are byte-stable for equal inputs: cells are emitted in
// ascending id order with display names.  Faces of complexes are not drawn;
// export a complex by rendering its skeleton.

std::string dot_of_graph(const SerreGraph& g);

// One cluster per vertex graph and per edge graph, plus dashed arrows from
// each edge cluster to its two endpoint clusters (labelled iota / tau).
std::string dot_of_gog(const GraphOfGraphs& g);

} // namespace gogkit
