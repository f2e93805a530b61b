#pragma once

#include <string>

#include "json.hpp"

#include "gogkit/constructions.hpp"
#include "gogkit/graph_of_graphs.hpp"
#include "gogkit/morphism.hpp"
#include "gogkit/presentation.hpp"
#include "gogkit/serre_graph.hpp"
#include "gogkit/two_complex.hpp"

namespace gogkit {

using ordered_json = nlohmann::ordered_json;

// ---- serialization (stable key order, deterministic) ----
//
// Graph documents: {"vertices": [names], "edges": [{"id", "from", "to"}]}.
// Darts are written as signed tokens "<edge-id>+" / "<edge-id>-".
// Morphisms embed their domain and codomain graphs and map by display name.
// Complexes extend graphs with "faces" (lists of dart tokens) and optional
// "face_names".  Homs: {"modulus", "values": {edge id: residue}} with omitted
// edges read as 0.  Graphs of graphs: {"underlying", "vertex_graphs",
// "edge_graphs", "maps": {edge id: {"iota", "tau"}}} keyed by display names.

ordered_json graph_to_json(const SerreGraph& g);
ordered_json morphism_to_json(const GraphMorphism& f);
ordered_json presentation_to_json(const PresentationData& p);
ordered_json complex_to_json(const TwoComplex& x);
ordered_json hom_to_json(const FiniteQuotientHom& h, const SerreGraph& g);
ordered_json gog_to_json(const GraphOfGraphs& g);
ordered_json report_to_json(const VerifyReport& r);

// ---- parsing (throws ValidationError on malformed documents) ----

SerreGraph graph_from_json(const ordered_json& j);
GraphMorphism morphism_from_json(const ordered_json& j);
PresentationData presentation_from_json(const ordered_json& j);
TwoComplex complex_from_json(const ordered_json& j);
// Edge keys are resolved against g's display names; missing edges get 0.
FiniteQuotientHom hom_from_json(const ordered_json& j, const SerreGraph& g);
GraphOfGraphs gog_from_json(const ordered_json& j);

enum class DocumentKind { graph, morphism, presentation, complex_, hom, gog };

const char* to_string(DocumentKind k);

// Detects the document type from its keys.
DocumentKind detect_kind(const ordered_json& j);

// File helpers: read/parse (ValidationError on IO or syntax problems) and a
// canonical dump (2-space indent, trailing newline).
ordered_json load_json_file(const std::string& path);
std::string pretty(const ordered_json& j);

} // namespace gogkit
