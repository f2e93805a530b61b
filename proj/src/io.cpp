#include "gogkit/io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "gogkit/errors.hpp"

namespace gogkit {

namespace {

void require_object(const ordered_json& j, const std::string& what) {
    if (!j.is_object()) throw ValidationError(what + ": expected an object");
}

const ordered_json& require_key(const ordered_json& j, const std::string& key,
                                const std::string& what) {
    require_object(j, what);
    auto it = j.find(key);
    if (it == j.end()) throw ValidationError(what + ": missing key \"" + key + "\"");
    return *it;
}

std::string require_string(const ordered_json& j, const std::string& what) {
    if (!j.is_string()) throw ValidationError(what + ": expected a string");
    return j.get<std::string>();
}

int require_int(const ordered_json& j, const std::string& what) {
    if (!j.is_number_integer()) throw ValidationError(what + ": expected an integer");
    return j.get<int>();
}

std::map<std::string, int> vertex_index(const SerreGraph& g, const std::string& what) {
    std::map<std::string, int> m;
    for (int v = 0; v < g.num_vertices(); ++v)
        if (!m.emplace(g.display_vertex_name(v), v).second)
            throw ValidationError(what + ": duplicate vertex name \"" + g.display_vertex_name(v) +
                                  "\"");
    return m;
}

std::map<std::string, int> edge_index(const SerreGraph& g, const std::string& what) {
    std::map<std::string, int> m;
    for (int e = 0; e < g.num_edges(); ++e)
        if (!m.emplace(g.display_edge_name(e), e).second)
            throw ValidationError(what + ": duplicate edge name \"" + g.display_edge_name(e) +
                                  "\"");
    return m;
}

std::string dart_token(const SerreGraph& g, Dart d) {
    return g.display_edge_name(SerreGraph::edge_of(d)) +
           (SerreGraph::is_positive(d) ? "+" : "-");
}

Dart parse_dart_token(const std::string& token, const std::map<std::string, int>& edges,
                      const std::string& what) {
    if (token.size() < 2 || (token.back() != '+' && token.back() != '-'))
        throw ValidationError(what + ": dart token \"" + token + "\" must end in + or -");
    const std::string name = token.substr(0, token.size() - 1);
    auto it = edges.find(name);
    if (it == edges.end())
        throw ValidationError(what + ": dart token \"" + token + "\" names an unknown edge");
    Dart d = SerreGraph::positive_dart(it->second);
    return token.back() == '+' ? d : SerreGraph::inverse(d);
}

ordered_json path_to_json(const SerreGraph& g, const EdgePath& p) {
    ordered_json a = ordered_json::array();
    for (Dart d : p.darts) a.push_back(dart_token(g, d));
    return a;
}

EdgePath path_from_json(const ordered_json& j, const std::map<std::string, int>& edges,
                        const std::string& what) {
    if (!j.is_array()) throw ValidationError(what + ": expected a list of dart tokens");
    EdgePath p;
    for (const ordered_json& t : j)
        p.darts.push_back(parse_dart_token(require_string(t, what), edges, what));
    return p;
}

} // namespace

ordered_json graph_to_json(const SerreGraph& g) {
    ordered_json j;
    j["vertices"] = ordered_json::array();
    for (int v = 0; v < g.num_vertices(); ++v) j["vertices"].push_back(g.display_vertex_name(v));
    j["edges"] = ordered_json::array();
    for (int e = 0; e < g.num_edges(); ++e) {
        ordered_json rec;
        rec["id"] = g.display_edge_name(e);
        rec["from"] = g.display_vertex_name(g.edge(e).from);
        rec["to"] = g.display_vertex_name(g.edge(e).to);
        j["edges"].push_back(std::move(rec));
    }
    return j;
}

SerreGraph graph_from_json(const ordered_json& j) {
    const ordered_json& verts = require_key(j, "vertices", "graph");
    if (!verts.is_array()) throw ValidationError("graph: \"vertices\" must be a list");
    SerreGraph g;
    for (const ordered_json& v : verts) g.add_vertex(require_string(v, "graph vertex"));
    std::map<std::string, int> vidx = vertex_index(g, "graph");
    const ordered_json& edges = require_key(j, "edges", "graph");
    if (!edges.is_array()) throw ValidationError("graph: \"edges\" must be a list");
    for (const ordered_json& rec : edges) {
        require_object(rec, "graph edge");
        std::string from = require_string(require_key(rec, "from", "graph edge"), "graph edge");
        std::string to = require_string(require_key(rec, "to", "graph edge"), "graph edge");
        auto f = vidx.find(from), t = vidx.find(to);
        if (f == vidx.end())
            throw ValidationError("graph edge: unknown vertex \"" + from + "\"");
        if (t == vidx.end())
            throw ValidationError("graph edge: unknown vertex \"" + to + "\"");
        std::string name;
        if (auto it = rec.find("id"); it != rec.end()) name = require_string(*it, "graph edge id");
        g.add_edge(f->second, t->second, name);
    }
    edge_index(g, "graph"); // rejects duplicate display names
    return g;
}

ordered_json morphism_to_json(const GraphMorphism& f) {
    ordered_json j;
    j["domain"] = graph_to_json(f.domain);
    j["codomain"] = graph_to_json(f.codomain);
    ordered_json vm;
    for (int v = 0; v < f.domain.num_vertices(); ++v)
        vm[f.domain.display_vertex_name(v)] =
            f.codomain.display_vertex_name(f.vertex_map[static_cast<size_t>(v)]);
    j["vertex_map"] = std::move(vm);
    ordered_json em;
    for (int e = 0; e < f.domain.num_edges(); ++e)
        em[f.domain.display_edge_name(e)] =
            path_to_json(f.codomain, f.edge_images[static_cast<size_t>(e)]);
    j["edge_map"] = std::move(em);
    return j;
}

GraphMorphism morphism_from_json(const ordered_json& j) {
    GraphMorphism f;
    f.domain = graph_from_json(require_key(j, "domain", "morphism"));
    f.codomain = graph_from_json(require_key(j, "codomain", "morphism"));
    std::map<std::string, int> cv = vertex_index(f.codomain, "morphism codomain");
    std::map<std::string, int> ce = edge_index(f.codomain, "morphism codomain");
    const ordered_json& vm = require_key(j, "vertex_map", "morphism");
    require_object(vm, "morphism vertex_map");
    for (int v = 0; v < f.domain.num_vertices(); ++v) {
        const std::string name = f.domain.display_vertex_name(v);
        auto it = vm.find(name);
        if (it == vm.end())
            throw ValidationError("morphism: vertex_map is missing vertex \"" + name + "\"");
        std::string image = require_string(*it, "morphism vertex_map");
        auto ci = cv.find(image);
        if (ci == cv.end())
            throw ValidationError("morphism: vertex_map sends \"" + name +
                                  "\" to unknown vertex \"" + image + "\"");
        f.vertex_map.push_back(ci->second);
    }
    const ordered_json& em = require_key(j, "edge_map", "morphism");
    require_object(em, "morphism edge_map");
    for (int e = 0; e < f.domain.num_edges(); ++e) {
        const std::string name = f.domain.display_edge_name(e);
        auto it = em.find(name);
        if (it == em.end())
            throw ValidationError("morphism: edge_map is missing edge \"" + name + "\"");
        f.edge_images.push_back(path_from_json(*it, ce, "morphism edge_map[" + name + "]"));
    }
    f.validate();
    return f;
}

ordered_json presentation_to_json(const PresentationData& p) {
    ordered_json j;
    j["generators"] = p.generators;
    FreeBasis basis = standard_basis(p.generators);
    j["relators"] = ordered_json::array();
    for (const Word& r : p.relators) j["relators"].push_back(format_word(r, basis));
    return j;
}

PresentationData presentation_from_json(const ordered_json& j) {
    PresentationData p;
    const ordered_json& gens = require_key(j, "generators", "presentation");
    if (!gens.is_array()) throw ValidationError("presentation: \"generators\" must be a list");
    for (const ordered_json& g : gens) p.generators.push_back(require_string(g, "presentation"));
    p.validate();
    FreeBasis basis = standard_basis(p.generators);
    const ordered_json& rels = require_key(j, "relators", "presentation");
    if (!rels.is_array()) throw ValidationError("presentation: \"relators\" must be a list");
    for (const ordered_json& r : rels)
        p.relators.push_back(parse_word(require_string(r, "presentation relator"), basis));
    return p;
}

ordered_json complex_to_json(const TwoComplex& x) {
    ordered_json j = graph_to_json(x.skeleton);
    j["faces"] = ordered_json::array();
    for (const EdgePath& f : x.faces) j["faces"].push_back(path_to_json(x.skeleton, f));
    if (!x.face_names.empty()) j["face_names"] = x.face_names;
    return j;
}

TwoComplex complex_from_json(const ordered_json& j) {
    TwoComplex x;
    x.skeleton = graph_from_json(j);
    std::map<std::string, int> edges = edge_index(x.skeleton, "complex");
    const ordered_json& faces = require_key(j, "faces", "complex");
    if (!faces.is_array()) throw ValidationError("complex: \"faces\" must be a list");
    for (const ordered_json& f : faces) x.faces.push_back(path_from_json(f, edges, "complex face"));
    if (auto it = j.find("face_names"); it != j.end()) {
        if (!it->is_array()) throw ValidationError("complex: \"face_names\" must be a list");
        for (const ordered_json& n : *it)
            x.face_names.push_back(require_string(n, "complex face name"));
    }
    x.validate();
    return x;
}

ordered_json hom_to_json(const FiniteQuotientHom& h, const SerreGraph& g) {
    if (static_cast<int>(h.edge_value.size()) != g.num_edges())
        throw ValidationError("hom: value count does not match the graph");
    edge_index(g, "hom"); // rejects duplicate display names
    ordered_json j;
    j["modulus"] = h.modulus;
    ordered_json values;
    for (int e = 0; e < g.num_edges(); ++e)
        values[g.display_edge_name(e)] = h.edge_value[static_cast<size_t>(e)];
    j["values"] = std::move(values);
    return j;
}

FiniteQuotientHom hom_from_json(const ordered_json& j, const SerreGraph& g) {
    FiniteQuotientHom h;
    h.modulus = require_int(require_key(j, "modulus", "hom"), "hom modulus");
    if (h.modulus < 1) throw ValidationError("hom: modulus must be >= 1");
    h.edge_value.assign(static_cast<size_t>(g.num_edges()), 0);
    std::map<std::string, int> edges = edge_index(g, "hom");
    const ordered_json& values = require_key(j, "values", "hom");
    require_object(values, "hom values");
    for (auto it = values.begin(); it != values.end(); ++it) {
        auto e = edges.find(it.key());
        if (e == edges.end())
            throw ValidationError("hom: values name an unknown edge \"" + it.key() + "\"");
        int v = require_int(it.value(), "hom value");
        h.edge_value[static_cast<size_t>(e->second)] = ((v % h.modulus) + h.modulus) % h.modulus;
    }
    return h;
}

ordered_json gog_to_json(const GraphOfGraphs& g) {
    vertex_index(g.underlying, "gog underlying"); // duplicate-name guards
    edge_index(g.underlying, "gog underlying");
    ordered_json j;
    j["underlying"] = graph_to_json(g.underlying);
    ordered_json vgs;
    for (int v = 0; v < g.underlying.num_vertices(); ++v)
        vgs[g.underlying.display_vertex_name(v)] =
            graph_to_json(g.vertex_graphs[static_cast<size_t>(v)]);
    j["vertex_graphs"] = std::move(vgs);
    ordered_json egs;
    for (int e = 0; e < g.underlying.num_edges(); ++e)
        egs[g.underlying.display_edge_name(e)] =
            graph_to_json(g.edge_graphs[static_cast<size_t>(e)]);
    j["edge_graphs"] = std::move(egs);
    ordered_json maps;
    for (int e = 0; e < g.underlying.num_edges(); ++e) {
        ordered_json pair;
        pair["iota"] = morphism_to_json(g.iota_maps[static_cast<size_t>(e)]);
        pair["tau"] = morphism_to_json(g.tau_maps[static_cast<size_t>(e)]);
        maps[g.underlying.display_edge_name(e)] = std::move(pair);
    }
    j["maps"] = std::move(maps);
    return j;
}

GraphOfGraphs gog_from_json(const ordered_json& j) {
    GraphOfGraphs g;
    g.underlying = graph_from_json(require_key(j, "underlying", "gog"));
    vertex_index(g.underlying, "gog underlying");
    edge_index(g.underlying, "gog underlying");

    const ordered_json& vgs = require_key(j, "vertex_graphs", "gog");
    require_object(vgs, "gog vertex_graphs");
    for (int v = 0; v < g.underlying.num_vertices(); ++v) {
        const std::string name = g.underlying.display_vertex_name(v);
        auto it = vgs.find(name);
        if (it == vgs.end())
            throw ValidationError("gog: vertex_graphs is missing vertex \"" + name + "\"");
        g.vertex_graphs.push_back(graph_from_json(*it));
    }
    const ordered_json& egs = require_key(j, "edge_graphs", "gog");
    require_object(egs, "gog edge_graphs");
    const ordered_json& maps = require_key(j, "maps", "gog");
    require_object(maps, "gog maps");
    for (int e = 0; e < g.underlying.num_edges(); ++e) {
        const std::string name = g.underlying.display_edge_name(e);
        auto git = egs.find(name);
        if (git == egs.end())
            throw ValidationError("gog: edge_graphs is missing edge \"" + name + "\"");
        g.edge_graphs.push_back(graph_from_json(*git));
        auto mit = maps.find(name);
        if (mit == maps.end())
            throw ValidationError("gog: maps is missing edge \"" + name + "\"");
        GraphMorphism fi = morphism_from_json(require_key(*mit, "iota", "gog maps[" + name + "]"));
        GraphMorphism ft = morphism_from_json(require_key(*mit, "tau", "gog maps[" + name + "]"));
        if (!(fi.domain == g.edge_graphs.back()))
            throw ValidationError("gog maps[" + name + "].iota: domain differs from the edge graph");
        if (!(ft.domain == g.edge_graphs.back()))
            throw ValidationError("gog maps[" + name + "].tau: domain differs from the edge graph");
        const SerreGraph& xv_i = g.vertex_graphs[static_cast<size_t>(g.underlying.edge(e).from)];
        const SerreGraph& xv_t = g.vertex_graphs[static_cast<size_t>(g.underlying.edge(e).to)];
        if (!(fi.codomain == xv_i))
            throw ValidationError("gog maps[" + name +
                                  "].iota: codomain differs from the source vertex graph");
        if (!(ft.codomain == xv_t))
            throw ValidationError("gog maps[" + name +
                                  "].tau: codomain differs from the target vertex graph");
        g.iota_maps.push_back(std::move(fi));
        g.tau_maps.push_back(std::move(ft));
    }
    g.validate();
    return g;
}

ordered_json report_to_json(const VerifyReport& r) {
    ordered_json j;
    j["n"] = r.n;
    j["stages"] = ordered_json::array();
    for (const VerifyStage& st : r.stages) {
        ordered_json s;
        s["title"] = st.title;
        s["checks"] = ordered_json::array();
        for (const VerifyCheck& c : st.checks) {
            ordered_json e;
            e["name"] = c.name;
            e["pass"] = c.pass;
            if (!c.detail.empty()) e["detail"] = c.detail;
            s["checks"].push_back(std::move(e));
        }
        j["stages"].push_back(std::move(s));
    }
    j["passed"] = r.passed_checks();
    j["total"] = r.total_checks();
    j["all_pass"] = r.all_pass();
    return j;
}

const char* to_string(DocumentKind k) {
    switch (k) {
        case DocumentKind::graph: return "graph";
        case DocumentKind::morphism: return "morphism";
        case DocumentKind::presentation: return "presentation";
        case DocumentKind::complex_: return "complex";
        case DocumentKind::hom: return "hom";
        case DocumentKind::gog: return "gog";
    }
    return "?";
}

DocumentKind detect_kind(const ordered_json& j) {
    require_object(j, "document");
    if (j.contains("underlying")) return DocumentKind::gog;
    if (j.contains("faces")) return DocumentKind::complex_;
    if (j.contains("vertices")) return DocumentKind::graph;
    if (j.contains("domain") && j.contains("vertex_map")) return DocumentKind::morphism;
    if (j.contains("generators")) return DocumentKind::presentation;
    if (j.contains("modulus")) return DocumentKind::hom;
    throw ValidationError("document: unrecognized type (no known top-level keys)");
}

ordered_json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open file: " + path);
    try {
        return ordered_json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(path + ": " + e.what());
    }
}

std::string pretty(const ordered_json& j) { return j.dump(2) + "\n"; }

} // namespace gogkit
