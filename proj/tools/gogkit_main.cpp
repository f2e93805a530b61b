#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "gogkit/constructions.hpp"
#include "gogkit/dot.hpp"
#include "gogkit/errors.hpp"
#include "gogkit/io.hpp"
#include "gogkit/stallings.hpp"

namespace {

using namespace gogkit;

void check_family_parameter(int n, int max_n) {
    if (n < 3 || n % 2 == 0)
        throw ValidationError("--n must be an odd integer >= 3");
    if (n > max_n)
        throw ValidationError("--n exceeds the --max-n limit (" + std::to_string(max_n) + ")");
}

int run_verify(int n, int max_n, bool as_json, bool conservative) {
    check_family_parameter(n, max_n);
    FreeFactorOptions opts;
    opts.conservative = conservative;
    VerifyReport rep = run_verification(n, opts);
    if (as_json)
        std::cout << pretty(report_to_json(rep));
    else
        std::cout << render_text(rep);
    return rep.all_pass() ? 0 : 1;
}

void run_build(const std::string& kind, int n, int max_n) {
    check_family_parameter(n, max_n);
    if (kind == "presentation")
        std::cout << pretty(presentation_to_json(rewritten_presentation(n)));
    else if (kind == "double-cover")
        std::cout << pretty(gog_to_json(double_cover_gog(n)));
    else
        std::cout << pretty(gog_to_json(theta_family(n)));
}

void run_check_clean(const std::string& path, bool conservative) {
    ordered_json doc = load_json_file(path);
    if (detect_kind(doc) != DocumentKind::gog)
        throw ValidationError(path + ": check-clean expects a gog document");
    GraphOfGraphs g = gog_from_json(doc);
    FreeFactorOptions opts;
    opts.conservative = conservative;
    CleanlinessReport cl = classify_cleanliness(g, opts);
    std::cout << "vh-clean: " << (cl.vh_clean ? "true" : "false") << "\n"
              << "geometrically clean: " << (cl.geometrically_clean ? "true" : "false") << "\n"
              << "algebraically clean: " << to_string(cl.algebraically_clean) << "\n"
              << "ends:\n";
    auto line = [&](int e, const char* side, const EdgeEndReport& r) {
        std::cout << "  " << g.underlying.display_edge_name(e) << " " << side
                  << ": combinatorial " << (r.combinatorial_embedding ? "yes" : "no")
                  << ", topological " << (r.topological_embedding ? "yes" : "no")
                  << ", free factor " << to_string(r.free_factor) << "\n";
    };
    for (int e = 0; e < g.underlying.num_edges(); ++e) {
        line(e, "iota", cl.iota_ends[static_cast<size_t>(e)]);
        line(e, "tau", cl.tau_ends[static_cast<size_t>(e)]);
    }
}

void run_cover(const std::string& path, const std::string& hom_path) {
    ordered_json doc = load_json_file(path);
    ordered_json hom_doc = load_json_file(hom_path);
    DocumentKind kind = detect_kind(doc);
    if (kind == DocumentKind::complex_) {
        TwoComplex x = complex_from_json(doc);
        FiniteQuotientHom h = hom_from_json(hom_doc, x.skeleton);
        validate_hom(x, h);
        std::cout << pretty(complex_to_json(cover_complex(x, h).complex));
    } else if (kind == DocumentKind::gog) {
        GraphOfGraphs g = gog_from_json(doc);
        TotalSpaceResult ts = total_space(g);
        // Values are read against the total space's edge names; horizontal
        // values are then (re)solved from the band equations.
        FiniteQuotientHom given = hom_from_json(hom_doc, ts.complex.skeleton);
        FiniteQuotientHom h = solve_horizontal_hom(ts, given.modulus, given.edge_value);
        std::cout << pretty(gog_to_json(cover_gog(g, h).gog));
    } else {
        throw ValidationError(path + ": cover expects a complex or gog document");
    }
}

void run_pi1(const std::string& path) {
    ordered_json doc = load_json_file(path);
    if (detect_kind(doc) != DocumentKind::gog)
        throw ValidationError(path + ": pi1 expects a gog document");
    std::cout << pretty(presentation_to_json(pi1_presentation(gog_from_json(doc))));
}

std::vector<std::string> infer_generator_names(const std::vector<std::string>& words, int rank,
                                               std::vector<std::string> names) {
    if (names.empty()) {
        std::set<std::string> seen;
        for (const std::string& w : words) {
            std::istringstream in(w);
            std::string token;
            while (in >> token) {
                if (token == "1") continue;
                std::string name = token.substr(0, token.find('^'));
                if (!name.empty() && seen.insert(name).second) names.push_back(name);
            }
        }
    }
    if (static_cast<int>(names.size()) > rank)
        throw ValidationError("more generator names than --rank allows");
    std::set<std::string> used(names.begin(), names.end());
    for (int i = 0; static_cast<int>(names.size()) < rank; ++i) {
        std::string candidate = "g" + std::to_string(i);
        if (used.insert(candidate).second) names.push_back(candidate);
    }
    return names;
}

void run_subgroup(int rank, const std::vector<std::string>& word_texts,
                  const std::vector<std::string>& gens, bool print_basis) {
    if (rank < 1) throw ValidationError("--rank must be >= 1");
    FreeBasis basis = standard_basis(infer_generator_names(word_texts, rank, gens));
    std::vector<Word> words;
    for (const std::string& t : word_texts) words.push_back(parse_word(t, basis));
    StallingsGraph sg = subgroup_graph(words, rank);
    std::cout << "vertices: " << sg.graph.num_vertices() << "\n"
              << "edges: " << sg.graph.num_edges() << "\n"
              << "rank: " << sg.rank() << "\n";
    auto idx = subgroup_index(sg);
    std::cout << "index: " << (idx ? std::to_string(*idx) : std::string("infinite")) << "\n";
    if (print_basis) {
        std::cout << "basis:";
        bool first = true;
        for (const Word& w : subgroup_basis(sg)) {
            std::cout << (first ? " " : ", ") << format_word(w, basis);
            first = false;
        }
        std::cout << "\n";
    }
}

void run_export(const std::string& format, const std::string& path) {
    ordered_json doc = load_json_file(path);
    DocumentKind kind = detect_kind(doc);
    if (format == "dot") {
        switch (kind) {
            case DocumentKind::graph: std::cout << dot_of_graph(graph_from_json(doc)); break;
            case DocumentKind::complex_:
                std::cout << dot_of_graph(complex_from_json(doc).skeleton);
                break;
            case DocumentKind::gog: std::cout << dot_of_gog(gog_from_json(doc)); break;
            default:
                throw ValidationError(path + ": dot export supports graph, complex and gog "
                                             "documents");
        }
        return;
    }
    switch (kind) {
        case DocumentKind::graph: std::cout << pretty(graph_to_json(graph_from_json(doc))); break;
        case DocumentKind::morphism:
            std::cout << pretty(morphism_to_json(morphism_from_json(doc)));
            break;
        case DocumentKind::presentation:
            std::cout << pretty(presentation_to_json(presentation_from_json(doc)));
            break;
        case DocumentKind::complex_:
            std::cout << pretty(complex_to_json(complex_from_json(doc)));
            break;
        case DocumentKind::gog: std::cout << pretty(gog_to_json(gog_from_json(doc))); break;
        case DocumentKind::hom:
            throw ValidationError(path + ": hom documents are only meaningful next to their "
                                         "complex; export that instead");
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"toolkit for graphs of graphs, Stallings foldings and cyclic covers"};
    app.require_subcommand(1);
    int rc = 0;

    int n = 3;
    int max_n = 15;
    bool as_json = false;
    bool conservative = false;
    CLI::App* verify = app.add_subcommand("verify", "run the whole pipeline and report");
    verify->add_option("--n", n, "odd family parameter (>= 3)")->required();
    verify->add_option("--max-n", max_n, "largest accepted n")->capture_default_str();
    verify->add_flag("--json", as_json, "emit the report as JSON");
    verify->add_flag("--conservative-free-factor", conservative,
                     "report unknown instead of no when the free-factor search is inconclusive");
    verify->callback([&] { rc = run_verify(n, max_n, as_json, conservative); });

    std::string build_kind;
    CLI::App* build = app.add_subcommand("build", "emit a pipeline object as JSON");
    build->add_option("kind", build_kind, "presentation | double-cover | family")
        ->required()
        ->check(CLI::IsMember({"presentation", "double-cover", "family"}));
    build->add_option("--n", n, "odd family parameter (>= 3)")->required();
    build->add_option("--max-n", max_n, "largest accepted n")->capture_default_str();
    build->callback([&] { run_build(build_kind, n, max_n); });

    std::string in_path;
    CLI::App* clean = app.add_subcommand("check-clean", "classify cleanliness of a gog file");
    clean->add_option("file", in_path, "gog JSON file")->required();
    clean->add_flag("--conservative-free-factor", conservative,
                    "report unknown instead of no when the free-factor search is inconclusive");
    clean->callback([&] { run_check_clean(in_path, conservative); });

    std::string hom_path;
    CLI::App* cover = app.add_subcommand("cover", "finite cyclic cover of a complex or gog");
    cover->add_option("file", in_path, "complex or gog JSON file")->required();
    cover->add_option("--hom", hom_path, "hom JSON file (values keyed by edge name)")->required();
    cover->callback([&] { run_cover(in_path, hom_path); });

    CLI::App* pi1 = app.add_subcommand("pi1", "fundamental group presentation of a gog file");
    pi1->add_option("file", in_path, "gog JSON file")->required();
    pi1->callback([&] { run_pi1(in_path); });

    int rank = 0;
    bool print_basis = false;
    std::vector<std::string> word_texts;
    std::vector<std::string> gens;
    CLI::App* subgroup = app.add_subcommand("subgroup", "fold a subgroup of a free group");
    subgroup->add_option("--rank", rank, "ambient free rank")->required();
    subgroup->add_option("--gens", gens, "generator names (default: inferred from the words)")
        ->delimiter(',');
    subgroup->add_flag("--basis", print_basis, "also print a free basis of the subgroup");
    subgroup->add_option("words", word_texts, "subgroup generators, e.g. \"x^-1 a x\"")
        ->required()
        ->expected(-1);
    subgroup->callback([&] { run_subgroup(rank, word_texts, gens, print_basis); });

    std::string format;
    CLI::App* exp = app.add_subcommand("export", "re-emit a document as dot or native JSON");
    exp->add_option("--format", format, "dot | native")
        ->required()
        ->check(CLI::IsMember({"dot", "native"}));
    exp->add_option("file", in_path, "input JSON file")->required();
    exp->callback([&] { run_export(format, in_path); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const gogkit::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const gogkit::ConstructionError& e) {
        std::cerr << "construction check failed: " << e.what() << "\n";
        return 1;
    }
    return rc;
}
