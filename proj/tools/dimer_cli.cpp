// Command line driver.  Exit codes: 0 verified, 1 verification failed,
// 2 usage or input error.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dimer/builders.hpp"
#include "dimer/gluing.hpp"
#include "dimer/io.hpp"
#include "dimer/path_algebra.hpp"
#include "dimer/quiver.hpp"
#include "dimer/strands.hpp"
#include "json.hpp"

using namespace dimer;
using json = nlohmann::ordered_json;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void emit(const std::string& text, const std::string& out) {
    if (out.empty() || out == "-") std::cout << text;
    else write_text_file(out, text);
}

void emit_json(const json& j) { std::cout << j.dump(2) << "\n"; }

int resolve_arrow(const Quiver& q, const std::string& tok) {
    if (!tok.empty() && tok.find_first_not_of("0123456789") == std::string::npos) {
        int a = std::stoi(tok);
        if (a >= q.num_arrows()) throw UsageError("no arrow " + tok);
        return a;
    }
    if (auto a = q.find_arrow(tok)) return *a;
    throw UsageError("no arrow named " + tok);
}

// "i1,i2,...:j1,j2,..." with arrow ids or names
SeamArrows parse_seam(const Quiver& q, const std::string& s) {
    auto colon = s.find(':');
    if (colon == std::string::npos) throw UsageError("seam must have the form I:J, got " + s);
    auto list = [&](const std::string& part) {
        std::vector<int> out;
        std::stringstream ss(part);
        std::string tok;
        while (std::getline(ss, tok, ','))
            if (!tok.empty()) out.push_back(resolve_arrow(q, tok));
        return out;
    };
    return {list(s.substr(0, colon)), list(s.substr(colon + 1))};
}

json path_json(const Quiver& q, const Path& p) { return path_string(q, p); }

json surface_json(const SurfaceInfo& s) {
    json j;
    j["kind"] = to_string(s.kind);
    j["euler_characteristic"] = s.euler_characteristic;
    j["boundary_sizes"] = json::array();
    for (const auto& c : s.boundary_components) j["boundary_sizes"].push_back(c.size());
    if (s.genus) j["genus"] = *s.genus;
    if (!s.description.empty()) j["description"] = s.description;
    return j;
}

json degree_json(const std::optional<Degree>& d) {
    if (!d) return nullptr;
    return json{{"value", d->value}, {"sizes", d->sizes}, {"residues", d->residues}};
}

std::vector<int> parse_triple(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
    if (out.size() != 3) throw UsageError("expected K,N,M1, got " + s);
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dimer quivers: construction, gluing, strand diagrams and truncated dimer algebras"};
    app.require_subcommand(1);
    app.footer(
        "Quiver files use the canonical JSON format \"dimer-quiver/1\".\n"
        "Environment: DIMER_PATH_BUDGET caps the number of paths held by algebra\n"
        "truncations (default 16000000); class searches use an eighth of it.\n"
        "Exit codes: 0 verified, 1 verification failed, 2 usage or input error.");

    std::string file, out;
    bool strict = false;
    auto* validate_cmd = app.add_subcommand("validate", "check the dimer axioms and report the surface");
    validate_cmd->add_option("file", file, "quiver file")->required();
    validate_cmd->add_flag("--strict", strict, "reject vertices where pieces of surface touch");

    auto* strands_cmd = app.add_subcommand("strands", "zig-zag strands and their permutation");
    strands_cmd->add_option("file", file, "quiver file")->required();

    std::optional<int> want_k;
    auto* degree_cmd = app.add_subcommand("degree", "degree of the strand permutation");
    degree_cmd->add_option("file", file, "quiver file")->required();
    degree_cmd->add_option("--k", want_k, "fail unless the permutation is i -> i+k on every component");

    int k = 2, n = 4, m1 = 0;
    std::optional<int> seed_vertex;
    std::vector<int> seed_set;
    auto* labels_cmd = app.add_subcommand("labels", "k-subset labels of the vertices of a disk");
    labels_cmd->add_option("file", file, "quiver file")->required();
    labels_cmd->add_option("--k", k, "subset size")->required();
    labels_cmd->add_option("--n", n, "number of marked points")->required();
    labels_cmd->add_option("--seed-vertex", seed_vertex, "vertex with a known label (default: boundary vertex 1)");
    labels_cmd->add_option("--seed", seed_set, "label of the seed vertex (default {n-k+1..n})")->delimiter(',');

    auto* bridge_cmd = app.add_subcommand("bridge", "the bridge quiver Theta_k");
    bridge_cmd->add_option("--k", k, "bridge size, at least 2")->required();
    bridge_cmd->add_option("-o,--output", out, "output file (default stdout)");

    auto* fan_cmd = app.add_subcommand("fan", "triangulated n-gon with a fan of diagonals");
    fan_cmd->add_option("--n", n, "number of boundary vertices")->required();
    fan_cmd->add_option("-o,--output", out, "output file (default stdout)");

    auto* grid_cmd = app.add_subcommand("grid", "rectangular (k, n) quiver");
    grid_cmd->add_option("--k", k)->required();
    grid_cmd->add_option("--n", n)->required();
    grid_cmd->add_option("-o,--output", out, "output file (default stdout)");

    auto* annulus_cmd = app.add_subcommand("annulus", "glue a (k, n) disk to Theta_k along two seams");
    annulus_cmd->add_option("--k", k)->required();
    annulus_cmd->add_option("--n", n)->required();
    annulus_cmd->add_option("--m1", m1, "arrows between the seams on one side")->required();
    annulus_cmd->add_option("-o,--output", out, "output file (default stdout)");

    std::vector<std::string> seam_args;
    auto* rho_cmd = app.add_subcommand("rho", "insert the complements rho(j) next to a seam");
    rho_cmd->add_option("file", file, "quiver file")->required();
    rho_cmd->add_option("--seam", seam_args, "I:J as comma separated arrow ids or names")->required()->expected(1);
    rho_cmd->add_option("-o,--output", out, "output file (default stdout)");

    bool allow_loops = false;
    auto* glue_cmd = app.add_subcommand("glue", "glue boundary intervals I clockwise to J anticlockwise");
    glue_cmd->add_option("file", file, "quiver file")->required();
    glue_cmd->add_option("--seam", seam_args, "I:J, repeatable; ids refer to the input file")->required();
    glue_cmd->add_flag("--allow-loops", allow_loops, "accept boundary arrows that become loops");
    glue_cmd->add_option("-o,--output", out, "output file (default stdout)");

    int max_len = 8;
    bool thin = false, central = false;
    auto* algebra_cmd = app.add_subcommand("algebra", "classes of paths in the dimer algebra up to a length bound");
    algebra_cmd->add_option("file", file, "quiver file")->required();
    algebra_cmd->add_option("--max-len", max_len, "length bound L; verdicts hold up to L minus the largest face");
    algebra_cmd->add_flag("--thin", thin, "check thinness and minimal compositions");
    algebra_cmd->add_flag("--central-t", central, "check that t commutes with every arrow");

    std::optional<int> lambda_len, gen_len;
    auto* lambda_cmd = app.add_subcommand("check-lambda", "check the boundary algebra presentation of an annulus");
    lambda_cmd->add_option("--k", k)->required();
    lambda_cmd->add_option("--n", n)->required();
    lambda_cmd->add_option("--m1", m1)->required();
    lambda_cmd->add_option("--max-len", lambda_len, "length bound (default 4k + m1 + m2 + twice the largest face)");
    lambda_cmd->add_option("--gen-len", gen_len, "longest boundary path checked for generation (default L minus the largest face)");

    bool with_strands = false, tikz = false;
    std::string annulus_arg;
    auto* svg_cmd = app.add_subcommand("export-svg", "draw a quiver as SVG or TikZ");
    svg_cmd->add_option("file", file, "quiver file");
    svg_cmd->add_option("--annulus", annulus_arg, "K,N,M1: draw that annulus cut open along its second seam");
    svg_cmd->add_flag("--strands", with_strands, "overlay the zig-zag strands");
    svg_cmd->add_flag("--tikz", tikz, "write TikZ instead of SVG");
    svg_cmd->add_option("-o,--output", out, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (validate_cmd->parsed()) {
            Quiver q = read_quiver_file(file);
            auto r = validate(q, ValidateOptions{strict});
            json j{{"command", "validate"}, {"file", file}, {"ok", r.ok()}};
            j["violations"] = json::array();
            for (const auto& v : r.violations)
                j["violations"].push_back({{"axiom", to_string(v.axiom)}, {"where", v.where}, {"message", v.message}});
            j["pinch_vertices"] = r.pinch_vertices;
            j["counts"] = {{"vertices", q.num_vertices()}, {"arrows", q.num_arrows()}, {"faces", q.num_faces()}};
            if (r.ok()) j["surface"] = surface_json(surface_invariants(q));
            emit_json(j);
            return r.ok() ? 0 : 1;
        }
        if (strands_cmd->parsed()) {
            Quiver q = read_quiver_file(file);
            auto d = zig_zag_strands(q);
            json j{{"command", "strands"}, {"file", file}};
            j["strands"] = json::array();
            for (const auto& s : d.strands) {
                json e{{"id", s.id}};
                e["crossings"] = json::array();
                for (const auto& c : s.crossings) e["crossings"].push_back({c.arrow, to_string(c.side)});
                if (s.start) {
                    e["start"] = {s.start->component, s.start->position + 1};
                    e["end"] = {s.end->component, s.end->position + 1};
                }
                j["strands"].push_back(std::move(e));
            }
            j["permutation"] = strand_permutation(d).cycles;
            auto w = check_weak_postnikov(q, d);
            j["weak_postnikov"] = {{"ok", w.ok}, {"problems", w.problems}};
            if (surface_invariants(q).kind == SurfaceKind::Disk) {
                auto p = check_postnikov(q, d);
                j["postnikov"] = {{"ok", p.ok()},
                                  {"self_intersections", p.self_intersections.size()},
                                  {"unoriented_lenses", p.unoriented_lenses.size()}};
            }
            emit_json(j);
            return w.ok ? 0 : 1;
        }
        if (degree_cmd->parsed()) {
            Quiver q = read_quiver_file(file);
            auto d = diagram_degree(zig_zag_strands(q));
            json j{{"command", "degree"}, {"file", file}, {"degree", degree_json(d)}};
            bool ok = d.has_value() && (!want_k || d->admits(*want_k));
            if (want_k) j["k"] = *want_k;
            j["ok"] = ok;
            emit_json(j);
            return ok ? 0 : 1;
        }
        if (labels_cmd->parsed()) {
            Quiver q = read_quiver_file(file);
            int v = seed_vertex ? *seed_vertex : boundary_vertex_order(q).at(0);
            if (v < 0 || v >= q.num_vertices()) throw UsageError("no vertex " + std::to_string(v));
            auto L = label_regions(q, k, n, v, seed_set.empty() ? boundary_label(k, n, 1) : seed_set);
            json j{{"command", "labels"}, {"file", file}, {"k", k}, {"n", n}};
            j["labels"] = json::array();
            for (int x = 0; x < q.num_vertices(); ++x) j["labels"].push_back(subset_elements(L.label[x]));
            j["boundary_vertices"] = boundary_vertex_order(q);
            emit_json(j);
            return 0;
        }
        if (bridge_cmd->parsed()) {
            emit(serialize(bridge_quiver(k)), out);
            return 0;
        }
        if (fan_cmd->parsed()) {
            emit(serialize(fan_quiver(n)), out);
            return 0;
        }
        if (grid_cmd->parsed()) {
            emit(serialize(grid_quiver(k, n)), out);
            return 0;
        }
        if (annulus_cmd->parsed()) {
            emit(serialize(annulus_quiver({k, n, m1}).quiver), out);
            return 0;
        }
        if (rho_cmd->parsed()) {
            Quiver q = read_quiver_file(file);
            auto s = parse_seam(q, seam_args.at(0));
            emit(serialize(rho(q, make_spec(q, s.I, s.J)).quiver), out);
            return 0;
        }
        if (glue_cmd->parsed()) {
            Quiver q = read_quiver_file(file);
            std::vector<SeamArrows> seams;
            for (const auto& s : seam_args) seams.push_back(parse_seam(q, s));
            emit(serialize(glue_many(q, seams, GlueOptions{allow_loops}).quiver), out);
            return 0;
        }
        if (algebra_cmd->parsed()) {
            Quiver q = read_quiver_file(file);
            TruncatedAlgebra A(q, max_len);
            json j{{"command", "algebra"}, {"file", file}, {"max_len", A.max_len()}, {"safe_len", A.safe_len()},
                   {"paths", A.num_nodes()}};
            j["classes"] = json::array();
            for (const auto& [st, cl] : A.all_classes(A.safe_len())) {
                std::map<int, int> by_len;
                for (int c : cl) ++by_len[A.length(c)];
                for (auto [len, count] : by_len)
                    j["classes"].push_back({{"source", st.first}, {"target", st.second}, {"length", len}, {"count", count}});
            }
            bool ok = true;
            if (central) {
                auto c = check_central_t(A);
                j["central_t"] = {{"ok", c.ok}, {"split_vertices", c.split_vertices}, {"failing_arrows", c.failing_arrows}};
                ok = ok && c.ok;
            }
            if (thin) {
                auto t = is_thin_truncated(A);
                json pairs = json::array();
                for (const auto& p : t.pairs)
                    if (!p.thin)
                        pairs.push_back({{"source", p.a},
                                         {"target", p.b},
                                         {"bottom", path_json(q, A.path(p.counterexample->first))},
                                         {"off_chain", path_json(q, A.path(p.counterexample->second))}});
                auto m = check_minimal_composition(A, t);
                j["thin"] = {{"ok", t.ok}, {"window", t.window}, {"counterexamples", pairs}};
                j["minimal_composition"] = {{"ok", m.ok}, {"checked", m.checked}};
                if (m.counterexample)
                    j["minimal_composition"]["counterexample"] = {{"path", path_json(q, m.counterexample->first)},
                                                                  {"split", m.counterexample->second}};
                ok = ok && t.ok && m.ok;
            }
            j["ok"] = ok;
            emit_json(j);
            return ok ? 0 : 1;
        }
        if (lambda_cmd->parsed()) {
            auto a = annulus_quiver({k, n, m1});
            const Quiver& q = a.quiver;
            auto p = gamma_presentation(m1, a.spec.m2(), k);
            int L = lambda_len ? *lambda_len : default_lambda_length(a);
            int G = gen_len ? *gen_len : L - max_face_size(q);
            auto r = check_lambda(a, p, L, G);
            json j{{"command", "check-lambda"}, {"k", k}, {"n", n}, {"m1", m1}, {"m2", a.spec.m2()},
                   {"max_len", L}, {"gen_len", G}, {"outer", r.outer}, {"inner", r.inner}};
            j["relations"] = json::array();
            for (const auto& c : r.relations) {
                json e{{"type", c.type}, {"instance", c.instance}, {"composable", c.composable}};
                e["lhs"] = path_json(q, c.lhs);
                e["rhs"] = path_json(q, c.rhs);
                e["equal"] = c.equal ? json(*c.equal) : json(nullptr);
                e["states"] = c.states;
                j["relations"].push_back(std::move(e));
            }
            json uncovered = json::array();
            for (const auto& u : r.generation.uncovered) uncovered.push_back(path_json(q, u));
            j["generation"] = {{"prime_paths", r.generation.prime_paths},
                               {"covered", r.generation.covered},
                               {"complete", r.generation.complete},
                               {"uncovered", uncovered}};
            j["ok"] = r.ok();
            emit_json(j);
            return r.ok() ? 0 : 1;
        }
        if (svg_cmd->parsed()) {
            Quiver q;
            DrawOptions opt;
            if (!annulus_arg.empty()) {
                auto t = parse_triple(annulus_arg);
                auto c = cut_open(annulus_quiver({t[0], t[1], t[2]}));
                q = std::move(c.disk);
                opt.marked_arrows = c.seam;
            } else if (!file.empty()) {
                q = read_quiver_file(file);
            } else {
                throw UsageError("export-svg needs a file or --annulus");
            }
            std::optional<StrandDiagram> d;
            if (with_strands) {
                d = zig_zag_strands(q);
                opt.strands = &*d;
            }
            emit(tikz ? export_tikz(q, opt) : export_svg(q, opt), out);
            return 0;
        }
    } catch (const BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << " (a bound of " << e.achieved_length << " would fit)\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
