// reeb: command-line front end. Every command prints one JSON object on stdout.
// Exit codes: 0 success, 1 contract failure, 2 malformed input or arguments.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "reeb/core.hpp"
#include "reeb/io.hpp"
#include "reeb/manifold.hpp"
#include "reeb/planner.hpp"
#include "reeb/reduction.hpp"

using namespace reeb;

namespace {

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read " + path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path);
    out << text;
}

ReebGraph load_graph(const std::string& path) { return parse_graph(read_file(path)); }

void print(const Json& j) { std::cout << j.dump(2) << '\n'; }

int reduction_output(const ReductionResult& r, const std::string& trace_path) {
    if (!trace_path.empty()) write_file(trace_path, trace_to_json(r.trace).dump(2) + "\n");
    print({{"graph", graph_to_json(r.graph)}, {"trace_steps", r.trace.steps.size()}});
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Reeb graph realization toolkit"};
    app.require_subcommand(1);

    std::string graph_path, graph2_path, out_path, target_path, manifold, expr;
    long k = 0, budget = -1;
    std::uint64_t seed = 0;
    int vertices = 0, betti_target = 0;

    auto graph_cmd = [&](const char* name, const char* help, bool with_out) {
        auto* c = app.add_subcommand(name, help);
        c->add_option("graph", graph_path, "graph document (- for stdin)")->required();
        if (with_out) c->add_option("-o,--output", out_path, "write the trace here");
        return c;
    };

    auto* validate = graph_cmd("validate", "check connectivity and good orientation", false);
    auto* betti_cmd = graph_cmd("betti", "number of independent cycles", false);
    auto* classify_cmd = graph_cmd("classify", "vertex classes and degree profile", false);
    auto* canon = graph_cmd("canonicalize", "reduce to the chain-of-cycles form", true);
    auto* prim = graph_cmd("primitivize", "push every UpFork above every DownFork", true);
    auto* omm = graph_cmd("one-min-max", "cancel extrema down to one minimum and one maximum", true);
    auto* drop = graph_cmd("drop-cycles", "remove cycles from a canonical-form graph", true);
    drop->add_option("-k", k, "cycles to keep")->required();
    auto* smooth_cmd = graph_cmd("smooth", "suppress Regular vertices", false);
    auto* dot = graph_cmd("dot", "Graphviz rendering, sources at the bottom", false);
    dot->add_option("-o,--output", out_path, "write the DOT text here");

    auto* plan = app.add_subcommand("plan", "certified realization plan for a target graph");
    plan->add_option("--target", target_path, "target graph document")->required();
    auto* budget_opt = plan->add_option("--budget", budget, "available number of cycles");
    auto* manifold_opt = plan->add_option("--manifold", manifold, "manifold expression bounding the cycles");
    budget_opt->excludes(manifold_opt);
    plan->add_option("-o,--output", out_path, "write the plan here");

    auto* verify = app.add_subcommand("verify-plan", "replay and check a plan");
    verify->add_option("plan", graph_path, "plan document")->required();

    auto* rn = app.add_subcommand("reeb-number", "evaluate the Reeb number of a manifold expression");
    rn->add_option("expr", expr, "expression, e.g. \"Sig(2) x S(3)\"")->required();

    auto* gen = app.add_subcommand("gen-random", "random good-oriented graph");
    gen->add_option("--seed", seed)->required();
    gen->add_option("--vertices", vertices)->required();
    gen->add_option("--betti", betti_target)->required();

    auto* iso = app.add_subcommand("iso", "orientation-preserving isomorphism after smoothing");
    iso->add_option("g1", graph_path)->required();
    iso->add_option("g2", graph2_path)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        print({{"error", "UsageError"}, {"message", e.what()}});
        return 2;
    }

    try {
        if (validate->parsed()) {
            ReebGraph g = load_graph(graph_path);
            bool connected = g.vertex_count() > 0 && is_connected(g);
            bool good = connected && is_good_orientation(g);
            Json j = {{"valid", good}, {"connected", connected}, {"good_orientation", good},
                      {"vertices", g.vertex_count()}, {"edges", g.edge_count()}, {"max_degree", g.max_degree()}};
            if (connected) j["betti"] = betti(g);
            if (good) j["counting_identities"] = g.max_degree() <= 3 ? Json(counting_identities(g)) : Json(nullptr);
            print(j);
            return good ? 0 : 1;
        }
        if (betti_cmd->parsed()) {
            print({{"betti", betti(load_graph(graph_path))}});
            return 0;
        }
        if (classify_cmd->parsed()) {
            ReebGraph g = load_graph(graph_path);
            Json classes = Json::object();
            for (VertexId v : g.vertex_ids()) {
                auto c = try_classify(g, v);
                classes[std::to_string(v)] = c ? to_string(*c) : "HighDegree";
            }
            Json j = {{"classes", classes}};
            if (g.max_degree() <= 3) {
                auto p = degree_profile(g);
                j["profile"] = {{"k0", p.k0}, {"kn", p.kn}, {"delta2", p.delta2}, {"delta3", p.delta3},
                                {"delta3_in", p.delta3_in}, {"delta3_out", p.delta3_out}};
            }
            print(j);
            return 0;
        }
        if (canon->parsed()) return reduction_output(canonicalize(load_graph(graph_path)), out_path);
        if (prim->parsed()) return reduction_output(primitivize(load_graph(graph_path)), out_path);
        if (omm->parsed()) return reduction_output(to_one_min_max(load_graph(graph_path)), out_path);
        if (drop->parsed()) return reduction_output(drop_cycles(load_graph(graph_path), k), out_path);
        if (smooth_cmd->parsed()) {
            std::cout << emit_graph(smooth(load_graph(graph_path))) << '\n';
            return 0;
        }
        if (dot->parsed()) {
            std::string text = emit_dot(load_graph(graph_path));
            if (!out_path.empty()) {
                write_file(out_path, text);
                print({{"dot_file", out_path}});
            } else {
                print({{"dot", text}});
            }
            return 0;
        }
        if (plan->parsed()) {
            ReebGraph target = load_graph(target_path);
            Json info = Json::object();
            if (!manifold.empty()) {
                auto r = reeb_number(*parse_manifold(manifold));
                budget = r.value;
                info["manifold"] = manifold;
            } else if (budget < 0) {
                print({{"error", "UsageError"}, {"message", "plan needs --budget or --manifold"}});
                return 2;
            }
            Plan p = realize(target, budget);
            Json pj = plan_to_json(p);
            if (!out_path.empty()) {
                write_file(out_path, pj.dump(2) + "\n");
                info["plan_file"] = out_path;
                info["budget"] = budget;
                info["betti"] = betti(target);
                info["steps"] = p.steps.size();
                print(info);
            } else {
                print(pj);
            }
            return 0;
        }
        if (verify->parsed()) {
            VerifyResult r = verify_plan(plan_from_json(parse_json_text(read_file(graph_path))));
            Json j = {{"ok", r.ok}};
            if (r.step) j["step"] = *r.step;
            if (r.code) j["code"] = to_string(*r.code);
            if (!r.message.empty()) j["message"] = r.message;
            print(j);
            return r.ok ? 0 : 1;
        }
        if (rn->parsed()) {
            ExprPtr e = parse_manifold(expr);
            auto r = reeb_number(*e);
            Json steps = Json::array();
            for (auto& s : r.derivation)
                steps.push_back({{"rule", s.rule}, {"expr", s.expr}, {"inputs", s.inputs}, {"value", s.value}});
            print({{"value", r.value}, {"expression", to_string(*e)}, {"dimension", e->dimension},
                   {"orientable", e->orientable}, {"derivation", steps}});
            return 0;
        }
        if (gen->parsed()) {
            std::cout << emit_graph(gen_random(seed, vertices, betti_target)) << '\n';
            return 0;
        }
        if (iso->parsed()) {
            ReebGraph a = smooth(load_graph(graph_path)), b = smooth(load_graph(graph2_path));
            auto m = iso_oriented(a, b);
            Json j = {{"isomorphic", m.has_value()}};
            if (m) {
                Json map = Json::object();
                for (auto [x, y] : *m) map[std::to_string(x)] = y;
                j["mapping"] = map;
            }
            print(j);
            return 0;
        }
    } catch (const Error& e) {
        print({{"error", to_string(e.code())}, {"message", e.what()}});
        return is_input_error(e.code()) ? 2 : 1;
    } catch (const InputError& e) {
        print({{"error", "InputError"}, {"message", e.what()}});
        return 2;
    }
    return 2;
}
