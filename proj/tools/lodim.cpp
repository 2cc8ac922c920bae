// Command-line front end. Exit codes: 0 success, 1 infeasible or failed
// verification, 2 usage or input error, 3 solver cap exceeded.

#include "acceptance.hpp"

#include "lodim/coloring.hpp"
#include "lodim/error.hpp"
#include "lodim/graph.hpp"
#include "lodim/indexcoding.hpp"
#include "lodim/json_io.hpp"
#include "lodim/ortho.hpp"
#include "lodim/reduction.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace lodim;

namespace {

enum Exit { ok = 0, infeasible = 1, usage = 2, cap = 3 };

struct Options {
    std::string field = "2";
    bool json = false;
    bool timing = false;
    bool upper_only = false;
    std::string out;
    unsigned threads = 1;
    std::uint64_t seed = 0;
    std::size_t dim_cap = 0;
    std::size_t max_vertices = 0;
};

std::string read_text(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw PreconditionError("cannot open '" + path + "'");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void emit(const Options& o, const std::string& text) {
    if (o.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(o.out);
    if (!f)
        throw PreconditionError("cannot write '" + o.out + "'");
    f << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string join(const std::vector<std::size_t>& v) {
    std::ostringstream s;
    for (std::size_t i = 0; i < v.size(); ++i)
        s << (i ? " " : "") << v[i];
    return s.str();
}

std::string vec_text(const Vec& v) {
    std::ostringstream s;
    s << "(";
    for (std::size_t i = 0; i < v.size(); ++i)
        s << (i ? "," : "") << v[i].to_string();
    s << ")";
    return s.str();
}

Json certificate(const std::string& command, const std::string& param) {
    Json c;
    c["schema"] = kSchemaVersion;
    c["command"] = command;
    c["param"] = param;
    return c;
}

OrthoCaps ortho_caps(const Options& o) {
    OrthoCaps caps;
    if (o.max_vertices) {
        caps.od_vertices = caps.local_vertices = caps.minrank_vertices = o.max_vertices;
        caps.local_max_field = kMaxPrime;
    }
    return caps;
}

int run_solve(const Options& o, const std::string& param, const std::string& path, const std::string& command) {
    const auto start = std::chrono::steady_clock::now();
    const Graph g = read_dimacs_file(path);
    const FieldSpec f = FieldSpec::parse(o.field);
    Json cert = certificate(command, param);
    Json witness;
    std::ostringstream text;
    std::size_t value = 0;
    bool exact = !o.upper_only;
    std::optional<LowerBoundReason> reason;

    if (param == "chi" || param == "chi-local") {
        Coloring c;
        if (o.upper_only) {
            c = dsatur_coloring(g);
            value = param == "chi" ? c.num_colors : locality_of_coloring(g, c);
        } else {
            auto r = param == "chi" ? chromatic_number(g) : local_chromatic_number(g);
            c = r.witness;
            value = r.value;
            reason = r.reason;
        }
        witness["coloring"] = to_json(c);
        text << "coloring: " << join(c.colors) << "\n";
    } else if (param == "clique") {
        if (o.upper_only)
            throw PreconditionError("--upper-bound-only does not apply to clique");
        auto r = max_clique(g);
        value = r.value;
        reason = LowerBoundReason::exhausted_search;
        witness["clique"] = r.witness;
        text << "clique: " << join(r.witness) << "\n";
    } else if (param == "od" || param == "od-local") {
        VectorRepresentation rep;
        if (o.upper_only) {
            Coloring c = param == "od" ? dsatur_coloring(g) : local_chromatic_number(g).witness;
            rep = rep_from_coloring(c, f);
            value = param == "od" ? rep.dim : locality_of_rep(g, rep);
        } else if (param == "od") {
            auto r = orthogonality_dimension(g, f, ortho_caps(o));
            rep = r.witness;
            value = r.value;
            reason = r.reason;
        } else {
            auto r = local_orthogonality_dimension(g, f, o.dim_cap, ortho_caps(o));
            rep = r.witness;
            value = r.value;
            exact = r.exact;
            reason = r.reason;
            cert["exactUnderCap"] = r.exact_under_cap;
            cert["dimCap"] = r.dim_cap;
        }
        cert["field"] = f.tag();
        witness["representation"] = to_json(rep);
        for (std::size_t v = 0; v < rep.vectors.size(); ++v)
            text << "u" << v << " = " << vec_text(rep.vectors[v]) << "\n";
    } else if (param == "minrank") {
        VectorRepresentation rep;
        Mat m;
        if (o.upper_only) {
            rep.field = f;
            rep.dim = g.n();
            rep.kind = RepKind::independent;
            for (std::size_t v = 0; v < g.n(); ++v) {
                Vec e = zero_vec(f, g.n());
                e[v] = FieldElem::one(f);
                rep.vectors.push_back(e);
            }
            m = Mat::identity(f, g.n());
            value = g.n();
        } else {
            auto r = minrank(g, f, ortho_caps(o));
            rep = r.witness;
            m = r.matrix;
            value = r.value;
            reason = r.reason;
        }
        cert["field"] = f.tag();
        witness["representation"] = to_json(rep);
        witness["matrix"] = to_json(m);
        for (std::size_t i = 0; i < m.rows(); ++i)
            text << "M" << i << " = " << vec_text(m.row_vec(i)) << "\n";
    } else {
        throw PreconditionError("unknown parameter '" + param + "'");
    }

    cert["value"] = value;
    cert["exact"] = exact;
    if (reason)
        cert["lowerBoundReason"] = to_string(*reason);
    cert["witness"] = witness;
    if (auto why = certificate_violation(cert, g))
        throw Error("certificate failed to verify: " + *why);
    cert["verified"] = true;
    if (o.timing)
        cert["wallTime"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    if (o.json) {
        emit(o, dump(cert));
    } else {
        std::ostringstream head;
        head << param << " = " << value << (exact ? " (exact" : " (upper bound");
        if (reason)
            head << ", lower bound: " << to_string(*reason);
        if (cert.contains("exactUnderCap"))
            head << ", exact under dimension cap " << cert["dimCap"].get<std::size_t>() << ": "
                 << (cert["exactUnderCap"].get<bool>() ? "yes" : "no");
        head << ")\n";
        emit(o, head.str() + text.str());
    }
    return Exit::ok;
}

int run_gen(const Options& o, const std::vector<std::string>& args) {
    if (args.empty())
        throw PreconditionError("gen needs a family name");
    const std::string& kind = args[0];
    auto num = [&](std::size_t i) -> unsigned long {
        if (i >= args.size())
            throw PreconditionError("gen " + kind + ": missing argument " + std::to_string(i));
        std::size_t used = 0;
        unsigned long v = 0;
        try {
            v = std::stoul(args[i], &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != args[i].size() || args[i].empty() || args[i][0] == '-')
            throw PreconditionError("gen " + kind + ": '" + args[i] + "' is not a non-negative integer");
        return v;
    };
    auto arity = [&](std::size_t n) {
        if (args.size() != n + 1)
            throw PreconditionError("gen " + kind + " takes " + std::to_string(n) + " argument(s)");
    };
    if (kind == "vandermonde") {
        arity(2);
        const FieldSpec f = FieldSpec::parse(o.field);
        auto vs = vandermonde(num(1), num(2), f);
        if (o.json) {
            Json arr = Json::array();
            for (const auto& v : vs)
                arr.push_back(to_json(f, v));
            emit(o, dump({{"schema", kSchemaVersion}, {"field", f.tag()}, {"vectors", arr}}));
        } else {
            std::string s;
            for (const auto& v : vs)
                s += vec_text(v) + "\n";
            emit(o, s);
        }
        return Exit::ok;
    }
    Graph g;
    if (kind == "kneser" || kind == "schrijver") {
        arity(2);
        auto n = static_cast<unsigned>(num(1)), k = static_cast<unsigned>(num(2));
        g = kind == "kneser" ? kneser(n, k) : schrijver(n, k);
    } else if (kind == "cycle") {
        arity(1);
        g = cycle(num(1));
    } else if (kind == "complete") {
        arity(1);
        g = complete(num(1));
    } else if (kind == "edgeless") {
        arity(1);
        g = edgeless(num(1));
    } else if (kind == "line" || kind == "complement") {
        arity(1);
        Graph h = read_dimacs_file(args[1]);
        g = kind == "line" ? line_graph(h) : complement(h);
    } else {
        throw PreconditionError("unknown family '" + kind + "'");
    }
    emit(o, o.json ? dump(to_json(g)) : write_dimacs(g));
    return Exit::ok;
}

int run_reduce(const Options& o, const std::string& path, const std::string& stage_name, std::size_t k,
               const std::string& roles_path) {
    if (k < 3)
        throw PreconditionError("--k must be at least 3");
    const CnfFormula phi = parse_dimacs_cnf(read_text(path));
    std::string stage = stage_name;
    if (stage.empty())
        stage = k >= 4 ? "Gk" : "Gprime";
    GadgetGraph gg;
    if (stage == "G")
        gg = build_g(phi);
    else if (stage == "Gprime")
        gg = build_g_prime(phi);
    else if (stage == "Gk")
        gg = build_gk(phi, k);
    else
        throw PreconditionError("unknown stage '" + stage + "'");
    Json roles = roles_to_json(gg);
    if (!roles_path.empty()) {
        std::ofstream f(roles_path);
        if (!f)
            throw PreconditionError("cannot write '" + roles_path + "'");
        f << dump(roles);
    }
    if (o.json) {
        roles["graph"] = to_json(gg.graph);
        emit(o, dump(roles));
    } else {
        emit(o, write_dimacs(gg.graph));
    }
    return Exit::ok;
}

int run_index_code(const Options& o, const std::string& path, const std::string& method, std::size_t trials,
                   const std::string& command) {
    const Graph g = read_dimacs_file(path);
    const FieldSpec f = FieldSpec::parse(o.field);
    const IndexCode code = build_index_code(g, f, code_method_from_string(method), o.seed);
    Json cert = certificate(command, "index-code");
    cert["field"] = f.tag();
    cert["method"] = method;
    cert["seed"] = o.seed;
    cert["value"] = code.length();
    cert["exact"] = method == "minrank";
    cert["witness"] = {{"code", to_json(code)}};
    if (auto why = certificate_violation(cert, g))
        throw Error("code failed to verify: " + *why);
    cert["verified"] = true;
    SimulationReport sim;
    if (trials > 0) {
        sim = simulate(code, trials, o.seed, o.threads);
        cert["simulation"] = to_json(sim);
    }
    if (o.json) {
        emit(o, dump(cert));
    } else {
        std::ostringstream s;
        s << "length = " << code.length() << " (" << method << ", " << f.name() << ")\n";
        for (std::size_t r = 0; r < code.encode_mat.rows(); ++r)
            s << "B" << r << " = " << vec_text(code.encode_mat.row_vec(r)) << "\n";
        if (trials > 0)
            s << "simulation: " << sim.trials << " trials, " << sim.failures << " failures\n";
        emit(o, s.str());
    }
    return sim.failures == 0 ? Exit::ok : Exit::infeasible;
}

int run_verify(const std::string& json_path, const std::string& graph_path) {
    const Graph g = read_dimacs_file(graph_path);
    Json j;
    try {
        j = Json::parse(read_text(json_path));
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    std::optional<std::string> why;
    std::string summary;
    if (j.contains("schema")) {
        why = certificate_violation(j, g);
        if (!why)
            summary = j.value("param", std::string("?")) + " = " + std::to_string(j.value("value", std::size_t{0}));
    } else if (j.contains("vectors")) {
        auto r = rep_from_json(j);
        why = representation_violation(g, r);
        if (!why)
            summary = to_string(r.kind) + " representation over " + r.field.name() + ", dimension " +
                      std::to_string(r.dim) + ", locality " + std::to_string(locality_of_rep(g, r));
    } else if (j.contains("colors")) {
        auto c = coloring_from_json(j);
        why = coloring_violation(g, c);
        if (!why)
            summary = "coloring with " + std::to_string(c.num_colors) + " colors, locality " +
                      std::to_string(locality_of_coloring(g, c));
    } else {
        throw ParseError("unrecognised JSON document");
    }
    if (why) {
        std::cout << "violation: " << *why << "\n";
        return Exit::infeasible;
    }
    std::cout << "ok: " << summary << "\n";
    return Exit::ok;
}

int run_selftest(const Options& o) {
    auto results = acceptance::run_all(o.threads, [&](const acceptance::Outcome& r) {
        std::cout << acceptance::format(r, o.timing) << std::endl;
    });
    for (const auto& r : results)
        if (!r.pass)
            return Exit::infeasible;
    return Exit::ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Graph colorings, orthogonal representations, the 3-coloring reduction and linear index codes"};
    app.require_subcommand(1);
    Options o;
    std::string command;
    for (int i = 1; i < argc; ++i)
        command += (i > 1 ? " " : "") + std::string(argv[i]);

    auto field_opt = [&](CLI::App* sub) { sub->add_option("--field", o.field, "2, 3, 5, ... or Q")->capture_default_str(); };
    auto out_opt = [&](CLI::App* sub) { sub->add_option("-o,--output", o.out, "write to this file instead of stdout"); };
    auto json_opt = [&](CLI::App* sub) { sub->add_flag("--json", o.json, "JSON output"); };
    auto threads_opt = [&](CLI::App* sub) { sub->add_option("--threads", o.threads, "worker threads")->check(CLI::Range(1u, 256u)); };

    std::vector<std::string> gen_args;
    auto* gen = app.add_subcommand("gen", "generate a graph: kneser N K | schrijver N K | cycle R | complete N | "
                                          "edgeless N | line G | complement G | vandermonde M L");
    gen->add_option("args", gen_args)->required();
    field_opt(gen);
    out_opt(gen);
    json_opt(gen);

    std::string param, graph_path;
    auto* solve = app.add_subcommand("solve", "exact graph parameters with certificates");
    solve->add_option("param", param, "chi | chi-local | clique | od | od-local | minrank")
        ->required()
        ->check(CLI::IsMember({"chi", "chi-local", "clique", "od", "od-local", "minrank"}));
    solve->add_option("graph", graph_path, "DIMACS graph")->required();
    field_opt(solve);
    out_opt(solve);
    json_opt(solve);
    threads_opt(solve);
    solve->add_option("--dim-cap", o.dim_cap, "ambient dimension cap for od-local (default n)");
    solve->add_option("--max-vertices", o.max_vertices, "raise the vertex cap of the representation solvers");
    solve->add_flag("--upper-bound-only", o.upper_only, "report a verified upper bound without exact search");
    solve->add_flag("--timing", o.timing, "include wall time");

    std::string cnf_path, stage, roles_path;
    std::size_t k = 3;
    auto* reduce = app.add_subcommand("reduce", "build the 3-coloring gadget graph of a DIMACS CNF formula");
    reduce->add_option("cnf", cnf_path)->required();
    reduce->add_option("--k", k, "number of colors; k >= 4 adds a clique of k-3 vertices")->capture_default_str();
    reduce->add_option("--stage", stage, "G | Gprime | Gk (default Gprime, or Gk when k >= 4)")
        ->check(CLI::IsMember({"G", "Gprime", "Gk"}));
    reduce->add_option("--roles", roles_path, "write the vertex role map as JSON");
    out_opt(reduce);
    json_opt(reduce);

    std::string method = "minrank";
    std::size_t trials = 0;
    auto* icode = app.add_subcommand("index-code", "linear index code for a side-information graph");
    icode->add_option("graph", graph_path)->required();
    icode->add_option("--method", method)->check(CLI::IsMember({"minrank", "local", "compress"}))->capture_default_str();
    icode->add_option("--seed", o.seed)->capture_default_str();
    icode->add_option("--simulate", trials, "random messages to broadcast and decode");
    field_opt(icode);
    out_opt(icode);
    json_opt(icode);
    threads_opt(icode);

    std::string json_path;
    auto* verify = app.add_subcommand("verify", "re-check a certificate, representation or coloring");
    verify->add_option("json", json_path)->required();
    verify->add_option("graph", graph_path)->required();

    auto* selftest = app.add_subcommand("selftest", "run the acceptance suite");
    selftest->add_flag("--timing", o.timing, "show time per criterion");
    threads_opt(selftest);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? Exit::ok : Exit::usage;
    }

    try {
        if (*gen)
            return run_gen(o, gen_args);
        if (*solve)
            return run_solve(o, param, graph_path, command);
        if (*reduce)
            return run_reduce(o, cnf_path, stage, k, roles_path);
        if (*icode)
            return run_index_code(o, graph_path, method, trials, command);
        if (*verify)
            return run_verify(json_path, graph_path);
        if (*selftest)
            return run_selftest(o);
    } catch (const CapExceeded& e) {
        std::cerr << "cap exceeded: " << e.what() << "\n";
        return Exit::cap;
    } catch (const Infeasible& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return Exit::infeasible;
    } catch (const ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return Exit::usage;
    } catch (const PreconditionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return Exit::usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return Exit::infeasible;
    }
    return Exit::usage;
}
