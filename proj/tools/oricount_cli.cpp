// oricount: orientation counting, feasibility, and sampling for undirected
// graphs with prescribed imbalance sequences. JSON results on stdout, logs
// on stderr.
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "oricount/oricount.hpp"

using json = nlohmann::ordered_json;
using namespace oricount;

namespace {

Graph load_graph_source(const std::string& src) {
    std::ifstream in(src);
    if (in.good()) {
        std::stringstream buf;
        buf << in.rdbuf();
        return load_graph(buf.str());
    }
    if (src.find(':') != std::string::npos) return generate_from_spec(src);
    throw Error(ErrorKind::ParseError, "graph source \"" + src + "\" is neither a file nor a generator spec");
}

std::vector<long long> parse_imbalance(const std::string& text, int n) {
    std::ifstream in(text);
    std::vector<long long> b;
    if (in.good()) {
        long long x;
        while (in >> x) b.push_back(x);
    } else if (text == "0") {
        b.assign(n, 0);
    } else {
        std::istringstream is(text);
        std::string tok;
        while (std::getline(is, tok, ',')) {
            try {
                b.push_back(std::stoll(tok));
            } catch (...) {
                throw Error(ErrorKind::ParseError, "bad imbalance entry \"" + tok + "\"");
            }
        }
    }
    if (static_cast<int>(b.size()) != n)
        throw Error(ErrorKind::InvalidImbalance,
                    "imbalance has " + std::to_string(b.size()) + " entries for " +
                        std::to_string(n) + " vertices");
    return b;
}

std::vector<std::pair<int, int>> parse_arcs(const std::string& text, const Graph& g) {
    // "1-2,2-3,3-1", 1-indexed tail-head pairs
    std::vector<std::pair<int, int>> arcs;
    if (text.empty()) return arcs;
    std::istringstream is(text);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        auto dash = tok.find('-');
        if (dash == std::string::npos)
            throw Error(ErrorKind::ParseError, "arc \"" + tok + "\" is not of the form tail-head");
        int tail, head;
        try {
            tail = std::stoi(tok.substr(0, dash));
            head = std::stoi(tok.substr(dash + 1));
        } catch (...) {
            throw Error(ErrorKind::ParseError, "arc \"" + tok + "\" is not of the form tail-head");
        }
        if (tail < 1 || head < 1 || tail > g.n() || head > g.n())
            throw Error(ErrorKind::IndexOutOfRange, "arc endpoint out of range in \"" + tok + "\"");
        arcs.push_back({tail - 1, head - 1});
    }
    return arcs;
}

json vertices_1based(const std::vector<int>& vs) {
    json a = json::array();
    for (int v : vs) a.push_back(v + 1);
    return a;
}

json assumptions_json(const AssumptionReport& r) {
    json j;
    j["max_degree"] = r.delta_max;
    j["a1_margin"] = r.a1_margin;
    j["cheeger_lower"] = r.h_lower;
    j["expansion_ratio"] = r.gamma_est;
    j["merit_spread"] = r.R;
    j["a3_stat"] = r.a3_stat;
    j["err1"] = r.err1;
    j["err2"] = r.err2;
    j["tameness"] = std::isnan(r.tameness) ? json(nullptr) : json(r.tameness);
    j["sufficient_ratio"] = r.sufficient_ratio;
    j["sufficient_ok"] = r.sufficient_ok;
    return j;
}

json count_json(const Graph& g, const CountResult& res) {
    json j;
    j["zero"] = res.zero;
    if (res.zero) {
        j["count"] = 0;
        return j;
    }
    j["log_count"] = res.log_count;
    j["log10_count"] = res.log_count / std::log(10.0);
    j["factors"] = {{"log_P", res.log_P},
                    {"half_log_Dn", res.half_log_Dn},
                    {"half_log_det_A", res.half_log_det_A},
                    {"psi", res.psi}};
    (void)g;
    return j;
}

enum class OracleKind { Auto, Brute, Dp, Quadrature, None };

OracleKind parse_oracle(const std::string& s) {
    if (s == "auto") return OracleKind::Auto;
    if (s == "brute") return OracleKind::Brute;
    if (s == "dp") return OracleKind::Dp;
    if (s == "quadrature") return OracleKind::Quadrature;
    if (s == "none") return OracleKind::None;
    throw Error(ErrorKind::BadParameter, "unknown oracle \"" + s + "\"");
}

/// Exact count by the requested oracle; auto prefers DP and falls back to
/// brute force. Returns the count as a decimal string plus the oracle used.
std::optional<std::pair<std::string, mpz_class>> run_exact_oracle(const Graph& g,
                                                                  const std::vector<long long>& b,
                                                                  OracleKind kind) {
    switch (kind) {
        case OracleKind::None:
            return std::nullopt;
        case OracleKind::Brute:
            return std::make_pair(std::string("brute"), exact_count_bruteforce(g, b));
        case OracleKind::Dp:
            return std::make_pair(std::string("dp"), exact_count_dp(g, b));
        case OracleKind::Quadrature:
            return std::nullopt;  // handled by the caller (non-integer output)
        case OracleKind::Auto:
            try {
                return std::make_pair(std::string("dp"), exact_count_dp(g, b));
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::SizeLimit) throw;
            }
            if (g.m() <= 30)
                return std::make_pair(std::string("brute"), exact_count_bruteforce(g, b));
            return std::nullopt;
    }
    return std::nullopt;
}

struct Cli {
    std::string graph_source;
    std::string imbalance = "0";
    std::string arcs;
    std::string oracle = "auto";
    std::string output;
    double eps = 0.1;
    double gamma = 0.0;
    double tol = 1e-12;
    std::uint64_t seed = 0;
    long long samples = 1;
    int grid = 0;

    void emit(const json& j) const { emit_text(j.dump(2) + "\n"); }

    void emit_text(const std::string& text) const {
        if (output.empty() || output == "-") {
            std::cout << text;
        } else {
            std::ofstream out(output);
            if (!out) throw Error(ErrorKind::BadParameter, "cannot write to " + output);
            out << text;
        }
    }

    SolveOptions solve_options() const {
        SolveOptions opt;
        opt.tol = tol;
        return opt;
    }
};

int cmd_check(const Cli& cli) {
    Graph g = load_graph_source(cli.graph_source);
    auto b = parse_imbalance(cli.imbalance, g.n());
    auto v = check_feasible(g, b);
    json j;
    j["command"] = "check";
    j["n"] = g.n();
    j["m"] = g.m();
    j["status"] = feasibility_name(v.status);
    j["witness"] = vertices_1based(v.witness);
    j["flow_value"] = boost::rational_cast<long long>(v.flow_value);
    j["flow_target"] = 2LL * g.m();
    json comps = json::array();
    for (auto s : v.component_status) comps.push_back(feasibility_name(s));
    j["component_status"] = comps;
    cli.emit(j);
    return 0;
}

int cmd_solve(const Cli& cli) {
    Graph g = load_graph_source(cli.graph_source);
    auto b = parse_imbalance(cli.imbalance, g.n());
    require_zero_sum(b);
    auto mv = solve_merits(g, b, cli.solve_options());
    json j;
    j["command"] = "solve";
    j["merits"] = mv.r;
    j["residual"] = balance_residual(g, std::vector<double>(b.begin(), b.end()), mv.r);
    j["iterations"] = mv.iterations;
    j["assumptions"] = assumptions_json(
        assumption_report(g, std::vector<double>(b.begin(), b.end()), mv.r, cli.eps));
    cli.emit(j);
    return 0;
}

int cmd_count(const Cli& cli) {
    Graph g = load_graph_source(cli.graph_source);
    auto b = parse_imbalance(cli.imbalance, g.n());
    auto res = asymptotic_count(g, b, cli.eps, cli.solve_options());
    json j;
    j["command"] = "count";
    j.update(count_json(g, res));
    if (!res.zero) j["assumptions"] = assumptions_json(res.diagnostics);

    OracleKind kind = parse_oracle(cli.oracle);
    if (kind == OracleKind::Quadrature) {
        std::vector<double> r(g.n(), 1.0);
        if (!res.zero) r = solve_merits(g, b, cli.solve_options()).r;
        double exact = cli.grid > 0 ? exact_count_quadrature(g, b, r, cli.grid)
                                    : exact_count_quadrature_auto(g, b, r);
        j["oracle"] = {{"kind", "quadrature"}, {"exact", exact}};
        if (!res.zero && exact > 0)
            j["oracle"]["relative_error"] = std::exp(res.log_count) / exact - 1.0;
    } else if (auto exact = run_exact_oracle(g, b, kind)) {
        json o;
        o["kind"] = exact->first;
        o["exact"] = exact->second.get_str();
        if (!res.zero && exact->second > 0) {
            double log_exact = std::log(mpf_class(exact->second).get_d());
            o["log_exact"] = log_exact;
            o["relative_error"] = std::exp(res.log_count - log_exact) - 1.0;
        }
        j["oracle"] = o;
    }
    cli.emit(j);
    return 0;
}

int cmd_exact(const Cli& cli) {
    Graph g = load_graph_source(cli.graph_source);
    auto b = parse_imbalance(cli.imbalance, g.n());
    require_zero_sum(b);
    OracleKind kind = parse_oracle(cli.oracle);
    json j;
    j["command"] = "exact";
    if (kind == OracleKind::Quadrature) {
        std::vector<double> r(g.n(), 1.0);
        double v = cli.grid > 0 ? exact_count_quadrature(g, b, r, cli.grid)
                                : exact_count_quadrature_auto(g, b, r);
        j["oracle"] = "quadrature";
        j["count"] = v;
    } else {
        auto exact = run_exact_oracle(g, b, kind == OracleKind::None ? OracleKind::Auto : kind);
        if (!exact) throw Error(ErrorKind::SizeLimit, "no exact oracle can handle this instance");
        j["oracle"] = exact->first;
        j["count"] = exact->second.get_str();
    }
    cli.emit(j);
    return 0;
}

int cmd_eulerian(const Cli& cli) {
    Graph g = load_graph_source(cli.graph_source);
    auto res = eulerian_count(g);
    json j;
    j["command"] = "eulerian";
    j.update(count_json(g, res));
    std::vector<long long> zero(g.n(), 0);
    if (auto exact = run_exact_oracle(g, zero, parse_oracle(cli.oracle))) {
        double log_exact = std::log(mpf_class(exact->second).get_d());
        j["oracle"] = {{"kind", exact->first},
                       {"exact", exact->second.get_str()},
                       {"relative_error", std::exp(res.log_count - log_exact) - 1.0}};
    }
    cli.emit(j);
    return 0;
}

int cmd_subgraph_prob(const Cli& cli) {
    Graph g = load_graph_source(cli.graph_source);
    auto arcs = parse_arcs(cli.arcs, g);
    auto b = parse_imbalance(cli.imbalance, g.n());
    json j;
    j["command"] = "subgraph-prob";
    j["arcs"] = cli.arcs;
    if (parse_oracle(cli.oracle) != OracleKind::None) {
        auto q = subdigraph_probability_exact(g, arcs, b);
        j["exact"] = q.get_str();
        j["exact_value"] = q.get_d();
    }
    try {
        j["asymptotic"] = subdigraph_probability_asymptotic(g, arcs);
    } catch (const Error& e) {
        j["asymptotic"] = nullptr;
        std::cerr << "asymptotic formula unavailable: " << e.what() << "\n";
    }
    cli.emit(j);
    return 0;
}

int cmd_sample(const Cli& cli) {
    Graph g = load_graph_source(cli.graph_source);
    auto b = parse_imbalance(cli.imbalance, g.n());
    require_zero_sum(b);
    auto mv = solve_merits(g, b, cli.solve_options());
    OrientationModel model{lambda_matrix(mv.r, g), cli.seed};
    json j;
    j["command"] = "sample";
    j["seed"] = cli.seed;
    j["expected_imbalance"] = expected_imbalance(g, model.lam);
    json samples = json::array();
    for (long long s = 0; s < cli.samples; ++s) {
        Orientation o = sample_orientation(model, g, static_cast<std::uint64_t>(s));
        json arcs = json::array();
        for (int e = 0; e < g.m(); ++e) {
            auto [jj, kk] = g.edges()[e];
            if (o.forward[e]) arcs.push_back(json::array({jj + 1, kk + 1}));
            else arcs.push_back(json::array({kk + 1, jj + 1}));
        }
        json entry;
        entry["arcs"] = arcs;
        entry["imbalance"] = o.imbalance(g);
        samples.push_back(entry);
    }
    j["samples"] = samples;
    cli.emit(j);
    return 0;
}

int cmd_validate(const Cli& cli) {
    Graph g = load_graph_source(cli.graph_source);
    auto b = parse_imbalance(cli.imbalance, g.n());
    json checks = json::array();
    bool all_ok = true;
    auto record = [&](const std::string& name, bool ok, const std::string& detail) {
        checks.push_back({{"name", name}, {"ok", ok}, {"detail", detail}});
        all_ok = all_ok && ok;
    };

    long long sum = 0;
    for (long long x : b) sum += x;
    record("zero_sum", sum == 0, "imbalance sum = " + std::to_string(sum));
    bool parity = imbalance_parity_ok(g, b);
    record("parity", parity, parity ? "b_j = d_j mod 2 everywhere" : "parity mismatch");

    Feasibility status = Feasibility::Infeasible;
    if (sum == 0) {
        auto v = check_feasible(g, b);
        status = v.status;
        record("feasibility", v.status != Feasibility::Infeasible,
               std::string("status = ") + feasibility_name(v.status));
    }

    if (sum == 0 && parity && status == Feasibility::StrictlyFeasible && g.connected()) {
        auto mv = solve_merits(g, b, cli.solve_options());
        double res = balance_residual(g, std::vector<double>(b.begin(), b.end()), mv.r);
        record("balance_residual", res <= 10 * cli.tol, "residual = " + std::to_string(res));
        auto lam = lambda_matrix(mv.r, g);
        bool mt_ok = true;
        std::string mt_detail = "log|A| matches Delta*n*kappa within 1e-9";
        try {
            log_det_A(build_matrices(g, lam).A, g, lam);
        } catch (const Error& e) {
            mt_ok = false;
            mt_detail = e.what();
        }
        record("matrix_tree", mt_ok, mt_detail);

        auto count = asymptotic_count(g, b, cli.eps, cli.solve_options());
        double re = std::abs(assemble_log_count(g.n(), count) - count.log_count);
        record("reassembly", re <= 1e-12, "|delta| = " + std::to_string(re));

        if (g.m() <= 16) {
            auto rep = verify_conditional_uniformity(g, lam);
            record("conditional_uniformity", rep.uniform && rep.merit_form,
                   "max group deviation = " + std::to_string(rep.max_group_ratio_dev));
        }
        if (g.m() <= 24) {
            mpz_class exact = exact_count_dp(g, b);
            record("positive_count", exact > 0, "exact count = " + exact.get_str());
        }
    }

    json j;
    j["command"] = "validate";
    j["checks"] = checks;
    j["ok"] = all_ok;
    cli.emit(j);
    return all_ok ? 0 : 2;
}

int cmd_gen(const Cli& cli) {
    Graph g = load_graph_source(cli.graph_source);
    cli.emit_text(write_edge_list(g));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    if (const char* threads = std::getenv("ORICOUNT_THREADS"))
        Eigen::setNbThreads(std::max(1, std::atoi(threads)));

    CLI::App app{"orientation counting with prescribed imbalance sequences"};
    app.require_subcommand(1);

    Cli cli;
    int (*handler)(const Cli&) = nullptr;

    auto add_common = [&](CLI::App* sub, bool with_imbalance) {
        sub->add_option("--graph", cli.graph_source, "edge-list file or generator spec (k:n, c:n, circ:n:1,2, gnp:n:p:seed, reg:n:d:seed)")
            ->required();
        if (with_imbalance)
            sub->add_option("--imbalance", cli.imbalance, "comma list, \"0\" for all zeros, or a file of integers");
        sub->add_option("--output", cli.output, "output path (default stdout)");
        return sub;
    };

    auto bind = [&](CLI::App* sub, int (*fn)(const Cli&)) {
        sub->callback([&, fn]() { handler = fn; });
    };

    auto* c_check = add_common(app.add_subcommand("check", "classify an imbalance target"), true);
    bind(c_check, cmd_check);

    auto* c_solve = add_common(app.add_subcommand("solve", "solve the balance equations"), true);
    c_solve->add_option("--tol", cli.tol, "solver tolerance");
    c_solve->add_option("--eps", cli.eps, "epsilon in the assumption diagnostics");
    c_solve->add_option("--gamma", cli.gamma, "expansion threshold (reported, not enforced)");
    bind(c_solve, cmd_solve);

    auto* c_count = add_common(app.add_subcommand("count", "asymptotic orientation count"), true);
    c_count->add_option("--tol", cli.tol, "solver tolerance");
    c_count->add_option("--eps", cli.eps, "epsilon in the assumption diagnostics");
    c_count->add_option("--gamma", cli.gamma, "expansion threshold (reported, not enforced)");
    c_count->add_option("--oracle", cli.oracle, "auto|brute|dp|quadrature|none");
    c_count->add_option("--grid", cli.grid, "quadrature grid size (0 = refine automatically)");
    bind(c_count, cmd_count);

    auto* c_exact = add_common(app.add_subcommand("exact", "exact orientation count"), true);
    c_exact->add_option("--oracle", cli.oracle, "auto|brute|dp|quadrature");
    c_exact->add_option("--grid", cli.grid, "quadrature grid size (0 = refine automatically)");
    bind(c_exact, cmd_exact);

    auto* c_euler = add_common(app.add_subcommand("eulerian", "eulerian orientation count"), false);
    c_euler->add_option("--oracle", cli.oracle, "auto|brute|dp|none");
    bind(c_euler, cmd_eulerian);

    auto* c_sub = add_common(app.add_subcommand("subgraph-prob", "oriented subgraph occurrence probability"), true);
    c_sub->add_option("--arcs", cli.arcs, "oriented edges as 1-indexed tail-head pairs, e.g. 1-2,2-3,3-1")
        ->required();
    c_sub->add_option("--oracle", cli.oracle, "auto computes the exact DP ratio; none skips it");
    bind(c_sub, cmd_subgraph_prob);

    auto* c_sample = add_common(app.add_subcommand("sample", "sample orientations with the fitted model"), true);
    c_sample->add_option("--seed", cli.seed, "rng seed");
    c_sample->add_option("--samples", cli.samples, "number of orientations");
    c_sample->add_option("--tol", cli.tol, "solver tolerance");
    bind(c_sample, cmd_sample);

    auto* c_val = add_common(app.add_subcommand("validate", "run the invariant suite on an instance"), true);
    c_val->add_option("--tol", cli.tol, "solver tolerance");
    c_val->add_option("--eps", cli.eps, "epsilon in the assumption diagnostics");
    bind(c_val, cmd_validate);

    auto* c_gen = add_common(app.add_subcommand("gen", "write a generated graph as an edge list"), false);
    bind(c_gen, cmd_gen);

    CLI11_PARSE(app, argc, argv);

    try {
        return handler(cli);
    } catch (const Error& e) {
        json j;
        j["error"] = {{"kind", error_kind_name(e.kind())}, {"detail", e.detail()}};
        std::cout << j.dump(2) << "\n";
        std::cerr << e.what() << "\n";
        return (e.kind() == ErrorKind::Infeasible || e.kind() == ErrorKind::Degenerate) ? 2 : 1;
    } catch (const std::exception& e) {
        json j;
        j["error"] = {{"kind", "Internal"}, {"detail", e.what()}};
        std::cout << j.dump(2) << "\n";
        std::cerr << e.what() << "\n";
        return 1;
    }
}
