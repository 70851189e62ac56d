#include "CLI11.hpp"

#include "interdict/branch_bound.hpp"
#include "interdict/heuristics.hpp"
#include "interdict/oracle.hpp"
#include "interdict/scenario.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace interdict;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitInfeasible = 2;

Rat parse_rat_arg(const std::string& s, const std::string& what) {
    auto r = parse_rational(s);
    if (!r) throw std::runtime_error("bad rational for " + what + ": " + s);
    return *r;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path);
    if (!f) throw std::runtime_error("cannot write: " + out_path);
    f << text;
}

std::optional<Deadline> make_deadline(double budget_s) {
    if (budget_s <= 0) return std::nullopt;
    return std::chrono::steady_clock::now() +
           std::chrono::microseconds(static_cast<long long>(budget_s * 1e6));
}

struct GenOpts {
    int grid = 0;
    std::vector<std::string> caps;  // lo hi
    std::int64_t granularity = 1;
    std::uint64_t seed = 0;
    int n_targets = 0, n_sources = 0;
    std::vector<int> set_sources, set_targets;
    bool super_source = false;
    std::string risk = "1";
    int gadget = -1;
    std::string in_path, out_path = "-";
};

int run_gen(const GenOpts& o) {
    Instance inst;
    if (o.grid > 0)
        inst = make_grid(o.grid);
    else if (!o.in_path.empty())
        inst = read_instance(o.in_path);
    else
        throw std::runtime_error("gen needs --grid or --in");
    if (!o.caps.empty()) {
        if (o.caps.size() != 2) throw std::runtime_error("--caps takes LO HI");
        inst = randomize_capacities(inst, parse_rat_arg(o.caps[0], "--caps"),
                                    parse_rat_arg(o.caps[1], "--caps"), o.seed,
                                    o.granularity);
    }
    if (o.n_targets > 0 || o.n_sources > 0)
        inst = sample_roles(inst, o.n_targets, o.n_sources, o.seed);
    if (!o.set_sources.empty()) inst.sources = {o.set_sources.begin(), o.set_sources.end()};
    if (!o.set_targets.empty()) inst.targets = {o.set_targets.begin(), o.set_targets.end()};
    if (o.super_source) {
        Rat r = parse_rat_arg(o.risk, "--risk");
        for (int v = 0; v < inst.n; ++v)
            if (!inst.targets.count(v) && !inst.risk.count(v)) inst.risk[v] = r;
        inst = add_super_source(inst);
    }
    if (o.gadget >= 0) inst = cmfnip_gadget(inst, o.gadget);
    inst.validate();
    emit(format_instance_text(inst), o.out_path);
    return kExitOk;
}

int run_solve(const std::string& mode, const std::string& in_path, int k,
              const std::string& q_str, double budget_s) {
    Instance inst = read_instance(in_path);
    Formulation f = mode == "pc" ? build_pc(inst, k)
                                 : build_pq(inst, parse_rat_arg(q_str, "--q"));
    ExactResult r = solve_exact(f, make_deadline(budget_s));
    if (r.status != LpStatus::Optimal) {
        std::cout << "status infeasible\n";
        return kExitInfeasible;
    }
    std::cout << "status optimal\n";
    std::cout << "objective " << rat_to_string(r.objective) << "\n";
    std::cout << "sensors";
    for (int v : r.placement.sensors) std::cout << " " << v;
    std::cout << "\n";
    std::cout << "value " << rat_to_string(*r.placement.value) << "\n";
    std::cout << "nodes " << r.nodes << "\n";
    return kExitOk;
}

int run_heur(const std::string& mode, const std::string& in_path, int k,
             const std::string& q_str, std::uint64_t seed) {
    Instance inst = read_instance(in_path);
    HeuristicTrace t = mode == "pc"
                           ? pc_iterative_best_sensor(inst, k, seed)
                           : pq_iterative_best_sensor(inst, parse_rat_arg(q_str, "--q"), seed);
    std::cout << format_trace(t);
    return t.status == LpStatus::Optimal ? kExitOk : kExitInfeasible;
}

int run_eval(const std::string& in_path, const std::vector<int>& sensors) {
    Instance inst = read_instance(in_path);
    Placement p;
    p.sensors = {sensors.begin(), sensors.end()};
    std::cout << "value " << rat_to_string(evaluate_placement(inst, p)) << "\n";
    return kExitOk;
}

int run_oracle(const std::string& mode, const std::string& in_path, int k,
               const std::string& q_str, std::int64_t cap) {
    Instance inst = read_instance(in_path);
    OracleResult r = mode == "pc" ? oracle_pc(inst, k, cap)
                                  : oracle_pq(inst, parse_rat_arg(q_str, "--q"), cap);
    if (r.status != LpStatus::Optimal) {
        std::cout << "status infeasible\n";
        return kExitInfeasible;
    }
    std::cout << "status optimal\n";
    std::cout << "k " << r.k << "\n";
    std::cout << "value " << rat_to_string(r.value) << "\n";
    std::cout << "optima " << r.best.size() << "\n";
    std::cout << "enumerated " << r.enumerated << "\n";
    if (!r.best.empty()) {
        std::cout << "sensors";
        for (int v : r.best.front()) std::cout << " " << v;
        std::cout << "\n";
    }
    return kExitOk;
}

int run_export(const std::string& mode, const std::string& in_path, int k,
               const std::string& q_str, bool relaxed, const std::string& out_path) {
    Instance inst = read_instance(in_path);
    Formulation f = mode == "pc" ? build_pc(inst, k)
                                 : build_pq(inst, parse_rat_arg(q_str, "--q"));
    if (relaxed) f = relax(f);
    emit(format_lp_text(f), out_path);
    return kExitOk;
}

int run_scenario_cmd(const std::string& config_path, const std::string& out_path) {
    ScenarioConfig cfg = read_scenario_config(config_path);
    ScenarioResult res = run_scenario(cfg);
    emit(format_csv(res), out_path);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sensor-placement interdiction toolkit"};
    app.require_subcommand(1);

    std::uint64_t seed = 0;
    double time_budget = 0;  // 0: unlimited
    std::string format = "csv";
    app.add_option("--seed", seed, "Random seed")->capture_default_str();
    app.add_option("--time-budget", time_budget, "Per-solve budget in seconds");
    app.add_option("--format", format, "Output format (csv)");

    GenOpts gen;
    auto* cgen = app.add_subcommand("gen", "Generate or transform an instance");
    cgen->add_option("--grid", gen.grid, "Grid side length");
    cgen->add_option("--in", gen.in_path, "Start from an existing instance");
    cgen->add_option("--caps", gen.caps, "Capacity range LO HI")->expected(2);
    cgen->add_option("--granularity", gen.granularity, "Capacity denominator");
    cgen->add_option("--targets", gen.n_targets, "Sample this many targets");
    cgen->add_option("--sources", gen.n_sources, "Sample this many sources");
    cgen->add_option("--set-sources", gen.set_sources, "Explicit source vertices");
    cgen->add_option("--set-targets", gen.set_targets, "Explicit target vertices");
    cgen->add_flag("--super-source", gen.super_source, "Add risk-weighted super source");
    cgen->add_option("--risk", gen.risk, "Uniform risk value for --super-source");
    cgen->add_option("--gadget", gen.gadget, "Apply the arc-interdiction gadget, budget K");
    cgen->add_option("--out", gen.out_path, "Output file (- for stdout)");

    std::string mode, in_path, q_str = "1", out_path = "-";
    int k = 0;
    bool relaxed = false;
    std::int64_t cap = 2000000;
    std::vector<int> sensors;
    std::string config_path;

    auto add_common = [&](CLI::App* c, bool with_mode = true) {
        if (with_mode)
            c->add_option("mode", mode, "pq or pc")
                ->required()
                ->check(CLI::IsMember({"pq", "pc"}));
        c->add_option("--in", in_path, "Instance file")->required();
        c->add_option("--k", k, "Sensor budget (pc)");
        c->add_option("--q", q_str, "Quality factor (pq)");
    };

    auto* csolve = app.add_subcommand("solve", "Exact branch-and-bound solve");
    add_common(csolve);
    auto* cheur = app.add_subcommand("heur", "Iterative rounding heuristic");
    add_common(cheur);
    auto* ceval = app.add_subcommand("eval", "Evaluate a sensor placement");
    ceval->add_option("--in", in_path, "Instance file")->required();
    ceval->add_option("--sensors", sensors, "Sensor vertices");
    auto* coracle = app.add_subcommand("oracle", "Brute-force ground truth");
    add_common(coracle);
    coracle->add_option("--cap", cap, "Enumeration cap");
    auto* cexport = app.add_subcommand("export-lp", "Write the model in LP format");
    add_common(cexport);
    cexport->add_flag("--relax", relaxed, "Export the continuous relaxation");
    cexport->add_option("--out", out_path, "Output file (- for stdout)");
    auto* cscen = app.add_subcommand("scenario", "Run a benchmark sweep");
    cscen->add_option("--config", config_path, "Scenario config file")->required();
    cscen->add_option("--out", out_path, "CSV output file (- for stdout)");

    // Let --seed/--time-budget appear after the subcommand name too.
    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        if (cgen->parsed()) {
            gen.seed = seed;
            return run_gen(gen);
        }
        if (csolve->parsed()) return run_solve(mode, in_path, k, q_str, time_budget);
        if (cheur->parsed()) return run_heur(mode, in_path, k, q_str, seed);
        if (ceval->parsed()) return run_eval(in_path, sensors);
        if (coracle->parsed()) return run_oracle(mode, in_path, k, q_str, cap);
        if (cexport->parsed())
            return run_export(mode, in_path, k, q_str, relaxed, out_path);
        if (cscen->parsed()) return run_scenario_cmd(config_path, out_path);
    } catch (const SolveTimeout&) {
        std::cerr << "error: time budget exceeded\n";
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
