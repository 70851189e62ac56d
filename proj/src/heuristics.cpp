#include "interdict/heuristics.hpp"

#include "interdict/relaxation.hpp"
#include "interdict/rng.hpp"

#include <sstream>
#include <stdexcept>

namespace interdict {

namespace {

// L = {v in V\D : d[v] != 0 and d[v] == max}. Exact rational equality; no
// epsilon involved.
std::vector<int> tie_set(const std::map<int, Rat>& d, const std::set<int>& placed) {
    Rat best = 0;
    for (const auto& [v, val] : d)
        if (!placed.count(v) && val > best) best = val;
    std::vector<int> out;
    if (best == 0) return out;
    for (const auto& [v, val] : d)
        if (!placed.count(v) && val == best) out.push_back(v);
    return out;
}

std::map<int, std::pair<Rat, Rat>> fixings(const std::set<int>& placed) {
    std::map<int, std::pair<Rat, Rat>> b;
    for (int v : placed) b[v] = {Rat(1), Rat(1)};
    return b;
}

}  // namespace

HeuristicTrace pq_iterative_best_sensor(const Instance& inst, const Rat& q,
                                        std::uint64_t seed) {
    Formulation f = relax(build_pq(inst, q));
    RelaxationSolver solver(f);
    Rng rng(seed);
    HeuristicTrace trace;
    Rat bound = *f.bound_a;
    std::set<int> placed;
    int cap = inst.n + 1;
    for (int iter = 0; iter < cap; ++iter) {
        if (evaluate_placement(inst, Placement{placed, std::nullopt}) <= bound) {
            trace.placement.sensors = placed;
            trace.placement.value = evaluate_placement(inst, trace.placement);
            if (*trace.placement.value > bound)
                throw std::logic_error("PQ exit check disagrees with flow engine");
            trace.objective = Rat(static_cast<int>(placed.size()));
            return trace;
        }
        RelaxedSolution sol = solver.solve(fixings(placed));
        if (sol.status != LpStatus::Optimal) {
            trace.status = LpStatus::Infeasible;
            return trace;
        }
        std::vector<int> ties = tie_set(sol.d, placed);
        if (ties.empty())
            throw std::logic_error("empty tie set while flow bound is unmet");
        int chosen = ties[rng.fork(iter).below(ties.size())];
        trace.iterations.push_back({sol.objective, std::move(ties), chosen});
        placed.insert(chosen);
    }
    throw std::logic_error("PQ heuristic exceeded its iteration cap");
}

HeuristicTrace pc_iterative_best_sensor(const Instance& inst, int k,
                                        std::uint64_t seed) {
    Formulation f = relax(build_pc(inst, k));
    RelaxationSolver solver(f);
    Rng rng(seed);
    HeuristicTrace trace;
    std::set<int> placed;
    for (int iter = 0; iter < k; ++iter) {
        RelaxedSolution sol = solver.solve(fixings(placed));
        if (sol.status != LpStatus::Optimal) {
            trace.status = LpStatus::Infeasible;
            return trace;
        }
        std::vector<int> ties = tie_set(sol.d, placed);
        if (ties.empty())
            throw std::logic_error("empty tie set with unspent sensor budget");
        int chosen = ties[rng.fork(iter).below(ties.size())];
        trace.iterations.push_back({sol.objective, std::move(ties), chosen});
        placed.insert(chosen);
    }
    RelaxedSolution final_sol = solver.solve(fixings(placed));
    if (final_sol.status != LpStatus::Optimal) {
        trace.status = LpStatus::Infeasible;
        return trace;
    }
    trace.lp_m = final_sol.objective;
    trace.placement.sensors = placed;
    trace.placement.value = evaluate_placement(inst, trace.placement);
    trace.objective = *trace.placement.value;
    return trace;
}

std::string format_trace(const HeuristicTrace& trace) {
    std::ostringstream out;
    if (trace.status != LpStatus::Optimal) {
        out << "status infeasible\n";
        return out.str();
    }
    int i = 0;
    for (const auto& it : trace.iterations) {
        out << "iter " << i++ << " obj " << rat_to_string(it.lp_objective) << " |L| "
            << it.tie_set.size() << " L";
        for (int v : it.tie_set) out << " " << v;
        out << " chose " << it.chosen << "\n";
    }
    out << "sensors";
    for (int v : trace.placement.sensors) out << " " << v;
    out << "\nvalue " << rat_to_string(trace.objective) << "\n";
    return out.str();
}

}  // namespace interdict
