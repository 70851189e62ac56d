#include "interdict/branch_bound.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace interdict {

namespace {

BigInt ceil_rat(const Rat& r) {
    BigInt q = numerator(r) / denominator(r);
    if (Rat(q) < r) q += 1;
    return q;
}

}  // namespace

namespace {

// With a zero flow bound the PQ problem is exactly the minimum vertex
// separator between the sources and the target set: every positive-capacity
// path must pass a sensor. By Menger's theorem that is a max-flow problem on
// the split graph (unit capacity on sensor-eligible vertices), which is far
// faster than branch-and-bound and returns a certified optimal placement.
ExactResult solve_zero_bound_pq(const Instance& inst) {
    Instance aux;
    aux.n = 2 * inst.n + 1;  // v -> v_in = v, v_out = n + v; merged target last
    const int tstar = 2 * inst.n;
    const Rat big(inst.n + 1);
    for (int v = 0; v < inst.n; ++v)
        if (!inst.targets.count(v))
            aux.edges.push_back({v, inst.n + v, inst.placeable(v) ? Rat(1) : big});
    std::set<std::pair<int, int>> seen;
    for (const auto& e : inst.edges) {
        if (e.capacity == 0) continue;           // can never carry flow
        if (inst.targets.count(e.from)) continue;  // paths end at a target
        int head = inst.targets.count(e.to) ? tstar : e.to;
        if (seen.insert({inst.n + e.from, head}).second)
            aux.edges.push_back({inst.n + e.from, head, big});
    }
    aux.sources = inst.sources;
    aux.targets = {tstar};

    ExactResult res;
    FlowResult fr = maxflow(aux, tstar);
    if (fr.value > inst.n) {
        res.status = LpStatus::Infeasible;  // some path avoids all sensor sites
        return res;
    }
    res.status = LpStatus::Optimal;
    res.objective = fr.value;
    for (int v = 0; v < inst.n; ++v)
        if (inst.placeable(v) && fr.min_cut_side.count(v) &&
            !fr.min_cut_side.count(inst.n + v))
            res.placement.sensors.insert(v);
    if (Rat(static_cast<int>(res.placement.sensors.size())) != res.objective)
        throw std::logic_error("separator size disagrees with the cut value");
    return res;
}

}  // namespace

ExactResult solve_exact(const Formulation& f, std::optional<Deadline> deadline,
                        BranchRule rule, const std::optional<Rat>& cutoff) {
    const bool pc = f.kind == Formulation::Kind::PC;
    if (!pc && *f.bound_a == 0) {
        ExactResult res = solve_zero_bound_pq(f.instance);
        if (res.status == LpStatus::Optimal) {
            res.placement.value = evaluate_placement(f.instance, res.placement);
            if (*res.placement.value != 0)
                throw std::logic_error("separator placement leaks flow");
            if (cutoff && res.objective >= *cutoff) {
                ExactResult none;
                none.nodes = res.nodes;
                return none;
            }
        }
        return res;
    }
    if (pc) {
        // The optimum M is a max-flow of a capacity subgraph, hence a
        // multiple of 1/den; search that grid for the smallest bound m
        // that at most k sensors can enforce. Each probe is a PQ-style
        // sensor minimization cut off at k+1, which enjoys much stronger
        // integral machinery (covering cuts, separator fast path, integral
        // bound rounding) than branching on the PC model directly.
        const int k = numerator(f.param).convert_to<int>();
        BigInt den(1);
        for (const auto& e : f.instance.edges)
            den = boost::multiprecision::lcm(den, denominator(e.capacity));
        Placement none;
        const Rat maxmax = evaluate_placement(f.instance, none);
        ExactResult res;
        res.status = LpStatus::Optimal;
        BigInt lo = 0, hi = numerator(Rat(maxmax * den));
        Placement best;  // no sensors: feasible at the top of the grid
        while (lo < hi) {
            BigInt mid = (lo + hi) / 2;
            Formulation sub = build_pq(f.instance, Rat(0));
            sub.bound_a = Rat(mid, den);
            ExactResult probe = solve_exact(sub, deadline, rule, Rat(k + 1));
            res.nodes += probe.nodes;
            if (probe.status == LpStatus::Optimal && probe.objective <= k) {
                best = probe.placement;
                // The probe's actual value may undershoot the probed bound;
                // jump straight to it.
                hi = numerator(Rat(*probe.placement.value * den));
            } else {
                lo = mid + 1;
            }
        }
        res.objective = Rat(hi, den);
        // Pad to exactly k sensors; extra sensors never increase the flow,
        // and the optimum cannot drop below the grid point just certified.
        for (int v : f.instance.placeable_vertices()) {
            if (static_cast<int>(best.sensors.size()) >= k) break;
            best.sensors.insert(v);
        }
        res.placement = std::move(best);
        res.placement.value = evaluate_placement(f.instance, res.placement);
        if (*res.placement.value != res.objective)
            throw std::logic_error(
                "PC objective disagrees with flow-engine evaluation");
        if (cutoff && res.objective >= *cutoff) {
            ExactResult inf;
            inf.nodes = res.nodes;
            return inf;
        }
        return res;
    }
    Formulation rf = f.relaxed ? f : relax(f);
    RelaxationSolver solver(rf);
    solver.enable_integer_cuts();  // bounds need only hold for integral points
    const Instance& inst = f.instance;
    const std::vector<int> placeable = inst.placeable_vertices();
    const Rat bound_a = *f.bound_a;

    ExactResult res;
    bool have_incumbent = false;
    Rat incumbent_obj;
    std::set<int> incumbent_d;
    if (cutoff) {
        // Search only below the cutoff; the sentinel incumbent is never
        // reported as a solution.
        have_incumbent = true;
        incumbent_obj = *cutoff;
    }

    auto check_deadline = [&deadline]() {
        if (deadline && std::chrono::steady_clock::now() > *deadline) throw SolveTimeout();
    };

    auto value_of = [&inst](const std::set<int>& d) {
        Placement p;
        p.sensors = d;
        return evaluate_placement(inst, p);
    };

    auto offer = [&](const Rat& obj, std::set<int> d) {
        if (!have_incumbent || obj < incumbent_obj) {
            have_incumbent = true;
            incumbent_obj = obj;
            incumbent_d = std::move(d);
        }
    };

    // Rounding primal: turn the fractional node solution into a feasible
    // placement cheaply so the incumbent tightens long before any leaf is
    // reached. Any feasible placement is globally valid, so the node's
    // fixings only guide the construction order.
    auto try_primal = [&](const RelaxedSolution& sol,
                          const std::map<int, int>& fixed) {
        auto dval = [&sol](int v) {
            auto it = sol.d.find(v);
            return it == sol.d.end() ? Rat(0) : it->second;
        };
        std::vector<int> order;  // strongest sensors first, ids break ties
        for (int v : placeable)
            if (!fixed.count(v) || fixed.at(v) == 0) order.push_back(v);
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return dval(a) > dval(b); });

        std::set<int> d;
        for (const auto& [v, val] : fixed)
            if (val == 1) d.insert(v);
        // Grow until the flow bound holds, then drop redundant sensors.
        if (value_of(d) > bound_a) {
            bool ok = false;
            for (int v : order) {
                d.insert(v);
                if (value_of(d) <= bound_a) {
                    ok = true;
                    break;
                }
            }
            if (!ok) return;
        }
        std::vector<int> trim(d.begin(), d.end());
        std::stable_sort(trim.begin(), trim.end(),
                         [&](int x, int y) { return dval(x) < dval(y); });
        for (int v : trim) {
            d.erase(v);
            if (value_of(d) > bound_a) d.insert(v);
        }
        offer(Rat(static_cast<int>(d.size())), d);
    };

    // Combinatorial packing bound, far cheaper than an LP solve. The packing
    // paths are disjoint on sensor sites, so a sensor closes at most one of
    // them; paths whose sites are all fixed to 0 stay open for the entire
    // subtree, and each target independently forces enough additional
    // sensors to push the closable bottlenecks under the flow bound. The
    // routing is steered away from still-usable sites so the unavoidable
    // flow it certifies is as large as possible.
    auto packing_prunes = [&](const std::map<int, int>& fixed, int n_fixed1) {
        if (!have_incumbent) return false;
        std::map<int, Rat> cost;
        for (int v : placeable) {
            auto it = fixed.find(v);
            if (it == fixed.end() || it->second == 1) cost[v] = 1;
        }
        Rat worst_need = 0;  // most extra sensors any one target forces
        for (int t : inst.targets) {
            Rat unavoidable = 0;
            std::vector<Rat> closable;
            for (const auto& p : path_packing(inst, t, cost)) {
                bool hit1 = false, open = false;
                for (int v : p.sites) {
                    auto it = fixed.find(v);
                    if (it != fixed.end() && it->second == 1) hit1 = true;
                    if (it == fixed.end()) open = true;
                }
                if (hit1) continue;
                if (open)
                    closable.push_back(p.bottleneck);
                else
                    unavoidable += p.bottleneck;
            }
            Rat budget = bound_a - unavoidable;
            if (budget < 0) return true;  // no placement can help here
            std::sort(closable.begin(), closable.end());
            std::size_t keep = 0;
            Rat kept = 0;
            while (keep < closable.size() && kept + closable[keep] <= budget)
                kept += closable[keep++];
            Rat need(static_cast<int>(closable.size() - keep));
            if (need > worst_need) worst_need = need;
        }
        return Rat(n_fixed1) + worst_need >= incumbent_obj;
    };

    std::function<void(std::map<int, int>&)> visit = [&](std::map<int, int>& fixed) {
        check_deadline();
        ++res.nodes;
        int n_fixed1 = 0;
        for (const auto& [v, val] : fixed) n_fixed1 += val;
        if (packing_prunes(fixed, n_fixed1)) return;
        std::map<int, std::pair<Rat, Rat>> bounds;
        for (const auto& [v, val] : fixed) bounds[v] = {Rat(val), Rat(val)};
        std::optional<Rat> stop;
        if (have_incumbent) stop = incumbent_obj - 1;
        RelaxedSolution sol = solver.solve(bounds, stop, true, deadline);
        if (sol.status != LpStatus::Optimal) return;
        if (sol.pruned) return;  // bound already meets the incumbent

        Rat bound(ceil_rat(sol.objective));  // sensor counts are integral
        if (have_incumbent && bound >= incumbent_obj) return;

        try_primal(sol, fixed);
        if (have_incumbent && bound >= incumbent_obj) return;

        // Integral on every placeable vertex?
        int branch_v = -1;
        Rat best_frac_dist;
        for (const auto& [v, val] : sol.d) {
            if (val == 0 || val == 1) continue;
            if (rule == BranchRule::SmallestIndex) {
                if (branch_v < 0) branch_v = v;
            } else {
                Rat dist = val < Rat(1, 2) ? Rat(1, 2) - val : val - Rat(1, 2);
                if (branch_v < 0 || dist < best_frac_dist) {
                    branch_v = v;
                    best_frac_dist = dist;
                }
            }
        }
        if (branch_v < 0) {
            std::set<int> d;
            for (const auto& [v, val] : sol.d)
                if (val == 1) d.insert(v);
            offer(sol.objective, std::move(d));
            return;
        }
        fixed[branch_v] = 1;
        visit(fixed);
        fixed[branch_v] = 0;
        visit(fixed);
        fixed.erase(branch_v);
    };

    std::map<int, int> root;
    visit(root);

    if (!have_incumbent || (cutoff && incumbent_obj >= *cutoff)) {
        res.status = LpStatus::Infeasible;
        return res;
    }
    res.status = LpStatus::Optimal;
    res.objective = incumbent_obj;
    res.placement.sensors = incumbent_d;
    res.placement.value = evaluate_placement(inst, res.placement);
    if (*res.placement.value > bound_a)
        throw std::logic_error("PQ solution violates its flow bound");
    return res;
}

}  // namespace interdict
