#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "interdict/relaxation.hpp"
#include "interdict/rng.hpp"

using namespace interdict;

namespace {

Instance grid3() {
    Instance g = make_grid(3);
    g.sources = {0};
    g.targets = {8};
    return g;
}

// Reference value: solve the full relaxed formulation LP directly with the
// simplex engine (all variables, all rows), no constraint generation.
Rat direct_relaxed_value(const Formulation& integral,
                         const std::map<int, Rat>& fixed_d = {}) {
    Formulation r = relax(integral);
    LinearProgram lp = r.lp;
    for (const auto& [v, val] : fixed_d) lp = add_fixing(lp, r.var_d.at(v), val);
    LpSolution s = solve_lp(lp);
    REQUIRE(s.status == LpStatus::Optimal);
    return s.objective;
}

Instance random_instance(Rng& rng, int n) {
    Instance g;
    g.n = n;
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            if (u != v && rng.below(100) < 35)
                g.edges.push_back({u, v, Rat(1 + static_cast<int>(rng.below(6)),
                                             1 + static_cast<int>(rng.below(2)))});
    g.sources = {0};
    g.targets = {n - 1};
    if (rng.below(2)) g.targets.insert(n - 2);
    return g;
}

}  // namespace

TEST_CASE("constraint generation matches the direct LP: 3x3 grid") {
    Instance g = grid3();
    SUBCASE("PC") {
        for (int k : {0, 1, 2, 3}) {
            Formulation f = build_pc(g, k);
            RelaxationSolver solver(f);
            RelaxedSolution sol = solver.solve();
            REQUIRE(sol.status == LpStatus::Optimal);
            CHECK(sol.objective == direct_relaxed_value(f));
        }
    }
    SUBCASE("PQ") {
        for (Rat q : {Rat(0), Rat(1, 4), Rat(1, 2), Rat(3, 4), Rat(1)}) {
            Formulation f = build_pq(g, q);
            RelaxationSolver solver(f);
            RelaxedSolution sol = solver.solve();
            REQUIRE(sol.status == LpStatus::Optimal);
            CHECK(sol.objective == direct_relaxed_value(f));
        }
    }
}

TEST_CASE("constraint generation matches the direct LP: random instances") {
    Rng rng(4242);
    int done = 0;
    for (int trial = 0; trial < 40; ++trial) {
        Instance g = random_instance(rng, 5 + static_cast<int>(rng.below(3)));
        if (maxflow(g, *g.targets.begin()).value == 0) continue;
        int k = static_cast<int>(rng.below(3));
        if (k > static_cast<int>(g.placeable_vertices().size())) continue;
        Formulation f = build_pc(g, k);
        RelaxationSolver solver(f);
        RelaxedSolution sol = solver.solve();
        REQUIRE(sol.status == LpStatus::Optimal);
        CHECK(sol.objective == direct_relaxed_value(f));

        Formulation fq = build_pq(g, Rat(1 + static_cast<int>(rng.below(3)), 4));
        RelaxationSolver sq(fq);
        RelaxedSolution solq = sq.solve();
        // infeasibility (e.g. uncuttable direct source-target edges) must
        // agree with the direct LP as well
        LpSolution direct = solve_lp(relax(fq).lp);
        REQUIRE(solq.status == direct.status);
        if (solq.status == LpStatus::Optimal)
            CHECK(solq.objective == direct.objective);
        ++done;
    }
    CHECK(done >= 20);
}

TEST_CASE("sensor fixings agree with add_fixing on the full LP") {
    Instance g = grid3();
    Formulation f = build_pc(g, 2);
    RelaxationSolver solver(f);
    for (int v : {1, 3, 4}) {
        std::map<int, std::pair<Rat, Rat>> bounds;
        bounds[v] = {Rat(1), Rat(1)};
        RelaxedSolution sol = solver.solve(bounds);
        REQUIRE(sol.status == LpStatus::Optimal);
        CHECK(sol.objective == direct_relaxed_value(f, {{v, Rat(1)}}));
        CHECK(sol.d.at(v) == 1);
    }
}

TEST_CASE("relaxed solution is self-consistent") {
    Instance g = grid3();
    Formulation f = build_pc(g, 1);
    RelaxationSolver solver(f);
    RelaxedSolution sol = solver.solve();
    REQUIRE(sol.status == LpStatus::Optimal);
    Rat sum = 0;
    for (const auto& [v, val] : sol.d) {
        CHECK(val > 0);
        CHECK(val <= 1);
        CHECK(g.placeable(v));
        sum += val;
    }
    CHECK(sum == 1);  // the budget row is an equality
    // every reported cut value respects the objective, one is tight
    bool tight = false;
    for (const auto& [t, gval] : sol.cut_values) {
        CHECK(gval <= sol.objective);
        CHECK(gval == solver.cut_value(t, sol.d));
        if (gval == sol.objective) tight = true;
    }
    CHECK(tight);
}

TEST_CASE("integral fixings reproduce exact min-cuts") {
    // With every sensor variable pinned to 0/1 the relaxed cut value per
    // target must equal the flow engine's value on the residual graph.
    Instance g = grid3();
    Formulation f = build_pc(g, 2);
    RelaxationSolver solver(f);
    std::map<int, std::pair<Rat, Rat>> bounds;
    for (int v : g.placeable_vertices())
        bounds[v] = {Rat(0), Rat(0)};
    bounds[1] = {Rat(1), Rat(1)};
    bounds[5] = {Rat(1), Rat(1)};
    RelaxedSolution sol = solver.solve(bounds);
    REQUIRE(sol.status == LpStatus::Optimal);
    Placement p;
    p.sensors = {1, 5};
    CHECK(sol.objective == evaluate_placement(g, p));
}

TEST_CASE("relaxed optimum lower-bounds restricted solves") {
    Instance g = grid3();
    Formulation f = build_pc(g, 1);
    RelaxationSolver solver(f);
    Rat root = solver.solve().objective;
    for (int v : {1, 2, 4}) {
        std::map<int, std::pair<Rat, Rat>> bounds;
        bounds[v] = {Rat(1), Rat(1)};
        CHECK(solver.solve(bounds).objective >= root);
    }
}

TEST_CASE("PQ relaxation infeasibility") {
    // A direct source-target edge cannot be cut by any sensor, so q=1 has
    // no feasible placement at all.
    Instance g;
    g.n = 3;
    g.edges = {{0, 2, 1}, {0, 1, 1}, {1, 2, 1}};
    g.sources = {0};
    g.targets = {2};
    Formulation f = build_pq(g, 1);
    RelaxationSolver solver(f);
    CHECK(solver.solve().status == LpStatus::Infeasible);
}

TEST_CASE("determinism across fresh solvers") {
    Instance g = grid3();
    Formulation f = build_pc(g, 2);
    RelaxedSolution a = RelaxationSolver(f).solve();
    RelaxedSolution b = RelaxationSolver(f).solve();
    CHECK(a.objective == b.objective);
    CHECK(a.d == b.d);
    CHECK(a.cut_values == b.cut_values);
}
