#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "interdict/branch_bound.hpp"
#include "interdict/heuristics.hpp"
#include "interdict/oracle.hpp"
#include "interdict/rng.hpp"

#include <algorithm>

using namespace interdict;

namespace {

Instance grid3() {
    Instance g = make_grid(3);
    g.sources = {0};
    g.targets = {8};
    return g;
}

// OPT places the hub (5) for value 1; the rounding trap is that the relaxed
// optimum also allows two half-sensors on the relays 3 and 4, and rounding
// either relay leaves value 2.
Instance trap_2x() {
    Instance g;
    g.n = 6;  // 0=s 1,2=targets 3,4=relays 5=hub
    g.edges = {{0, 1, 1}, {0, 2, 1}, {0, 5, 2},
               {5, 3, 1}, {3, 1, 1}, {5, 4, 1}, {4, 2, 1}};
    g.sources = {0};
    g.targets = {1, 2};
    return g;
}

// Same trap scaled so the heuristic lands exactly 3/2 above the optimum:
// direct edges 3/2, hub paths 3/4, three sources, two targets.
Instance trap_3half() {
    Instance g;
    g.n = 8;  // 0,1,2=sources 3,4=targets 5,6=relays 7=hub
    g.edges = {{0, 3, Rat(3, 2)}, {1, 4, Rat(3, 2)}, {2, 7, Rat(3, 2)},
               {7, 5, Rat(3, 4)}, {5, 3, Rat(3, 4)},
               {7, 6, Rat(3, 4)}, {6, 4, Rat(3, 4)}};
    g.sources = {0, 1, 2};
    g.targets = {3, 4};
    return g;
}

}  // namespace

TEST_CASE("PQ with q=0 places nothing") {
    HeuristicTrace t = pq_iterative_best_sensor(grid3(), 0, 1);
    REQUIRE(t.status == LpStatus::Optimal);
    CHECK(t.placement.sensors.empty());
    CHECK(t.iterations.empty());
    CHECK(t.objective == 0);
}

TEST_CASE("PQ with q=1 on the 3x3 grid") {
    for (std::uint64_t seed : {0ULL, 1ULL, 2ULL, 3ULL, 4ULL}) {
        HeuristicTrace t = pq_iterative_best_sensor(grid3(), 1, seed);
        REQUIRE(t.status == LpStatus::Optimal);
        CHECK(t.placement.sensors.size() >= 2);  // exact optimum
        CHECK(t.placement.sensors.size() <= 3);
        CHECK(*t.placement.value == 0);
        CHECK(t.objective == Rat(static_cast<int>(t.placement.sensors.size())));
    }
}

TEST_CASE("PC with k=0 reports the max maxflow") {
    HeuristicTrace t = pc_iterative_best_sensor(grid3(), 0, 1);
    REQUIRE(t.status == LpStatus::Optimal);
    CHECK(t.iterations.empty());
    CHECK(t.objective == 2);
    CHECK(t.lp_m == 2);
}

TEST_CASE("PC places exactly k sensors and reports both values") {
    Instance g = randomize_capacities(grid3(), 1, 4, 5);
    for (int k : {1, 2, 3}) {
        HeuristicTrace t = pc_iterative_best_sensor(g, k, 9);
        REQUIRE(t.status == LpStatus::Optimal);
        CHECK(static_cast<int>(t.placement.sensors.size()) == k);
        CHECK(static_cast<int>(t.iterations.size()) == k);
        CHECK(t.objective == evaluate_placement(g, t.placement));
        CHECK(t.lp_m == t.objective);  // with all k fixed, the LP is integral
    }
}

TEST_CASE("trace invariants") {
    Instance g = randomize_capacities(grid3(), 1, 4, 5);
    HeuristicTrace t = pc_iterative_best_sensor(g, 3, 21);
    REQUIRE(t.status == LpStatus::Optimal);
    Rat prev_obj;
    bool first = true;
    std::set<int> placed;
    for (const auto& it : t.iterations) {
        // the chosen vertex comes from the tie set, which is sorted, fresh
        // and placeable
        CHECK(std::find(it.tie_set.begin(), it.tie_set.end(), it.chosen) !=
              it.tie_set.end());
        CHECK(std::is_sorted(it.tie_set.begin(), it.tie_set.end()));
        for (int v : it.tie_set) {
            CHECK(g.placeable(v));
            CHECK(!placed.count(v));
        }
        // fixing sensors never improves the relaxation
        if (!first) CHECK(it.lp_objective >= prev_obj);
        prev_obj = it.lp_objective;
        first = false;
        placed.insert(it.chosen);
    }
    CHECK(placed == t.placement.sensors);
}

TEST_CASE("determinism under seed") {
    Instance g = randomize_capacities(grid3(), 1, 4, 6);
    HeuristicTrace a = pc_iterative_best_sensor(g, 2, 1234);
    HeuristicTrace b = pc_iterative_best_sensor(g, 2, 1234);
    CHECK(format_trace(a) == format_trace(b));
    HeuristicTrace q1 = pq_iterative_best_sensor(g, Rat(1, 2), 99);
    HeuristicTrace q2 = pq_iterative_best_sensor(g, Rat(1, 2), 99);
    CHECK(format_trace(q1) == format_trace(q2));
}

TEST_CASE("heuristic never beats the exact solver") {
    Rng rng(555);
    for (int trial = 0; trial < 8; ++trial) {
        Instance g = randomize_capacities(grid3(), 1, 5, rng.next());
        int k = 1 + static_cast<int>(rng.below(3));
        HeuristicTrace h = pc_iterative_best_sensor(g, k, rng.next());
        ExactResult e = solve_exact(build_pc(g, k));
        REQUIRE(h.status == LpStatus::Optimal);
        REQUIRE(e.status == LpStatus::Optimal);
        CHECK(h.objective >= e.objective);

        Rat q(1 + static_cast<int>(rng.below(3)), 4);
        HeuristicTrace hq = pq_iterative_best_sensor(g, q, rng.next());
        ExactResult eq = solve_exact(build_pq(g, q));
        REQUIRE(hq.status == LpStatus::Optimal);
        REQUIRE(eq.status == LpStatus::Optimal);
        CHECK(Rat(static_cast<int>(hq.placement.sensors.size())) >= eq.objective);
        // PQ exit condition holds on the returned placement
        CHECK(*hq.placement.value <= (Rat(1) - q) * build_pq(g, q).max_maxflow);
    }
}

TEST_CASE("PQ infeasibility is reported, not thrown") {
    Instance g;
    g.n = 3;
    g.edges = {{0, 2, 1}, {0, 1, 1}, {1, 2, 1}};
    g.sources = {0};
    g.targets = {2};
    HeuristicTrace t = pq_iterative_best_sensor(g, 1, 0);
    CHECK(t.status == LpStatus::Infeasible);
    CHECK(format_trace(t) == "status infeasible\n");
}

TEST_CASE("doubled-optimum trap") {
    Instance g = trap_2x();
    OracleResult o = oracle_pc(g, 1);
    REQUIRE(o.value == 1);  // optimum: hub vertex 5
    REQUIRE(o.best == std::vector<std::set<int>>{{5}});
    for (std::uint64_t seed : {0ULL, 1ULL, 2ULL, 3ULL}) {
        HeuristicTrace t = pc_iterative_best_sensor(g, 1, seed);
        REQUIRE(t.status == LpStatus::Optimal);
        REQUIRE(t.iterations.size() == 1);
        CHECK(t.iterations[0].tie_set == std::vector<int>{3, 4});
        CHECK(t.objective == 2);  // exactly twice the optimum
    }
}

TEST_CASE("three-halves trap") {
    Instance g = trap_3half();
    OracleResult o = oracle_pc(g, 1);
    REQUIRE(o.value == Rat(3, 2));
    REQUIRE(o.best == std::vector<std::set<int>>{{7}});
    for (std::uint64_t seed : {0ULL, 1ULL, 2ULL, 3ULL}) {
        HeuristicTrace t = pc_iterative_best_sensor(g, 1, seed);
        REQUIRE(t.status == LpStatus::Optimal);
        REQUIRE(t.iterations.size() == 1);
        CHECK(t.iterations[0].lp_objective == Rat(3, 2));  // fractional optimum
        CHECK(t.iterations[0].tie_set == std::vector<int>{5, 6});
        CHECK(t.objective == Rat(9, 4));  // exactly 3/2 times the optimum
    }
}
