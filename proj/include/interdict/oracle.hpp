#pragma once

#include "interdict/flow.hpp"
#include "interdict/lp.hpp"

#include <cstdint>
#include <set>
#include <vector>

namespace interdict {

struct OracleResult {
    LpStatus status = LpStatus::Optimal;  // Infeasible: no placement suffices (PQ)
    std::vector<std::set<int>> best;      // every optimal placement, lexicographic
    Rat value;                            // optimal uncontrolled flow
    int k = 0;                            // budget used (PQ reports the minimum)
    std::int64_t enumerated = 0;          // candidate subsets examined
};

// Brute-force ground truth. Deliberately simple and independent of the LP
// machinery so the fast solvers can be certified against it at small scale.

// Evaluates every k-subset of placeable vertices. Refuses when C(n, k)
// exceeds `cap`. With only_value set, stops early once a zero-flow placement
// is found and does not collect all witnesses.
OracleResult oracle_pc(const Instance& inst, int k, std::int64_t cap = 2000000,
                       bool only_value = false);

// Smallest k whose oracle_pc value meets the PQ flow bound (1-q) * max
// maxflow; Infeasible when even placing every placeable vertex fails.
OracleResult oracle_pq(const Instance& inst, const Rat& q,
                       std::int64_t cap = 2000000);

// Minimum crossing capacity over all source-side/sink-side bipartitions with
// every source on the source side and t on the sink side. Requires |V| <= 20.
Rat oracle_mincut(const Instance& inst, int target);

}  // namespace interdict
