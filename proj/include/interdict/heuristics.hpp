#pragma once

#include "interdict/flow.hpp"
#include "interdict/formulation.hpp"

#include <string>
#include <vector>

namespace interdict {

struct HeuristicIteration {
    Rat lp_objective;           // relaxed LP optimum at this iteration
    std::vector<int> tie_set;   // L: maximal nonzero d-values, ascending ids
    int chosen = -1;            // v_max, drawn uniformly from L
};

struct HeuristicTrace {
    LpStatus status = LpStatus::Optimal;  // Infeasible when no D can satisfy PQ
    std::vector<HeuristicIteration> iterations;
    Placement placement;
    Rat objective;  // |D| for PQ; evaluated uncontrolled flow for PC
    Rat lp_m;       // PC only: M from the final LP solve
};

// Iterative LP-relaxation rounding: solve the relaxed model, fix the
// strongest fractional sensor (uniform tie-break), repeat.
HeuristicTrace pq_iterative_best_sensor(const Instance& inst, const Rat& q,
                                        std::uint64_t seed);
HeuristicTrace pc_iterative_best_sensor(const Instance& inst, int k,
                                        std::uint64_t seed);

// Line-oriented log for regression diffing.
std::string format_trace(const HeuristicTrace& trace);

}  // namespace interdict
