#pragma once

#include "interdict/formulation.hpp"
#include "interdict/relaxation.hpp"

#include <chrono>
#include <optional>
#include <stdexcept>

namespace interdict {

struct ExactResult {
    LpStatus status = LpStatus::Infeasible;
    Placement placement;   // value filled from flow-engine re-evaluation
    Rat objective;         // |D| for PQ, M for PC
    long nodes = 0;
};

enum class BranchRule { MostFractional, SmallestIndex };

// Globally optimal solve. PQ runs a depth-first branch-and-bound on the
// sensor indicators, bounded by the exact LP relaxation plus integral
// covering cuts; a zero flow bound short-circuits to a minimum vertex
// separator. PC is solved as a search over the representable flow values,
// each step a PQ-style sensor-minimization probe. Throws SolveTimeout past
// a deadline. When `cutoff` is given, only solutions with objective strictly
// below it are sought; if none exists the result reports Infeasible.
ExactResult solve_exact(const Formulation& f,
                        std::optional<Deadline> deadline = std::nullopt,
                        BranchRule rule = BranchRule::MostFractional,
                        const std::optional<Rat>& cutoff = std::nullopt);

}  // namespace interdict
