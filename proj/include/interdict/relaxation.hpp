#pragma once

#include "interdict/formulation.hpp"

#include <chrono>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace interdict {

struct SolveTimeout : std::runtime_error {
    SolveTimeout() : std::runtime_error("time budget exceeded") {}
};

using Deadline = std::chrono::steady_clock::time_point;

struct RelaxedSolution {
    LpStatus status = LpStatus::Infeasible;
    Rat objective;                // sum of d (PQ) or M (PC)
    std::map<int, Rat> d;         // vertex -> fractional sensor value
    std::map<int, Rat> cut_values;  // target -> exact relaxed cut value at d
    bool pruned = false;  // stopped early: objective is a valid lower bound only
};

/// One path of a deterministic unit path packing: source->target paths that
/// are pairwise edge-disjoint and disjoint on sensor-eligible vertices, so
/// any subset is simultaneously routable at its bottleneck capacities and a
/// sensor can close at most one of them. `site_cost` steers the underlying
/// min-cost routing away from the given vertices.
struct PackedPath {
    Rat bottleneck;           // min original edge capacity along the path
    std::vector<int> sites;   // sensor-eligible vertices on the path
};

std::vector<PackedPath> path_packing(const Instance& inst, int target,
                                     const std::map<int, Rat>& site_cost);

/// Solves the relaxed PQ/PC linear program exactly by constraint generation
/// in the sensor-variable space. By max-flow duality every per-target cut
/// constraint is the maximum of linear functions of d, so the relaxation is
/// equivalent to a small master LP over (d, M) plus cuts separated by an
/// exact max-profit-flow computation. The cut pool is valid for any sensor
/// bounds and persists across solves, which keeps repeated solves (heuristic
/// fixings, branch-and-bound nodes) cheap.
///
/// The master route gives the same optimal value as solving the full
/// formulation LP directly; tests cross-check the two on small instances.
class RelaxationSolver {
public:
    explicit RelaxationSolver(const Formulation& f);

    // d_bounds: vertex -> (lo, hi), overriding [0,1] for placeable vertices.
    //
    // The master objective only grows as cuts accumulate, so any intermediate
    // master optimum is already a valid lower bound on the relaxation. When
    // `stop_above` is given, generation halts as soon as that bound exceeds
    // it (strictly when `stop_strict`); the result then carries pruned=true
    // and only the objective is meaningful. Callers that merely need "is the
    // bound at least X" — branch-and-bound pruning — save most of the work.
    // Throws SolveTimeout if generation is still running past `deadline`.
    RelaxedSolution solve(const std::map<int, std::pair<Rat, Rat>>& d_bounds = {},
                          const std::optional<Rat>& stop_above = std::nullopt,
                          bool stop_strict = false,
                          const std::optional<Deadline>& deadline = std::nullopt);

    // Exact relaxed cut value for one target at a concrete d assignment.
    Rat cut_value(int target, const std::map<int, Rat>& d) const;

    // Also separate covering cuts that are valid for integral placements but
    // not for the LP relaxation (PQ only): from a placeable-disjoint path
    // packing, at least r of the paths must carry a sensor once the
    // low-bottleneck ones that may stay open are accounted against the flow
    // bound. Intended for branch-and-bound, which only needs bounds on the
    // integer optimum; leave disabled to get the exact LP relaxation.
    void enable_integer_cuts() { integer_cuts_ = true; }

private:
    struct Cut {
        Rat flow_value;
        std::map<int, Rat> weight;  // vertex -> flow through that vertex
    };

    Cut separate(int target, const std::map<int, Rat>& d) const;
    std::optional<Cut> separate_packing(int target,
                                        const std::map<int, Rat>& d) const;

    Formulation::Kind kind_;
    Instance instance_;
    Rat param_;      // k for PC (as rational)
    Rat bound_a_;    // PQ flow bound
    std::vector<int> placeable_;
    // The master LP is only built over the active cuts; the rest of the pool
    // is screened arithmetically each round, which is far cheaper than
    // carrying every historical cut as a simplex row.
    std::vector<Cut> pool_;
    std::vector<char> active_;  // parallel to pool_
    bool integer_cuts_ = false;
};

}  // namespace interdict
