#pragma once

#include "interdict/instance.hpp"

#include <map>
#include <set>
#include <vector>

namespace interdict {

/// Max-flow value together with its min-cut certificate. The cut side is
/// the set of vertices reachable from the sources in the final residual
/// graph, which is the canonical smallest source side.
struct FlowResult {
    Rat value;
    std::map<std::pair<int, int>, Rat> edge_flows;
    std::set<int> min_cut_side;
};

// Max single-commodity flow from S to t. Sources are attached to an
// internal super vertex with arcs of capacity total+1, so arithmetic
// stays finite and exact.
FlowResult maxflow(const Instance& inst, int t);

// G \ D: capacity 0 on every edge incident to a sensor vertex.
Instance apply_placement(const Instance& inst, const Placement& d);

// max over targets of maxflow in G \ D.
Rat evaluate_placement(const Instance& inst, const Placement& d);

}  // namespace interdict
