#pragma once

#include "interdict/rational.hpp"
#include "interdict/rng.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace interdict {

struct Edge {
    int from = 0;
    int to = 0;
    Rat capacity;
};

/// Directed capacitated network with designated sources S and targets T.
/// Vertices are dense integers 0..n-1. Immutable by convention: generators
/// and transforms return new instances.
struct Instance {
    int n = 0;
    std::vector<Edge> edges;            // no duplicates, no self-loops
    std::set<int> sources;
    std::set<int> targets;
    std::map<int, Rat> risk;            // empty means "no risk map"
    std::optional<int> super_source;    // sensor-forbidden artificial vertex

    bool has_risk() const { return !risk.empty(); }
    bool placeable(int v) const {
        return !sources.count(v) && !targets.count(v) &&
               (!super_source || *super_source != v);
    }
    std::vector<int> placeable_vertices() const;
    int edge_index(int u, int v) const;  // -1 if absent
    Rat total_capacity() const;

    // Throws std::invalid_argument on any structural invariant violation.
    void validate() const;
};

/// Sensor set D with its evaluated uncontrolled-flow value, if known.
struct Placement {
    std::set<int> sensors;
    std::optional<Rat> value;
};

// side x side grid, row-major vertex numbering, both directed edges per
// orthogonally adjacent pair, all capacities 1, no roles assigned.
Instance make_grid(int side);

// Every edge capacity drawn independently and uniformly from the integer
// multiples of 1/granularity in [lo, hi]; granularity 1 draws integers.
Instance randomize_capacities(const Instance& inst, const Rat& lo, const Rat& hi,
                              std::uint64_t seed, std::int64_t granularity = 1);

// T uniform without replacement from V, then S uniform from V\T.
Instance sample_roles(const Instance& inst, int n_targets, int n_sources,
                      std::uint64_t seed);

// Same, with independent streams so T can be held fixed while S varies.
Instance sample_roles(const Instance& inst, int n_targets, int n_sources,
                      std::uint64_t t_seed, std::uint64_t s_seed);

// Single super source ss with c(ss,v) = R(v) * sum of v's outgoing
// capacities for every v not in T; sources replaced by {ss}.
Instance add_super_source(const Instance& inst);

// Hardness construction: k+1 copies of every vertex, a vertex pair per arc
// carrying the original capacity, fresh terminals s_0/t_0. Preserves the
// s-t maxflow value exactly.
Instance cmfnip_gadget(const Instance& g, int budget);

Instance read_instance(const std::string& path);
void write_instance(const Instance& inst, const std::string& path);

Instance parse_instance_text(const std::string& text);
std::string format_instance_text(const Instance& inst);

bool structurally_equal(const Instance& a, const Instance& b);

}  // namespace interdict
