#pragma once

#include "interdict/flow.hpp"
#include "interdict/instance.hpp"
#include "interdict/lp.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace interdict {

/// PQ/PC variable and constraint encoding, binding LP variable indices back
/// to graph entities. Integral mode flags d, a and cutT as binary; relaxing
/// drops d and cutT to continuous [0,1] (a keeps its flag for reporting,
/// though the relaxation solver treats it as continuous as well).
struct Formulation {
    enum class Kind { PQ, PC };

    Kind kind = Kind::PQ;
    bool relaxed = false;
    Instance instance;
    LinearProgram lp;

    std::map<int, int> var_d;                       // vertex -> LP var
    std::map<std::pair<int, int>, int> var_a;       // (target, vertex) -> LP var
    std::map<std::pair<int, int>, int> var_cut;     // (target, edge idx) -> LP var
    std::optional<int> var_m;                       // PC objective variable
    std::set<int> integer_vars;

    Rat param;                 // q for PQ, k for PC
    Rat max_maxflow;           // max over targets in the original graph
    std::optional<Rat> bound_a;  // PQ flow bound (1-q) * max_maxflow
};

Formulation build_pq(const Instance& inst, const Rat& q);
Formulation build_pc(const Instance& inst, int k);
Formulation relax(const Formulation& f);

// CPLEX-style LP text format, one constraint per line.
void export_lp(const Formulation& f, const std::string& path);
std::string format_lp_text(const Formulation& f);

struct LpFileSummary {
    std::string objective_name;
    int num_constraints = 0;
    int num_bounds = 0;
    int num_binaries = 0;
};

// Minimal reader for the exported format, used to verify round trips.
LpFileSummary read_lp_summary(const std::string& path);
LpFileSummary parse_lp_summary_text(const std::string& text);

}  // namespace interdict
