#pragma once

#include "interdict/instance.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace interdict {

/// Benchmark configuration, read from flat key/value text. Scenarios 1/2
/// sweep the sensor budget k or the grid side for the PC methods; 3/4 do the
/// same over the quality factor q for the PQ methods. A "b" suffix switches
/// to the risk-weighted super-source form of each instance.
struct ScenarioConfig {
    std::string id = "1";                // 1,2,3,4 with optional trailing b
    std::vector<int> grid_sides = {6};
    std::vector<int> k_values;           // PC sweeps
    std::vector<Rat> q_values;           // PQ sweeps
    int num_targets = 4;
    int num_sources = 10;
    Rat risk = 1;                        // uniform risk for b scenarios
    std::map<int, Rat> risk_override;    // per-vertex exceptions
    int cap_seeds = 2;                   // replication nesting: capacities
    int t_seeds = 2;                     //   x target draws
    int s_seeds = 2;                     //   x source draws
    std::uint64_t master_seed = 42;
    double time_budget_s = 600;          // per solver run
    Rat cap_lo = 1;
    Rat cap_hi = 4;
    std::int64_t cap_granularity = 1;
    std::vector<std::string> methods;    // default: exact + heuristic pair

    bool is_pc() const;          // PC/PCIter methods (scenarios 1, 2)
    bool is_super() const;       // b suffix
    bool varies_grid() const;    // scenarios 2, 4 sweep the grid side
    int replications() const { return cap_seeds * t_seeds * s_seeds; }
    void validate() const;
};

ScenarioConfig parse_scenario_config_text(const std::string& text);
ScenarioConfig read_scenario_config(const std::string& path);

struct ScenarioRow {
    std::string method;              // PC, PCIter, PQ or PQIter
    std::string param;               // swept value (k, q or grid side)
    std::optional<Rat> mean_value;   // absent when every run timed out
    double mean_time_s = 0;
    int n = 0;                       // completed runs behind the mean
    std::uint64_t seed = 0;          // master seed
};

struct ScenarioResult {
    std::vector<ScenarioRow> rows;
};

// Full nested replication sweep. Deterministic values under a fixed master
// seed; runs past the per-run budget become absent-value entries instead of
// aborting the sweep.
ScenarioResult run_scenario(const ScenarioConfig& cfg);

// `method,param,mean_value,mean_time_s,n,seed` rows; values exact rationals.
std::string format_csv(const ScenarioResult& res);

}  // namespace interdict
