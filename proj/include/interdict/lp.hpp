#pragma once

#include "interdict/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace interdict {

enum class Rel { LE, EQ, GE };
enum class Sense { Minimize, Maximize };

struct LpConstraint {
    std::map<int, Rat> coeffs;  // variable index -> coefficient
    Rel rel = Rel::LE;
    Rat rhs;
};

struct LpVariable {
    std::string name;
    std::optional<Rat> lo;  // nullopt = -infinity
    std::optional<Rat> hi;  // nullopt = +infinity
};

struct LinearProgram {
    std::vector<LpVariable> vars;
    std::vector<LpConstraint> constraints;
    std::map<int, Rat> objective;
    Sense sense = Sense::Minimize;

    int add_var(std::string name, std::optional<Rat> lo, std::optional<Rat> hi);
    void add_constraint(std::map<int, Rat> coeffs, Rel rel, Rat rhs);
    void validate() const;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    Rat objective;
    std::vector<Rat> values;  // one per variable, meaningful when Optimal
};

// Exact rational two-phase simplex over bounded variables. Deterministic:
// largest-reduced-cost entering rule with smallest-index tie-breaks,
// falling back to Bland's rule after a run of degenerate pivots so cycling
// is impossible.
LpSolution solve_lp(const LinearProgram& lp);

// Returns a copy with an equality fixing appended; the original is untouched.
LinearProgram add_fixing(const LinearProgram& lp, int var, const Rat& value);

}  // namespace interdict
