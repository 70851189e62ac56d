#include "interdict/lp.hpp"

#include <algorithm>
#include <stdexcept>

namespace interdict {

int LinearProgram::add_var(std::string name, std::optional<Rat> lo, std::optional<Rat> hi) {
    if (lo && hi && *lo > *hi) throw std::invalid_argument("variable bounds cross: " + name);
    vars.push_back({std::move(name), std::move(lo), std::move(hi)});
    return static_cast<int>(vars.size()) - 1;
}

void LinearProgram::add_constraint(std::map<int, Rat> coeffs, Rel rel, Rat rhs) {
    for (const auto& [j, c] : coeffs)
        if (j < 0 || j >= static_cast<int>(vars.size()))
            throw std::invalid_argument("constraint references undeclared variable");
    constraints.push_back({std::move(coeffs), rel, std::move(rhs)});
}

void LinearProgram::validate() const {
    for (const auto& v : vars)
        if (v.lo && v.hi && *v.lo > *v.hi)
            throw std::invalid_argument("variable bounds cross: " + v.name);
    for (const auto& c : constraints)
        for (const auto& [j, coef] : c.coeffs)
            if (j < 0 || j >= static_cast<int>(vars.size()))
                throw std::invalid_argument("constraint references undeclared variable");
    for (const auto& [j, coef] : objective)
        if (j < 0 || j >= static_cast<int>(vars.size()))
            throw std::invalid_argument("objective references undeclared variable");
}

LinearProgram add_fixing(const LinearProgram& lp, int var, const Rat& value) {
    if (var < 0 || var >= static_cast<int>(lp.vars.size()))
        throw std::invalid_argument("unknown variable in fixing");
    const auto& v = lp.vars[var];
    if ((v.lo && value < *v.lo) || (v.hi && value > *v.hi))
        throw std::invalid_argument("fixing value outside variable bounds");
    LinearProgram out = lp;
    out.constraints.push_back({{{var, Rat(1)}}, Rel::EQ, value});
    return out;
}

namespace {

enum class VStat { Basic, AtLo, AtHi, FreeZero };

class Simplex {
public:
    explicit Simplex(const LinearProgram& lp) : lp_(lp) { build(); }

    LpSolution solve() {
        LpSolution sol;
        if (need_phase1_) {
            set_phase1_objective();
            RunResult r = run();
            if (r == RunResult::Unbounded)
                throw std::logic_error("phase 1 unbounded");  // objective >= 0 always
            if (phase_objective_value() != 0) {
                sol.status = LpStatus::Infeasible;
                return sol;
            }
            // Artificials pinned to zero for phase 2.
            for (int j = art_begin_; j < total_; ++j) hi_[j] = Rat(0);
        }
        set_phase2_objective();
        RunResult r = run();
        if (r == RunResult::Unbounded) {
            sol.status = LpStatus::Unbounded;
            return sol;
        }
        sol.status = LpStatus::Optimal;
        sol.values.resize(lp_.vars.size());
        for (int j = 0; j < static_cast<int>(lp_.vars.size()); ++j) sol.values[j] = value_of(j);
        sol.objective = 0;
        for (const auto& [j, c] : lp_.objective) sol.objective += c * sol.values[j];
        return sol;
    }

private:
    enum class RunResult { Optimal, Unbounded };

    static constexpr int kDegenerateLimit = 40;

    void build() {
        int n = static_cast<int>(lp_.vars.size());
        int m = static_cast<int>(lp_.constraints.size());
        slack_begin_ = n;
        art_begin_ = n + m;
        total_ = n + 2 * m;

        lo_.resize(total_);
        hi_.resize(total_);
        stat_.resize(total_, VStat::AtLo);
        for (int j = 0; j < n; ++j) {
            lo_[j] = lp_.vars[j].lo;
            hi_[j] = lp_.vars[j].hi;
            stat_[j] = lo_[j] ? VStat::AtLo : (hi_[j] ? VStat::AtHi : VStat::FreeZero);
        }

        rows_.assign(m, std::vector<Rat>(total_, Rat(0)));
        basis_.resize(m);
        beta_.resize(m);
        need_phase1_ = false;

        for (int i = 0; i < m; ++i) {
            const auto& con = lp_.constraints[i];
            Rat lhs_at_start = 0;
            for (const auto& [j, c] : con.coeffs) {
                rows_[i][j] = c;
                lhs_at_start += c * nonbasic_value(j);
            }
            int sj = slack_begin_ + i;
            switch (con.rel) {
                case Rel::LE: lo_[sj] = Rat(0); hi_[sj] = std::nullopt; break;
                case Rel::GE: lo_[sj] = std::nullopt; hi_[sj] = Rat(0); break;
                case Rel::EQ: lo_[sj] = Rat(0); hi_[sj] = Rat(0); break;
            }
            rows_[i][sj] = 1;

            Rat resid = con.rhs - lhs_at_start;  // slack value if slack is basic
            bool slack_ok = (!lo_[sj] || resid >= *lo_[sj]) && (!hi_[sj] || resid <= *hi_[sj]);
            int aj = art_begin_ + i;
            lo_[aj] = Rat(0);
            if (slack_ok) {
                basis_[i] = sj;
                beta_[i] = resid;
                stat_[sj] = VStat::Basic;
                hi_[aj] = Rat(0);  // unused artificial stays fixed at zero
                rows_[i][aj] = 1;
            } else {
                // Slack parked at the bound nearest its residual; the
                // artificial absorbs the remaining infeasibility.
                Rat sval;
                if (lo_[sj] && resid < *lo_[sj]) {
                    sval = *lo_[sj];
                    stat_[sj] = VStat::AtLo;
                } else {
                    sval = *hi_[sj];
                    stat_[sj] = VStat::AtHi;
                }
                Rat r2 = resid - sval;
                if (r2 < 0) {
                    for (auto& x : rows_[i]) x = -x;
                    r2 = -r2;
                }
                hi_[aj] = std::nullopt;
                rows_[i][aj] = 1;
                basis_[i] = aj;
                beta_[i] = r2;
                stat_[aj] = VStat::Basic;
                need_phase1_ = true;
            }
        }
        obj_.assign(total_, Rat(0));
    }

    Rat nonbasic_value(int j) const {
        switch (stat_[j]) {
            case VStat::AtLo: return *lo_[j];
            case VStat::AtHi: return *hi_[j];
            default: return Rat(0);
        }
    }

    Rat value_of(int j) const {
        if (stat_[j] == VStat::Basic) {
            for (std::size_t i = 0; i < basis_.size(); ++i)
                if (basis_[i] == j) return beta_[i];
        }
        return nonbasic_value(j);
    }

    void set_phase1_objective() {
        cost_.assign(total_, Rat(0));
        for (int j = art_begin_; j < total_; ++j) cost_[j] = 1;
        recompute_reduced_costs();
    }

    void set_phase2_objective() {
        cost_.assign(total_, Rat(0));
        Rat sign = lp_.sense == Sense::Minimize ? 1 : -1;
        for (const auto& [j, c] : lp_.objective) cost_[j] = sign * c;
        recompute_reduced_costs();
    }

    void recompute_reduced_costs() {
        obj_.assign(total_, Rat(0));
        for (int j = 0; j < total_; ++j) obj_[j] = cost_[j];
        for (std::size_t i = 0; i < basis_.size(); ++i) {
            const Rat& cb = cost_[basis_[i]];
            if (cb == 0) continue;
            for (int j = 0; j < total_; ++j)
                if (rows_[i][j] != 0) obj_[j] -= cb * rows_[i][j];
        }
    }

    Rat phase_objective_value() const {
        Rat v = 0;
        for (std::size_t i = 0; i < basis_.size(); ++i) v += cost_[basis_[i]] * beta_[i];
        for (int j = 0; j < total_; ++j)
            if (stat_[j] != VStat::Basic && cost_[j] != 0) v += cost_[j] * nonbasic_value(j);
        return v;
    }

    bool fixed_var(int j) const { return lo_[j] && hi_[j] && *lo_[j] == *hi_[j]; }

    // dir: +1 entering variable increases, -1 it decreases.
    bool eligible(int j, int& dir) const {
        if (stat_[j] == VStat::Basic || fixed_var(j)) return false;
        if (stat_[j] == VStat::AtLo && obj_[j] < 0) { dir = 1; return true; }
        if (stat_[j] == VStat::AtHi && obj_[j] > 0) { dir = -1; return true; }
        if (stat_[j] == VStat::FreeZero && obj_[j] != 0) { dir = obj_[j] < 0 ? 1 : -1; return true; }
        return false;
    }

    RunResult run() {
        int degenerate_run = 0;
        bool bland = false;
        while (true) {
            int jin = -1, dir = 0;
            if (bland) {
                for (int j = 0; j < total_; ++j) {
                    int d;
                    if (eligible(j, d)) { jin = j; dir = d; break; }
                }
            } else {
                Rat best = 0;
                for (int j = 0; j < total_; ++j) {
                    int d;
                    if (!eligible(j, d)) continue;
                    Rat score = obj_[j] < 0 ? -obj_[j] : obj_[j];
                    if (jin < 0 || score > best) { jin = j; dir = d; best = score; }
                }
            }
            if (jin < 0) return RunResult::Optimal;

            // Ratio test: how far can x_jin move in direction dir.
            std::optional<Rat> theta;
            int row = -1;
            bool leaving_to_lo = false;
            int m = static_cast<int>(rows_.size());
            for (int i = 0; i < m; ++i) {
                Rat alpha = Rat(dir) * rows_[i][jin];
                if (alpha == 0) continue;
                int bj = basis_[i];
                if (alpha > 0) {
                    if (!lo_[bj]) continue;
                    Rat lim = (beta_[i] - *lo_[bj]) / alpha;
                    if (!theta || lim < *theta ||
                        (lim == *theta && (row < 0 || bj < basis_[row]))) {
                        theta = lim; row = i; leaving_to_lo = true;
                    }
                } else {
                    if (!hi_[bj]) continue;
                    Rat lim = (beta_[i] - *hi_[bj]) / alpha;
                    if (!theta || lim < *theta ||
                        (lim == *theta && (row < 0 || bj < basis_[row]))) {
                        theta = lim; row = i; leaving_to_lo = false;
                    }
                }
            }
            // The entering variable may hit its own opposite bound first.
            std::optional<Rat> own_range;
            if (stat_[jin] == VStat::AtLo && hi_[jin]) own_range = *hi_[jin] - *lo_[jin];
            if (stat_[jin] == VStat::AtHi && lo_[jin]) own_range = *hi_[jin] - *lo_[jin];

            if (!theta && !own_range) return RunResult::Unbounded;
            bool bound_flip = own_range && (!theta || *own_range < *theta);

            Rat step = bound_flip ? *own_range : *theta;
            if (step == 0)
                ++degenerate_run;
            else
                degenerate_run = 0;
            if (degenerate_run > kDegenerateLimit) bland = true;

            if (bound_flip) {
                Rat delta = Rat(dir) * step;
                for (int i = 0; i < m; ++i)
                    if (rows_[i][jin] != 0) beta_[i] -= delta * rows_[i][jin];
                stat_[jin] = stat_[jin] == VStat::AtLo ? VStat::AtHi : VStat::AtLo;
                continue;
            }

            Rat enter_val = nonbasic_value(jin) + Rat(dir) * step;
            for (int i = 0; i < m; ++i)
                if (i != row && rows_[i][jin] != 0)
                    beta_[i] -= Rat(dir) * step * rows_[i][jin];

            int jout = basis_[row];
            stat_[jout] = leaving_to_lo ? VStat::AtLo : VStat::AtHi;
            basis_[row] = jin;
            stat_[jin] = VStat::Basic;
            beta_[row] = enter_val;

            // Gaussian elimination of the entering column.
            Rat piv = rows_[row][jin];
            if (piv != 1)
                for (auto& x : rows_[row]) if (x != 0) x /= piv;
            for (int i = 0; i < m; ++i) {
                if (i == row) continue;
                Rat f = rows_[i][jin];
                if (f == 0) continue;
                for (int j = 0; j < total_; ++j)
                    if (rows_[row][j] != 0) rows_[i][j] -= f * rows_[row][j];
            }
            Rat f = obj_[jin];
            if (f != 0)
                for (int j = 0; j < total_; ++j)
                    if (rows_[row][j] != 0) obj_[j] -= f * rows_[row][j];
        }
    }

    const LinearProgram& lp_;
    int slack_begin_ = 0, art_begin_ = 0, total_ = 0;
    std::vector<std::optional<Rat>> lo_, hi_;
    std::vector<VStat> stat_;
    std::vector<std::vector<Rat>> rows_;
    std::vector<int> basis_;
    std::vector<Rat> beta_;
    std::vector<Rat> obj_;   // reduced costs
    std::vector<Rat> cost_;  // current phase objective
    bool need_phase1_ = false;
};

}  // namespace

LpSolution solve_lp(const LinearProgram& lp) {
    lp.validate();
    Simplex s(lp);
    return s.solve();
}

}  // namespace interdict
