#include "interdict/relaxation.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace interdict {

namespace {

struct McArc {
    int to;
    Rat cap;   // residual
    Rat cost;
    int rev;
};

// Max-profit flow: maximize val(f) - sum_e f_e * theta_e over feasible
// S -> t flows. Successive shortest paths with potentials; augments while
// the cheapest source-target path costs less than one unit of value.
class ProfitFlow {
public:
    ProfitFlow(const Instance& inst, int target, const std::map<int, Rat>& d)
        : inst_(inst), adj_(inst.n + 1) {
        auto dv = [&d](int v) {
            auto it = d.find(v);
            return it == d.end() ? Rat(0) : it->second;
        };
        int sigma = inst.n;
        Rat big = inst.total_capacity() + 1;
        for (int s : inst_.sources) add_arc(sigma, s, big, Rat(0));
        edge_arc_.reserve(inst_.edges.size());
        for (const auto& e : inst_.edges) {
            edge_arc_.push_back({e.from, static_cast<int>(adj_[e.from].size())});
            add_arc(e.from, e.to, e.capacity, dv(e.from) + dv(e.to));
        }
        run(sigma, target);
    }

    Rat flow_value;   // val(f)
    Rat flow_cost;    // sum_e f_e * theta_e
    // Flow on each original edge, by edge index.
    Rat edge_flow(std::size_t i) const {
        const auto& [u, k] = edge_arc_[i];
        return inst_.edges[i].capacity - adj_[u][k].cap;
    }

private:
    void add_arc(int u, int v, const Rat& cap, const Rat& cost) {
        adj_[u].push_back({v, cap, cost, static_cast<int>(adj_[v].size())});
        adj_[v].push_back({u, Rat(0), -cost, static_cast<int>(adj_[u].size()) - 1});
    }

    void run(int sigma, int target) {
        flow_value = 0;
        flow_cost = 0;
        int n = static_cast<int>(adj_.size());
        std::vector<Rat> pot(n, Rat(0));
        while (true) {
            // Dijkstra on reduced costs; deterministic tie-break by node id.
            std::vector<std::optional<Rat>> dist(n);
            std::vector<std::pair<int, int>> parent(n, {-1, -1});  // (node, arc idx)
            std::set<std::pair<Rat, int>> queue;
            dist[sigma] = 0;
            queue.insert({Rat(0), sigma});
            while (!queue.empty()) {
                auto [du, u] = *queue.begin();
                queue.erase(queue.begin());
                if (*dist[u] < du) continue;
                for (int k = 0; k < static_cast<int>(adj_[u].size()); ++k) {
                    const McArc& a = adj_[u][k];
                    if (a.cap <= 0) continue;
                    Rat nd = du + a.cost + pot[u] - pot[a.to];
                    if (!dist[a.to] || nd < *dist[a.to]) {
                        if (dist[a.to]) queue.erase({*dist[a.to], a.to});
                        dist[a.to] = nd;
                        parent[a.to] = {u, k};
                        queue.insert({nd, a.to});
                    }
                }
            }
            if (!dist[target]) break;
            Rat true_cost = *dist[target] + pot[target];
            if (true_cost >= 1) break;

            Rat bottleneck;
            bool first = true;
            for (int v = target; v != sigma;) {
                auto [u, k] = parent[v];
                const McArc& a = adj_[u][k];
                if (first || a.cap < bottleneck) bottleneck = a.cap;
                first = false;
                v = u;
            }
            for (int v = target; v != sigma;) {
                auto [u, k] = parent[v];
                McArc& a = adj_[u][k];
                a.cap -= bottleneck;
                adj_[v][a.rev].cap += bottleneck;
                v = u;
            }
            flow_value += bottleneck;
            flow_cost += bottleneck * true_cost;

            Rat cap_dist = *dist[target];
            for (int v = 0; v < n; ++v) {
                Rat dv = dist[v] ? (*dist[v] < cap_dist ? *dist[v] : cap_dist) : cap_dist;
                pot[v] += dv;
            }
        }
    }

    const Instance& inst_;
    std::vector<std::vector<McArc>> adj_;
    std::vector<std::pair<int, int>> edge_arc_;
};

// Minimum-cost unit path packing from the sources to one target. Vertices are
// split so sensor-eligible vertices admit at most one path, and every original
// edge carries at most one path; the cost of routing through a sensor site is
// its current fractional sensor value, so the packing prefers paths the master
// solution leaves unguarded. Augments until no path remains.
class PathPacking {
public:
    using Path = PackedPath;

    PathPacking(const Instance& inst, int target, const std::map<int, Rat>& d)
        : inst_(inst), target_(target), adj_(2 * inst.n + 1) {
        auto dv = [&d](int v) {
            auto it = d.find(v);
            return it == d.end() ? Rat(0) : it->second;
        };
        const int n = inst.n;
        sigma_ = 2 * n;
        const Rat big(static_cast<int>(inst.edges.size()) + 1);
        for (int s : inst.sources)
            if (s != target) add_arc(sigma_, s, big, Rat(0), -1, -1);
        for (int v = 0; v < n; ++v) {
            if (v == target) continue;
            if (inst.placeable(v))
                add_arc(v, n + v, Rat(1), dv(v), -1, v);
            else
                add_arc(v, n + v, big, Rat(0), -1, -1);
        }
        for (std::size_t i = 0; i < inst.edges.size(); ++i) {
            const Edge& e = inst.edges[i];
            if (e.capacity == 0 || e.from == target) continue;
            add_arc(n + e.from, e.to, Rat(1), Rat(0), static_cast<int>(i), -1);
        }
        run();
        decompose();
    }

    std::vector<Path> paths;

private:
    struct PArc {
        int to;
        Rat cap;  // residual
        Rat cost;
        int rev;
        bool forward;
        int orig_edge;  // original edge index, or -1
        int site;       // sensor-eligible vertex of a split arc, or -1
    };

    void add_arc(int u, int v, const Rat& cap, const Rat& cost, int orig_edge,
                 int site) {
        adj_[u].push_back({v, cap, cost, static_cast<int>(adj_[v].size()), true,
                           orig_edge, site});
        adj_[v].push_back({u, Rat(0), -cost,
                           static_cast<int>(adj_[u].size()) - 1, false, -1, -1});
    }

    void run() {
        int n = static_cast<int>(adj_.size());
        std::vector<Rat> pot(n, Rat(0));
        while (true) {
            std::vector<std::optional<Rat>> dist(n);
            std::vector<std::pair<int, int>> parent(n, {-1, -1});
            std::set<std::pair<Rat, int>> queue;
            dist[sigma_] = 0;
            queue.insert({Rat(0), sigma_});
            while (!queue.empty()) {
                auto [du, u] = *queue.begin();
                queue.erase(queue.begin());
                if (*dist[u] < du) continue;
                for (int k = 0; k < static_cast<int>(adj_[u].size()); ++k) {
                    const PArc& a = adj_[u][k];
                    if (a.cap <= 0) continue;
                    Rat nd = du + a.cost + pot[u] - pot[a.to];
                    if (!dist[a.to] || nd < *dist[a.to]) {
                        if (dist[a.to]) queue.erase({*dist[a.to], a.to});
                        dist[a.to] = nd;
                        parent[a.to] = {u, k};
                        queue.insert({nd, a.to});
                    }
                }
            }
            if (!dist[target_]) break;
            // Every source-target path crosses a unit arc, so augment by one.
            for (int v = target_; v != sigma_;) {
                auto [u, k] = parent[v];
                PArc& a = adj_[u][k];
                a.cap -= 1;
                adj_[v][a.rev].cap += 1;
                v = u;
            }
            for (int v = 0; v < n; ++v)
                if (dist[v]) pot[v] += *dist[v];
        }
    }

    // Flow on a forward arc is the residual of its reverse arc. Walk unit
    // paths from the super source; a revisited vertex marks a zero-net cycle,
    // which the walk cancels by truncating back to the first visit.
    void decompose() {
        auto flow_of = [this](int u, int k) -> Rat& {
            const PArc& a = adj_[u][k];
            return adj_[a.to][a.rev].cap;
        };
        while (true) {
            bool started = false;
            for (int k = 0; k < static_cast<int>(adj_[sigma_].size()) && !started;
                 ++k)
                if (adj_[sigma_][k].forward && flow_of(sigma_, k) > 0)
                    started = true;
            if (!started) break;

            Path p;
            std::vector<int> visited_at(adj_.size(), -1);
            std::vector<std::pair<int, int>> trail;  // (node, arc idx taken)
            int cur = sigma_;
            bool ok = true;
            while (cur != target_) {
                if (visited_at[cur] >= 0) {
                    // The cycle's flow was already removed while walking it;
                    // drop its trail entries and visit marks.
                    std::size_t back = visited_at[cur];
                    for (std::size_t i = back; i < trail.size(); ++i)
                        visited_at[trail[i].first] = -1;
                    trail.resize(back);
                }
                visited_at[cur] = static_cast<int>(trail.size());
                int taken = -1;
                for (int k = 0; k < static_cast<int>(adj_[cur].size()); ++k)
                    if (adj_[cur][k].forward && flow_of(cur, k) > 0) {
                        taken = k;
                        break;
                    }
                if (taken < 0) {
                    ok = false;  // should not happen; abandon decomposition
                    break;
                }
                flow_of(cur, taken) -= 1;
                adj_[cur][taken].cap += 1;
                trail.push_back({cur, taken});
                cur = adj_[cur][taken].to;
            }
            if (!ok) break;
            bool have_bottleneck = false;
            for (const auto& [u, k] : trail) {
                const PArc& a = adj_[u][k];
                if (a.site >= 0) p.sites.push_back(a.site);
                if (a.orig_edge >= 0) {
                    const Rat& c = inst_.edges[a.orig_edge].capacity;
                    if (!have_bottleneck || c < p.bottleneck) p.bottleneck = c;
                    have_bottleneck = true;
                }
            }
            if (have_bottleneck) paths.push_back(std::move(p));
        }
    }

    const Instance& inst_;
    int target_;
    int sigma_;
    std::vector<std::vector<PArc>> adj_;
};

}  // namespace

std::vector<PackedPath> path_packing(const Instance& inst, int target,
                                     const std::map<int, Rat>& site_cost) {
    return PathPacking(inst, target, site_cost).paths;
}

RelaxationSolver::RelaxationSolver(const Formulation& f)
    : kind_(f.kind), instance_(f.instance), param_(f.param) {
    if (f.kind == Formulation::Kind::PQ) {
        if (!f.bound_a) throw std::invalid_argument("PQ formulation missing flow bound");
        bound_a_ = *f.bound_a;
    }
    placeable_ = instance_.placeable_vertices();
}

RelaxationSolver::Cut RelaxationSolver::separate(int target,
                                                 const std::map<int, Rat>& d) const {
    ProfitFlow pf(instance_, target, d);
    Cut cut;
    cut.flow_value = pf.flow_value;
    for (std::size_t i = 0; i < instance_.edges.size(); ++i) {
        Rat fe = pf.edge_flow(i);
        if (fe == 0) continue;
        const Edge& e = instance_.edges[i];
        if (instance_.placeable(e.from)) cut.weight[e.from] += fe;
        if (instance_.placeable(e.to)) cut.weight[e.to] += fe;
    }
    return cut;
}

std::optional<RelaxationSolver::Cut> RelaxationSolver::separate_packing(
    int target, const std::map<int, Rat>& d) const {
    PathPacking packing(instance_, target, d);

    // Paths with no sensor-eligible vertex can never be closed; their
    // bottleneck flow is routable regardless of the placement and eats into
    // the flow bound. Whatever budget remains caps how many closable paths
    // may stay open: since the paths share no edges, any subset is routable
    // at its bottlenecks simultaneously, so an integral placement must put a
    // sensor on all but the cheapest-to-keep paths. Sensors also cannot be
    // shared between paths (paths are disjoint on sensor-eligible vertices),
    // giving the covering inequality  sum_{v in union} d_v >= r.
    Rat budget = bound_a_;
    std::vector<Rat> closable;
    std::map<int, Rat> weight;
    for (const auto& p : packing.paths) {
        if (p.sites.empty()) {
            budget -= p.bottleneck;
        } else {
            closable.push_back(p.bottleneck);
            for (int v : p.sites) weight[v] = 1;
        }
    }
    Cut cut;
    if (budget < 0) {
        // Uncloseable flow already exceeds the bound: no placement works.
        cut.flow_value = bound_a_ + 1;
        return cut;
    }
    std::sort(closable.begin(), closable.end());
    std::size_t keep = 0;
    Rat kept = 0;
    while (keep < closable.size() && kept + closable[keep] <= budget)
        kept += closable[keep++];
    Rat r(static_cast<int>(closable.size() - keep));
    if (r <= 0) return std::nullopt;

    Rat lhs = 0;
    for (const auto& [v, w] : weight) {
        auto it = d.find(v);
        if (it != d.end()) lhs += w * it->second;
    }
    if (lhs >= r) return std::nullopt;  // not violated at the current point
    cut.flow_value = r + bound_a_;
    cut.weight = std::move(weight);
    return cut;
}

Rat RelaxationSolver::cut_value(int target, const std::map<int, Rat>& d) const {
    ProfitFlow pf(instance_, target, d);
    return pf.flow_value - pf.flow_cost;
}

RelaxedSolution RelaxationSolver::solve(
    const std::map<int, std::pair<Rat, Rat>>& d_bounds,
    const std::optional<Rat>& stop_above, bool stop_strict,
    const std::optional<Deadline>& deadline) {
    constexpr int kMaxRounds = 100000;

    // The full pool can grow into the hundreds across branch-and-bound
    // nodes, and only a handful of cuts bind at any optimum. Screening the
    // inactive ones arithmetically and keeping the simplex rows down to the
    // active set makes each round cheap; any pool cut the current point
    // violates is activated before new separation work is attempted.
    auto cut_lhs = [this](const Cut& cut, const std::map<int, Rat>& d,
                          const Rat& m_star) {
        Rat lhs = kind_ == Formulation::Kind::PC ? m_star : Rat(0);
        for (const auto& [v, w] : cut.weight) {
            auto it = d.find(v);
            if (it != d.end()) lhs += w * it->second;
        }
        return lhs;
    };
    auto cut_rhs = [this](const Cut& cut) {
        return kind_ == Formulation::Kind::PC ? cut.flow_value
                                              : cut.flow_value - bound_a_;
    };

    for (int round = 0; round < kMaxRounds; ++round) {
        if (deadline && std::chrono::steady_clock::now() > *deadline)
            throw SolveTimeout();
        LinearProgram master;
        std::map<int, int> var_of;
        for (int v : placeable_) {
            auto it = d_bounds.find(v);
            Rat lo = it == d_bounds.end() ? Rat(0) : it->second.first;
            Rat hi = it == d_bounds.end() ? Rat(1) : it->second.second;
            var_of[v] = master.add_var("d_" + std::to_string(v), lo, hi);
        }
        int m_var = -1;
        if (kind_ == Formulation::Kind::PC) {
            m_var = master.add_var("M", Rat(0), std::nullopt);
            std::map<int, Rat> budget;
            for (int v : placeable_) budget[var_of[v]] = 1;
            master.add_constraint(std::move(budget), Rel::EQ, param_);
            master.objective[m_var] = 1;
        } else {
            for (int v : placeable_) master.objective[var_of[v]] = 1;
        }
        for (std::size_t i = 0; i < pool_.size(); ++i) {
            if (!active_[i]) continue;
            const Cut& cut = pool_[i];
            std::map<int, Rat> c;
            for (const auto& [v, w] : cut.weight) c[var_of.at(v)] = w;
            if (kind_ == Formulation::Kind::PC) c[m_var] += 1;
            master.add_constraint(std::move(c), Rel::GE, cut_rhs(cut));
        }
        LpSolution ms = solve_lp(master);
        if (ms.status == LpStatus::Infeasible) {
            RelaxedSolution out;
            out.status = LpStatus::Infeasible;
            return out;
        }
        if (ms.status != LpStatus::Optimal)
            throw std::logic_error("relaxation master cannot be unbounded");

        std::map<int, Rat> d_star;
        for (int v : placeable_)
            if (ms.values[var_of[v]] != 0) d_star[v] = ms.values[var_of[v]];
        Rat m_star = kind_ == Formulation::Kind::PC ? ms.values[m_var] : Rat(0);

        // Reactivate any screened pool cut the current point violates; the
        // master optimum is only a trustworthy bound once none are.
        bool reactivated = false;
        for (std::size_t i = 0; i < pool_.size(); ++i) {
            if (active_[i]) continue;
            if (cut_lhs(pool_[i], d_star, m_star) < cut_rhs(pool_[i])) {
                active_[i] = 1;
                reactivated = true;
            }
        }
        if (reactivated) continue;

        if (stop_above && (stop_strict ? ms.objective > *stop_above
                                       : ms.objective >= *stop_above)) {
            RelaxedSolution out;
            out.status = LpStatus::Optimal;
            out.objective = ms.objective;
            out.pruned = true;
            return out;
        }

        bool violated = false;
        std::map<int, Rat> cut_vals;
        for (int t : instance_.targets) {
            Cut cut = separate(t, d_star);
            Rat g = cut.flow_value;
            for (const auto& [v, w] : cut.weight) {
                auto it = d_star.find(v);
                if (it != d_star.end()) g -= w * it->second;
            }
            cut_vals[t] = g;
            Rat limit = kind_ == Formulation::Kind::PC ? m_star : bound_a_;
            if (g > limit) {
                pool_.push_back(std::move(cut));
                active_.push_back(1);
                violated = true;
            }
        }
        if (integer_cuts_ && kind_ == Formulation::Kind::PQ) {
            // Also look for violated path covering cuts. They are valid for
            // integral placements but can cut off fractional points, so they
            // strengthen branch-and-bound bounds without affecting the plain
            // relaxation.
            for (int t : instance_.targets) {
                auto cut = separate_packing(t, d_star);
                if (cut) {
                    pool_.push_back(std::move(*cut));
                    active_.push_back(1);
                    violated = true;
                }
            }
        }
        if (!violated) {
            // Retire cuts with positive slack before the next solve; they
            // stay in the pool and get screened back in if ever violated.
            for (std::size_t i = 0; i < pool_.size(); ++i) {
                if (!active_[i]) continue;
                if (cut_lhs(pool_[i], d_star, m_star) > cut_rhs(pool_[i]))
                    active_[i] = 0;
            }
            RelaxedSolution out;
            out.status = LpStatus::Optimal;
            out.objective = ms.objective;
            out.d = std::move(d_star);
            out.cut_values = std::move(cut_vals);
            return out;
        }
    }
    throw std::logic_error("relaxation constraint generation did not converge");
}

}  // namespace interdict
