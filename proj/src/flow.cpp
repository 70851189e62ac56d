#include "interdict/flow.hpp"

#include <queue>
#include <stdexcept>

namespace interdict {

namespace {

struct Arc {
    int to;
    Rat cap;   // residual capacity
    int rev;   // index of reverse arc in adj[to]
    bool forward;
};

class Dinic {
public:
    explicit Dinic(int n) : adj_(n), level_(n), iter_(n) {}

    void add_edge(int u, int v, const Rat& cap) {
        adj_[u].push_back({v, cap, static_cast<int>(adj_[v].size()), true});
        adj_[v].push_back({u, Rat(0), static_cast<int>(adj_[u].size()) - 1, false});
    }

    Rat run(int s, int t) {
        Rat flow = 0;
        while (bfs(s, t)) {
            std::fill(iter_.begin(), iter_.end(), 0);
            while (true) {
                Rat f = dfs(s, t, Rat(-1));
                if (f == 0) break;
                flow += f;
            }
        }
        return flow;
    }

    std::set<int> residual_reachable(int s) const {
        std::set<int> seen = {s};
        std::queue<int> q;
        q.push(s);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (const auto& a : adj_[u])
                if (a.cap > 0 && !seen.count(a.to)) {
                    seen.insert(a.to);
                    q.push(a.to);
                }
        }
        return seen;
    }

    const std::vector<std::vector<Arc>>& adj() const { return adj_; }

private:
    bool bfs(int s, int t) {
        std::fill(level_.begin(), level_.end(), -1);
        std::queue<int> q;
        level_[s] = 0;
        q.push(s);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (const auto& a : adj_[u])
                if (a.cap > 0 && level_[a.to] < 0) {
                    level_[a.to] = level_[u] + 1;
                    q.push(a.to);
                }
        }
        return level_[t] >= 0;
    }

    // f < 0 means unbounded budget on this path prefix.
    Rat dfs(int u, int t, Rat f) {
        if (u == t) return f;
        for (int& i = iter_[u]; i < static_cast<int>(adj_[u].size()); ++i) {
            Arc& a = adj_[u][i];
            if (a.cap <= 0 || level_[a.to] != level_[u] + 1) continue;
            Rat budget = (f < 0 || a.cap < f) ? a.cap : f;
            Rat d = dfs(a.to, t, budget);
            if (d > 0) {
                a.cap -= d;
                adj_[a.to][a.rev].cap += d;
                return d;
            }
        }
        return 0;
    }

    std::vector<std::vector<Arc>> adj_;
    std::vector<int> level_;
    std::vector<int> iter_;
};

}  // namespace

FlowResult maxflow(const Instance& inst, int t) {
    if (!inst.targets.count(t)) throw std::invalid_argument("vertex is not a target");
    if (inst.sources.empty()) throw std::invalid_argument("no sources");

    int sv = inst.n;  // internal super vertex
    Dinic dinic(inst.n + 1);
    Rat source_cap = inst.total_capacity() + 1;
    for (int s : inst.sources) dinic.add_edge(sv, s, source_cap);

    // Remember where each original edge landed to recover flows.
    std::vector<std::pair<int, int>> arc_pos;
    arc_pos.reserve(inst.edges.size());
    for (const auto& e : inst.edges) {
        arc_pos.push_back({e.from, static_cast<int>(dinic.adj()[e.from].size())});
        dinic.add_edge(e.from, e.to, e.capacity);
    }

    FlowResult res;
    res.value = dinic.run(sv, t);
    for (std::size_t i = 0; i < inst.edges.size(); ++i) {
        const Edge& e = inst.edges[i];
        const Arc& a = dinic.adj()[arc_pos[i].first][arc_pos[i].second];
        res.edge_flows[{e.from, e.to}] = e.capacity - a.cap;
    }
    std::set<int> reach = dinic.residual_reachable(sv);
    reach.erase(sv);
    res.min_cut_side = std::move(reach);
    return res;
}

Instance apply_placement(const Instance& inst, const Placement& d) {
    for (int v : d.sensors) {
        if (inst.sources.count(v) || inst.targets.count(v))
            throw std::invalid_argument("sensor placed on a source or target");
        if (inst.super_source && *inst.super_source == v)
            throw std::invalid_argument("sensor placed on the super source");
        if (v < 0 || v >= inst.n)
            throw std::invalid_argument("sensor vertex out of range");
    }
    Instance out = inst;
    for (auto& e : out.edges)
        if (d.sensors.count(e.from) || d.sensors.count(e.to)) e.capacity = 0;
    return out;
}

Rat evaluate_placement(const Instance& inst, const Placement& d) {
    if (inst.targets.empty()) throw std::invalid_argument("no targets");
    Instance g = apply_placement(inst, d);
    Rat best = 0;
    bool first = true;
    for (int t : inst.targets) {
        Rat v = maxflow(g, t).value;
        if (first || v > best) best = v;
        first = false;
    }
    return best;
}

}  // namespace interdict
