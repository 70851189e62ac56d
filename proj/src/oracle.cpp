#include "interdict/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace interdict {

namespace {

BigInt binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    BigInt r = 1;
    for (int i = 0; i < k; ++i) {
        r *= n - i;
        r /= i + 1;
    }
    return r;
}

Rat max_maxflow(const Instance& inst) {
    Rat best = 0;
    bool first = true;
    for (int t : inst.targets) {
        Rat v = maxflow(inst, t).value;
        if (first || v > best) best = v;
        first = false;
    }
    return best;
}

}  // namespace

OracleResult oracle_pc(const Instance& inst, int k, std::int64_t cap,
                       bool only_value) {
    inst.validate();
    std::vector<int> cand = inst.placeable_vertices();
    int n = static_cast<int>(cand.size());
    if (k < 0 || k > n) throw std::invalid_argument("budget k outside [0, placeable]");
    if (binomial(n, k) > cap)
        throw std::invalid_argument("subset count exceeds the oracle enumeration cap");

    OracleResult res;
    res.k = k;
    // Lexicographic k-subsets via index vector 0..k-1 then successor stepping.
    std::vector<int> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    bool first = true;
    while (true) {
        Placement p;
        for (int i : idx) p.sensors.insert(cand[i]);
        Rat val = evaluate_placement(inst, p);
        ++res.enumerated;
        if (first || val < res.value) {
            res.value = val;
            res.best.clear();
        }
        if (val == res.value) res.best.push_back(std::move(p.sensors));
        first = false;
        if (only_value && res.value == 0) break;

        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
    return res;
}

OracleResult oracle_pq(const Instance& inst, const Rat& q, std::int64_t cap) {
    inst.validate();
    Rat bound = (Rat(1) - q) * max_maxflow(inst);
    int n = static_cast<int>(inst.placeable_vertices().size());
    for (int k = 0; k <= n; ++k) {
        OracleResult r = oracle_pc(inst, k, cap);
        if (r.value <= bound) return r;
    }
    OracleResult res;
    res.status = LpStatus::Infeasible;
    return res;
}

Rat oracle_mincut(const Instance& inst, int target) {
    inst.validate();
    if (inst.n > 20) throw std::invalid_argument("cut enumeration capped at 20 vertices");
    if (!inst.targets.count(target)) throw std::invalid_argument("unknown target");

    // Free vertices may fall on either side; sources are pinned to the source
    // side and the target to the sink side.
    std::vector<int> free;
    for (int v = 0; v < inst.n; ++v)
        if (!inst.sources.count(v) && v != target) free.push_back(v);

    Rat best;
    bool first = true;
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << free.size()); ++mask) {
        std::vector<char> source_side(inst.n, 0);
        for (int s : inst.sources) source_side[s] = 1;
        for (std::size_t i = 0; i < free.size(); ++i)
            if (mask >> i & 1) source_side[free[i]] = 1;
        Rat crossing = 0;
        for (const auto& e : inst.edges)
            if (source_side[e.from] && !source_side[e.to]) crossing += e.capacity;
        if (first || crossing < best) best = crossing;
        first = false;
    }
    return best;
}

}  // namespace interdict
