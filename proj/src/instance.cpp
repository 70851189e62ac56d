#include "interdict/instance.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace interdict {

std::vector<int> Instance::placeable_vertices() const {
    std::vector<int> out;
    for (int v = 0; v < n; ++v)
        if (placeable(v)) out.push_back(v);
    return out;
}

int Instance::edge_index(int u, int v) const {
    for (std::size_t i = 0; i < edges.size(); ++i)
        if (edges[i].from == u && edges[i].to == v) return static_cast<int>(i);
    return -1;
}

Rat Instance::total_capacity() const {
    Rat s = 0;
    for (const auto& e : edges) s += e.capacity;
    return s;
}

void Instance::validate() const {
    if (n < 0) throw std::invalid_argument("negative vertex count");
    std::set<std::pair<int, int>> seen;
    for (const auto& e : edges) {
        if (e.from < 0 || e.from >= n || e.to < 0 || e.to >= n)
            throw std::invalid_argument("edge endpoint out of range");
        if (e.from == e.to) throw std::invalid_argument("self-loop");
        if (!seen.insert({e.from, e.to}).second)
            throw std::invalid_argument("duplicate edge");
        if (e.capacity < 0) throw std::invalid_argument("negative capacity");
    }
    for (int s : sources)
        if (s < 0 || s >= n) throw std::invalid_argument("source out of range");
    for (int t : targets) {
        if (t < 0 || t >= n) throw std::invalid_argument("target out of range");
        if (sources.count(t)) throw std::invalid_argument("sources and targets overlap");
    }
    for (const auto& [v, r] : risk) {
        if (v < 0 || v >= n) throw std::invalid_argument("risk vertex out of range");
        if (r < 0 || r > 1) throw std::invalid_argument("risk value outside [0,1]");
    }
    if (super_source && (*super_source < 0 || *super_source >= n))
        throw std::invalid_argument("super source out of range");
}

Instance make_grid(int side) {
    if (side < 2) throw std::invalid_argument("grid side must be >= 2");
    Instance inst;
    inst.n = side * side;
    auto id = [side](int r, int c) { return r * side + c; };
    for (int r = 0; r < side; ++r) {
        for (int c = 0; c < side; ++c) {
            if (c + 1 < side) {
                inst.edges.push_back({id(r, c), id(r, c + 1), 1});
                inst.edges.push_back({id(r, c + 1), id(r, c), 1});
            }
            if (r + 1 < side) {
                inst.edges.push_back({id(r, c), id(r + 1, c), 1});
                inst.edges.push_back({id(r + 1, c), id(r, c), 1});
            }
        }
    }
    return inst;
}

Instance randomize_capacities(const Instance& inst, const Rat& lo, const Rat& hi,
                              std::uint64_t seed, std::int64_t granularity) {
    if (lo > hi) throw std::invalid_argument("capacity range is empty");
    if (lo < 0) throw std::invalid_argument("capacity range below zero");
    if (granularity < 1) throw std::invalid_argument("granularity must be >= 1");
    // Draws integer multiples of 1/granularity; the default granularity 1
    // gives the integral reading of the published capacity range.
    Rat slo = lo * granularity, shi = hi * granularity;
    BigInt clo = numerator(slo) / denominator(slo);
    if (Rat(clo) < slo) clo += 1;
    BigInt fhi = numerator(shi) / denominator(shi);
    if (Rat(fhi) > shi) fhi -= 1;
    if (clo > fhi) throw std::invalid_argument("no representable values in capacity range");
    std::int64_t a = clo.convert_to<std::int64_t>();
    std::int64_t b = fhi.convert_to<std::int64_t>();
    Instance out = inst;
    Rng rng(seed);
    for (auto& e : out.edges) e.capacity = Rat(rng.range(a, b), granularity);
    return out;
}

Instance sample_roles(const Instance& inst, int n_targets, int n_sources,
                      std::uint64_t seed) {
    Rng rng(seed);
    return sample_roles(inst, n_targets, n_sources, rng.next(), rng.next());
}

Instance sample_roles(const Instance& inst, int n_targets, int n_sources,
                      std::uint64_t t_seed, std::uint64_t s_seed) {
    if (n_targets < 0 || n_sources < 0 || n_targets + n_sources > inst.n)
        throw std::invalid_argument("role counts exceed vertex count");
    std::vector<int> pool(inst.n);
    for (int v = 0; v < inst.n; ++v) pool[v] = v;
    Instance out = inst;
    out.sources.clear();
    out.targets.clear();
    // Fisher-Yates prefix draws: the first n_targets become T from one
    // stream, then n_sources become S from the other.
    Rng t_rng(t_seed);
    for (int i = 0; i < n_targets; ++i) {
        int j = i + static_cast<int>(t_rng.below(pool.size() - i));
        std::swap(pool[i], pool[j]);
        out.targets.insert(pool[i]);
    }
    Rng s_rng(s_seed);
    for (int i = n_targets; i < n_targets + n_sources; ++i) {
        int j = i + static_cast<int>(s_rng.below(pool.size() - i));
        std::swap(pool[i], pool[j]);
        out.sources.insert(pool[i]);
    }
    return out;
}

Instance add_super_source(const Instance& inst) {
    if (!inst.has_risk()) throw std::invalid_argument("risk map required for super source");
    for (int v = 0; v < inst.n; ++v)
        if (!inst.targets.count(v) && !inst.risk.count(v))
            throw std::invalid_argument("risk map must cover all non-target vertices");
    Instance out = inst;
    int ss = inst.n;
    out.n = inst.n + 1;
    for (int v = 0; v < inst.n; ++v) {
        if (inst.targets.count(v)) continue;
        Rat outcap = 0;
        for (const auto& e : inst.edges)
            if (e.from == v) outcap += e.capacity;
        out.edges.push_back({ss, v, inst.risk.at(v) * outcap});
    }
    out.sources = {ss};
    out.super_source = ss;
    return out;
}

Instance cmfnip_gadget(const Instance& g, int budget) {
    if (g.sources.size() != 1 || g.targets.size() != 1)
        throw std::invalid_argument("gadget requires a single source and target");
    int s = *g.sources.begin();
    int t = *g.targets.begin();
    if (s == t) throw std::invalid_argument("source equals target");
    if (budget < 0) throw std::invalid_argument("negative budget");

    int copies = budget + 1;
    int m = static_cast<int>(g.edges.size());
    Rat big = g.total_capacity();

    // Layout: copies v_i at v*copies+i, then arc pair (e_u, e_v) per arc,
    // then s_0 and t_0.
    auto copy_id = [copies](int v, int i) { return v * copies + i; };
    int arc_base = g.n * copies;
    int s0 = arc_base + 2 * m;
    int t0 = s0 + 1;

    Instance out;
    out.n = t0 + 1;
    for (int j = 0; j < m; ++j) {
        const Edge& e = g.edges[j];
        int eu = arc_base + 2 * j;
        int ev = eu + 1;
        for (int i = 0; i < copies; ++i) {
            out.edges.push_back({copy_id(e.from, i), eu, big});
            out.edges.push_back({ev, copy_id(e.to, i), big});
        }
        out.edges.push_back({eu, ev, e.capacity});
    }
    for (int i = 0; i < copies; ++i) {
        out.edges.push_back({s0, copy_id(s, i), big});
        out.edges.push_back({copy_id(t, i), t0, big});
    }
    out.sources = {s0};
    out.targets = {t0};
    return out;
}

namespace {

[[noreturn]] void parse_fail(int line_no, const std::string& msg) {
    throw std::runtime_error("parse error at line " + std::to_string(line_no) + ": " + msg);
}

}  // namespace

Instance parse_instance_text(const std::string& text) {
    Instance inst;
    bool saw_nodes = false;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    std::set<std::pair<int, int>> seen_edges;
    while (std::getline(in, line)) {
        ++line_no;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw)) continue;
        if (kw == "nodes") {
            if (!(ls >> inst.n) || inst.n < 0) parse_fail(line_no, "bad node count");
            saw_nodes = true;
        } else if (kw == "edge") {
            int u, v;
            std::string cap;
            if (!(ls >> u >> v >> cap)) parse_fail(line_no, "bad edge line");
            auto c = parse_rational(cap);
            if (!c) parse_fail(line_no, "bad capacity '" + cap + "'");
            if (!seen_edges.insert({u, v}).second)
                parse_fail(line_no, "duplicate edge " + std::to_string(u) + "->" + std::to_string(v));
            inst.edges.push_back({u, v, *c});
        } else if (kw == "sources" || kw == "targets") {
            int v;
            while (ls >> v)
                (kw == "sources" ? inst.sources : inst.targets).insert(v);
        } else if (kw == "risk") {
            int v;
            std::string val;
            if (!(ls >> v >> val)) parse_fail(line_no, "bad risk line");
            auto r = parse_rational(val);
            if (!r) parse_fail(line_no, "bad risk value '" + val + "'");
            inst.risk[v] = *r;
        } else if (kw == "super_source") {
            int v;
            if (!(ls >> v)) parse_fail(line_no, "bad super_source line");
            inst.super_source = v;
        } else {
            parse_fail(line_no, "unknown keyword '" + kw + "'");
        }
    }
    if (!saw_nodes) throw std::runtime_error("parse error: missing 'nodes' line");
    inst.validate();
    return inst;
}

std::string format_instance_text(const Instance& inst) {
    std::ostringstream out;
    out << "nodes " << inst.n << "\n";
    for (const auto& e : inst.edges)
        out << "edge " << e.from << " " << e.to << " " << rat_to_string(e.capacity) << "\n";
    if (!inst.sources.empty()) {
        out << "sources";
        for (int s : inst.sources) out << " " << s;
        out << "\n";
    }
    if (!inst.targets.empty()) {
        out << "targets";
        for (int t : inst.targets) out << " " << t;
        out << "\n";
    }
    for (const auto& [v, r] : inst.risk)
        out << "risk " << v << " " << rat_to_string(r) << "\n";
    if (inst.super_source) out << "super_source " << *inst.super_source << "\n";
    return out.str();
}

Instance read_instance(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open instance file: " + path);
    std::ostringstream buf;
    buf << f.rdbuf();
    return parse_instance_text(buf.str());
}

void write_instance(const Instance& inst, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write instance file: " + path);
    f << format_instance_text(inst);
}

bool structurally_equal(const Instance& a, const Instance& b) {
    if (a.n != b.n || a.sources != b.sources || a.targets != b.targets ||
        a.risk != b.risk || a.super_source != b.super_source)
        return false;
    if (a.edges.size() != b.edges.size()) return false;
    auto key = [](const Instance& x) {
        std::map<std::pair<int, int>, Rat> m;
        for (const auto& e : x.edges) m[{e.from, e.to}] = e.capacity;
        return m;
    };
    return key(a) == key(b);
}

}  // namespace interdict
