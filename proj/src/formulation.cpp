#include "interdict/formulation.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace interdict {

namespace {

// Shared variable layout and the constraint families common to PQ and PC:
// source side fixed in every cut (4), target outside its own cut (5), edge
// membership linking (6), and the no-sensor fixings on S (8), T (9) and the
// super source (13).
void build_common(Formulation& f) {
    const Instance& inst = f.instance;
    for (int v = 0; v < inst.n; ++v) {
        int j = f.lp.add_var("d_" + std::to_string(v), Rat(0), Rat(1));
        f.var_d[v] = j;
        f.integer_vars.insert(j);
    }
    for (int t : inst.targets) {
        for (int v = 0; v < inst.n; ++v) {
            int j = f.lp.add_var("a_" + std::to_string(t) + "_" + std::to_string(v),
                                 Rat(0), Rat(1));
            f.var_a[{t, v}] = j;
            f.integer_vars.insert(j);
        }
        for (std::size_t e = 0; e < inst.edges.size(); ++e) {
            int j = f.lp.add_var("cut_" + std::to_string(t) + "_" +
                                     std::to_string(inst.edges[e].from) + "_" +
                                     std::to_string(inst.edges[e].to),
                                 Rat(0), Rat(1));
            f.var_cut[{t, static_cast<int>(e)}] = j;
            f.integer_vars.insert(j);
        }
    }
    for (int t : inst.targets) {
        for (int s : inst.sources)
            f.lp.add_constraint({{f.var_a.at({t, s}), Rat(1)}}, Rel::EQ, Rat(1));
        f.lp.add_constraint({{f.var_a.at({t, t}), Rat(1)}}, Rel::EQ, Rat(0));
        for (std::size_t e = 0; e < inst.edges.size(); ++e) {
            const Edge& edge = inst.edges[e];
            std::map<int, Rat> c;
            c[f.var_cut.at({t, static_cast<int>(e)})] = 1;
            c[f.var_a.at({t, edge.from})] += -1;
            c[f.var_a.at({t, edge.to})] += 1;
            c[f.var_d.at(edge.from)] += 1;
            c[f.var_d.at(edge.to)] += 1;
            f.lp.add_constraint(std::move(c), Rel::GE, Rat(0));
        }
    }
    for (int s : inst.sources)
        f.lp.add_constraint({{f.var_d.at(s), Rat(1)}}, Rel::EQ, Rat(0));
    for (int t : inst.targets)
        f.lp.add_constraint({{f.var_d.at(t), Rat(1)}}, Rel::EQ, Rat(0));
    if (inst.super_source)
        f.lp.add_constraint({{f.var_d.at(*inst.super_source), Rat(1)}}, Rel::EQ, Rat(0));
}

Rat compute_max_maxflow(const Instance& inst) {
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

Formulation build_pq(const Instance& inst, const Rat& q) {
    if (q < 0 || q > 1) throw std::invalid_argument("quality factor outside [0,1]");
    if (inst.sources.empty() || inst.targets.empty())
        throw std::invalid_argument("sources and targets must be nonempty");
    Formulation f;
    f.kind = Formulation::Kind::PQ;
    f.instance = inst;
    f.param = q;
    build_common(f);
    f.max_maxflow = compute_max_maxflow(inst);
    f.bound_a = (Rat(1) - q) * f.max_maxflow;
    for (int t : inst.targets) {
        std::map<int, Rat> c;
        for (std::size_t e = 0; e < inst.edges.size(); ++e)
            c[f.var_cut.at({t, static_cast<int>(e)})] = inst.edges[e].capacity;
        f.lp.add_constraint(std::move(c), Rel::LE, *f.bound_a);
    }
    for (int v = 0; v < inst.n; ++v) f.lp.objective[f.var_d.at(v)] = 1;
    f.lp.sense = Sense::Minimize;
    return f;
}

Formulation build_pc(const Instance& inst, int k) {
    if (inst.sources.empty() || inst.targets.empty())
        throw std::invalid_argument("sources and targets must be nonempty");
    if (k < 0 || k > static_cast<int>(inst.placeable_vertices().size()))
        throw std::invalid_argument("sensor budget exceeds placeable vertices");
    Formulation f;
    f.kind = Formulation::Kind::PC;
    f.instance = inst;
    f.param = k;
    build_common(f);
    f.max_maxflow = compute_max_maxflow(inst);
    f.var_m = f.lp.add_var("M", Rat(0), std::nullopt);
    {
        std::map<int, Rat> c;
        for (int v = 0; v < inst.n; ++v) c[f.var_d.at(v)] = 1;
        f.lp.add_constraint(std::move(c), Rel::EQ, Rat(k));
    }
    for (int t : inst.targets) {
        std::map<int, Rat> c;
        for (std::size_t e = 0; e < inst.edges.size(); ++e)
            c[f.var_cut.at({t, static_cast<int>(e)})] = inst.edges[e].capacity;
        c[*f.var_m] = -1;
        f.lp.add_constraint(std::move(c), Rel::LE, Rat(0));
    }
    f.lp.objective[*f.var_m] = 1;
    f.lp.sense = Sense::Minimize;
    return f;
}

Formulation relax(const Formulation& f) {
    Formulation out = f;
    out.relaxed = true;
    for (const auto& [v, j] : f.var_d) out.integer_vars.erase(j);
    for (const auto& [te, j] : f.var_cut) out.integer_vars.erase(j);
    return out;
}

std::string format_lp_text(const Formulation& f) {
    std::ostringstream out;
    out << "\\ " << (f.kind == Formulation::Kind::PQ ? "PQ" : "PC")
        << (f.relaxed ? " relaxation" : " model") << "\n";
    out << "Minimize\n obj:";
    bool first = true;
    for (const auto& [j, c] : f.lp.objective) {
        if (c == 0) continue;
        out << (first ? " " : " + ");
        if (c != 1) out << rat_to_string(c) << " ";
        out << f.lp.vars[j].name;
        first = false;
    }
    out << "\nSubject To\n";
    int idx = 0;
    for (const auto& con : f.lp.constraints) {
        out << " c" << idx++ << ":";
        bool f1 = true;
        for (const auto& [j, c] : con.coeffs) {
            if (c == 0) continue;
            if (c < 0)
                out << (f1 ? " -" : " - ");
            else
                out << (f1 ? " " : " + ");
            Rat ab = c < 0 ? -c : c;
            if (ab != 1) out << rat_to_string(ab) << " ";
            out << f.lp.vars[j].name;
            f1 = false;
        }
        switch (con.rel) {
            case Rel::LE: out << " <= "; break;
            case Rel::EQ: out << " = "; break;
            case Rel::GE: out << " >= "; break;
        }
        out << rat_to_string(con.rhs) << "\n";
    }
    out << "Bounds\n";
    for (const auto& v : f.lp.vars) {
        if (v.lo && v.hi)
            out << " " << rat_to_string(*v.lo) << " <= " << v.name << " <= "
                << rat_to_string(*v.hi) << "\n";
        else if (v.lo)
            out << " " << v.name << " >= " << rat_to_string(*v.lo) << "\n";
        else if (v.hi)
            out << " " << v.name << " <= " << rat_to_string(*v.hi) << "\n";
        else
            out << " " << v.name << " free\n";
    }
    if (!f.integer_vars.empty()) {
        out << "Binary\n";
        for (int j : f.integer_vars) out << " " << f.lp.vars[j].name << "\n";
    }
    out << "End\n";
    return out.str();
}

void export_lp(const Formulation& f, const std::string& path) {
    std::ofstream file(path);
    if (!file) throw std::runtime_error("cannot write LP file: " + path);
    file << format_lp_text(f);
    if (!file) throw std::runtime_error("I/O failure writing LP file: " + path);
}

LpFileSummary parse_lp_summary_text(const std::string& text) {
    LpFileSummary sum;
    std::istringstream in(text);
    std::string line;
    enum { None, Objective, Constraints, Bounds, Binaries } section = None;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '\\') continue;
        if (line == "Minimize" || line == "Maximize") { section = Objective; continue; }
        if (line == "Subject To") { section = Constraints; continue; }
        if (line == "Bounds") { section = Bounds; continue; }
        if (line == "Binary") { section = Binaries; continue; }
        if (line == "End") break;
        switch (section) {
            case Objective: {
                std::istringstream ls(line);
                std::string name;
                ls >> name;
                if (!name.empty() && name.back() == ':') name.pop_back();
                sum.objective_name = name;
                break;
            }
            case Constraints: ++sum.num_constraints; break;
            case Bounds: ++sum.num_bounds; break;
            case Binaries: ++sum.num_binaries; break;
            case None: throw std::runtime_error("LP text before any section header");
        }
    }
    return sum;
}

LpFileSummary read_lp_summary(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open LP file: " + path);
    std::ostringstream buf;
    buf << f.rdbuf();
    return parse_lp_summary_text(buf.str());
}

}  // namespace interdict
