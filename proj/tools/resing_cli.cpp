// Command-line front end: parses problem files, dispatches to the
// engine, and prints exact rational reports as text or JSON.
// Exit codes: 0 success/verified, 1 legitimate negative verdict, 2 error.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "resing/io.hpp"

using namespace resing;

namespace {

struct Emit {
    bool json = false;
};

RationalPoint parse_point(const std::string& text, size_t nvars) {
    RationalPoint p;
    std::stringstream ss(text);
    std::string coord;
    while (std::getline(ss, coord, ',')) p.coords.push_back(parse_rational(coord));
    if (p.coords.size() != nvars)
        throw InputError("point has " + std::to_string(p.coords.size()) + " coordinates, chart has " +
                         std::to_string(nvars));
    return p;
}

CoordSubspace parse_vars(const std::string& text, const Chart& chart) {
    CoordSubspace s;
    std::stringstream ss(text);
    std::string name;
    while (std::getline(ss, name, ',')) {
        int idx = chart.var_index(name);
        if (idx < 0) throw InputError("unknown variable: " + name);
        s.zeroed.insert(idx);
    }
    if (s.zeroed.empty()) throw InputError("empty variable list");
    return s;
}

void print(const Emit& emit, const Json& j, const std::string& text) {
    if (emit.json) std::cout << j.dump(2) << "\n";
    else std::cout << text;
}

int cmd_order(const std::string& file, const std::string& point, const std::string& along,
              const Emit& emit) {
    Problem p = load_problem(file);
    Rational value;
    if (!along.empty()) {
        value = delta_along(p.space, parse_vars(along, p.space.chart));
    } else if (!point.empty()) {
        value = delta(p.space, parse_point(point, p.space.nvars()));
    } else {
        throw InputError("order: pass --point or --along");
    }
    Json j;
    j["order"] = to_string(value);
    print(emit, j, to_string(value) + "\n");
    return 0;
}

int cmd_sing(const std::string& file, const Emit& emit) {
    Problem p = load_problem(file);
    IdealBasis basis = singular_locus_in_chart(p.space);
    GroebnerBasis gb = groebner(basis);
    int dim = gb.contains_one() ? -1 : dimension(IdealBasis(gb.elems, basis.nvars));
    Json j;
    Json gens = Json::array();
    std::ostringstream os;
    os << "groebner basis:\n";
    for (const auto& g : gb.elems) {
        gens.push_back(to_string(g, p.space.chart.vars));
        os << "  " << to_string(g, p.space.chart.vars) << "\n";
    }
    os << "dimension: " << dim << "\n";
    j["groebner"] = std::move(gens);
    j["dimension"] = dim;
    j["empty"] = dim < 0;
    print(emit, j, os.str());
    return 0;
}

int cmd_blowup(const std::string& file, const std::string& center_text, const Emit& emit) {
    Problem p = load_problem(file);
    CoordSubspace center = parse_vars(center_text, p.space.chart);
    if (!is_permissible_center(p.space, center)) {
        std::cerr << "center is not permissible (generic order < 1)\n";
        return 1;
    }
    LabelAllocator ids;
    for (const auto& [id, idx] : p.space.chart.divisor) ids.next = std::max(ids.next, id + 1);

    Json charts = Json::array();
    std::ostringstream os;
    auto report = [&](const Chart& child, const ChartMap& map, const char* tag) {
        auto t = controlled_transform(p.space, child, map);
        Json e;
        e["chart"] = tag;
        if (t) {
            e["space"] = space_to_json(*t);
            e["sing_empty"] = sing_is_empty(*t);
            os << "chart " << tag << ": " << describe_space(*t)
               << (sing_is_empty(*t) ? "  [nonsingular]" : "") << "\n";
        } else {
            e["space"] = nullptr;
            os << "chart " << tag << ": subspace missing\n";
        }
        charts.push_back(std::move(e));
    };
    if (center.size() == 1) {
        auto [child, map] = identity_division_chart(p.space.chart, *center.zeroed.begin(), ids, 0);
        report(child, map, p.space.chart.vars[*center.zeroed.begin()].c_str());
    } else {
        for (auto& [child, map] : blowup_charts(p.space.chart, center, ids, 0))
            report(child, map, p.space.chart.vars[map.exceptional->second].c_str());
    }
    Json j;
    j["charts"] = std::move(charts);
    print(emit, j, os.str());
    return 0;
}

int cmd_project(const std::string& file, const std::string& zname, const Emit& emit) {
    Problem p = load_problem(file);
    int z = p.space.chart.var_index(zname);
    if (z < 0) throw InputError("unknown variable: " + zname);
    std::optional<uint64_t> over;
    if (auto label = p.space.chart.label_on(z)) over = *label;
    ProjectedSpace proj = coefficient_ideals({p.space, z, over});
    Json j = space_to_json(proj.space);
    print(emit, j, describe_space(proj.space) + "\n");
    return 0;
}

int cmd_adjust(const std::string& file, const Emit& emit) {
    Problem p = load_problem(file);
    IdealisticSpace sn = normalize(p.space);
    LogFactor z = extract_log_factor(sn);
    auto mu = cofactorial_order(sn, z);
    Json j;
    std::ostringstream os;
    j["factor"] = to_string(z.trivial() ? Poly::constant(sn.nvars(), 1) : z.as_poly(sn),
                            sn.chart.vars);
    os << "Z = " << j["factor"].get<std::string>() << "\n";
    if (!mu) {
        j["mu"] = "-inf";
        os << "mu = -inf (empty singular locus)\n";
        print(emit, j, os.str());
        return 0;
    }
    j["mu"] = *mu;
    os << "mu = " << *mu << "\n";
    if (*mu == 0) {
        j["monomial"] = true;
        os << "co-factor order is zero: the space is monomial\n";
        print(emit, j, os.str());
        return 0;
    }
    IdealisticSpace adj = adjust(sn, z, *mu);
    j["adjusted"] = space_to_json(adj);
    os << "adjusted: " << describe_space(adj) << "\n";
    print(emit, j, os.str());
    return 0;
}

int cmd_monomial(const std::string& file, const Emit& emit) {
    Problem p = load_problem(file);
    IdealisticSpace sn = normalize(p.space);
    LogFactor z = extract_log_factor(sn);
    // The input must itself be logarithmic: constant co-factors.
    Monomial zm = z.as_monomial(sn);
    for (const auto& mi : sn.ideals) {
        if (mi.f.is_zero()) continue;
        if (!divide_exact(mi.f, zm).is_constant())
            throw InputError("monomial: input ideal is not a divisor monomial");
    }
    LogState st;
    st.d = sn.ideals.front().d;
    st.a = z.exps;
    LabelAllocator ids;
    for (const auto& [id, idx] : sn.chart.divisor) ids.next = std::max(ids.next, id + 1);
    GameResult game = monomial_resolve(st, 10000, ids);

    auto label_name = [&](uint64_t id) {
        auto it = sn.chart.labels.find(id);
        return it != sn.chart.labels.end() ? it->second.name : "X" + std::to_string(id);
    };
    Json steps = Json::array();
    std::ostringstream os;
    for (const auto& s : game.steps) {
        Json e;
        Json c = Json::array();
        std::ostringstream line;
        line << "blow up {";
        bool first = true;
        for (uint64_t id : s.center) {
            c.push_back(label_name(id));
            line << (first ? "" : ", ") << label_name(id);
            first = false;
        }
        line << "}  at state {";
        first = true;
        for (const auto& [id, a] : s.before.a) {
            line << (first ? "" : ", ") << label_name(id) << ":" << a;
            first = false;
        }
        line << "; d=" << s.before.d << "}";
        e["center"] = std::move(c);
        steps.push_back(std::move(e));
        os << line.str() << "\n";
    }
    os << "leaves: " << game.final_leaves.size() << ", all subcritical\n";
    Json j;
    j["steps"] = std::move(steps);
    j["leaves"] = game.final_leaves.size();
    print(emit, j, os.str());
    return 0;
}

int cmd_trick(const std::string& file, const std::string& point, const Emit& emit) {
    Problem p = load_problem(file);
    TrickTrace t = trick_validate(p.space, parse_point(point, p.space.nvars()));
    Json j;
    j["e"] = to_string(t.e);
    j["j0"] = t.j0;
    Json branches = Json::array();
    for (bool b : t.branches) branches.push_back(b);
    j["branches"] = std::move(branches);
    Json orders = Json::array();
    for (const auto& a : t.predicted_orders) orders.push_back(to_string(a));
    j["orders"] = std::move(orders);
    j["matched"] = t.matched;
    std::ostringstream os;
    os << "e = " << to_string(t.e) << ", j0 = " << t.j0 << "\n";
    os << "branches:";
    for (bool b : t.branches) os << " " << (b ? "divisor" : "point");
    os << "\norders:";
    for (const auto& a : t.predicted_orders) os << " " << to_string(a);
    os << "\nmatched: " << (t.matched ? "yes" : "no") << "\n";
    print(emit, j, os.str());
    return t.matched ? 0 : 1;
}

int cmd_equiv(const std::string& fileA, const std::string& fileB, int depth, const Emit& emit) {
    Problem a = load_problem(fileA);
    Problem b = load_problem(fileB);
    EquivResult r = equiv_bounded(a.space, b.space, depth);
    Json j;
    j["same_verdicts"] = r.same_verdicts;
    j["systems_checked"] = r.systems_checked;
    std::ostringstream os;
    if (r.same_verdicts) {
        os << "same-verdicts (" << r.systems_checked << " systems, depth " << depth << ")\n";
        print(emit, j, os.str());
        return 0;
    }
    Json steps = Json::array();
    os << "counterexample (permissible for " << (r.counterexample_favors_a ? "A" : "B")
       << " only):\n";
    for (const auto& s : *r.counterexample) {
        if (s.kind == TestStep::Kind::Projection) {
            steps.push_back(Json{{"projection", s.m}});
            os << "  projection m=" << s.m << "\n";
        } else {
            Json c = Json::array();
            os << "  center {";
            bool first = true;
            for (const auto& v : s.center_vars) {
                c.push_back(v);
                os << (first ? "" : ", ") << v;
                first = false;
            }
            os << "}\n";
            steps.push_back(Json{{"center", c}});
        }
    }
    j["counterexample"] = std::move(steps);
    j["favors"] = r.counterexample_favors_a ? "A" : "B";
    print(emit, j, os.str());
    return 1;
}

int cmd_resolve(const std::string& file, const std::string& trace_out,
                const std::string& replay_path, const Emit& emit) {
    Problem p = load_problem(file);
    DriverOptions opts;
    opts.seeds = p.seeds;

    ResolveOutcome out;
    if (!replay_path.empty()) {
        std::ifstream in(replay_path);
        if (!in) throw InputError("cannot open trace: " + replay_path);
        Json tj;
        in >> tj;
        out = replay(p.space, trace_from_json(tj, p.space.chart.vars), opts);
    } else {
        out = redsing(p.space, opts);
    }

    if (!trace_out.empty()) {
        std::ofstream os(trace_out);
        if (!os) throw InputError("cannot write trace: " + trace_out);
        os << trace_to_json(out.nodes, out.trace).dump(2) << "\n";
    }

    Json j = outcome_to_json(out);
    std::ostringstream os;
    os << "steps:\n";
    for (const auto& s : out.trace.steps) {
        os << "  [" << phase_name(s.phase) << "] node " << s.node << ": ";
        switch (s.kind) {
            case TraceStep::Kind::Blowup: {
                os << "blow up {";
                for (size_t i = 0; i < s.center.size(); ++i)
                    os << (i ? ", " : "") << s.center[i];
                os << "}";
                break;
            }
            case TraceStep::Kind::IdentityDivision:
                os << "divide along (" << s.center.at(0) << " = 0)";
                break;
            case TraceStep::Kind::Recoordinate: {
                os << "recoordinate";
                const auto& vars = out.nodes[s.node].chart.vars;
                for (const auto& r : s.recoords)
                    os << " " << vars[r.var] << " -> " << vars[r.var] << " + ("
                       << to_string(r.offset, vars) << ")";
                break;
            }
        }
        os << "\n";
    }
    os << "leaves:\n";
    for (const auto& v : out.verification) {
        os << "  node " << v.node << ": "
           << (!v.alive ? "subspace missing" : v.sing_empty ? "nonsingular" : "STILL SINGULAR")
           << "\n";
    }
    os << (out.resolved ? "resolved: every leaf verified nonsingular\n"
                        : "NOT RESOLVED\n");
    print(emit, j, os.str());
    return out.resolved ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact-arithmetic reduction of singularities for marked polynomial ideals"};
    app.require_subcommand(1);
    Emit emit;
    std::string emit_mode = "text";
    app.add_option("--emit", emit_mode, "output format: text or json")
        ->check(CLI::IsMember({"text", "json"}));

    std::string file, fileB, point, along, center, zname, trace_out, replay_path;
    int depth = 3;

    auto* order = app.add_subcommand("order", "Hironaka order at a point or along a center");
    order->add_option("file", file)->required();
    order->add_option("--point", point, "comma-separated rational coordinates");
    order->add_option("--along", along, "comma-separated center variables");

    auto* sing = app.add_subcommand("sing", "singular locus: reduced Groebner basis, dimension");
    sing->add_option("file", file)->required();

    auto* blowup = app.add_subcommand("blowup", "controlled transform at a coordinate center");
    blowup->add_option("file", file)->required();
    blowup->add_option("--center", center, "comma-separated center variables")->required();

    auto* project = app.add_subcommand("project", "coefficient ideals over a hypersurface");
    project->add_option("file", file)->required();
    project->add_option("--z", zname, "projection variable")->required();

    auto* adjustc = app.add_subcommand("adjust", "logarithmic factor, co-factorial order, adjustment");
    adjustc->add_option("file", file)->required();

    auto* monomial = app.add_subcommand("monomial", "combinatorial resolution of a divisor monomial");
    monomial->add_option("file", file)->required();

    auto* trick = app.add_subcommand("trick", "curve-divisor order validation at a point");
    trick->add_option("file", file)->required();
    trick->add_option("--point", point)->required();

    auto* equiv = app.add_subcommand("equiv", "bounded equivalence probe of two spaces");
    equiv->add_option("fileA", file)->required();
    equiv->add_option("fileB", fileB)->required();
    equiv->add_option("--depth", depth, "test-system depth");

    auto* resolve = app.add_subcommand("resolve", "full reduction of singularities");
    resolve->add_option("file", file)->required();
    resolve->add_option("--trace-out", trace_out, "write the trace as JSON");
    resolve->add_option("--replay", replay_path, "replay a recorded trace instead of solving");

    CLI11_PARSE(app, argc, argv);
    emit.json = emit_mode == "json";

    try {
        if (order->parsed()) return cmd_order(file, point, along, emit);
        if (sing->parsed()) return cmd_sing(file, emit);
        if (blowup->parsed()) return cmd_blowup(file, center, emit);
        if (project->parsed()) return cmd_project(file, zname, emit);
        if (adjustc->parsed()) return cmd_adjust(file, emit);
        if (monomial->parsed()) return cmd_monomial(file, emit);
        if (trick->parsed()) return cmd_trick(file, point, emit);
        if (equiv->parsed()) return cmd_equiv(file, fileB, depth, emit);
        if (resolve->parsed()) return cmd_resolve(file, trace_out, replay_path, emit);
    } catch (const FuelExhausted& e) {
        std::cerr << "fuel exhausted: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
