#include "resing/io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace resing {

Rational parse_rational(const std::string& text) {
    size_t slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(Int(text));
        Int num(text.substr(0, slash));
        Int den(text.substr(slash + 1));
        if (den <= 0) throw InputError("rational with non-positive denominator: " + text);
        return Rational(num, den);
    } catch (const std::runtime_error&) {
        throw InputError("malformed rational: " + text);
    }
}

namespace {

struct PolyParser {
    const std::string& text;
    const std::vector<std::string>& vars;
    size_t pos = 0;
    int line = 1, col = 1;

    [[noreturn]] void fail(const std::string& msg) const {
        std::ostringstream os;
        os << "parse error at " << line << ":" << col << ": " << msg;
        throw InputError(os.str());
    }

    char peek() const { return pos < text.size() ? text[pos] : '\0'; }

    void advance() {
        if (pos >= text.size()) return;
        if (text[pos] == '\n') { ++line; col = 1; } else { ++col; }
        ++pos;
    }

    void skip_ws() {
        while (std::isspace(static_cast<unsigned char>(peek()))) advance();
    }

    bool eat(char c) {
        skip_ws();
        if (peek() != c) return false;
        advance();
        return true;
    }

    std::string read_number() {
        std::string out;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            out.push_back(peek());
            advance();
        }
        return out;
    }

    Poly parse_expr() {
        skip_ws();
        bool neg = false;
        if (peek() == '-') { neg = true; advance(); }
        else if (peek() == '+') advance();
        Poly acc = parse_term();
        if (neg) acc = -acc;
        while (true) {
            skip_ws();
            if (peek() == '+') { advance(); acc = acc + parse_term(); }
            else if (peek() == '-') { advance(); acc = acc - parse_term(); }
            else break;
        }
        return acc;
    }

    Poly parse_term() {
        Poly acc = parse_factor();
        while (true) {
            skip_ws();
            if (peek() == '*') { advance(); acc = acc * parse_factor(); }
            else break;
        }
        return acc;
    }

    Poly parse_factor() {
        Poly base = parse_primary();
        skip_ws();
        if (peek() == '^') {
            advance();
            skip_ws();
            if (!std::isdigit(static_cast<unsigned char>(peek())))
                fail("exponent must be a non-negative integer");
            std::string n = read_number();
            unsigned long e = 0;
            try {
                e = std::stoul(n);
            } catch (...) { fail("exponent out of range"); }
            if (e > 4096) fail("exponent out of range");
            base = base.pow(static_cast<unsigned>(e));
        }
        return base;
    }

    Poly parse_primary() {
        skip_ws();
        char c = peek();
        if (c == '(') {
            advance();
            Poly inner = parse_expr();
            skip_ws();
            if (!eat(')')) fail("expected ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string num = read_number();
            skip_ws();
            if (peek() == '/') {
                advance();
                skip_ws();
                if (!std::isdigit(static_cast<unsigned char>(peek())))
                    fail("expected denominator digits");
                std::string den = read_number();
                if (Int(den) == 0) fail("zero denominator");
                return Poly::constant(vars.size(), Rational(Int(num), Int(den)));
            }
            return Poly::constant(vars.size(), Rational(Int(num)));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            int name_line = line, name_col = col;
            std::string name;
            while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_' ||
                   peek() == '\'') {
                name.push_back(peek());
                advance();
            }
            for (size_t i = 0; i < vars.size(); ++i)
                if (vars[i] == name) return Poly::variable(vars.size(), i);
            line = name_line;
            col = name_col;
            fail("unknown variable '" + name + "'");
        }
        if (c == '\0') fail("unexpected end of input");
        fail(std::string("unexpected character '") + c + "'");
    }

    Poly run() {
        Poly p = parse_expr();
        skip_ws();
        if (pos != text.size()) fail("trailing input");
        return p;
    }
};

} // namespace

Poly parse_poly(const std::string& text, const std::vector<std::string>& vars) {
    PolyParser p{text, vars};
    return p.run();
}

ProblemFile problem_from_json(const Json& j) {
    ProblemFile pf;
    if (!j.contains("variables") || !j["variables"].is_array())
        throw InputError("problem: missing 'variables' array");
    for (const auto& v : j["variables"]) pf.variables.push_back(v.get<std::string>());
    if (j.contains("divisor")) {
        for (const auto& d : j["divisor"]) {
            ProblemFile::DivisorEntry e;
            e.label = d.at("label").get<std::string>();
            e.variable = d.at("variable").get<std::string>();
            std::string origin = d.value("origin", std::string("old"));
            if (origin != "old" && origin != "new")
                throw InputError("divisor origin must be 'old' or 'new'");
            e.old_origin = origin == "old";
            pf.divisor.push_back(std::move(e));
        }
    }
    if (j.contains("subspace"))
        for (const auto& v : j["subspace"]) pf.subspace.push_back(v.get<std::string>());
    if (!j.contains("ideals") || !j["ideals"].is_array() || j["ideals"].empty())
        throw InputError("problem: missing 'ideals' array");
    for (const auto& i : j["ideals"]) {
        ProblemFile::IdealEntry e;
        e.poly = i.at("poly").get<std::string>();
        if (!i.contains("mark") || !i["mark"].is_number_integer() || i["mark"].get<long>() < 1)
            throw InputError("ideal mark must be a positive integer");
        e.mark = i["mark"].get<unsigned>();
        pf.ideals.push_back(std::move(e));
    }
    if (j.contains("seeds")) {
        for (const auto& s : j["seeds"]) {
            std::vector<std::string> coords;
            for (const auto& c : s) {
                if (c.is_string()) coords.push_back(c.get<std::string>());
                else coords.push_back(Json(c).dump());
            }
            pf.seeds.push_back(std::move(coords));
        }
    }
    return pf;
}

ProblemFile load_problem_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open problem file: " + path);
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw InputError("malformed JSON in " + path + ": " + e.what());
    }
    return problem_from_json(j);
}

Problem build_problem(const ProblemFile& pf) {
    Problem out;
    Chart chart;
    chart.vars = pf.variables;
    {
        std::set<std::string> seen;
        for (const auto& v : pf.variables)
            if (!seen.insert(v).second) throw InputError("duplicate variable name: " + v);
    }
    LabelAllocator ids;
    std::set<std::string> label_names;
    for (const auto& d : pf.divisor) {
        int idx = chart.var_index(d.variable);
        if (idx < 0) throw InputError("divisor on unknown variable: " + d.variable);
        if (!label_names.insert(d.label).second)
            throw InputError("duplicate divisor label: " + d.label);
        uint64_t id = ids.fresh();
        chart.divisor[id] = idx;
        chart.labels[id] = DivisorLabel{id, !d.old_origin, d.old_origin ? -1 : 0, d.label};
    }
    chart.check();

    out.space.chart = chart;
    if (!pf.subspace.empty()) {
        CoordSubspace n;
        for (const auto& v : pf.subspace) {
            int idx = chart.var_index(v);
            if (idx < 0) throw InputError("subspace names unknown variable: " + v);
            n.zeroed.insert(idx);
        }
        out.space.subspace = n;
    }
    for (const auto& i : pf.ideals) {
        Poly f = parse_poly(i.poly, pf.variables);
        out.space.ideals.push_back({std::move(f), i.mark});
    }
    out.space.check();

    for (const auto& s : pf.seeds) {
        if (s.size() != pf.variables.size())
            throw InputError("seed point has the wrong number of coordinates");
        RationalPoint p;
        for (const auto& c : s) p.coords.push_back(parse_rational(c));
        out.seeds.push_back(std::move(p));
    }
    return out;
}

Problem load_problem(const std::string& path) { return build_problem(load_problem_file(path)); }

Json space_to_json(const IdealisticSpace& s) {
    Json j;
    j["variables"] = s.chart.vars;
    Json divisor = Json::array();
    for (const auto& [id, idx] : s.chart.divisor) {
        const DivisorLabel& l = s.chart.labels.at(id);
        Json d;
        d["label"] = l.name;
        d["variable"] = s.chart.vars[idx];
        d["origin"] = l.exceptional ? "new" : "old";
        if (l.exceptional) d["step"] = l.step;
        if (s.excluded_labels.count(id)) d["contains_subspace"] = true;
        divisor.push_back(std::move(d));
    }
    j["divisor"] = std::move(divisor);
    if (s.subspace) {
        Json sub = Json::array();
        for (int v : s.subspace->zeroed) sub.push_back(s.chart.vars[v]);
        j["subspace"] = std::move(sub);
    }
    Json ideals = Json::array();
    for (const auto& mi : s.ideals) {
        Json e;
        e["poly"] = to_string(mi.f, s.chart.vars);
        e["mark"] = mi.d;
        ideals.push_back(std::move(e));
    }
    j["ideals"] = std::move(ideals);
    return j;
}

namespace {

const char* step_kind_name(TraceStep::Kind k) {
    switch (k) {
        case TraceStep::Kind::Blowup: return "blowup";
        case TraceStep::Kind::IdentityDivision: return "identity-division";
        case TraceStep::Kind::Recoordinate: return "recoordinate";
    }
    return "?";
}

} // namespace

Json trace_to_json(const std::vector<TreeNode>& nodes, const ResolutionTrace& trace) {
    Json steps = Json::array();
    for (const auto& s : trace.steps) {
        Json j;
        j["kind"] = step_kind_name(s.kind);
        j["phase"] = phase_name(s.phase);
        j["node"] = s.node;
        if (!s.center.empty()) j["center"] = s.center;
        if (!s.recoords.empty()) {
            Json rs = Json::array();
            const auto& vars = nodes.at(static_cast<size_t>(s.node)).chart.vars;
            for (const auto& r : s.recoords) {
                Json e;
                e["var"] = vars[static_cast<size_t>(r.var)];
                e["offset"] = to_string(r.offset, vars);
                rs.push_back(std::move(e));
            }
            j["recoords"] = std::move(rs);
        }
        if (!s.children.empty()) j["children"] = s.children;
        steps.push_back(std::move(j));
    }
    Json out;
    out["steps"] = std::move(steps);
    return out;
}

ResolutionTrace trace_from_json(const Json& j, const std::vector<std::string>& root_vars) {
    ResolutionTrace out;
    if (!j.contains("steps")) throw InputError("trace: missing 'steps'");
    for (const auto& s : j["steps"]) {
        TraceStep step;
        std::string kind = s.at("kind").get<std::string>();
        if (kind == "blowup") step.kind = TraceStep::Kind::Blowup;
        else if (kind == "identity-division") step.kind = TraceStep::Kind::IdentityDivision;
        else if (kind == "recoordinate") step.kind = TraceStep::Kind::Recoordinate;
        else throw InputError("trace: unknown step kind " + kind);
        std::string phase = s.value("phase", std::string("base"));
        for (Phase p : {Phase::Base, Phase::Monomial, Phase::AdjustDescent, Phase::Reduce,
                        Phase::SeparateOld, Phase::MaxContact})
            if (phase == phase_name(p)) step.phase = p;
        step.node = s.at("node").get<int>();
        if (s.contains("center"))
            for (const auto& c : s["center"]) step.center.push_back(c.get<std::string>());
        if (s.contains("recoords")) {
            for (const auto& r : s["recoords"]) {
                std::string var = r.at("var").get<std::string>();
                int idx = -1;
                for (size_t i = 0; i < root_vars.size(); ++i)
                    if (root_vars[i] == var) idx = static_cast<int>(i);
                if (idx < 0) throw InputError("trace: unknown recoordination variable " + var);
                Recoord rc{idx, parse_poly(r.at("offset").get<std::string>(), root_vars)};
                step.recoords.push_back(std::move(rc));
            }
        }
        if (s.contains("children"))
            for (const auto& c : s["children"]) step.children.push_back(c.get<int>());
        out.steps.push_back(std::move(step));
    }
    return out;
}

Json outcome_to_json(const ResolveOutcome& outcome) {
    Json j;
    j["resolved"] = outcome.resolved;
    Json nodes = Json::array();
    for (size_t i = 0; i < outcome.nodes.size(); ++i) {
        const TreeNode& n = outcome.nodes[i];
        Json e;
        e["id"] = i;
        e["parent"] = n.parent;
        if (n.from_parent) {
            switch (n.from_parent->kind) {
                case ChartMap::Kind::BlowupChart: e["edge"] = "blowup"; break;
                case ChartMap::Kind::IdentityDivision: e["edge"] = "identity-division"; break;
                case ChartMap::Kind::Projection: e["edge"] = "projection"; break;
            }
        }
        if (n.is_leaf() && n.levels.at(0)) e["space"] = space_to_json(*n.levels.at(0));
        else if (n.is_leaf()) e["space"] = nullptr;
        else {
            Json c = Json::array();
            for (int ch : n.children) c.push_back(ch);
            e["children"] = std::move(c);
        }
        if (n.is_leaf()) {
            Json vars = Json::array();
            for (const auto& v : n.chart.vars) vars.push_back(v);
            e["variables"] = std::move(vars);
        }
        nodes.push_back(std::move(e));
    }
    j["nodes"] = std::move(nodes);
    Json ver = Json::array();
    for (const auto& v : outcome.verification) {
        Json e;
        e["node"] = v.node;
        e["alive"] = v.alive;
        e["sing_empty"] = v.sing_empty;
        ver.push_back(std::move(e));
    }
    j["verification"] = std::move(ver);
    j["trace"] = trace_to_json(outcome.nodes, outcome.trace);
    return j;
}

std::string describe_space(const IdealisticSpace& s) {
    std::ostringstream os;
    os << "chart(";
    for (size_t i = 0; i < s.chart.vars.size(); ++i) {
        if (i) os << ",";
        os << s.chart.vars[i];
    }
    os << ")";
    if (s.subspace && !s.subspace->zeroed.empty()) {
        os << " on N = V(";
        bool first = true;
        for (int v : s.subspace->zeroed) {
            if (!first) os << ",";
            os << s.chart.vars[v];
            first = false;
        }
        os << ")";
    }
    for (const auto& [id, idx] : s.chart.divisor) {
        os << " " << s.chart.labels.at(id).name << "=(" << s.chart.vars[idx] << "=0)";
    }
    os << " :";
    for (const auto& mi : s.ideals)
        os << " (" << to_string(mi.f, s.chart.vars) << ", " << mi.d << ")";
    return os.str();
}

} // namespace resing
