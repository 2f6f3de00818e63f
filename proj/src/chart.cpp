#include "resing/chart.hpp"

#include <algorithm>

namespace resing {

bool Chart::var_has_label(int v) const {
    for (const auto& [id, idx] : divisor)
        if (idx == v) return true;
    return false;
}

std::optional<uint64_t> Chart::label_on(int v) const {
    for (const auto& [id, idx] : divisor)
        if (idx == v) return id;
    return std::nullopt;
}

std::set<int> Chart::divisor_vars() const {
    std::set<int> s;
    for (const auto& [id, idx] : divisor) s.insert(idx);
    return s;
}

int Chart::var_index(const std::string& name) const {
    for (size_t i = 0; i < vars.size(); ++i)
        if (vars[i] == name) return static_cast<int>(i);
    return -1;
}

void Chart::check() const {
    std::set<int> seen;
    for (const auto& [id, idx] : divisor) {
        if (idx < 0 || static_cast<size_t>(idx) >= vars.size())
            throw InvariantViolation("divisor label on missing variable");
        if (!seen.insert(idx).second)
            throw InvariantViolation("two divisor labels on one hyperplane");
        if (!labels.count(id)) throw InvariantViolation("divisor label without metadata");
    }
}

std::vector<std::pair<Chart, ChartMap>> blowup_charts(const Chart& c, const CoordSubspace& center,
                                                      LabelAllocator& ids, int step) {
    if (center.size() < 2)
        throw Error("blowup_charts: center must have codimension >= 2 (use identity_division_chart)");
    for (int v : center.zeroed)
        if (v < 0 || static_cast<size_t>(v) >= c.nvars())
            throw DimensionMismatch("blowup center variable outside chart");

    const uint64_t fresh = ids.fresh();
    DivisorLabel fresh_label{fresh, true, step, "X" + std::to_string(fresh)};

    std::vector<std::pair<Chart, ChartMap>> out;
    for (int l : center.zeroed) {
        Chart child;
        child.vars = c.vars;
        ChartMap map;
        map.kind = ChartMap::Kind::BlowupChart;
        map.images.reserve(c.nvars());
        for (size_t i = 0; i < c.nvars(); ++i) {
            Poly xi = Poly::variable(c.nvars(), i);
            if (static_cast<int>(i) == l || !center.contains(static_cast<int>(i))) {
                map.images.push_back(xi);
            } else {
                map.images.push_back(Poly::variable(c.nvars(), static_cast<size_t>(l)) * xi);
            }
        }
        // Divisor bookkeeping: labels on center \ {l} persist on the
        // same-named variable (strict transform); a label on l is
        // dropped in this chart.
        for (const auto& [id, idx] : c.divisor) {
            if (idx == l) continue;
            child.divisor[id] = idx;
            child.labels[id] = c.labels.at(id);
        }
        child.divisor[fresh] = l;
        child.labels[fresh] = fresh_label;
        map.exceptional = std::make_pair(fresh, l);
        child.check();
        out.emplace_back(std::move(child), std::move(map));
    }
    return out;
}

std::pair<Chart, ChartMap> identity_division_chart(const Chart& c, int var, LabelAllocator& ids,
                                                   int step) {
    if (var < 0 || static_cast<size_t>(var) >= c.nvars())
        throw DimensionMismatch("identity-division variable outside chart");
    Chart child = c;
    ChartMap map;
    map.kind = ChartMap::Kind::IdentityDivision;
    for (size_t i = 0; i < c.nvars(); ++i) map.images.push_back(Poly::variable(c.nvars(), i));
    auto existing = c.label_on(var);
    uint64_t lab;
    if (existing) {
        lab = *existing;
    } else {
        lab = ids.fresh();
        child.divisor[lab] = var;
        child.labels[lab] = DivisorLabel{lab, true, step, "X" + std::to_string(lab)};
    }
    map.exceptional = std::make_pair(lab, var);
    child.check();
    return {std::move(child), std::move(map)};
}

std::pair<Chart, ChartMap> open_projection(const Chart& c, int m) {
    if (m < 1) throw Error("open_projection: m must be >= 1");
    Chart child = c;
    int counter = 1;
    for (int k = 0; k < m; ++k) {
        std::string name;
        do {
            name = "w" + std::to_string(counter++);
        } while (child.var_index(name) >= 0);
        child.vars.push_back(name);
    }
    ChartMap map;
    map.kind = ChartMap::Kind::Projection;
    for (size_t i = 0; i < c.nvars(); ++i)
        map.images.push_back(Poly::variable(child.nvars(), i));
    child.check();
    return {std::move(child), std::move(map)};
}

Chart restrict_to_subspace(const Chart& c, const CoordSubspace& n) {
    for (int v : n.zeroed) {
        if (v < 0 || static_cast<size_t>(v) >= c.nvars())
            throw DimensionMismatch("subspace variable outside chart");
        if (c.var_has_label(v))
            throw Error("restrict_to_subspace: transversality violated (divisor variable zeroed)");
    }
    Chart out;
    std::vector<int> old_to_new(c.nvars(), -1);
    for (size_t i = 0; i < c.nvars(); ++i) {
        if (n.contains(static_cast<int>(i))) continue;
        old_to_new[i] = static_cast<int>(out.vars.size());
        out.vars.push_back(c.vars[i]);
    }
    for (const auto& [id, idx] : c.divisor) {
        out.divisor[id] = old_to_new[idx];
        out.labels[id] = c.labels.at(id);
    }
    out.check();
    return out;
}

} // namespace resing
