#include "resing/idealistic.hpp"

#include <algorithm>

namespace resing {

std::vector<int> IdealisticSpace::space_vars() const {
    std::vector<int> out;
    for (size_t i = 0; i < nvars(); ++i)
        if (!zeroed(static_cast<int>(i))) out.push_back(static_cast<int>(i));
    return out;
}

std::set<int> IdealisticSpace::divisor_vars() const {
    std::set<int> out;
    for (const auto& [id, idx] : chart.divisor) {
        if (excluded_labels.count(id)) continue;
        if (zeroed(idx)) continue;
        out.insert(idx);
    }
    return out;
}

std::set<uint64_t> IdealisticSpace::divisor_labels() const {
    std::set<uint64_t> out;
    for (const auto& [id, idx] : chart.divisor) {
        if (excluded_labels.count(id)) continue;
        if (zeroed(idx)) continue;
        out.insert(id);
    }
    return out;
}

bool IdealisticSpace::has_nonzero_ideal() const {
    for (const auto& mi : ideals)
        if (!mi.f.is_zero()) return true;
    return false;
}

void IdealisticSpace::check() const {
    chart.check();
    if (!has_nonzero_ideal())
        throw InvariantViolation("idealistic space with no nonzero marked ideal");
    for (const auto& mi : ideals) {
        if (mi.d < 1) throw InvariantViolation("marked ideal with mark 0");
        if (mi.f.nvars() != nvars()) throw DimensionMismatch("marked ideal in wrong ring");
        if (subspace) {
            for (const auto& [m, c] : mi.f.terms())
                for (int v : subspace->zeroed)
                    if (m.exps[static_cast<size_t>(v)] != 0)
                        throw InvariantViolation("ideal uses a variable zeroed on N");
        }
    }
    if (subspace) {
        for (const auto& [id, idx] : chart.divisor) {
            if (excluded_labels.count(id)) continue;
            if (subspace->contains(idx))
                throw InvariantViolation("divisor component not transverse to N");
        }
    }
}

namespace {

void push_derivatives(const Poly& f, unsigned depth, const std::vector<int>& vars, size_t vi,
                      IdealBasis& out) {
    if (vi == vars.size()) {
        out.add(f);
        return;
    }
    Poly cur = f;
    for (unsigned k = 0;; ++k) {
        push_derivatives(cur, depth - k, vars, vi + 1, out);
        if (k == depth) break;
        cur = cur.derivative(static_cast<size_t>(vars[vi]));
        if (cur.is_zero()) break;
    }
}

} // namespace

IdealBasis singular_ideal(const IdealisticSpace& s) {
    IdealBasis out;
    out.nvars = s.nvars();
    const std::vector<int> vars = s.space_vars();
    for (const auto& mi : s.ideals) {
        if (mi.f.is_zero()) continue;
        push_derivatives(mi.f, mi.d - 1, vars, 0, out);
    }
    return out;
}

IdealBasis singular_locus_in_chart(const IdealisticSpace& s) {
    IdealBasis out = singular_ideal(s);
    if (s.subspace)
        for (int v : s.subspace->zeroed)
            out.add(Poly::variable(s.nvars(), static_cast<size_t>(v)));
    return out;
}

bool sing_is_empty(const IdealisticSpace& s, const GroebnerLimits& limits) {
    return is_empty_variety(singular_locus_in_chart(s), limits);
}

Rational delta(const IdealisticSpace& s, const RationalPoint& p) {
    if (p.nvars() != s.nvars()) throw DimensionMismatch("delta: point length");
    if (s.subspace)
        for (int v : s.subspace->zeroed)
            if (p.coords[static_cast<size_t>(v)] != 0)
                throw Error("delta: point is not on the subspace N");
    bool have = false;
    Rational best = 0;
    for (const auto& mi : s.ideals) {
        ExtNat o = order_at_point(mi.f, p);
        if (o.infinite) continue;
        Rational q(o.value, mi.d);
        if (!have || q < best) { best = q; have = true; }
    }
    if (!have) throw Error("delta: every marked ideal vanishes identically");
    return best;
}

Rational delta_along(const IdealisticSpace& s, const CoordSubspace& y) {
    // Y must sit inside N; its equations on N are y.zeroed minus N's.
    CoordSubspace eff;
    if (s.subspace) {
        for (int v : s.subspace->zeroed)
            if (!y.contains(v)) return 0; // Y not inside N
        for (int v : y.zeroed)
            if (!s.subspace->contains(v)) eff.zeroed.insert(v);
    } else {
        eff = y;
    }
    if (eff.zeroed.empty()) return 0; // Y is all of N
    bool have = false;
    Rational best = 0;
    for (const auto& mi : s.ideals) {
        ExtNat o = order_along(mi.f, eff);
        if (o.infinite) continue;
        Rational q(o.value, mi.d);
        if (!have || q < best) { best = q; have = true; }
    }
    if (!have) throw Error("delta_along: every marked ideal vanishes identically");
    return best;
}

bool is_permissible_center(const IdealisticSpace& s, const CoordSubspace& y) {
    for (int v : y.zeroed)
        if (v < 0 || static_cast<size_t>(v) >= s.nvars()) return false;
    if (y.zeroed.empty()) return false;
    return delta_along(s, y) >= 1;
}

std::optional<IdealisticSpace> controlled_transform(const IdealisticSpace& s, const Chart& child,
                                                    const ChartMap& map) {
    IdealisticSpace out;
    out.chart = child;
    out.subspace = s.subspace;
    // The strict transform of N keeps the same zeroed variable names
    // (indices are stable across our chart maps); it misses the chart
    // whose exceptional variable is zeroed on N.
    if (map.exceptional && s.subspace && s.subspace->contains(map.exceptional->second) &&
        map.kind == ChartMap::Kind::BlowupChart) {
        return std::nullopt;
    }
    for (uint64_t id : s.excluded_labels)
        if (child.divisor.count(id)) out.excluded_labels.insert(id);

    for (const auto& mi : s.ideals) {
        if (mi.f.is_zero()) {
            out.ideals.push_back({Poly::zero(child.nvars()), mi.d});
            continue;
        }
        Poly g = mi.f.substitute(map.images, child.nvars());
        if (map.exceptional) {
            Monomial w(child.nvars());
            w.exps[static_cast<size_t>(map.exceptional->second)] = mi.d;
            try {
                g = divide_exact(g, w);
            } catch (const NonExactDivision& e) {
                throw NonExactDivision("controlled transform: center not permissible for a mark-" +
                                           std::to_string(mi.d) + " ideal",
                                       e.witness);
            }
        }
        out.ideals.push_back({std::move(g), mi.d});
    }
    return out;
}

IdealisticSpace normalize(const IdealisticSpace& s) {
    Int l = 1;
    for (const auto& mi : s.ideals)
        if (!mi.f.is_zero()) l = int_lcm(l, Int(mi.d));
    unsigned d = l.convert_to<unsigned>();
    IdealisticSpace out = s;
    out.ideals.clear();
    for (const auto& mi : s.ideals) {
        if (mi.f.is_zero()) continue;
        out.ideals.push_back({mi.f.pow(d / mi.d), d});
    }
    return out;
}

Poly apply_recoord(const Poly& f, const Recoord& r) {
    std::vector<Poly> images;
    for (size_t i = 0; i < f.nvars(); ++i) images.push_back(Poly::variable(f.nvars(), i));
    images[static_cast<size_t>(r.var)] =
        Poly::variable(f.nvars(), static_cast<size_t>(r.var)) + r.offset;
    return f.substitute(images, f.nvars());
}

IdealisticSpace apply_recoord(const IdealisticSpace& s, const Recoord& r) {
    if (s.zeroed(r.var)) throw Error("recoordination of a variable zeroed on N");
    IdealisticSpace out = s;
    // A divisor hyperplane pinned to the moved variable cannot stay
    // coordinate; the label is dropped, i.e. the chart now models a
    // neighbourhood missing that component.
    if (auto label = out.chart.label_on(r.var)) {
        out.chart.divisor.erase(*label);
        out.chart.labels.erase(*label);
        out.excluded_labels.erase(*label);
    }
    for (auto& mi : out.ideals)
        if (!mi.f.is_zero()) mi.f = apply_recoord(mi.f, r);
    return out;
}

namespace {

struct StepOutcome {
    bool permissible = true;
    std::vector<TestLeaf> leaves;
};

StepOutcome apply_step(const std::vector<TestLeaf>& leaves, const TestStep& step,
                       LabelAllocator& ids, int step_index) {
    StepOutcome out;
    if (step.kind == TestStep::Kind::Projection) {
        for (const auto& leaf : leaves) {
            auto [child, map] = open_projection(leaf.chart, step.m);
            TestLeaf nl;
            nl.chart = child;
            if (leaf.space) nl.space = controlled_transform(*leaf.space, child, map);
            out.leaves.push_back(std::move(nl));
        }
        return out;
    }
    // Center step: shift, then check permissibility wherever the center
    // exists.
    struct Planned {
        size_t leaf;
        TestLeaf shifted;
        CoordSubspace center;
    };
    std::vector<Planned> plan;
    for (size_t i = 0; i < leaves.size(); ++i) {
        TestLeaf working = leaves[i];
        bool present = true;
        for (const auto& [name, c] : step.shifts) {
            int idx = working.chart.var_index(name);
            if (idx < 0) { present = false; break; }
            if (working.space) {
                Recoord r{idx, Poly::constant(working.chart.nvars(), c)};
                if (working.space->zeroed(idx)) { present = false; break; }
                *working.space = apply_recoord(*working.space, r);
                working.chart = working.space->chart;
            }
        }
        CoordSubspace c;
        for (const auto& name : step.center_vars) {
            int idx = working.chart.var_index(name);
            if (idx < 0) { present = false; break; }
            c.zeroed.insert(idx);
        }
        if (!present) continue; // center misses this chart
        if (!working.space || !is_permissible_center(*working.space, c)) {
            out.permissible = false;
            return out;
        }
        plan.push_back({i, std::move(working), std::move(c)});
    }
    std::set<size_t> planned;
    for (const auto& p : plan) planned.insert(p.leaf);
    for (size_t i = 0; i < leaves.size(); ++i) {
        if (!planned.count(i)) { out.leaves.push_back(leaves[i]); continue; }
        const auto& entry =
            *std::find_if(plan.begin(), plan.end(), [&](const Planned& p) { return p.leaf == i; });
        const CoordSubspace& center = entry.center;
        if (center.size() == 1) {
            auto [child, map] =
                identity_division_chart(entry.shifted.chart, *center.zeroed.begin(), ids, step_index);
            TestLeaf nl;
            nl.chart = child;
            nl.space = controlled_transform(*entry.shifted.space, child, map);
            out.leaves.push_back(std::move(nl));
        } else {
            for (auto& [child, map] : blowup_charts(entry.shifted.chart, center, ids, step_index)) {
                TestLeaf nl;
                nl.chart = child;
                nl.space = controlled_transform(*entry.shifted.space, child, map);
                out.leaves.push_back(std::move(nl));
            }
        }
    }
    return out;
}

} // namespace

TestRunResult run_test_system(const IdealisticSpace& s, const TestSystem& sys,
                              LabelAllocator& ids) {
    TestRunResult res;
    res.leaves.push_back({s.chart, s});
    for (size_t k = 0; k < sys.size(); ++k) {
        StepOutcome o = apply_step(res.leaves, sys[k], ids, static_cast<int>(k));
        if (!o.permissible) {
            res.permissible = false;
            res.failed_step = k;
            return res;
        }
        res.leaves = std::move(o.leaves);
    }
    res.permissible = true;
    return res;
}

namespace {

std::vector<TestStep> candidate_steps(const std::vector<TestLeaf>& leaves,
                                      const EquivOptions& opts) {
    if (opts.generator) return opts.generator(leaves);
    std::set<std::string> names;
    for (const auto& leaf : leaves)
        for (const auto& v : leaf.chart.vars) names.insert(v);
    std::vector<std::string> nm(names.begin(), names.end());
    std::vector<TestStep> out;
    const size_t n = nm.size();
    for (uint64_t mask = 1; mask < (uint64_t(1) << n); ++mask) {
        std::set<std::string> c;
        for (size_t i = 0; i < n; ++i)
            if (mask >> i & 1u) c.insert(nm[i]);
        out.push_back(TestStep::center(std::move(c)));
    }
    for (const auto& s : opts.extra_steps) out.push_back(s);
    if (opts.include_projection) out.push_back(TestStep::projection(1));
    return out;
}

struct EquivSearch {
    const EquivOptions& opts;
    LabelAllocator ids;
    size_t checked = 0;
    EquivResult result;

    bool dfs(std::vector<TestLeaf> la, std::vector<TestLeaf> lb, TestSystem& prefix, int depth) {
        if (depth == 0) return true;
        for (const auto& step : candidate_steps(la, opts)) {
            if (++checked > opts.max_systems)
                throw FuelExhausted("equiv_bounded: system budget exceeded");
            prefix.push_back(step);
            StepOutcome oa = apply_step(la, step, ids, 0);
            StepOutcome ob = apply_step(lb, step, ids, 0);
            if (oa.permissible != ob.permissible) {
                result.same_verdicts = false;
                result.counterexample = prefix;
                result.counterexample_favors_a = oa.permissible;
                return false;
            }
            if (oa.permissible) {
                if (!dfs(std::move(oa.leaves), std::move(ob.leaves), prefix, depth - 1))
                    return false;
            }
            prefix.pop_back();
        }
        return true;
    }
};

} // namespace

EquivResult equiv_bounded(const IdealisticSpace& a, const IdealisticSpace& b, int depth,
                          const EquivOptions& opts) {
    if (a.chart.vars != b.chart.vars)
        throw Error("equiv_bounded: spaces must share a chart");
    EquivSearch search{opts, {}, 0, {}};
    TestSystem prefix;
    search.dfs({{a.chart, a}}, {{b.chart, b}}, prefix, depth);
    search.result.systems_checked = search.checked;
    return search.result;
}

TrickTrace trick_validate(const IdealisticSpace& s, const RationalPoint& p, unsigned fuel) {
    TrickTrace tr;
    IdealisticSpace base = s;
    // Translate P to the origin (non-divisor variables only).
    bool shift = false;
    for (const auto& c : p.coords)
        if (c != 0) shift = true;
    if (shift) {
        // x -> x + P sends the origin to P; components missing P are
        // dropped (we work in a neighbourhood of P).
        std::vector<uint64_t> moved;
        for (const auto& [id, idx] : base.chart.divisor)
            if (p.coords[static_cast<size_t>(idx)] != 0) moved.push_back(id);
        for (uint64_t id : moved) {
            base.chart.divisor.erase(id);
            base.chart.labels.erase(id);
            base.excluded_labels.erase(id);
        }
        for (auto& mi : base.ideals) mi.f = mi.f.translate(p);
    }
    RationalPoint origin{std::vector<Rational>(s.nvars(), Rational(0))};
    Rational e = delta(base, origin);
    if (e < 1) throw Error("trick_validate: point is not singular");
    tr.e = e;

    // Predicted sequence a_2, a_3, ... until the first zero.
    {
        Rational a = e - 1;
        int j = 2;
        while (true) {
            tr.predicted_orders.push_back(a);
            if (a == 0) { tr.j0 = j; break; }
            if (static_cast<unsigned>(j) > fuel)
                throw FuelExhausted("trick_validate: predicted sequence did not reach zero");
            tr.branches.push_back(a >= 1);
            a = (a >= 1) ? Rational(a - 1) : Rational(a + e - 1);
            ++j;
        }
    }

    // Simulation: open projection, then the curve-divisor tower.
    LabelAllocator ids;
    auto [chart1, proj] = open_projection(base.chart, 1);
    auto cur = controlled_transform(base, chart1, proj);
    if (!cur) throw InvariantViolation("projection lost the space");
    const int wvar = static_cast<int>(chart1.nvars()) - 1;
    Chart chart = chart1;

    // Generic order along the divisor (w = 0). The divisor is a chart
    // hypersurface, not a center inside N, so compute the order
    // directly rather than through the center machinery.
    auto order_along_divisor = [&](const IdealisticSpace& sp) {
        bool have = false;
        Rational best = 0;
        for (const auto& mi : sp.ideals) {
            ExtNat o = order_along(mi.f, CoordSubspace{{wvar}});
            if (o.infinite) continue;
            Rational q(o.value, mi.d);
            if (!have || q < best) { best = q; have = true; }
        }
        if (!have) throw Error("trick_validate: all ideals vanish identically");
        return best;
    };

    // Order along the projection divisor is zero before any blow-up.
    if (order_along_divisor(*cur) != 0)
        throw InvariantViolation("trick_validate: initial divisor order is nonzero");
    // Order is preserved by the projection at (P, 0).
    RationalPoint origin1{std::vector<Rational>(chart.nvars(), Rational(0))};
    if (delta(*cur, origin1) != e)
        throw InvariantViolation("trick_validate: projection changed the order");

    bool lemma_ok = true;
    auto check_lemma = [&](const IdealisticSpace& sp) {
        CoordSubspace xaxis; // the moving curve: all variables but w
        for (size_t i = 0; i < sp.nvars(); ++i)
            if (static_cast<int>(i) != wvar) xaxis.zeroed.insert(static_cast<int>(i));
        RationalPoint o{std::vector<Rational>(sp.nvars(), Rational(0))};
        Rational dp = delta(sp, o);
        Rational dx = delta_along(sp, xaxis);
        Rational dd = order_along_divisor(sp);
        if (dp < dx + dd) lemma_ok = false;
    };

    // First blow-up is always at the point (a_1 = 0).
    int j = 1;
    int step = 0;
    while (true) {
        if (static_cast<unsigned>(step) > fuel + 4)
            throw FuelExhausted("trick_validate: simulation exceeded fuel");
        Rational aj = order_along_divisor(*cur);
        bool divisor_permissible = aj >= 1;
        if (j >= 2) {
            tr.actual_orders.push_back(aj);
            if (aj == 0) break;
            tr.actual_branches.push_back(divisor_permissible);
        }
        check_lemma(*cur);
        if (divisor_permissible) {
            auto [child, map] = identity_division_chart(chart, wvar, ids, step);
            cur = controlled_transform(*cur, child, map);
            chart = child;
        } else {
            CoordSubspace point;
            for (size_t i = 0; i < chart.nvars(); ++i) point.zeroed.insert(static_cast<int>(i));
            auto charts = blowup_charts(chart, point, ids, step);
            // Follow the chart of the w-axis: its exceptional variable is w.
            bool found = false;
            for (auto& [child, map] : charts) {
                if (map.exceptional->second != wvar) continue;
                cur = controlled_transform(*cur, child, map);
                chart = child;
                found = true;
                break;
            }
            if (!found || !cur) throw InvariantViolation("trick_validate: lost the w-chart");
        }
        ++j;
        ++step;
    }

    tr.lemma_law_held = lemma_ok;
    int j0_actual = j;
    tr.matched = (j0_actual == tr.j0) && lemma_ok && (tr.actual_branches == tr.branches) &&
                 (tr.actual_orders == tr.predicted_orders);
    return tr;
}

} // namespace resing
