// Acceptance suite: one line per criterion, exit 0 only if every
// criterion holds. All comparisons are exact; no tolerances anywhere.

#include <chrono>
#include <iostream>
#include <random>
#include <sstream>

#include "resing/io.hpp"

using namespace resing;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int id, bool ok, const std::string& what, double seconds = -1) {
    std::ostringstream os;
    os << (ok ? "PASS" : "FAIL") << " criterion " << id << ": " << what;
    if (seconds >= 0) os << "  (" << seconds << " s)";
    std::cout << os.str() << std::endl;
    if (!ok) ++failures;
}

Poly X(size_t n = 2) { return Poly::variable(n, 0); }
Poly Y(size_t n = 2) { return Poly::variable(n, 1); }
Poly Z3() { return Poly::variable(3, 2); }

IdealisticSpace plane_space(const Poly& f, unsigned d) {
    IdealisticSpace s;
    s.chart = Chart{{"x", "y"}, {}, {}};
    s.ideals = {{f, d}};
    return s;
}

IdealisticSpace cusp() { return plane_space(Y() * Y() - X().pow(3), 2); }

IdealisticSpace immersed_x3() {
    IdealisticSpace s;
    s.chart = Chart{{"x", "y"}, {}, {}};
    s.subspace = CoordSubspace{{1}};
    s.ideals = {{X().pow(3), 2}};
    return s;
}

IdealisticSpace umbrella() {
    IdealisticSpace s;
    s.chart = Chart{{"x", "y", "z"}, {}, {}};
    s.ideals = {{X(3) * X(3) - Y(3) * Y(3) * Z3(), 2}};
    return s;
}

IdealisticSpace monomial_space(unsigned a, unsigned b, unsigned d, LabelAllocator& ids) {
    IdealisticSpace s;
    Chart c;
    c.vars = {"x", "y"};
    uint64_t e1 = ids.fresh(), e2 = ids.fresh();
    c.divisor[e1] = 0;
    c.labels[e1] = DivisorLabel{e1, false, -1, "E1"};
    c.divisor[e2] = 1;
    c.labels[e2] = DivisorLabel{e2, false, -1, "E2"};
    s.chart = c;
    s.ideals = {{X().pow(a) * Y().pow(b), d}};
    return s;
}

RationalPoint origin(size_t n) { return RationalPoint{std::vector<Rational>(n, Rational(0))}; }

// 1. Reference order values, exact rational equality.
void criterion1() {
    bool ok = delta(cusp(), origin(2)) == Rational(1) &&
              delta(immersed_x3(), origin(2)) == Rational(3, 2);
    report(1, ok, "delta_0 of the plane cusp is 1 and of the immersed coefficient space 3/2");
}

// 2. Exceptional-order law: delta along the exceptional divisor equals
// delta along the center minus one, in every chart, exactly.
void criterion2() {
    LabelAllocator ids;
    struct Case {
        IdealisticSpace s;
        CoordSubspace center;
    };
    std::vector<Case> corpus;
    corpus.push_back({cusp(), CoordSubspace{{0, 1}}});
    corpus.push_back({umbrella(), CoordSubspace{{0, 1}}});
    corpus.push_back({monomial_space(1, 1, 2, ids), CoordSubspace{{0, 1}}});
    corpus.push_back({monomial_space(3, 2, 4, ids), CoordSubspace{{0, 1}}});
    corpus.push_back({monomial_space(4, 3, 5, ids), CoordSubspace{{0, 1}}});

    bool ok = true;
    for (const auto& c : corpus) {
        if (!is_permissible_center(c.s, c.center)) { ok = false; break; }
        Rational along = delta_along(c.s, c.center);
        for (auto& [child, map] : blowup_charts(c.s.chart, c.center, ids, 0)) {
            auto t = controlled_transform(c.s, child, map);
            if (!t || delta_along(*t, CoordSubspace{{map.exceptional->second}}) != along - 1)
                ok = false;
        }
    }
    // identity-division instance: a pure divisor power
    {
        IdealisticSpace s = monomial_space(5, 0, 4, ids);
        Rational along = delta_along(s, CoordSubspace{{0}});
        auto [child, map] = identity_division_chart(s.chart, 0, ids, 0);
        auto t = controlled_transform(s, child, map);
        ok = ok && t && delta_along(*t, CoordSubspace{{0}}) == along - 1;
    }
    report(2, ok, "exceptional-divisor order drops by exactly one across the corpus");
}

// 3. Curve-divisor oracle for e in {1, 3/2, 2, 5/2}.
void criterion3() {
    struct Case {
        unsigned power;
        Rational e;
        int j0;
    };
    std::vector<Case> cases = {{2, Rational(1), 2},
                               {3, Rational(3, 2), 4},
                               {4, Rational(2), 3},
                               {5, Rational(5, 2), 6}};
    bool ok = true;
    for (const auto& c : cases) {
        IdealisticSpace s;
        s.chart = Chart{{"x"}, {}, {}};
        s.ideals = {{Poly::variable(1, 0).pow(c.power), 2}};
        TrickTrace t = trick_validate(s, RationalPoint{{0}});
        ok = ok && t.e == c.e && t.j0 == c.j0 && t.matched &&
             t.actual_branches == t.branches && t.actual_orders == t.predicted_orders &&
             t.lemma_law_held;
    }
    report(3, ok, "Hironaka-trick simulation matches the recurrence with j0 = 2, 4, 3, 6");
}

// 4. Projection exactness, the singular-locus law, commutation.
void criterion4() {
    IdealisticSpace s;
    s.chart = Chart{{"x", "z"}, {}, {}};
    Poly x = Poly::variable(2, 0), z = Poly::variable(2, 1);
    s.ideals = {{z * z - x.pow(3), 2}};

    bool ok = true;
    // The singular-locus law is asserted inside coefficient_ideals on
    // every call; a surviving call is a machine check of the law.
    ProjectedSpace p = coefficient_ideals({s, 1, std::nullopt});
    ok = ok && p.space.ideals.size() == 1 && p.space.ideals[0].d == 2;
    // exact generator of the projected principal ideal
    Poly g = p.space.ideals[0].f;
    ok = ok && (g == x.pow(3) || g == -x.pow(3));

    ok = ok && projection_commutes({s, 1, std::nullopt}, CoordSubspace{{0, 1}});
    ok = ok && projection_commutes({s, 1, std::nullopt}, std::nullopt);

    // one more law check on an immersed corpus member
    ProjectedSpace q = coefficient_ideals({umbrella(), 0, std::nullopt});
    ok = ok && q.space.ideals.size() == 1;
    report(4, ok, "coefficient ideals are exact, commute with the blow-up, and satisfy the "
                  "singular-locus law");
}

// 5. Adjustment of x*(z^2 - x^3) by Z = x.
void criterion5() {
    LabelAllocator ids;
    IdealisticSpace s;
    Chart c;
    c.vars = {"x", "z"};
    uint64_t e1 = ids.fresh();
    c.divisor[e1] = 0;
    c.labels[e1] = DivisorLabel{e1, false, -1, "E1"};
    s.chart = c;
    Poly x = Poly::variable(2, 0), z = Poly::variable(2, 1);
    s.ideals = {{x * (z * z - x.pow(3)), 2}};

    LogFactor zf = extract_log_factor(s);
    bool ok = zf.exps.size() == 1 && zf.exps.count(e1) && zf.exps.at(e1) == 1;
    auto mu = cofactorial_order(s, zf);
    ok = ok && mu && *mu == 2;
    IdealisticSpace a2 = adjust(s, zf, 2);
    ok = ok && !sing_is_empty(a2) && is_adjusted(a2);
    IdealisticSpace a3 = adjust(s, zf, 3);
    ok = ok && sing_is_empty(a3);
    report(5, ok, "Z = x, mu = 2; adjustment at mu is adjusted and nonempty, at mu+1 empty");
}

// 6. Monomial engine: 500 random instances with the stated bounds, plus
// 50 analytic cross-checks, under 60 seconds.
void criterion6() {
    auto t0 = Clock::now();
    bool ok = true;
    std::mt19937 rng(20260810);
    std::uniform_int_distribution<unsigned> nd(1, 12), ad(0, 10), nl(1, 5);
    LabelAllocator ids;
    ids.next = 1000;
    for (int trial = 0; trial < 500 && ok; ++trial) {
        unsigned d = nd(rng), n = nl(rng);
        LogState st;
        st.d = d;
        for (unsigned i = 0; i < n; ++i) st.a[i + 1] = ad(rng);
        try {
            GameResult res = monomial_resolve(st, 10000, ids);
            for (const auto& leaf : res.final_leaves)
                if (leaf.is_singular()) ok = false;
        } catch (const FuelExhausted&) {
            ok = false;
        }
    }

    // analytic cross-check on 50 sampled instances
    std::uniform_int_distribution<unsigned> nd2(2, 8), ad2(0, 6), nl2(2, 4);
    for (int trial = 0; trial < 50 && ok; ++trial) {
        unsigned d = nd2(rng), n = nl2(rng);
        Chart chart;
        LogState st;
        st.d = d;
        bool nonzero = false;
        for (unsigned i = 0; i < n; ++i) {
            chart.vars.push_back("x" + std::to_string(i));
            uint64_t id = ids.fresh();
            chart.divisor[id] = static_cast<int>(i);
            chart.labels[id] = DivisorLabel{id, false, -1, "E" + std::to_string(i)};
            unsigned a = ad2(rng);
            st.a[id] = a;
            nonzero |= a > 0;
        }
        if (!nonzero) continue;
        auto monomial_of = [&](const Chart& cc, const LogState& state) {
            Monomial m(cc.nvars());
            for (const auto& [id, e] : state.a) m.exps[static_cast<size_t>(cc.divisor.at(id))] = e;
            return Poly::term(cc.nvars(), m, 1);
        };
        struct Leaf {
            Chart chart;
            IdealisticSpace space;
            LogState st;
        };
        IdealisticSpace s0;
        s0.chart = chart;
        s0.ideals = {{monomial_of(chart, st), d}};
        std::vector<Leaf> leaves{{chart, s0, st}};
        int fuel = 10000;
        while (ok && fuel-- > 0) {
            auto it = std::find_if(leaves.begin(), leaves.end(),
                                   [](const Leaf& l) { return l.st.is_singular(); });
            if (it == leaves.end()) break;
            Leaf cur = *it;
            leaves.erase(it);
            std::set<uint64_t> b = choose_center(cur.st);
            if (b.size() == 1) {
                int var = cur.chart.divisor.at(*b.begin());
                auto [child, map] = identity_division_chart(cur.chart, var, ids, 0);
                auto t = controlled_transform(cur.space, child, map);
                auto kids = log_blowup(cur.st, b, 0);
                if (!t || t->ideals[0].f != monomial_of(child, kids[0].second)) ok = false;
                else leaves.push_back({child, *t, kids[0].second});
            } else {
                CoordSubspace center;
                for (uint64_t id : b) center.zeroed.insert(cur.chart.divisor.at(id));
                auto charts = blowup_charts(cur.chart, center, ids, 0);
                uint64_t fresh = charts[0].second.exceptional->first;
                auto kids = log_blowup(cur.st, b, fresh);
                for (auto& [child, map] : charts) {
                    auto t = controlled_transform(cur.space, child, map);
                    uint64_t lkey = 0;
                    for (uint64_t id : b)
                        if (cur.chart.divisor.at(id) == map.exceptional->second) lkey = id;
                    const LogState* predicted = nullptr;
                    for (const auto& [l, stc] : kids)
                        if (l == lkey) predicted = &stc;
                    if (!t || !predicted || t->ideals[0].f != monomial_of(child, *predicted))
                        ok = false;
                    else
                        leaves.push_back({child, *t, *predicted});
                }
            }
        }
        if (fuel <= 0) ok = false;
    }
    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    report(6, ok && secs < 60.0,
           "500 random exponent games terminate subcritical; 50 analytic cross-checks agree",
           secs);
}

// 7. Bounded equivalence of the cusp and its coefficient space.
void criterion7() {
    auto t0 = Clock::now();
    EquivResult r = equiv_bounded(cusp(), immersed_x3(), 3);
    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    report(7, r.same_verdicts && secs < 300.0,
           "cusp and immersed coefficient space agree on every test system of depth 3 (" +
               std::to_string(r.systems_checked) + " systems)",
           secs);
}

// 8. End-to-end resolutions with machine-verified empty singular loci
// and byte-for-byte trace replay.
void criterion8() {
    struct Case {
        const char* name;
        IdealisticSpace s;
        int exact_centers; // -1: no constraint
    };
    std::vector<Case> corpus;
    corpus.push_back({"cusp", cusp(), -1});
    corpus.push_back({"tacnode", plane_space(Y() * Y() - X().pow(4), 2), -1});
    corpus.push_back({"whitney-umbrella", umbrella(), 1});
    IdealisticSpace e8;
    e8.chart = Chart{{"x", "y", "z"}, {}, {}};
    e8.ideals = {{Z3() * Z3() + X(3).pow(3) + Y(3).pow(5), 2}};
    corpus.push_back({"E8", e8, -1});

    bool ok = true;
    for (const auto& c : corpus) {
        auto t0 = Clock::now();
        std::string verdict;
        try {
            ResolveOutcome out = redsing(c.s);
            bool this_ok = out.resolved;
            for (const auto& v : out.verification) this_ok = this_ok && v.sing_empty;
            if (c.exact_centers >= 0) {
                int blowups = 0;
                for (const auto& st : out.trace.steps)
                    if (st.kind != TraceStep::Kind::Recoordinate) ++blowups;
                this_ok = this_ok && blowups == c.exact_centers;
                if (c.exact_centers == 1 && !out.trace.steps.empty())
                    this_ok = this_ok &&
                              out.trace.steps.back().center == std::vector<std::string>{"x", "y"};
            }
            ResolveOutcome again = replay(c.s, out.trace);
            this_ok = this_ok &&
                      outcome_to_json(again).dump() == outcome_to_json(out).dump();
            double secs = std::chrono::duration<double>(Clock::now() - t0).count();
            this_ok = this_ok && secs < 60.0;
            verdict = std::string(c.name) + (this_ok ? " resolved+replayed" : " FAILED");
            ok = ok && this_ok;
        } catch (const std::exception& e) {
            ok = false;
            verdict = std::string(c.name) + " threw: " + e.what();
        }
        std::cout << "    " << verdict << std::endl;
    }
    report(8, ok, "cusp, tacnode, Whitney umbrella (single center {x,y}), E8 resolve, verify, "
                  "and replay byte-for-byte");
}

// 9. Groebner kernel checks.
void criterion9() {
    bool ok = true;
    {
        Poly x = X(), y = Y();
        GroebnerBasis g = groebner(IdealBasis({y * y - x.pow(3), y * 2, x * x * 3}, 2));
        ok = ok && g.elems.size() == 2 && g.elems[0] == y && g.elems[1] == x * x;
        ok = ok && dimension(IdealBasis(g.elems, 2)) == 0;
    }
    {
        IdealBasis umbrella_derivs = singular_ideal(umbrella());
        ok = ok && dimension(umbrella_derivs) == 1;
    }
    {
        Poly t = Poly::variable(1, 0);
        ok = ok && is_empty_variety(IdealBasis({t, t - Poly::constant(1, 1)}, 1));
    }
    // grid-agreement oracle on 100 random products of axis forms
    std::mt19937 rng(97);
    std::uniform_int_distribution<int> nv(2, 3), ngen(2, 4), nfac(1, 3), cval(-2, 2);
    for (int trial = 0; trial < 100 && ok; ++trial) {
        size_t n = nv(rng);
        std::uniform_int_distribution<size_t> var(0, n - 1);
        IdealBasis ideal;
        ideal.nvars = n;
        int g = ngen(rng);
        for (int i = 0; i < g; ++i) {
            Poly f = Poly::constant(n, 1);
            int k = nfac(rng);
            for (int j = 0; j < k; ++j)
                f = f * (Poly::variable(n, var(rng)) - Poly::constant(n, cval(rng)));
            ideal.add(f);
        }
        // exhaustive grid oracle
        bool grid_zero = false;
        std::vector<int> point(n, -2);
        while (true) {
            RationalPoint p;
            for (int v : point) p.coords.push_back(v);
            bool all = true;
            for (const auto& gen : ideal.gens)
                if (gen.eval(p) != 0) { all = false; break; }
            if (all) { grid_zero = true; break; }
            size_t i = 0;
            for (; i < n; ++i) {
                if (point[i] < 2) { point[i]++; break; }
                point[i] = -2;
            }
            if (i == n) break;
        }
        if (is_empty_variety(ideal) != !grid_zero) ok = false;
    }
    report(9, ok, "cusp derivative basis {x^2, y} (dim 0), umbrella dim 1, {x, x-1} empty, "
                  "100 grid-oracle agreements");
}

} // namespace

int main() {
    try {
        criterion1();
        criterion2();
        criterion3();
        criterion4();
        criterion5();
        criterion6();
        criterion7();
        criterion8();
        criterion9();
    } catch (const std::exception& e) {
        std::cout << "FAIL: acceptance run aborted: " << e.what() << std::endl;
        return 1;
    }
    if (failures == 0) {
        std::cout << "all acceptance criteria passed" << std::endl;
        return 0;
    }
    std::cout << failures << " criteria failed" << std::endl;
    return 1;
}
