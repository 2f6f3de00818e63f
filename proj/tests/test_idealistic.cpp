#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "resing/idealistic.hpp"

using namespace resing;

namespace {

Chart plane() {
    Chart c;
    c.vars = {"x", "y"};
    return c;
}

Chart space3() {
    Chart c;
    c.vars = {"x", "y", "z"};
    return c;
}

Poly X(size_t n = 2) { return Poly::variable(n, 0); }
Poly Y(size_t n = 2) { return Poly::variable(n, 1); }
Poly Z(size_t n = 3) { return Poly::variable(n, 2); }

IdealisticSpace cusp_space() {
    IdealisticSpace s;
    s.chart = plane();
    s.ideals = {{Y() * Y() - X().pow(3), 2}};
    return s;
}

IdealisticSpace immersed_x3() {
    IdealisticSpace s;
    s.chart = plane();
    s.subspace = CoordSubspace{{1}}; // N = (y = 0)
    s.ideals = {{X().pow(3), 2}};
    return s;
}

IdealisticSpace umbrella() {
    IdealisticSpace s;
    s.chart = space3();
    s.ideals = {{X(3) * X(3) - Y(3) * Y(3) * Z(), 2}};
    return s;
}

RationalPoint origin(size_t n) { return RationalPoint{std::vector<Rational>(n, Rational(0))}; }

} // namespace

TEST_CASE("singular_ideal examples") {
    IdealBasis cusp = singular_ideal(cusp_space());
    REQUIRE(cusp.gens.size() == 3);
    // variety is the reduced origin
    GroebnerBasis g = groebner(cusp);
    REQUIRE(g.elems.size() == 2);
    CHECK(g.elems[0] == Y());
    CHECK(g.elems[1] == X() * X());

    IdealBasis umb = singular_ideal(umbrella());
    CHECK(dimension(umb) == 1); // the z-axis

    IdealisticSpace d1;
    d1.chart = plane();
    d1.ideals = {{X(), 1}};
    IdealBasis s1 = singular_ideal(d1);
    REQUIRE(s1.gens.size() == 1);
    CHECK(s1.gens[0] == X());
}

TEST_CASE("delta: worked order values") {
    CHECK(delta(cusp_space(), origin(2)) == Rational(1));
    CHECK(delta(immersed_x3(), origin(2)) == Rational(3, 2));

    IdealisticSpace two;
    two.chart = plane();
    two.ideals = {{X(), 1}, {Y(), 1}};
    CHECK(delta(two, origin(2)) == Rational(1));
}

TEST_CASE("delta_along examples") {
    CHECK(delta_along(umbrella(), CoordSubspace{{0, 1}}) == Rational(1));
    CHECK(delta_along(cusp_space(), CoordSubspace{{1}}) == Rational(0));

    IdealisticSpace xd;
    xd.chart = plane();
    xd.ideals = {{X().pow(4), 4}};
    CHECK(delta_along(xd, CoordSubspace{{0}}) == Rational(1));
}

TEST_CASE("is_permissible_center examples") {
    CHECK(is_permissible_center(cusp_space(), CoordSubspace{{0, 1}}));
    CHECK_FALSE(is_permissible_center(cusp_space(), CoordSubspace{{1}}));
    CHECK(is_permissible_center(umbrella(), CoordSubspace{{0, 1}}));
    // cross-check via radical membership against the singular ideal
    IdealBasis sing = singular_ideal(umbrella());
    CHECK(radical_member(X(3), sing));
    CHECK(radical_member(Y(3), sing));
    CHECK_FALSE(radical_member(Z(), sing));
}

TEST_CASE("controlled transform of the cusp resolves in the x-chart") {
    LabelAllocator ids;
    IdealisticSpace s = cusp_space();
    auto charts = blowup_charts(s.chart, CoordSubspace{{0, 1}}, ids, 0);
    auto tx = controlled_transform(s, charts[0].first, charts[0].second);
    REQUIRE(tx.has_value());
    CHECK(tx->ideals[0].f == Y() * Y() - X());
    CHECK(sing_is_empty(*tx));

    auto ty = controlled_transform(s, charts[1].first, charts[1].second);
    REQUIRE(ty.has_value());
    CHECK(sing_is_empty(*ty));
}

TEST_CASE("controlled transform of the umbrella along the z-axis") {
    LabelAllocator ids;
    IdealisticSpace s = umbrella();
    auto charts = blowup_charts(s.chart, CoordSubspace{{0, 1}}, ids, 0);
    // chart y: divide by y^2, leaving x^2 - z
    auto ty = controlled_transform(s, charts[1].first, charts[1].second);
    REQUIRE(ty.has_value());
    CHECK(ty->ideals[0].f == X(3) * X(3) - Z());
    CHECK(sing_is_empty(*ty));
    auto tx = controlled_transform(s, charts[0].first, charts[0].second);
    CHECK(sing_is_empty(*tx));
}

TEST_CASE("identity-division at a codimension-one center") {
    LabelAllocator ids;
    IdealisticSpace s;
    s.chart = plane();
    Poly g = Y() + Poly::constant(2, 1); // unit at the origin
    s.ideals = {{X() * g, 1}};
    auto [child, map] = identity_division_chart(s.chart, 0, ids, 0);
    auto t = controlled_transform(s, child, map);
    REQUIRE(t.has_value());
    CHECK(t->ideals[0].f == g);
}

TEST_CASE("exceptional-order law under a permissible blow-up") {
    // delta along the new exceptional divisor = delta along the center - 1
    LabelAllocator ids;
    for (const auto& [s, center] : {std::pair{cusp_space(), CoordSubspace{{0, 1}}},
                                    std::pair{umbrella(), CoordSubspace{{0, 1}}}}) {
        Rational along = delta_along(s, center);
        for (auto& [child, map] : blowup_charts(s.chart, center, ids, 0)) {
            auto t = controlled_transform(s, child, map);
            REQUIRE(t.has_value());
            CHECK(delta_along(*t, CoordSubspace{{map.exceptional->second}}) == along - 1);
        }
    }
}

TEST_CASE("subspace strict transform misses its own chart") {
    LabelAllocator ids;
    IdealisticSpace s = immersed_x3();
    auto charts = blowup_charts(s.chart, CoordSubspace{{0, 1}}, ids, 0);
    // chart x: N = (y=0) survives, x^3 -> x after dividing x^2
    auto tx = controlled_transform(s, charts[0].first, charts[0].second);
    REQUIRE(tx.has_value());
    CHECK(tx->ideals[0].f == X());
    CHECK(tx->subspace->zeroed == std::set<int>{1});
    // chart y: N misses
    auto ty = controlled_transform(s, charts[1].first, charts[1].second);
    CHECK_FALSE(ty.has_value());
}

TEST_CASE("run_test_system verdicts") {
    LabelAllocator ids;
    IdealisticSpace s = cusp_space();

    TestRunResult ok = run_test_system(s, {TestStep::center({"x", "y"})}, ids);
    CHECK(ok.permissible);
    for (const auto& leaf : ok.leaves) {
        REQUIRE(leaf.space.has_value());
        CHECK(sing_is_empty(*leaf.space));
    }

    TestRunResult bad = run_test_system(s, {TestStep::center({"y"})}, ids);
    CHECK_FALSE(bad.permissible);
    CHECK(bad.failed_step == 0);

    TestRunResult empty = run_test_system(s, {}, ids);
    CHECK(empty.permissible);
    REQUIRE(empty.leaves.size() == 1);
    CHECK(empty.leaves[0].space->ideals[0].f == s.ideals[0].f);
}

TEST_CASE("order is preserved under open projection") {
    LabelAllocator ids;
    IdealisticSpace s = cusp_space();
    TestRunResult r = run_test_system(s, {TestStep::projection(1)}, ids);
    REQUIRE(r.permissible);
    const auto& sp = *r.leaves[0].space;
    CHECK(delta(sp, origin(3)) == Rational(1));
}

TEST_CASE("normalize examples") {
    IdealisticSpace s;
    s.chart = plane();
    s.ideals = {{X(), 1}, {Y() * Y(), 2}};
    IdealisticSpace n = normalize(s);
    REQUIRE(n.ideals.size() == 2);
    CHECK(n.ideals[0].f == X() * X());
    CHECK(n.ideals[0].d == 2);
    CHECK(n.ideals[1].f == Y() * Y());

    IdealisticSpace m;
    m.chart = plane();
    m.ideals = {{X().pow(3), 2}, {Y(), 1}};
    IdealisticSpace nm = normalize(m);
    CHECK(nm.ideals[0].f == X().pow(3));
    CHECK(nm.ideals[0].d == 2);
    CHECK(nm.ideals[1].f == Y() * Y());
    CHECK(nm.ideals[1].d == 2);

    IdealisticSpace already = normalize(cusp_space());
    CHECK(already.ideals[0].f == cusp_space().ideals[0].f);
}

TEST_CASE("delta agrees across redundant-ideal presentations") {
    // L and L' = L + multiples of its members present the same space.
    IdealisticSpace a = cusp_space();
    IdealisticSpace b = a;
    b.ideals.push_back({(Y() * Y() - X().pow(3)) * X(), 2});
    b.ideals.push_back({(Y() * Y() - X().pow(3)) * Y(), 2});
    for (int xc = -1; xc <= 1; ++xc) {
        RationalPoint p{{xc, 0}};
        if (delta(a, p) >= 1) CHECK(delta(a, p) == delta(b, p));
    }
    CHECK(delta(a, origin(2)) == delta(b, origin(2)));
}

TEST_CASE("equiv_bounded: cusp vs immersed coefficient space at depth 3") {
    EquivOptions opts;
    EquivResult r = equiv_bounded(cusp_space(), immersed_x3(), 3, opts);
    CHECK(r.same_verdicts);
    CHECK(r.systems_checked > 0);
}

TEST_CASE("equiv_bounded finds a separating center") {
    IdealisticSpace a;
    a.chart = plane();
    a.ideals = {{X(), 1}};
    IdealisticSpace b;
    b.chart = plane();
    b.ideals = {{Y(), 1}};
    EquivResult r = equiv_bounded(a, b, 2);
    CHECK_FALSE(r.same_verdicts);
    REQUIRE(r.counterexample.has_value());
    CHECK(r.counterexample->size() == 1);

    // a space is equivalent to its normalization at any depth
    IdealisticSpace m;
    m.chart = plane();
    m.ideals = {{X(), 1}, {Y() * Y(), 2}};
    EquivResult rn = equiv_bounded(m, normalize(m), 2);
    CHECK(rn.same_verdicts);
}

TEST_CASE("test systems through translated points") {
    // Center at the point (1, 0): permissible exactly for the space
    // singular there.
    LabelAllocator ids;
    IdealisticSpace a;
    a.chart = plane();
    a.ideals = {{(X() - Poly::constant(2, 1)).pow(2), 2}};
    IdealisticSpace b = cusp_space();

    TestStep at_one = TestStep::center_at({"x", "y"}, {{"x", Rational(1)}});
    TestRunResult ra = run_test_system(a, {at_one}, ids);
    CHECK(ra.permissible);
    TestRunResult rb = run_test_system(b, {at_one}, ids);
    CHECK_FALSE(rb.permissible);

    // injected generator separates them at depth 1
    EquivOptions opts;
    opts.generator = [&](const std::vector<TestLeaf>&) {
        return std::vector<TestStep>{at_one};
    };
    EquivResult r = equiv_bounded(a, b, 1, opts);
    CHECK_FALSE(r.same_verdicts);
    CHECK(r.counterexample_favors_a);
}

TEST_CASE("equiv_bounded: redundant-ideal presentation at depth 3") {
    // Appending multiples of a list member presents the same space.
    IdealisticSpace a = cusp_space();
    IdealisticSpace b = a;
    b.ideals.push_back({(Y() * Y() - X().pow(3)) * X(), 2});
    b.ideals.push_back({(Y() * Y() - X().pow(3)) * (Y() + X()), 2});
    EquivResult r = equiv_bounded(a, b, 3);
    CHECK(r.same_verdicts);
}

TEST_CASE("trick_validate on the worked orders") {
    // e = 1: immediate stop
    IdealisticSpace s1;
    s1.chart = Chart{{"x"}, {}, {}};
    s1.ideals = {{Poly::variable(1, 0).pow(2), 2}};
    TrickTrace t1 = trick_validate(s1, RationalPoint{{0}});
    CHECK(t1.e == Rational(1));
    CHECK(t1.j0 == 2);
    CHECK(t1.branches.empty());
    CHECK(t1.matched);

    // e = 3/2: branches [false, true], j0 = 4
    IdealisticSpace s2;
    s2.chart = Chart{{"x"}, {}, {}};
    s2.ideals = {{Poly::variable(1, 0).pow(3), 2}};
    TrickTrace t2 = trick_validate(s2, RationalPoint{{0}});
    CHECK(t2.e == Rational(3, 2));
    CHECK(t2.j0 == 4);
    CHECK(t2.branches == std::vector<bool>{false, true});
    CHECK(t2.matched);

    // e = 2 via (x^4, 2): branches [true], j0 = 3
    IdealisticSpace s3;
    s3.chart = Chart{{"x"}, {}, {}};
    s3.ideals = {{Poly::variable(1, 0).pow(4), 2}};
    TrickTrace t3 = trick_validate(s3, RationalPoint{{0}});
    CHECK(t3.e == Rational(2));
    CHECK(t3.j0 == 3);
    CHECK(t3.branches == std::vector<bool>{true});
    CHECK(t3.matched);
}

TEST_CASE("trick_validate on an immersed space") {
    IdealisticSpace s = immersed_x3();
    TrickTrace t = trick_validate(s, origin(2));
    CHECK(t.e == Rational(3, 2));
    CHECK(t.j0 == 4);
    CHECK(t.matched);
}

TEST_CASE("equiv_bounded reports fuel exhaustion explicitly") {
    EquivOptions opts;
    opts.max_systems = 3;
    CHECK_THROWS_AS(equiv_bounded(cusp_space(), cusp_space(), 3, opts), FuelExhausted);
}

TEST_CASE("trick_validate at a translated point") {
    IdealisticSpace s;
    s.chart = Chart{{"x"}, {}, {}};
    Poly x = Poly::variable(1, 0);
    Poly shifted = (x - Poly::constant(1, 2)).pow(3);
    s.ideals = {{shifted, 2}};
    TrickTrace t = trick_validate(s, RationalPoint{{2}});
    CHECK(t.e == Rational(3, 2));
    CHECK(t.matched);

    CHECK_THROWS_AS(trick_validate(s, RationalPoint{{0}}), Error);
}
