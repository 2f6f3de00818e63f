#pragma once

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "resing/chart.hpp"
#include "resing/groebner.hpp"
#include "resing/poly.hpp"

namespace resing {

/// Principal ideal with an assigned multiplicity; singular where the
/// order reaches d. The zero polynomial is allowed inside lists (it
/// represents the same space with the entry skipped).
struct MarkedIdeal {
    Poly f;
    unsigned d = 1;
};

/// A finite list of marked ideals on a chart, possibly living on a
/// coordinate subspace N (the immersed case). Ideals use only the
/// N-complementary variables. excluded_labels are divisor components
/// that contain N (projection over a divisor); they are not part of the
/// space's divisor.
struct IdealisticSpace {
    Chart chart;
    std::optional<CoordSubspace> subspace;
    std::vector<MarkedIdeal> ideals;
    std::set<uint64_t> excluded_labels;

    size_t nvars() const { return chart.nvars(); }
    /// Dimension e of the ambient subspace the list lives on.
    size_t dim() const { return nvars() - (subspace ? subspace->size() : 0); }
    bool zeroed(int v) const { return subspace && subspace->contains(v); }
    std::vector<int> space_vars() const;
    /// Divisor variables visible to this space (excluded labels and
    /// labels on zeroed variables removed).
    std::set<int> divisor_vars() const;
    std::set<uint64_t> divisor_labels() const;
    bool has_nonzero_ideal() const;

    void check() const;
};

/// Derivative presentation of the singular locus: all d^alpha f_j with
/// |alpha| <= d_j - 1, derivatives taken in the space variables only.
/// The variety inside the chart is V(result) meet N.
IdealBasis singular_ideal(const IdealisticSpace& s);

/// singular_ideal plus the linear equations of N: cuts Sing as a chart
/// subvariety, ready for emptiness and containment queries.
IdealBasis singular_locus_in_chart(const IdealisticSpace& s);

bool sing_is_empty(const IdealisticSpace& s, const GroebnerLimits& limits = {});

/// Hironaka order at a rational point: min_j nu_P(f_j)/d_j.
Rational delta(const IdealisticSpace& s, const RationalPoint& p);

/// Generic order along the coordinate center Y (variables of Y outside
/// N); 0 when Y is not inside N or equals N.
Rational delta_along(const IdealisticSpace& s, const CoordSubspace& y);

/// Y is permissible iff it lies in N (immersed case) and the generic
/// order along it is >= 1.
bool is_permissible_center(const IdealisticSpace& s, const CoordSubspace& y);

/// Controlled transform along a chart map: substitute, then divide by
/// the exceptional variable to the d_j-th power. Returns nullopt when
/// the strict transform of N misses the child chart. Throws
/// NonExactDivision when the center was not permissible.
std::optional<IdealisticSpace> controlled_transform(const IdealisticSpace& s, const Chart& child,
                                                    const ChartMap& map);

/// Equivalent d-normalized space: d = lcm of the marks, f_j^(d/d_j).
IdealisticSpace normalize(const IdealisticSpace& s);

/// A coordinate substitution x_var -> x_var + offset, recorded so traces
/// can be replayed.
struct Recoord {
    int var = 0;
    Poly offset;
};

Poly apply_recoord(const Poly& f, const Recoord& r);

/// Recoordinated space. A divisor hyperplane pinned to the moved
/// variable cannot stay coordinate; its label is dropped, i.e. the chart
/// now models a neighbourhood missing that component.
IdealisticSpace apply_recoord(const IdealisticSpace& s, const Recoord& r);

/// One probe step: a coordinate center named by variables (optionally
/// after constant shifts, so centers through translated points are
/// expressible), or an open projection. Centers are interpreted per
/// chart by name; a name absent from a chart means the center misses
/// that chart.
struct TestStep {
    enum class Kind { Center, Projection };
    Kind kind = Kind::Center;
    std::set<std::string> center_vars;
    std::vector<std::pair<std::string, Rational>> shifts; // var -> var + c first
    int m = 1;

    static TestStep center(std::set<std::string> vars) {
        TestStep t;
        t.kind = Kind::Center;
        t.center_vars = std::move(vars);
        return t;
    }
    static TestStep center_at(std::set<std::string> vars,
                              std::vector<std::pair<std::string, Rational>> sh) {
        TestStep t = center(std::move(vars));
        t.shifts = std::move(sh);
        return t;
    }
    static TestStep projection(int m = 1) {
        TestStep t;
        t.kind = Kind::Projection;
        t.m = m;
        return t;
    }
};
using TestSystem = std::vector<TestStep>;

struct TestLeaf {
    Chart chart;
    std::optional<IdealisticSpace> space; // nullopt: the empty immersed space
};

struct TestRunResult {
    bool permissible = false;
    size_t failed_step = 0; // valid when !permissible
    std::vector<TestLeaf> leaves;
};

/// Applies the steps to every current leaf; fails (a verdict, not an
/// error) at the first step whose center is not permissible in some
/// chart where it is nonempty.
TestRunResult run_test_system(const IdealisticSpace& s, const TestSystem& sys,
                              LabelAllocator& ids);

struct EquivOptions {
    size_t max_systems = 2000000;
    bool include_projection = true;
    /// Extra steps (e.g. centers through translated points) enumerated
    /// besides all subsets of the visible variable names.
    std::vector<TestStep> extra_steps;
    /// When set, replaces the default candidate generator entirely.
    std::function<std::vector<TestStep>(const std::vector<TestLeaf>&)> generator;
};

struct EquivResult {
    bool same_verdicts = true;
    std::optional<TestSystem> counterexample; // permissible for exactly one side
    bool counterexample_favors_a = false;     // permissible for A, not B
    size_t systems_checked = 0;
};

/// Bounded equivalence probe: enumerates all test systems of length <=
/// depth built from coordinate candidates (plus one open projection) and
/// compares permissibility verdicts step by step. A refutation tool:
/// same-verdicts is corroboration, never a proof.
EquivResult equiv_bounded(const IdealisticSpace& a, const IdealisticSpace& b, int depth,
                          const EquivOptions& opts = {});

/// Record of one curve-divisor validation run.
struct TrickTrace {
    Rational e;
    int j0 = 0;
    std::vector<bool> branches;            // predicted a_j >= 1, j = 2..j0-1
    std::vector<Rational> predicted_orders; // a_2..a_j0
    std::vector<Rational> actual_orders;
    std::vector<bool> actual_branches;
    bool lemma_law_held = true; // delta_P >= delta_X + delta_D at every step
    bool matched = false;
};

/// Runs the curve-divisor construction at a singular rational point:
/// predicts the branch sequence from the order recurrence, then
/// simulates the projection and blow-up tower and compares exactly.
TrickTrace trick_validate(const IdealisticSpace& s, const RationalPoint& p,
                          unsigned fuel = 1000);

} // namespace resing
