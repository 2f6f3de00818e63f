#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "resing/poly.hpp"

namespace resing {

/// Irreducible divisor component. Ids are unique within a run; origin
/// distinguishes input components from exceptional ones, which remember
/// the global step that created them.
struct DivisorLabel {
    uint64_t id = 0;
    bool exceptional = false;
    int step = -1; // creating step for exceptional labels
    std::string name;
};

/// Affine chart: ordered variables, divisor components pinned to
/// coordinate hyperplanes, and the substitution lineage from the parent.
/// Distinct labels always sit on distinct variables.
struct Chart {
    std::vector<std::string> vars;
    std::map<uint64_t, int> divisor; // label id -> variable index
    std::map<uint64_t, DivisorLabel> labels;

    size_t nvars() const { return vars.size(); }
    bool var_has_label(int v) const;
    std::optional<uint64_t> label_on(int v) const;
    std::set<int> divisor_vars() const;
    int var_index(const std::string& name) const; // -1 if absent

    void check() const; // invariant: injective divisor map
};

/// Substitution from a parent chart into a child chart.
struct ChartMap {
    enum class Kind { BlowupChart, Projection, IdentityDivision };
    Kind kind = Kind::BlowupChart;
    std::vector<Poly> images;                           // parent var -> poly in child vars
    std::optional<std::pair<uint64_t, int>> exceptional; // (label id, child var index)
};

struct LabelAllocator {
    uint64_t next = 1;
    uint64_t fresh() { return next++; }
};

/// Standard charts of the blow-up with a coordinate center of size >= 2.
/// One child per center variable; the fresh exceptional label (a single
/// id shared by the children) lands on that variable. A divisor label on
/// the chosen variable is dropped in its own chart: the strict transform
/// misses it.
std::vector<std::pair<Chart, ChartMap>> blowup_charts(const Chart& c, const CoordSubspace& center,
                                                      LabelAllocator& ids, int step);

/// Codimension-one center V(var): the map is the identity on the space;
/// transforms divide by the (possibly fresh) exceptional variable. The
/// existing label is reused when the hyperplane is already a divisor.
std::pair<Chart, ChartMap> identity_division_chart(const Chart& c, int var, LabelAllocator& ids,
                                                   int step);

/// Appends m fresh variables; the divisor is unchanged.
std::pair<Chart, ChartMap> open_projection(const Chart& c, int m);

/// Chart on the complementary variables with the induced divisor.
/// Requires transversality: no divisor variable inside N.
Chart restrict_to_subspace(const Chart& c, const CoordSubspace& n);

} // namespace resing
