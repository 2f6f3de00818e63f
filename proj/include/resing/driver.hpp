#pragma once

#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "resing/monomial_game.hpp"
#include "resing/projection.hpp"

namespace resing {

struct DriverOptions {
    unsigned round_fuel = 400;       // phase rounds per resolve invocation
    unsigned step_fuel = 4000;       // global tree-step budget
    unsigned monomial_fuel = 10000;  // exponent-game budget
    unsigned root_search_fuel = 1000000;
    int shear_ladder = 8;
    unsigned max_depth = 64; // level-stack recursion guard
    GroebnerLimits groebner;
    std::vector<RationalPoint> seeds; // extra working points (root chart coordinates)
};

enum class Phase { Base, Monomial, AdjustDescent, Reduce, SeparateOld, MaxContact };
const char* phase_name(Phase p);

/// One tree-affecting step of a resolution. Recoordination steps change
/// a node's coordinates in place; blow-up steps append children.
struct TraceStep {
    enum class Kind { Blowup, IdentityDivision, Recoordinate };
    Kind kind = Kind::Blowup;
    Phase phase = Phase::Base;
    int node = 0;
    std::vector<std::string> center; // variable names, Blowup/IdentityDivision
    std::vector<Recoord> recoords;   // Recoordinate payload
    std::vector<int> children;       // new node ids (empty for Recoordinate)
};

struct ResolutionTrace {
    std::vector<TraceStep> steps;
};

/// Chart-tree node. The level stack holds the input space's transform at
/// level 0; deeper levels are the driver's working spaces (adjusted
/// extensions and maximal-contact descents) and are popped before the
/// run finishes. nullopt marks a level whose subspace missed this chart.
struct TreeNode {
    Chart chart;
    int parent = -1;
    std::optional<ChartMap> from_parent;
    std::vector<Recoord> recoords; // recoordinations applied at this node
    std::vector<int> children;
    std::vector<std::optional<IdealisticSpace>> levels;

    bool is_leaf() const { return children.empty(); }
};

struct LeafVerdict {
    int node = 0;
    bool alive = false;      // level-0 subspace present in this chart
    bool sing_empty = false; // machine-checked
};

struct ResolveOutcome {
    std::vector<TreeNode> nodes;
    ResolutionTrace trace;
    std::vector<LeafVerdict> verification;
    bool resolved = false;
};

/// Runs the full reduction of singularities on one input space; every
/// final leaf is machine-verified. Throws on fuel exhaustion and on
/// inputs outside the implemented scope.
ResolveOutcome redsing(const IdealisticSpace& input, const DriverOptions& opts = {});

/// Reapplies a recorded trace to the input, checking each step; the
/// resulting tree must match the recording node for node.
ResolveOutcome replay(const IdealisticSpace& input, const ResolutionTrace& trace,
                      const DriverOptions& opts = {});

/// Rational roots of a univariate polynomial (support on variable `var`).
/// complete is false when a positive-degree non-linear factor remains
/// after deflation.
struct RationalRoots {
    std::vector<Rational> roots;
    bool complete = false;
};
RationalRoots rational_roots(const Poly& f, size_t var, unsigned fuel = 1000000);

} // namespace resing
