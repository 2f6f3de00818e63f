#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "resing/chart.hpp"

namespace resing {

/// Exponents of a divisor-monomial marked ideal Z = prod x_D^{a_D} with
/// control d; the combinatorial shadow of a logarithmic space on one
/// chart.
struct LogState {
    std::map<uint64_t, unsigned> a; // label id -> exponent
    unsigned d = 1;

    unsigned sum(const std::set<uint64_t>& b) const;
    bool is_singular() const;
};

/// All inclusion-minimal label subsets B with sum_{D in B} a_D >= d;
/// empty iff the state is nonsingular.
std::vector<std::set<uint64_t>> log_sing_strata(const LogState& s);

/// Deterministic strategy: among minimal singular strata take minimal
/// cardinality, then maximal exponent sum, then lexicographic label ids.
std::set<uint64_t> choose_center(const LogState& s);

/// Exponent law of the controlled transform. |B| = 1 is the
/// identity-division (a_D -= d, one child); |B| >= 2 yields one child
/// per l in B with labels (current minus l) plus fresh, the fresh
/// exponent being sum_B a_D - d. Mirrors blowup_charts bookkeeping.
/// Children are keyed by the chart variable's label l (0 for the
/// single-label case).
std::vector<std::pair<uint64_t, LogState>> log_blowup(const LogState& s,
                                                      const std::set<uint64_t>& b,
                                                      uint64_t fresh_id);

struct GameStep {
    LogState before; // the leaf state the center was chosen for
    std::set<uint64_t> center;
};

struct GameResult {
    std::vector<GameStep> steps;
    std::vector<LogState> final_leaves;
};

/// Plays the exponent game until every leaf is subcritical; throws
/// FuelExhausted when the step budget runs out (a strategy failure, not
/// a wrong answer).
GameResult monomial_resolve(const LogState& start, unsigned fuel, LabelAllocator& ids);

} // namespace resing
