#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "resing/idealistic.hpp"

namespace resing {

/// Monomial in divisor components dividing every ideal of a normalized
/// list; the trivial factor has no entries.
struct LogFactor {
    std::map<uint64_t, unsigned> exps; // label id -> exponent

    bool trivial() const { return exps.empty(); }
    Monomial as_monomial(const IdealisticSpace& s) const;
    Poly as_poly(const IdealisticSpace& s) const;
};

/// Maximal common logarithmic factor of a d-normalized space:
/// componentwise minimum of the divisor contents of the nonzero ideals.
LogFactor extract_log_factor(const IdealisticSpace& s);

/// Co-factorial order mu = max over Sing of (d*delta_P - nu_P Z), which
/// equals max over Sing of min_j nu_P(J_j) for the co-factors
/// J_j = f_j / Z. nullopt encodes -infinity (empty singular locus).
std::optional<unsigned> cofactorial_order(const IdealisticSpace& s, const LogFactor& z,
                                          const GroebnerLimits& limits = {});

/// delta = 1 at every singular point; vacuously true when Sing is empty.
bool is_adjusted(const IdealisticSpace& s, const GroebnerLimits& limits = {});

/// Appends the co-factors at mark m. Requires m >= 1 and m >= mu; at
/// m = mu the result is adjusted with nonempty singular locus whenever
/// mu >= 1, at m > mu the singular locus is empty.
IdealisticSpace adjust(const IdealisticSpace& s, const LogFactor& z, unsigned m,
                       const GroebnerLimits& limits = {});

/// Rectified projecting chart data: distinguished variable z with
/// H = (z = 0). H is transverse (z carries no divisor label) unless
/// over_divisor names the component being projected over.
struct ProjectionContext {
    IdealisticSpace source;
    int zvar = 0;
    std::optional<uint64_t> over_divisor;
};

/// The projected space: z-power coefficients G_js marked d_j - s,
/// immersed on N extended by z. origins[i] records which (j, s) produced
/// ideal i (zero coefficients are dropped).
struct ProjectedSpace {
    IdealisticSpace space;
    std::vector<std::pair<size_t, unsigned>> origins;
};

/// Expands each generator in powers of z and keeps the coefficients
/// below the mark. Asserts the singular-locus law
/// Sing(projection) = H meet Sing(source) on every call.
ProjectedSpace coefficient_ideals(const ProjectionContext& ctx, const GroebnerLimits& limits = {});

/// Project-then-transform versus transform-then-project for a
/// permissible center inside H (or for an open projection when center is
/// nullopt); exact equality of the marked lists.
bool projection_commutes(const ProjectionContext& ctx, const std::optional<CoordSubspace>& center,
                         const GroebnerLimits& limits = {});

/// Kills the z^(d-1) coefficient of a z-monic degree-d polynomial by the
/// shift z -> z - c_{d-1}/(d*lead). Returns the transformed polynomial
/// and the shift.
std::pair<Poly, Poly> tschirnhaus(const Poly& f, int zvar, unsigned d);

struct MaxContact {
    std::vector<Recoord> recoords; // applied to the source, in order
    ProjectionContext ctx;         // source already recoordinated
    size_t pivot = 0;              // index j with nu_P f_j = d_j
};

/// Builds a rectified maximal-contact chart at an order-one point:
/// translates P to the origin, finds a monic direction among the
/// variables or a finite ladder of linear shears, applies Tschirnhaus.
MaxContact maximal_contact_chart(const IdealisticSpace& s, const RationalPoint& p,
                                 int ladder = 8);

} // namespace resing
