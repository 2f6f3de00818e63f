#include "resing/projection.hpp"

#include <algorithm>

namespace resing {

Monomial LogFactor::as_monomial(const IdealisticSpace& s) const {
    Monomial m(s.nvars());
    for (const auto& [id, e] : exps) {
        auto it = s.chart.divisor.find(id);
        if (it == s.chart.divisor.end())
            throw InvariantViolation("log factor label missing from chart");
        m.exps[static_cast<size_t>(it->second)] = e;
    }
    return m;
}

Poly LogFactor::as_poly(const IdealisticSpace& s) const {
    return Poly::term(s.nvars(), as_monomial(s), 1);
}

namespace {

unsigned lcm_mark(const IdealisticSpace& s) {
    Int l = 1;
    bool any = false;
    for (const auto& mi : s.ideals) {
        if (mi.f.is_zero()) continue;
        l = int_lcm(l, Int(mi.d));
        any = true;
    }
    if (!any) throw Error("expected at least one nonzero marked ideal");
    return l.convert_to<unsigned>();
}

unsigned normalized_mark(const IdealisticSpace& s) {
    for (const auto& mi : s.ideals)
        if (!mi.f.is_zero()) return mi.d;
    throw Error("no nonzero marked ideal");
}

} // namespace

LogFactor extract_log_factor(const IdealisticSpace& s) {
    // Relative to the lcm-normalized presentation, without raising
    // anything to a power: the content of f^e is e times the content
    // of f.
    const unsigned d = lcm_mark(s);
    const std::set<int> dvars = s.divisor_vars();
    LogFactor z;
    if (dvars.empty()) return z;
    bool first = true;
    Monomial acc(s.nvars());
    for (const auto& mi : s.ideals) {
        if (mi.f.is_zero()) continue;
        const unsigned e = d / mi.d;
        Monomial c = monomial_content(mi.f, dvars);
        for (int v : dvars) c.exps[static_cast<size_t>(v)] *= e;
        if (first) {
            acc = c;
            first = false;
        } else {
            for (int v : dvars) {
                auto i = static_cast<size_t>(v);
                acc.exps[i] = std::min(acc.exps[i], c.exps[i]);
            }
        }
    }
    for (const auto& [id, idx] : s.chart.divisor) {
        if (s.excluded_labels.count(id) || s.zeroed(idx)) continue;
        if (acc.exps[static_cast<size_t>(idx)] > 0)
            z.exps[id] = acc.exps[static_cast<size_t>(idx)];
    }
    return z;
}

namespace {

std::vector<Poly> cofactors(const IdealisticSpace& s, const LogFactor& z) {
    Monomial zm = z.as_monomial(s);
    std::vector<Poly> out;
    for (const auto& mi : s.ideals) {
        if (mi.f.is_zero()) continue;
        out.push_back(divide_exact(mi.f, zm));
    }
    return out;
}

} // namespace

namespace {

void collect_derivatives(const Poly& f, unsigned below, const std::vector<int>& vars, size_t vi,
                         IdealBasis& out) {
    if (vi == vars.size()) {
        out.add(f);
        return;
    }
    Poly cur = f;
    for (unsigned k = 0;; ++k) {
        collect_derivatives(cur, below - k, vars, vi + 1, out);
        if (k == below) break;
        cur = cur.derivative(static_cast<size_t>(vars[vi]));
        if (cur.is_zero()) break;
    }
}

// The locus of singular points where every co-factor has order >= m.
bool cofactor_locus_nonempty(const IdealisticSpace& s, const IdealBasis& sing,
                             const std::vector<Poly>& js, unsigned m,
                             const GroebnerLimits& limits) {
    IdealBasis probe = sing;
    const std::vector<int> vars = s.space_vars();
    for (const auto& j : js) collect_derivatives(j, m - 1, vars, 0, probe);
    return !is_empty_variety(probe, limits);
}

} // namespace

std::optional<unsigned> cofactorial_order(const IdealisticSpace& s, const LogFactor& z,
                                          const GroebnerLimits& limits) {
    require_normalized(s);
    IdealBasis sing = singular_locus_in_chart(s);
    if (is_empty_variety(sing, limits)) return std::nullopt;

    std::vector<Poly> js = cofactors(s, z);
    unsigned bound = 0;
    for (const auto& j : js) bound = std::max(bound, j.total_degree());
    if (bound == 0 || !cofactor_locus_nonempty(s, sing, js, 1, limits)) return 0;
    // nonempty(m) is monotone in m; bisect for the largest nonempty level
    unsigned lo = 1, hi = bound;
    while (lo < hi) {
        unsigned mid = lo + (hi - lo + 1) / 2;
        if (cofactor_locus_nonempty(s, sing, js, mid, limits)) lo = mid;
        else hi = mid - 1;
    }
    return lo;
}

bool is_adjusted(const IdealisticSpace& s, const GroebnerLimits& limits) {
    // delta = 1 everywhere on Sing iff no singular point carries order
    // d + 1 in the normalized list: a single emptiness probe.
    IdealisticSpace n = normalize(s);
    IdealBasis sing = singular_locus_in_chart(n);
    if (is_empty_variety(sing, limits)) return true;
    std::vector<Poly> fs;
    for (const auto& mi : n.ideals)
        if (!mi.f.is_zero()) fs.push_back(mi.f);
    return !cofactor_locus_nonempty(n, sing, fs, normalized_mark(n) + 1, limits);
}

IdealisticSpace adjust(const IdealisticSpace& s, const LogFactor& z, unsigned m,
                       const GroebnerLimits& limits) {
    require_normalized(s);
    if (m < 1) throw Error("adjust: m must be >= 1");
    auto mu = cofactorial_order(s, z, limits);
    if (mu && m < *mu) throw Error("adjust: m is below the co-factorial order");
    IdealisticSpace out = s;
    Monomial zm = z.as_monomial(s);
    for (const auto& mi : s.ideals) {
        if (mi.f.is_zero()) continue;
        out.ideals.push_back({divide_exact(mi.f, zm), m});
    }
    return out;
}

ProjectedSpace coefficient_ideals(const ProjectionContext& ctx, const GroebnerLimits& limits) {
    const IdealisticSpace& src = ctx.source;
    const int z = ctx.zvar;
    if (z < 0 || static_cast<size_t>(z) >= src.nvars())
        throw DimensionMismatch("projection variable outside chart");
    if (src.zeroed(z)) throw Error("projection variable is zeroed on N");
    auto label = src.chart.label_on(z);
    if (label && !src.excluded_labels.count(*label)) {
        if (!ctx.over_divisor || *ctx.over_divisor != *label)
            throw Error("projection variable carries a divisor label; use over_divisor");
    }

    ProjectedSpace out;
    out.space.chart = src.chart;
    CoordSubspace n = src.subspace ? *src.subspace : CoordSubspace{};
    n.zeroed.insert(z);
    out.space.subspace = n;
    out.space.excluded_labels = src.excluded_labels;
    if (ctx.over_divisor) out.space.excluded_labels.insert(*ctx.over_divisor);

    for (size_t j = 0; j < src.ideals.size(); ++j) {
        const auto& mi = src.ideals[j];
        if (mi.f.is_zero()) continue;
        for (unsigned s = 0; s < mi.d; ++s) {
            Poly g = mi.f.coefficient_of(static_cast<size_t>(z), s);
            if (g.is_zero()) continue;
            out.space.ideals.push_back({std::move(g), mi.d - s});
            out.origins.emplace_back(j, s);
        }
    }
    if (out.space.ideals.empty())
        throw InputError("projection: every coefficient below the mark vanishes "
                         "(source is not reduced along H)");
    out.space.check();

    // Singular-locus law: Sing(projection) = H meet Sing(source).
    IdealBasis lhs = singular_locus_in_chart(out.space);
    IdealBasis rhs = singular_locus_in_chart(src);
    rhs.add(Poly::variable(src.nvars(), static_cast<size_t>(z)));
    if (!same_variety(lhs, rhs, limits))
        throw InvariantViolation("projection singular-locus law failed");
    return out;
}

namespace {

using MarkedList = std::map<std::pair<size_t, unsigned>, std::pair<Poly, unsigned>>;

MarkedList keyed(const ProjectedSpace& p) {
    MarkedList out;
    for (size_t i = 0; i < p.space.ideals.size(); ++i)
        out[p.origins[i]] = {p.space.ideals[i].f, p.space.ideals[i].d};
    return out;
}

} // namespace

bool projection_commutes(const ProjectionContext& ctx, const std::optional<CoordSubspace>& center,
                         const GroebnerLimits& limits) {
    ProjectedSpace below = coefficient_ideals(ctx, limits);
    LabelAllocator ids;
    ids.next = 1u << 20; // scratch ids, disjoint from caller labels

    if (!center) { // open projection commutes with coefficient extraction
        auto [child, map] = open_projection(ctx.source.chart, 1);
        auto sb = controlled_transform(ctx.source, child, map);
        auto pb = coefficient_ideals({*sb, ctx.zvar, ctx.over_divisor}, limits);
        auto pa = controlled_transform(below.space, child, map);
        ProjectedSpace lifted{*pa, below.origins};
        return keyed(lifted) == keyed(pb);
    }

    if (!center->contains(ctx.zvar))
        throw Error("projection_commutes: center must lie inside H");
    if (!is_permissible_center(ctx.source, *center))
        throw Error("projection_commutes: center not permissible for the source");
    // Y must be proper in H.
    size_t extra = 0;
    for (int v : center->zeroed)
        if (v != ctx.zvar && !ctx.source.zeroed(v)) ++extra;
    if (extra == 0) throw Error("projection_commutes: center has codimension 0 in H");

    if (center->size() == 1)
        throw Error("projection_commutes: codimension-one ambient center cannot sit inside H");

    for (auto& [child, map] : blowup_charts(ctx.source.chart, *center, ids, 0)) {
        if (map.exceptional->second == ctx.zvar) continue; // H' misses this chart
        auto pa = controlled_transform(below.space, child, map);
        auto sb = controlled_transform(ctx.source, child, map);
        if (!pa || !sb) throw InvariantViolation("projection_commutes: lost a chart");
        std::optional<uint64_t> lab = ctx.over_divisor;
        if (lab && !child.divisor.count(*lab)) continue; // projected component missed the chart
        auto pb = coefficient_ideals({*sb, ctx.zvar, lab}, limits);
        ProjectedSpace lifted{*pa, below.origins};
        if (keyed(lifted) != keyed(pb)) return false;
    }
    return true;
}

std::pair<Poly, Poly> tschirnhaus(const Poly& f, int zvar, unsigned d) {
    if (d < 1) throw Error("tschirnhaus: mark must be positive");
    const auto z = static_cast<size_t>(zvar);
    if (f.degree_in(z) != d) throw Error("tschirnhaus: polynomial is not z-monic of degree d");
    Poly lead = f.coefficient_of(z, d);
    if (!lead.is_constant() || lead.is_zero())
        throw Error("tschirnhaus: leading z-coefficient is not a nonzero constant");
    Poly sub = f.coefficient_of(z, d - 1);
    Poly shift = sub * (Rational(1) / (Rational(d) * lead.leading_coefficient()));
    if (shift.is_zero()) return {f, shift};
    std::vector<Poly> images;
    for (size_t i = 0; i < f.nvars(); ++i) images.push_back(Poly::variable(f.nvars(), i));
    images[z] = Poly::variable(f.nvars(), z) - shift;
    Poly g = f.substitute(images, f.nvars());
    if (!g.coefficient_of(z, d - 1).is_zero())
        throw InvariantViolation("tschirnhaus failed to clear the subleading coefficient");
    return {g, shift};
}

MaxContact maximal_contact_chart(const IdealisticSpace& s, const RationalPoint& p, int ladder) {
    if (p.nvars() != s.nvars()) throw DimensionMismatch("maximal_contact_chart: point length");
    if (delta(s, p) != 1)
        throw Error("maximal_contact_chart: the point does not have order one");

    MaxContact out;
    IdealisticSpace cur = s;
    // Translate P to the origin.
    for (size_t v = 0; v < p.nvars(); ++v) {
        if (p.coords[v] == 0) continue;
        Recoord r{static_cast<int>(v), Poly::constant(s.nvars(), p.coords[v])};
        cur = apply_recoord(cur, r); // throws if v carries a divisor label
        out.recoords.push_back(std::move(r));
    }

    // The pivot: an ideal whose order at the origin equals its mark.
    RationalPoint origin{std::vector<Rational>(s.nvars(), Rational(0))};
    std::optional<size_t> pivot;
    for (size_t j = 0; j < cur.ideals.size(); ++j) {
        const auto& mi = cur.ideals[j];
        if (mi.f.is_zero()) continue;
        ExtNat o = order_at_point(mi.f, origin);
        if (!o.infinite && o.value == mi.d) { pivot = j; break; }
    }
    if (!pivot) throw InvariantViolation("maximal_contact_chart: no ideal attains its mark");
    out.pivot = *pivot;
    const unsigned d = cur.ideals[*pivot].d;

    const std::set<int> divisor = cur.divisor_vars();
    auto monic_in = [&](const Poly& f, int v) {
        if (f.degree_in(static_cast<size_t>(v)) != d) return false;
        Poly lead = f.coefficient_of(static_cast<size_t>(v), d);
        return lead.is_constant() && !lead.is_zero();
    };
    auto candidates = [&]() {
        std::vector<int> vs;
        for (int v : cur.space_vars())
            if (!divisor.count(v)) vs.push_back(v);
        return vs;
    };

    std::optional<int> zvar;
    for (int v : candidates()) {
        if (monic_in(cur.ideals[*pivot].f, v)) { zvar = v; break; }
    }
    if (!zvar) {
        // Linear shears u -> u + lambda*v may expose a monic direction.
        for (int u : candidates()) {
            if (zvar) break;
            for (int v : cur.space_vars()) {
                if (zvar) break;
                if (v == u) continue;
                for (int step = 1; step <= ladder && !zvar; ++step) {
                    for (int sign : {1, -1}) {
                        Recoord r{u, Poly::variable(s.nvars(), static_cast<size_t>(v)) *
                                         Rational(sign * step)};
                        Poly g = apply_recoord(cur.ideals[*pivot].f, r);
                        std::optional<int> hit;
                        for (int w : candidates())
                            if (monic_in(g, w)) { hit = w; break; }
                        if (hit) {
                            cur = apply_recoord(cur, r);
                            out.recoords.push_back(std::move(r));
                            zvar = hit;
                            break;
                        }
                    }
                }
            }
        }
    }
    if (!zvar)
        throw UnsupportedInput("maximal_contact_chart: no monic direction within the ladder");

    auto [g, shift] = tschirnhaus(cur.ideals[*pivot].f, *zvar, d);
    if (!shift.is_zero()) {
        Recoord r{*zvar, -shift};
        cur = apply_recoord(cur, r);
        out.recoords.push_back(std::move(r));
        if (cur.ideals[*pivot].f != g)
            throw InvariantViolation("tschirnhaus recoordination mismatch");
    }
    out.ctx = ProjectionContext{std::move(cur), *zvar, std::nullopt};
    return out;
}

} // namespace resing
