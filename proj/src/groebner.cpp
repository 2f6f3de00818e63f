#include "resing/groebner.hpp"

#include <algorithm>
#include <deque>

namespace resing {

IdealBasis::IdealBasis(std::vector<Poly> g, size_t n) : nvars(n) {
    for (auto& f : g) {
        if (f.nvars() != n) throw DimensionMismatch("ideal generator in wrong ring");
        if (!f.is_zero()) gens.push_back(std::move(f));
    }
}

void IdealBasis::add(const Poly& f) {
    if (f.nvars() != nvars) throw DimensionMismatch("ideal generator in wrong ring");
    if (!f.is_zero()) gens.push_back(f);
}

bool GroebnerBasis::contains_one() const {
    for (const auto& f : elems)
        if (f.is_constant() && !f.is_zero()) return true;
    return false;
}

namespace {

Poly make_monic(const Poly& f) {
    return f * (Rational(1) / f.leading_coefficient());
}

// Integer-primitive form with positive leading coefficient; keeping the
// working basis primitive instead of monic avoids spreading huge
// denominators through every reduction.
Poly make_primitive(const Poly& f) {
    using boost::multiprecision::gcd;
    Int den = 1;
    for (const auto& [m, c] : f.terms()) den = int_lcm(den, denominator(c));
    Int num = 0;
    for (const auto& [m, c] : f.terms()) num = gcd(num, Int(numerator(c) * (den / denominator(c))));
    if (num == 0) return f;
    Rational scale(den, num);
    if (f.leading_coefficient() < 0) scale = -scale;
    return f * scale;
}

// Full reduction of f modulo basis; deterministic reducer choice (first
// by index).
Poly reduce_full(Poly f, const std::vector<Poly>& basis) {
    Poly out(f.nvars());
    while (!f.is_zero()) {
        const Monomial& lm = f.leading_monomial();
        bool reduced = false;
        for (const auto& g : basis) {
            if (g.is_zero()) continue;
            const Monomial& gm = g.leading_monomial();
            if (gm.divides(lm)) {
                Monomial q = lm.divide(gm);
                Rational c = f.leading_coefficient() / g.leading_coefficient();
                f = f - g * Poly::term(f.nvars(), q, c);
                reduced = true;
                break;
            }
        }
        if (!reduced) {
            out.add_term(lm, f.leading_coefficient());
            f.add_term(lm, -f.leading_coefficient());
        }
    }
    return out;
}

Poly s_poly(const Poly& f, const Poly& g) {
    const Monomial l = Monomial::lcm(f.leading_monomial(), g.leading_monomial());
    Poly a = Poly::term(f.nvars(), l.divide(f.leading_monomial()),
                        Rational(1) / f.leading_coefficient());
    Poly b = Poly::term(f.nvars(), l.divide(g.leading_monomial()),
                        Rational(1) / g.leading_coefficient());
    return f * a - g * b;
}

bool coprime_leading(const Poly& f, const Poly& g) {
    const Monomial& a = f.leading_monomial();
    const Monomial& b = g.leading_monomial();
    for (size_t i = 0; i < a.nvars(); ++i)
        if (a.exps[i] > 0 && b.exps[i] > 0) return false;
    return true;
}

} // namespace

GroebnerBasis groebner(const IdealBasis& ideal, const GroebnerLimits& limits) {
    GroebnerBasis out;
    out.nvars = ideal.nvars;
    if (ideal.gens.empty()) return out;

    // Unit ideal fast path: the reduced basis is {1}.
    auto unit_basis = [&]() {
        GroebnerBasis u;
        u.nvars = ideal.nvars;
        u.elems = {Poly::constant(ideal.nvars, 1)};
        return u;
    };
    for (const auto& f : ideal.gens)
        if (f.is_constant() && !f.is_zero()) return unit_basis();

    std::vector<Poly> basis;
    for (const auto& f : ideal.gens) {
        Poly r = reduce_full(f, basis);
        if (r.is_constant() && !r.is_zero()) return unit_basis();
        if (!r.is_zero()) basis.push_back(make_primitive(r));
    }

    std::deque<std::pair<size_t, size_t>> pairs;
    for (size_t i = 0; i < basis.size(); ++i)
        for (size_t j = i + 1; j < basis.size(); ++j) pairs.emplace_back(i, j);

    size_t processed = 0;
    while (!pairs.empty()) {
        if (++processed > limits.max_pairs)
            throw FuelExhausted("groebner: pair budget exceeded");
        auto [i, j] = pairs.front();
        pairs.pop_front();
        if (coprime_leading(basis[i], basis[j])) continue; // Buchberger 1st criterion
        Poly s = s_poly(basis[i], basis[j]);
        Poly r = reduce_full(s, basis);
        if (r.is_zero()) continue;
        if (r.is_constant()) return unit_basis();
        if (r.total_degree() > limits.max_degree)
            throw FuelExhausted("groebner: degree guard exceeded");
        r = make_primitive(r);
        size_t k = basis.size();
        if (k + 1 > limits.max_basis)
            throw FuelExhausted("groebner: basis size guard exceeded");
        for (size_t t = 0; t < k; ++t) pairs.emplace_back(t, k);
        basis.push_back(r);
    }

    // Minimalize: drop elements whose leading term another divides.
    std::vector<Poly> minimal;
    for (size_t i = 0; i < basis.size(); ++i) {
        bool keep = true;
        for (size_t j = 0; j < basis.size(); ++j) {
            if (i == j) continue;
            const Monomial& mi = basis[i].leading_monomial();
            const Monomial& mj = basis[j].leading_monomial();
            if (mj.divides(mi) && !(mi == mj && j > i)) { keep = false; break; }
        }
        if (keep) minimal.push_back(basis[i]);
    }
    // Tail-reduce each against the others.
    std::vector<Poly> reduced;
    for (size_t i = 0; i < minimal.size(); ++i) {
        std::vector<Poly> others;
        for (size_t j = 0; j < minimal.size(); ++j)
            if (j != i) others.push_back(minimal[j]);
        Poly r = reduce_full(minimal[i], others);
        if (!r.is_zero()) reduced.push_back(make_monic(r));
    }
    std::sort(reduced.begin(), reduced.end(), [](const Poly& a, const Poly& b) {
        return a.leading_monomial() < b.leading_monomial();
    });
    out.elems = std::move(reduced);
    return out;
}

Poly normal_form(const Poly& f, const GroebnerBasis& g) {
    return reduce_full(f, g.elems);
}

bool is_empty_variety(const IdealBasis& ideal, const GroebnerLimits& limits) {
    if (ideal.gens.empty()) return false;
    return groebner(ideal, limits).contains_one();
}

bool radical_member(const Poly& f, const IdealBasis& ideal, const GroebnerLimits& limits) {
    if (f.is_zero()) return true;
    const size_t n = ideal.nvars;
    // Lift to n+1 variables, adjoin 1 - t*f.
    std::vector<Poly> lift_images;
    for (size_t i = 0; i < n; ++i) lift_images.push_back(Poly::variable(n + 1, i));
    IdealBasis ext;
    ext.nvars = n + 1;
    for (const auto& g : ideal.gens) ext.add(g.substitute(lift_images, n + 1));
    Poly ft = f.substitute(lift_images, n + 1);
    Poly t = Poly::variable(n + 1, n);
    ext.add(Poly::constant(n + 1, 1) - t * ft);
    return is_empty_variety(ext, limits);
}

int dimension(const IdealBasis& ideal, const GroebnerLimits& limits) {
    const size_t n = ideal.nvars;
    if (ideal.gens.empty()) return static_cast<int>(n);
    GroebnerBasis g = groebner(ideal, limits);
    if (g.contains_one()) return -1;
    if (n > 20) throw FuelExhausted("dimension: too many variables for staircase scan");

    std::vector<std::vector<size_t>> supports;
    for (const auto& f : g.elems) {
        std::vector<size_t> sup;
        const Monomial& m = f.leading_monomial();
        for (size_t i = 0; i < n; ++i)
            if (m.exps[i] > 0) sup.push_back(i);
        supports.push_back(std::move(sup));
    }
    int best = 0;
    for (uint64_t mask = 0; mask < (uint64_t(1) << n); ++mask) {
        bool independent = true;
        for (const auto& sup : supports) {
            bool inside = true;
            for (size_t v : sup)
                if (!(mask >> v & 1u)) { inside = false; break; }
            if (inside) { independent = false; break; } // leading term lives in k[U]
        }
        if (independent) best = std::max(best, __builtin_popcountll(mask));
    }
    return best;
}

bool same_variety(const IdealBasis& a, const IdealBasis& b, const GroebnerLimits& limits) {
    for (const auto& f : a.gens)
        if (!radical_member(f, b, limits)) return false;
    for (const auto& f : b.gens)
        if (!radical_member(f, a, limits)) return false;
    return true;
}

} // namespace resing
