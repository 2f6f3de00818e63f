#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "resing/errors.hpp"
#include "resing/rational.hpp"

namespace resing {

/// Exponent vector of a power product, one slot per chart variable.
struct Monomial {
    std::vector<uint32_t> exps;

    Monomial() = default;
    explicit Monomial(size_t nvars) : exps(nvars, 0) {}
    explicit Monomial(std::vector<uint32_t> e) : exps(std::move(e)) {}

    size_t nvars() const { return exps.size(); }
    uint32_t operator[](size_t i) const { return exps[i]; }
    unsigned degree() const;
    bool is_one() const;

    Monomial operator*(const Monomial& o) const;
    bool divides(const Monomial& o) const;
    Monomial divide(const Monomial& o) const; // this / o, assumes o.divides(*this)
    static Monomial lcm(const Monomial& a, const Monomial& b);

    bool operator==(const Monomial& o) const { return exps == o.exps; }
    bool operator!=(const Monomial& o) const { return exps != o.exps; }
    /// Global graded reverse lexicographic order; every module sorts
    /// terms with it so leading-term choices are reproducible.
    bool operator<(const Monomial& o) const;
};

struct RationalPoint {
    std::vector<Rational> coords;
    size_t nvars() const { return coords.size(); }
};

/// Coordinate subspace V(x_i : i in zeroed).
struct CoordSubspace {
    std::set<int> zeroed;
    size_t size() const { return zeroed.size(); }
    bool contains(int v) const { return zeroed.count(v) != 0; }
};

/// Order of f viewed as an extended natural number; infinite only for
/// the zero polynomial.
struct ExtNat {
    bool infinite = false;
    unsigned value = 0;
    static ExtNat inf() { return {true, 0}; }
    static ExtNat of(unsigned v) { return {false, v}; }
    bool operator==(const ExtNat& o) const {
        return infinite == o.infinite && (infinite || value == o.value);
    }
};

/// Sparse multivariate polynomial with exact rational coefficients.
/// Terms never store a zero coefficient; the zero polynomial has an
/// empty term map. Equality is term-map equality.
class Poly {
public:
    using TermMap = std::map<Monomial, Rational>;

    Poly() = default;
    explicit Poly(size_t nvars) : nvars_(nvars) {}

    static Poly zero(size_t nvars) { return Poly(nvars); }
    static Poly constant(size_t nvars, const Rational& c);
    static Poly variable(size_t nvars, size_t idx);
    static Poly term(size_t nvars, Monomial m, const Rational& c);

    size_t nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    const TermMap& terms() const { return terms_; }
    size_t term_count() const { return terms_.size(); }

    /// Leading data under the global order (largest monomial).
    const Monomial& leading_monomial() const;
    const Rational& leading_coefficient() const;

    unsigned total_degree() const;
    unsigned degree_in(size_t var) const;
    Rational coefficient(const Monomial& m) const;

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator-() const;
    Poly operator*(const Poly& o) const;
    Poly operator*(const Rational& c) const;
    bool operator==(const Poly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Poly pow(unsigned k) const;
    Poly derivative(size_t var) const;

    /// Coefficient of var^k, as a polynomial in the same ring with the
    /// var-exponent cleared.
    Poly coefficient_of(size_t var, unsigned k) const;

    Rational eval(const RationalPoint& p) const;

    /// Ring homomorphism: every variable must have an image in a ring
    /// with target_nvars variables.
    Poly substitute(const std::vector<Poly>& images, size_t target_nvars) const;

    /// Shift x_i -> x_i + p_i.
    Poly translate(const RationalPoint& p) const;

    void add_term(const Monomial& m, const Rational& c);

private:
    size_t nvars_ = 0;
    TermMap terms_;
};

/// min{|alpha| : d^alpha f(P) != 0}; infinite iff f = 0.
ExtNat order_at_point(const Poly& f, const RationalPoint& p);

/// Multiplicity of f at the generic point of V(S): min over terms of the
/// exponent sum in S's variables.
ExtNat order_along(const Poly& f, const CoordSubspace& s);

/// Componentwise-minimal exponent monomial of f over the allowed
/// variables; divides f and is maximal with that property.
Monomial monomial_content(const Poly& f, const std::set<int>& allowed);

/// Exact division by a monomial; throws NonExactDivision with a witness
/// term otherwise.
Poly divide_exact(const Poly& f, const Monomial& m);

/// Exact division by a polynomial whose leading coefficient in `var` is
/// a nonzero constant; remainder must vanish.
Poly divide_exact(const Poly& f, const Poly& divisor, size_t var);

/// g with g^n = f, when f is a perfect n-th power.
std::optional<Poly> nth_root(const Poly& f, unsigned n);

std::string to_string(const Poly& f, const std::vector<std::string>& var_names);
std::string to_string(const Monomial& m, const std::vector<std::string>& var_names);

} // namespace resing
