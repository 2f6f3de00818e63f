#include "resing/poly.hpp"

#include <algorithm>
#include <sstream>

namespace resing {

unsigned Monomial::degree() const {
    unsigned d = 0;
    for (uint32_t e : exps) d += e;
    return d;
}

bool Monomial::is_one() const {
    for (uint32_t e : exps) if (e != 0) return false;
    return true;
}

Monomial Monomial::operator*(const Monomial& o) const {
    Monomial r = *this;
    for (size_t i = 0; i < exps.size(); ++i) r.exps[i] += o.exps[i];
    return r;
}

bool Monomial::divides(const Monomial& o) const {
    if (exps.size() != o.exps.size()) return false;
    for (size_t i = 0; i < exps.size(); ++i)
        if (exps[i] > o.exps[i]) return false;
    return true;
}

Monomial Monomial::divide(const Monomial& o) const {
    Monomial r = *this;
    for (size_t i = 0; i < exps.size(); ++i) r.exps[i] -= o.exps[i];
    return r;
}

Monomial Monomial::lcm(const Monomial& a, const Monomial& b) {
    Monomial r = a;
    for (size_t i = 0; i < r.exps.size(); ++i) r.exps[i] = std::max(a.exps[i], b.exps[i]);
    return r;
}

bool Monomial::operator<(const Monomial& o) const {
    unsigned da = degree(), db = o.degree();
    if (da != db) return da < db;
    // grevlex: smaller is the one with the LARGER exponent at the last
    // position where they differ.
    for (size_t i = exps.size(); i-- > 0;) {
        if (exps[i] != o.exps[i]) return exps[i] > o.exps[i];
    }
    return false;
}

Poly Poly::constant(size_t nvars, const Rational& c) {
    Poly p(nvars);
    if (c != 0) p.terms_.emplace(Monomial(nvars), c);
    return p;
}

Poly Poly::variable(size_t nvars, size_t idx) {
    Monomial m(nvars);
    m.exps[idx] = 1;
    return term(nvars, m, 1);
}

Poly Poly::term(size_t nvars, Monomial m, const Rational& c) {
    Poly p(nvars);
    if (c != 0) p.terms_.emplace(std::move(m), c);
    return p;
}

bool Poly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

const Monomial& Poly::leading_monomial() const {
    if (terms_.empty()) throw Error("leading_monomial of zero polynomial");
    return terms_.rbegin()->first;
}

const Rational& Poly::leading_coefficient() const {
    if (terms_.empty()) throw Error("leading_coefficient of zero polynomial");
    return terms_.rbegin()->second;
}

unsigned Poly::total_degree() const {
    unsigned d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
    return d;
}

unsigned Poly::degree_in(size_t var) const {
    unsigned d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.exps[var]);
    return d;
}

Rational Poly::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

void Poly::add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Poly Poly::operator+(const Poly& o) const {
    if (nvars_ != o.nvars_) throw DimensionMismatch("poly addition across different rings");
    Poly r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

Poly Poly::operator-(const Poly& o) const {
    if (nvars_ != o.nvars_) throw DimensionMismatch("poly subtraction across different rings");
    Poly r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
    return r;
}

Poly Poly::operator-() const {
    Poly r(nvars_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

Poly Poly::operator*(const Poly& o) const {
    if (nvars_ != o.nvars_) throw DimensionMismatch("poly product across different rings");
    Poly r(nvars_);
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : o.terms_) r.add_term(ma * mb, ca * cb);
    return r;
}

Poly Poly::operator*(const Rational& c) const {
    Poly r(nvars_);
    if (c == 0) return r;
    for (const auto& [m, k] : terms_) r.terms_.emplace(m, k * c);
    return r;
}

Poly Poly::pow(unsigned k) const {
    Poly r = Poly::constant(nvars_, 1);
    Poly base = *this;
    while (k > 0) {
        if (k & 1u) r = r * base;
        k >>= 1u;
        if (k > 0) base = base * base;
    }
    return r;
}

Poly Poly::derivative(size_t var) const {
    Poly r(nvars_);
    for (const auto& [m, c] : terms_) {
        if (m.exps[var] == 0) continue;
        Monomial d = m;
        d.exps[var] -= 1;
        r.add_term(d, c * m.exps[var]);
    }
    return r;
}

Poly Poly::coefficient_of(size_t var, unsigned k) const {
    Poly r(nvars_);
    for (const auto& [m, c] : terms_) {
        if (m.exps[var] != k) continue;
        Monomial d = m;
        d.exps[var] = 0;
        r.add_term(d, c);
    }
    return r;
}

Rational Poly::eval(const RationalPoint& p) const {
    if (p.nvars() != nvars_) throw DimensionMismatch("eval point has wrong length");
    Rational acc = 0;
    for (const auto& [m, c] : terms_) {
        Rational t = c;
        for (size_t i = 0; i < nvars_; ++i) {
            for (uint32_t k = 0; k < m.exps[i]; ++k) t *= p.coords[i];
        }
        acc += t;
    }
    return acc;
}

Poly Poly::substitute(const std::vector<Poly>& images, size_t target_nvars) const {
    if (images.size() != nvars_) throw Error("substitute: missing image for a variable");
    for (const auto& g : images)
        if (g.nvars() != target_nvars) throw DimensionMismatch("substitute: image in wrong ring");
    Poly r(target_nvars);
    for (const auto& [m, c] : terms_) {
        Poly t = Poly::constant(target_nvars, c);
        for (size_t i = 0; i < nvars_; ++i) {
            if (m.exps[i] == 0) continue;
            t = t * images[i].pow(m.exps[i]);
        }
        r = r + t;
    }
    return r;
}

Poly Poly::translate(const RationalPoint& p) const {
    if (p.nvars() != nvars_) throw DimensionMismatch("translate point has wrong length");
    std::vector<Poly> images;
    images.reserve(nvars_);
    for (size_t i = 0; i < nvars_; ++i)
        images.push_back(Poly::variable(nvars_, i) + Poly::constant(nvars_, p.coords[i]));
    return substitute(images, nvars_);
}

ExtNat order_at_point(const Poly& f, const RationalPoint& p) {
    if (p.nvars() != f.nvars()) throw DimensionMismatch("order_at_point: point length");
    if (f.is_zero()) return ExtNat::inf();
    bool shifted = false;
    for (const auto& c : p.coords)
        if (c != 0) { shifted = true; break; }
    const Poly g = shifted ? f.translate(p) : f;
    unsigned best = g.total_degree();
    for (const auto& [m, c] : g.terms()) best = std::min(best, m.degree());
    return ExtNat::of(best);
}

ExtNat order_along(const Poly& f, const CoordSubspace& s) {
    if (f.is_zero()) return ExtNat::inf();
    for (int v : s.zeroed)
        if (v < 0 || static_cast<size_t>(v) >= f.nvars())
            throw DimensionMismatch("order_along: variable outside chart");
    bool first = true;
    unsigned best = 0;
    for (const auto& [m, c] : f.terms()) {
        unsigned d = 0;
        for (int v : s.zeroed) d += m.exps[static_cast<size_t>(v)];
        if (first || d < best) { best = d; first = false; }
    }
    return ExtNat::of(best);
}

Monomial monomial_content(const Poly& f, const std::set<int>& allowed) {
    if (f.is_zero()) throw Error("monomial_content of zero polynomial");
    Monomial r(f.nvars());
    bool first = true;
    for (const auto& [m, c] : f.terms()) {
        if (first) {
            for (int v : allowed) r.exps[static_cast<size_t>(v)] = m.exps[static_cast<size_t>(v)];
            first = false;
        } else {
            for (int v : allowed) {
                auto i = static_cast<size_t>(v);
                r.exps[i] = std::min(r.exps[i], m.exps[i]);
            }
        }
    }
    return r;
}

Poly divide_exact(const Poly& f, const Monomial& m) {
    Poly r(f.nvars());
    for (const auto& [mm, c] : f.terms()) {
        if (!m.divides(mm)) {
            std::vector<std::string> names;
            for (size_t i = 0; i < f.nvars(); ++i) names.push_back("v" + std::to_string(i));
            throw NonExactDivision("monomial division not exact", to_string(mm, names));
        }
        r.add_term(mm.divide(m), c);
    }
    return r;
}

Poly divide_exact(const Poly& f, const Poly& divisor, size_t var) {
    if (f.nvars() != divisor.nvars()) throw DimensionMismatch("divide_exact rings differ");
    if (divisor.is_zero()) throw Error("division by zero polynomial");
    if (divisor.is_constant()) {
        return f * (Rational(1) / divisor.leading_coefficient());
    }
    const unsigned dd = divisor.degree_in(var);
    const Poly lead = divisor.coefficient_of(var, dd);
    if (!lead.is_constant())
        throw Error("divide_exact: divisor leading coefficient is not constant");
    const Rational lc = lead.leading_coefficient();

    Poly rem = f;
    Poly quot(f.nvars());
    while (!rem.is_zero() && rem.degree_in(var) >= dd) {
        const unsigned k = rem.degree_in(var);
        Poly c = rem.coefficient_of(var, k);
        if (c.is_zero()) break;
        Monomial shift(f.nvars());
        shift.exps[var] = k - dd;
        Poly t(f.nvars());
        for (const auto& [m, cc] : c.terms()) t.add_term(m * shift, cc / lc);
        quot = quot + t;
        rem = rem - t * divisor;
    }
    if (!rem.is_zero()) {
        std::vector<std::string> names;
        for (size_t i = 0; i < f.nvars(); ++i) names.push_back("v" + std::to_string(i));
        throw NonExactDivision("polynomial division not exact", to_string(rem.leading_monomial(), names));
    }
    return quot;
}

std::optional<Poly> nth_root(const Poly& f, unsigned n) {
    if (n == 0) return std::nullopt;
    if (n == 1) return f;
    if (f.is_zero()) return f;

    // Leading term of the root.
    const Monomial& lm = f.leading_monomial();
    Monomial rm(f.nvars());
    for (size_t i = 0; i < f.nvars(); ++i) {
        if (lm.exps[i] % n != 0) return std::nullopt;
        rm.exps[i] = lm.exps[i] / n;
    }
    const Rational lc = f.leading_coefficient();
    Rational rc;
    {
        // Rational n-th root of lc, if it exists.
        auto iroot = [](const Int& v, unsigned k) -> std::optional<Int> {
            if (v == 0) return Int(0);
            bool neg = v < 0;
            if (neg && k % 2 == 0) return std::nullopt;
            Int a = abs(v);
            Int lo = 0, hi = a + 1;
            while (lo + 1 < hi) {
                Int mid = (lo + hi) / 2;
                Int p = 1;
                bool over = false;
                for (unsigned i = 0; i < k; ++i) {
                    p *= mid;
                    if (p > a) { over = true; break; }
                }
                if (over || p > a) hi = mid; else lo = mid;
            }
            Int p = 1;
            for (unsigned i = 0; i < k; ++i) p *= lo;
            if (p != a) return std::nullopt;
            return neg ? Int(-lo) : lo;
        };
        auto nr = iroot(numerator(lc), n);
        auto dr = iroot(denominator(lc), n);
        if (!nr || !dr) return std::nullopt;
        rc = Rational(*nr, *dr);
    }

    Poly g = Poly::term(f.nvars(), rm, rc);
    // Peel terms: next term of g kills the leading term of f - g^n.
    for (size_t guard = 0; guard <= f.term_count() * (n + 1) + 8; ++guard) {
        Poly r = f - g.pow(n);
        if (r.is_zero()) return g;
        const Monomial& mr = r.leading_monomial();
        // lt(r) = n * lt(g)^(n-1) * t
        Monomial base(f.nvars());
        for (size_t i = 0; i < f.nvars(); ++i) base.exps[i] = rm.exps[i] * (n - 1);
        if (!base.divides(mr)) return std::nullopt;
        Monomial tm = mr.divide(base);
        Rational denom = n; // lt(r) = n * lt(g)^(n-1) * t
        for (unsigned i = 0; i + 1 < n; ++i) denom *= rc;
        Rational tc = r.leading_coefficient() / denom;
        if (!(tm < rm)) return std::nullopt; // no strict progress: not a power
        g.add_term(tm, tc);
    }
    return std::nullopt;
}

std::string to_string(const Monomial& m, const std::vector<std::string>& var_names) {
    std::ostringstream os;
    bool any = false;
    for (size_t i = 0; i < m.exps.size(); ++i) {
        if (m.exps[i] == 0) continue;
        if (any) os << "*";
        os << var_names[i];
        if (m.exps[i] > 1) os << "^" << m.exps[i];
        any = true;
    }
    if (!any) os << "1";
    return os.str();
}

std::string to_string(const Poly& f, const std::vector<std::string>& var_names) {
    if (f.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    // Print leading terms first.
    for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
        const auto& [m, c] = *it;
        Rational a = c;
        if (first) {
            if (a < 0) { os << "-"; a = -a; }
        } else {
            os << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        first = false;
        if (m.is_one()) {
            os << to_string(a);
        } else {
            if (a != 1) os << to_string(a) << "*";
            os << to_string(m, var_names);
        }
    }
    return os.str();
}

} // namespace resing
