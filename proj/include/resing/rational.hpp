#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace resing {

using Int = boost::multiprecision::cpp_int;

/// Exact rational number, always in lowest terms with positive denominator.
using Rational = boost::multiprecision::cpp_rational;

inline std::string to_string(const Rational& q) { return q.str(); }
inline std::string to_string(const Int& n) { return n.str(); }

inline Int int_lcm(const Int& a, const Int& b) {
    using boost::multiprecision::gcd;
    if (a == 0 || b == 0) return 0;
    Int g = gcd(a, b);
    return abs(a / g * b);
}

} // namespace resing
