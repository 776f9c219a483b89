#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "monres/error.hpp"

namespace monres {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Int factorial(std::int64_t n) {
    require(n >= 0, "factorial: negative argument");
    Int r = 1;
    for (std::int64_t i = 2; i <= n; ++i) r *= i;
    return r;
}

inline Int binomial(std::int64_t n, std::int64_t k) {
    require(n >= 0 && k >= 0, "binomial: negative argument");
    if (k > n) return 0;
    Int r = 1;
    for (std::int64_t i = 1; i <= k; ++i) {
        r *= (n - k + i);
        r /= i; // exact: r is binomial(n-k+i, i) after this step
    }
    return r;
}

// (h*k)! / (k! * (h!)^k), the multiplicity of x^(h*k) in (x^(h))^(k).
inline Int iterated_power_coefficient(std::int64_t h, std::int64_t k) {
    require(h >= 0 && k >= 0, "iterated power coefficient: negative argument");
    Int denom = factorial(k);
    Int hf = factorial(h);
    for (std::int64_t i = 0; i < k; ++i) denom *= hf;
    Int num = factorial(h * k);
    require(num % denom == 0, "iterated power coefficient: non-integral ratio");
    return num / denom;
}

inline Rational pow(const Rational& x, std::int64_t k) {
    require(k >= 0, "rational pow: negative exponent");
    Rational r = 1;
    for (std::int64_t i = 0; i < k; ++i) r *= x;
    return r;
}

inline std::string to_string(const Rational& x) { return x.str(); }
inline std::string to_string(const Int& x) { return x.str(); }

inline Int parse_int(const std::string& s) {
    require(!s.empty(), "integer parse: empty string");
    std::size_t start = s[0] == '-' ? 1 : 0;
    require(start < s.size(), "integer parse: malformed '" + s + "'");
    for (std::size_t i = start; i < s.size(); ++i)
        require(s[i] >= '0' && s[i] <= '9', "integer parse: malformed '" + s + "'");
    return Int(s);
}

inline Rational rational_from_strings(const std::string& num, const std::string& den) {
    Int n = parse_int(num), d = parse_int(den);
    require(d != 0, "rational: zero denominator");
    return Rational(n, d);
}

} // namespace monres
