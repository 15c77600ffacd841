#ifndef CARNOT_RATIONAL_HPP
#define CARNOT_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace carnot {

using Integer  = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& q) { return q.convert_to<double>(); }
inline double to_double(double x) { return x; }

// Parses "p/q", "p", or "-p/q". Whitespace is not accepted.
inline Rational parse_rational(const std::string& s) {
    auto bad = [&] { throw std::invalid_argument("invalid rational literal: '" + s + "'"); };
    if (s.empty()) bad();
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(Integer(s));
        Integer num(s.substr(0, slash));
        Integer den(s.substr(slash + 1));
        if (den == 0) bad();
        return Rational(num, den);
    } catch (const std::runtime_error&) {
        bad();
    }
    return Rational(0);  // unreachable
}

inline std::string format_rational(const Rational& q) {
    std::string s = numerator(q).str();
    if (denominator(q) != 1) s += "/" + denominator(q).str();
    return s;
}

// Every finite double is a dyadic rational; the conversion is exact.
inline Rational rational_from_double(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("non-finite value has no rational image");
    if (x == 0.0) return Rational(0);
    int exp = 0;
    double m = std::frexp(x, &exp);           // x = m * 2^exp, |m| in [1/2, 1)
    Integer mant = static_cast<std::int64_t>(std::ldexp(m, 53));  // integer, |mant| < 2^53
    exp -= 53;
    Rational r(mant);
    if (exp >= 0) r *= Rational(Integer(1) << exp);
    else r /= Rational(Integer(1) << (-exp));
    return r;
}

// Floor of the integer n-th root.
inline Integer iroot_floor(const Integer& a, unsigned n) {
    if (a < 0) throw std::invalid_argument("iroot_floor: negative radicand");
    if (a == 0 || a == 1 || n == 1) return a;
    Integer lo = 1, hi = 2;
    while (boost::multiprecision::pow(hi, n) <= a) hi <<= 1;
    while (lo + 1 < hi) {
        Integer mid = (lo + hi) >> 1;
        if (boost::multiprecision::pow(mid, n) <= a) lo = mid;
        else hi = mid;
    }
    return lo;
}

// Exact n-th root of a nonnegative rational, if one exists.
inline bool exact_root(const Rational& q, unsigned n, Rational& out) {
    if (q < 0) return false;
    Integer num = numerator(q), den = denominator(q);
    Integer rn = iroot_floor(num, n), rd = iroot_floor(den, n);
    if (boost::multiprecision::pow(rn, n) != num) return false;
    if (boost::multiprecision::pow(rd, n) != den) return false;
    out = Rational(rn, rd);
    return true;
}

inline Rational pow_int(const Rational& base, int e) {
    if (e == 0) return Rational(1);
    Rational b = e > 0 ? base : Rational(1) / base;
    int k = e > 0 ? e : -e;
    Rational r(1);
    while (k) {
        if (k & 1) r *= b;
        b *= b;
        k >>= 1;
    }
    return r;
}

}  // namespace carnot

#endif
