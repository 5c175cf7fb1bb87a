#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace siegel {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// num/den always stored normalized by cpp_rational: den > 0, gcd(num, den) = 1.
inline Integer rat_num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Integer rat_den(const Rational& r) { return boost::multiprecision::denominator(r); }

inline bool is_integer(const Rational& r) { return rat_den(r) == 1; }

inline Integer int_pow(const Integer& base, unsigned long e) {
    Integer r = 1, b = base;
    for (; e; e >>= 1) {
        if (e & 1) r *= b;
        b *= b;
    }
    return r;
}

// base^e with e of either sign; base must be nonzero when e < 0.
inline Rational rat_pow(const Rational& base, long e) {
    if (e >= 0) {
        return Rational(int_pow(rat_num(base), (unsigned long)e),
                        int_pow(rat_den(base), (unsigned long)e));
    }
    if (base == 0) throw std::domain_error("rat_pow: 0 raised to negative power");
    return Rational(int_pow(rat_den(base), (unsigned long)(-e)),
                    int_pow(rat_num(base), (unsigned long)(-e)));
}

inline Integer floor_div(const Integer& a, const Integer& b) {
    Integer q = a / b, r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) --q;
    return q;
}

inline Integer mod_floor(const Integer& a, const Integer& b) {
    Integer r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) r += b;
    return r;
}

inline long mod_long(const Integer& a, long p) {
    Integer r = a % p;
    if (r < 0) r += p;
    return (long)r;
}

inline Integer gcd_int(Integer a, Integer b) { return boost::multiprecision::gcd(a, b); }
inline Integer lcm_int(const Integer& a, const Integer& b) { return boost::multiprecision::lcm(a, b); }

// isqrt with exact floor semantics.
inline Integer isqrt(const Integer& y) {
    if (y < 0) throw std::domain_error("isqrt of negative");
    if (y == 0) return 0;
    Integer x = y, prev = 0;
    while (true) {
        prev = x;
        x = (x + y / x) / 2;
        if (x >= prev) break;
    }
    while (prev * prev > y) --prev;
    while ((prev + 1) * (prev + 1) <= y) ++prev;
    return prev;
}

inline std::string to_string(const Integer& v) { return v.str(); }

inline std::string to_string(const Rational& r) {
    if (is_integer(r)) return rat_num(r).str();
    return rat_num(r).str() + "/" + rat_den(r).str();
}

}  // namespace siegel
