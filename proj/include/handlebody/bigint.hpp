#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

#include <cstdint>
#include <stdexcept>

namespace hb {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::rational<BigInt>;

// floor(n / d) for d != 0, rounding toward -infinity.
inline BigInt floor_div(const BigInt& n, const BigInt& d) {
    if (d == 0) throw std::domain_error("floor_div by zero");
    BigInt q = n / d;
    if ((n % d != 0) && ((n < 0) != (d < 0))) --q;
    return q;
}

inline BigInt floor_of(const Rational& r) {
    return floor_div(r.numerator(), r.denominator());
}

inline BigInt ceil_of(const Rational& r) {
    return -floor_of(-r);
}

inline bool is_integer(const Rational& r) { return r.denominator() == 1; }

// Number of integers n with a < n < b (open interval); 0 when b <= a.
inline BigInt integers_strictly_between(const Rational& a, const Rational& b) {
    if (b <= a) return 0;
    BigInt lo = floor_of(a) + 1;           // smallest integer > a
    BigInt hi = ceil_of(b) - 1;            // largest integer < b
    return hi >= lo ? hi - lo + 1 : BigInt(0);
}

// r mod 1, result in [0, 1).
inline Rational frac_part(const Rational& r) {
    return r - Rational(floor_of(r));
}

inline std::int64_t to_int64(const BigInt& v) {
    if (v > (std::numeric_limits<std::int64_t>::max)() ||
        v < (std::numeric_limits<std::int64_t>::min)())
        throw std::overflow_error("BigInt does not fit in int64");
    return static_cast<std::int64_t>(v);
}

}  // namespace hb
