#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <unordered_map>
#include <utility>

namespace hb {

// A slope p/q on the once-punctured torus: gcd(p,q) = 1, q >= 0, with
// (1,0) = infinity. Negative slopes carry the sign on p.
struct FareySlope {
    long long p = 1;
    long long q = 0;

    friend bool operator==(const FareySlope&, const FareySlope&) = default;
};

inline FareySlope make_slope(long long p, long long q) {
    if (q < 0) {
        p = -p;
        q = -q;
    }
    if (q == 0) {
        if (p == 0) throw std::invalid_argument("0/0 is not a slope");
        return {1, 0};
    }
    if (std::gcd(p < 0 ? -p : p, q) != 1)
        throw std::invalid_argument("slope not in lowest terms");
    return {p, q};
}

inline FareySlope infinity_slope() { return {1, 0}; }

// Geometric intersection number of two slopes: |p s - q r|.
inline long long farey_intersection(const FareySlope& a, const FareySlope& b) {
    long long v = a.p * b.q - a.q * b.p;
    return v < 0 ? -v : v;
}

namespace detail {

// x with p x = 1 (mod q), 0 < x < q; requires gcd(p, q) = 1, q >= 2.
inline long long mod_inverse(long long p, long long q) {
    long long r0 = q, r1 = ((p % q) + q) % q;
    long long t0 = 0, t1 = 1;
    while (r1 != 0) {
        long long k = r0 / r1;
        r0 -= k * r1;
        std::swap(r0, r1);
        t0 -= k * t1;
        std::swap(t0, t1);
    }
    return ((t0 % q) + q) % q;
}

}  // namespace detail

// Graph distance in the Farey graph (vertices = slopes, edges = pairs with
// intersection one), memoized across queries.
//
// Distances to infinity descend through the two neighbors of smaller
// denominator: every other neighbor of p/q lies on the far side of the edge
// joining those two, and edges of the triangulation separate, so a geodesic
// to infinity may be taken through a parent. Hence
//   d(p/q, inf) = 1 + min(d(parent1), d(parent2)).
// General queries move the second slope to infinity by an integer matrix of
// determinant one, which preserves the graph.
class FareyDistance {
public:
    // distance from p/q to infinity; p is first reduced mod q since integer
    // translations fix infinity and preserve the graph.
    int to_infinity(long long p, long long q) {
        if (q < 0) {
            p = -p;
            q = -q;
        }
        if (q == 0) return 0;
        p = ((p % q) + q) % q;
        if (q == 1) return 1;
        auto it = memo_.find(Key{p, q});
        if (it != memo_.end()) return it->second;

        long long b1 = detail::mod_inverse(p, q);
        long long a1 = (p * b1 - 1) / q;
        long long b2 = q - b1;
        long long a2 = (p * b2 + 1) / q;
        int d = 1 + std::min(to_infinity(a1, b1), to_infinity(a2, b2));
        memo_.emplace(Key{p, q}, d);
        return d;
    }

    int distance(const FareySlope& a, const FareySlope& b) {
        if (a == b) return 0;
        if (b.q == 0) return to_infinity(a.p, a.q);
        // Find x, y with b.p * y - b.q * x = 1; then M = [[y, -x], [-b.q, b.p]]
        // has determinant 1 and sends b to infinity.
        long long pp = ((b.p % b.q) + b.q) % b.q;
        long long y = pp == 0 ? 0 : detail::mod_inverse(pp, b.q);
        long long x = (b.p * y - 1) / b.q;  // exact: b.p * y = 1 (mod b.q)
        long long np = y * a.p - x * a.q;
        long long nq = -b.q * a.p + b.p * a.q;
        return to_infinity(np, nq);
    }

    std::size_t memo_size() const { return memo_.size(); }

private:
    struct Key {
        long long p, q;
        friend bool operator==(const Key&, const Key&) = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const {
            return std::hash<long long>()(k.p * 1000003LL + k.q);
        }
    };
    std::unordered_map<Key, int, KeyHash> memo_;
};

}  // namespace hb
