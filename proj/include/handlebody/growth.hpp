#pragma once

#include <handlebody/bigint.hpp>
#include <handlebody/free_map.hpp>
#include <handlebody/word.hpp>

#include <array>
#include <stdexcept>

namespace hb {

// The rank-2 substitution 1 |-> 1.1.2, 2 |-> 1.2. Both images are positive
// words, so lengths and exponent counts add without cancellation under
// iteration; the exponent of generator 1 at least doubles per step.
inline FreeMap expanding_map() {
    return FreeMap(2, {reduce({1, 1, 2}), reduce({1, 2})});
}

// Exact inverse of expanding_map (it is an automorphism).
inline AutPair expanding_aut() {
    return AutPair(expanding_map(),
                   FreeMap(2, {reduce({1, -2}), reduce({2, -1, 2})}));
}

// 2x2 integer matrix, column-major action v |-> M v.
struct Mat2 {
    BigInt a, b, c, d;  // [[a, b], [c, d]]

    friend Mat2 operator*(const Mat2& x, const Mat2& y) {
        return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
                x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
    }
    static Mat2 identity() { return {1, 0, 0, 1}; }
};

inline Mat2 mat2_power(Mat2 m, unsigned k) {
    Mat2 acc = Mat2::identity();
    while (k > 0) {
        if (k & 1) acc = acc * m;
        k >>= 1;
        m = m * m;
    }
    return acc;
}

// Abelianization of expanding_map: columns are the exponent vectors of the
// generator images.
inline Mat2 expanding_abelianization() { return {2, 1, 1, 1}; }

// N_k = exponent of generator 1 in the k-th iterated image of generator 1.
// Computed by the linear recurrence (N, M) <- (2N + M, N + M) from (1, 0);
// grows like the square of the golden ratio, and N_k >= 2^k for k >= 1.
inline BigInt nk_growth(int k, int bound = 60) {
    if (k < 0) throw std::invalid_argument("k must be non-negative");
    if (k > bound) throw std::out_of_range("k exceeds configured bound");
    BigInt n = 1, m = 0;
    for (int i = 0; i < k; ++i) {
        BigInt n2 = 2 * n + m;
        m = n + m;
        n = n2;
    }
    return n;
}

// Total letter length of the k-th iterated image of generator 1; exact
// because both substitution images are positive words.
inline BigInt expanding_image_length(int k, int bound = 60) {
    if (k < 0) throw std::invalid_argument("k must be non-negative");
    if (k > bound) throw std::out_of_range("k exceeds configured bound");
    BigInt n = 1, m = 0;
    for (int i = 0; i < k; ++i) {
        BigInt n2 = 2 * n + m;
        m = n + m;
        n = n2;
    }
    return n + m;
}

// Conjugation by (generator 1)^{N_k} in the given rank: the image of the
// iterated point push under the projection that kills generator 2.
inline AutPair phi_family(int k, int g) {
    if (g < 2) throw std::invalid_argument("rank must be at least 2");
    BigInt n = nk_growth(k);
    return conjugation(power_word(1, to_int64(n)), g);
}

}  // namespace hb
