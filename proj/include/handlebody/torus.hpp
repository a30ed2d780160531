#pragma once

#include <handlebody/bigint.hpp>
#include <handlebody/free_map.hpp>
#include <handlebody/word.hpp>

#include <stdexcept>
#include <utility>
#include <vector>

namespace hb {

// Per marked point i the loop group is free of rank 2 on
//   generator 1 = beta_i (the core loop surviving projection),
//   generator 2 = delta_i (the disk-bounding loop, killed by projection).
inline constexpr Letter kTorusBeta = 1;
inline constexpr Letter kTorusDelta = 2;

// Normal form (point push of the loop tuple) . (twist^l).
struct TorusElement {
    std::vector<ReducedWord> loops;  // loop at point i, in <beta_i, delta_i>
    BigInt twist = 0;

    int points() const { return static_cast<int>(loops.size()); }
};

inline TorusElement torus_identity(int n) {
    if (n < 2) throw std::invalid_argument("need at least 2 marked points");
    return TorusElement{std::vector<ReducedWord>(n), 0};
}

// Action of the twist on each loop group: beta |-> beta.delta, delta fixed.
inline AutPair twist_action() {
    return AutPair(
        FreeMap(2, {reduce({kTorusBeta, kTorusDelta}), reduce({kTorusDelta})}),
        FreeMap(2, {reduce({kTorusBeta, -kTorusDelta}), reduce({kTorusDelta})}));
}

// twist^m for any integer m: beta |-> beta.delta^m in one shot.
inline FreeMap twist_action_power(std::int64_t m) {
    return FreeMap(2, {concat(reduce({kTorusBeta}), power_word(kTorusDelta, m)),
                       reduce({kTorusDelta})});
}

// b-invariant: sum over points of the beta-exponent of the loop, i.e. the
// image of the loop tuple after killing every delta. Unchanged by the twist.
inline BigInt torus_b(const TorusElement& e, Letter betaIndex = kTorusBeta) {
    BigInt s = 0;
    for (const ReducedWord& w : e.loops) s += exponent_sum(w, betaIndex);
    return s;
}

// Product e1 . e2 (maps compose right-to-left; loops concatenate left to
// right): push the twisted loops of e2, then those of e1, and add twists.
inline TorusElement torus_compose(const TorusElement& e1,
                                  const TorusElement& e2) {
    if (e1.points() != e2.points())
        throw std::invalid_argument("point count mismatch");
    FreeMap tw = twist_action_power(to_int64(e2.twist));
    TorusElement out;
    out.loops.reserve(e1.points());
    for (int i = 0; i < e1.points(); ++i)
        out.loops.push_back(concat(apply_map(tw, e2.loops[i]), e1.loops[i]));
    out.twist = e1.twist + e2.twist;
    return out;
}

// Two-sided inverse under torus_compose: loops twist^l(gamma^{-1}), twist -l.
inline TorusElement torus_inverse(const TorusElement& e) {
    FreeMap tw = twist_action_power(to_int64(e.twist));
    TorusElement out;
    out.loops.reserve(e.points());
    for (const ReducedWord& w : e.loops)
        out.loops.push_back(apply_map(tw, invert(w)));
    out.twist = -e.twist;
    return out;
}

// Single-loop generators of the configuration group together with the twist:
// at each point, push beta^{+-1} or delta^{+-1}; plus twist^{+-1}.
inline std::vector<TorusElement> torus_generators(int n) {
    std::vector<TorusElement> out;
    for (int i = 0; i < n; ++i) {
        for (Letter g : {kTorusBeta, kTorusDelta}) {
            for (int s : {+1, -1}) {
                TorusElement e = torus_identity(n);
                e.loops[i] = reduce({s * g});
                out.push_back(std::move(e));
            }
        }
    }
    for (int s : {+1, -1}) {
        TorusElement e = torus_identity(n);
        e.twist = s;
        out.push_back(std::move(e));
    }
    return out;
}

// Largest drop of the b-invariant a single generator can cause: the maximal
// beta-exponent magnitude among the generators' loops.
inline BigInt torus_k0(const std::vector<TorusElement>& gens) {
    BigInt k0 = 0;
    for (const TorusElement& g : gens) {
        BigInt b = torus_b(g);
        if (b < 0) b = -b;
        if (b > k0) k0 = b;
    }
    return k0;
}

}  // namespace hb
