#pragma once

#include <handlebody/chart.hpp>

namespace hb {

// Standard genus-2 chart used by the experiments and tests.
//
// Planar picture, all four holes in a row: 2+, 1+, 1-, 2-. Bridge arcs form
// the path 2+ -- 1+ -- 1- -- 2-, and each internal hole carries a returning
// arc wrapping the adjacent leaf hole:
//   x  : 2+ to 1+
//   a  : 1+ to 1-
//   y  : 1- to 2-
//   r+ : returning on 1+, wrapping 2+ (its legs straddle the x slot)
//   r- : returning on 1-, wrapping 2- (its legs straddle the y slot)
// Positions are counterclockwise fractions of each circle. Weight vectors
// (w_a, w_x, w_y, w_{r+}, w_{r-}) carry a multicurve iff w_x = w_y and
// w_{r+} = w_{r-}.
//
// The gluing offset of disk 1 is chosen so that at zero twist each arc end
// matches the far-side end of the same natural partner: a closes into the
// core loop of handle one, x continues into y, and the two returning arcs
// close into the curve around handle two.
inline Chart make_g2std() {
    auto R = [](long long n, long long d) { return Rational(n, d); };
    const int c1p = Chart::circle_id(0, true);
    const int c1m = Chart::circle_id(0, false);
    const int c2p = Chart::circle_id(1, true);
    const int c2m = Chart::circle_id(1, false);
    std::vector<ChartArc> arcs = {
        {{{c1p, R(0, 1)}, {c1m, R(1, 2)}}},   // a
        {{{c1p, R(1, 2)}, {c2p, R(0, 1)}}},   // x
        {{{c1m, R(0, 1)}, {c2m, R(1, 2)}}},   // y
        {{{c1p, R(3, 8)}, {c1p, R(5, 8)}}},   // r+
        {{{c1m, R(1, 8)}, {c1m, R(7, 8)}}},   // r-
    };
    return Chart(2, 0, std::move(arcs), {R(25, 48), R(1, 48)});
}

constexpr int kArcA = 0;
constexpr int kArcX = 1;
constexpr int kArcY = 2;
constexpr int kArcRPlus = 3;
constexpr int kArcRMinus = 4;

}  // namespace hb
