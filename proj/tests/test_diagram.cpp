#include <catch2/catch_amalgamated.hpp>

#include <handlebody/diagram.hpp>
#include <handlebody/fixtures.hpp>

#include <random>

using namespace hb;

namespace {

const Chart& g2() {
    static Chart chart = make_g2std();
    return chart;
}

const ChartTopology& g2topo() {
    static ChartTopology topo(g2());
    return topo;
}

std::vector<BigInt> weight_vec(BigInt a, BigInt x, BigInt y, BigInt rp,
                               BigInt rm) {
    return {std::move(a), std::move(x), std::move(y), std::move(rp),
            std::move(rm)};
}

CarriedRealization realize(const std::vector<BigInt>& w,
                           const std::vector<BigInt>& t, int level = 0,
                           int levels = 2) {
    return realize_carried(g2topo(), w, t, level, levels);
}

// independent crossing count: flatten each cell walk to rational angles and
// test interleaving numerically; unroll annulus strands over translates
Rational face_angle(int face, const WalkPos& wp) {
    const auto& walk = g2topo().faces()[face];
    int edge = walk[wp.step].edge;
    Rational len = edge < g2().num_arcs()
                       ? Rational(1)
                       : g2topo().segment_of_edge(edge).length;
    return (Rational(wp.step) + wp.within / len) /
           Rational(static_cast<int>(walk.size()));
}

BigInt oracle_crossings(const DrawnCurve& c1, const DrawnCurve& c2) {
    BigInt total = 0;
    auto ch1 = cell_chords(g2topo(), c1);
    auto ch2 = cell_chords(g2topo(), c2);
    for (const auto& x : ch1)
        for (const auto& y : ch2) {
            if (x.face != y.face) continue;
            Rational lo = face_angle(x.face, x.a);
            Rational hi = face_angle(x.face, x.b);
            if (hi < lo) std::swap(lo, hi);
            auto inside = [&](const WalkPos& p) {
                Rational v = face_angle(x.face, p);
                return lo < v && v < hi;
            };
            if (inside(y.a) != inside(y.b)) ++total;
        }
    auto tr1 = transit_strands(g2(), c1);
    auto tr2 = transit_strands(g2(), c2);
    for (const auto& s : tr1)
        for (const auto& t : tr2) {
            if (s.disk != t.disk) continue;
            for (long long k = -200; k <= 200; ++k) {
                Rational d0 = s.bottom - t.bottom - Rational(k);
                Rational d1 = s.top - t.top - Rational(k);
                if (d0 * d1 < Rational(0)) ++total;
            }
        }
    return total;
}

BigInt multi_crossings(const std::vector<DrawnCurve>& a,
                       const std::vector<DrawnCurve>& b, bool useOracle) {
    BigInt total = 0;
    for (const auto& x : a)
        for (const auto& y : b)
            total += useOracle ? oracle_crossings(x, y)
                               : count_crossings(g2topo(), x, y);
    return total;
}

bool word_is(const CyclicWord& w, std::vector<Letter> expect) {
    ReducedWord r = reduce(expect);
    return w == CyclicWord(r) || w == CyclicWord(invert(r));
}

}  // namespace

TEST_CASE("single core loop through handle one") {
    auto r = realize(weight_vec(1, 0, 0, 0, 0), {0, 0});
    REQUIRE(r.components.size() == 1);
    const DrawnCurve& c = r.components[0];
    CHECK(c.closed);
    CHECK(c.size() == 1);
    CHECK(transit_count(c, 0) == 1);
    CHECK(transit_count(c, 1) == 0);
    CHECK(word_is(handle_word(c), {1}));
    CHECK(count_self_crossings(g2topo(), c) == 0);
    CHECK(normalize_curve(g2topo(), c).size() == 1);
}

TEST_CASE("returning-arc curve around the second handle") {
    auto r = realize(weight_vec(0, 0, 0, 1, 1), {0, 0});
    REQUIRE(r.components.size() == 1);
    const DrawnCurve& e1 = r.components[0];
    CHECK(e1.size() == 2);
    CHECK(transit_count(e1, 0) == 2);
    CHECK(transit_count(e1, 1) == 0);
    CHECK(handle_word(e1).empty());  // bounds a disk
    CHECK(count_self_crossings(g2topo(), e1) == 0);
    // already reduced: normalization must not touch it
    CHECK(normalize_curve(g2topo(), e1).size() == 2);
}

TEST_CASE("bridge weights split into two components") {
    auto r = realize(weight_vec(1, 1, 1, 0, 0), {0, 0});
    REQUIRE(r.components.size() == 2);
    int loop = transit_count(r.components[0], 1) == 0 ? 0 : 1;
    const DrawnCurve& aLoop = r.components[loop];
    const DrawnCurve& bridge = r.components[1 - loop];
    CHECK(aLoop.size() == 1);
    CHECK(word_is(handle_word(aLoop), {1}));
    CHECK(bridge.size() == 2);
    CHECK(transit_count(bridge, 0) == 1);
    CHECK(transit_count(bridge, 1) == 1);
    CHECK(word_is(handle_word(bridge), {2, -1}));
    CHECK(count_crossings(g2topo(), aLoop, bridge) == 0);
}

TEST_CASE("twist concatenates parallel strands") {
    auto flat = realize(weight_vec(2, 0, 0, 0, 0), {0, 0});
    CHECK(flat.components.size() == 2);

    auto twisted = realize(weight_vec(2, 0, 0, 0, 0), {1, 0});
    REQUIRE(twisted.components.size() == 1);
    const DrawnCurve& m1 = twisted.components[0];
    CHECK(m1.size() == 2);
    CHECK(transit_count(m1, 0) == 2);
    CHECK(word_is(handle_word(m1), {1, 1}));
    CHECK(count_self_crossings(g2topo(), m1) == 0);
}

TEST_CASE("crossing counts on frozen pairs") {
    auto aL = realize(weight_vec(1, 0, 0, 0, 0), {0, 0}, 0).components[0];
    auto e1 = realize(weight_vec(0, 0, 0, 1, 1), {0, 0}, 1).components[0];
    auto m1 = realize(weight_vec(2, 0, 0, 0, 0), {1, 0}, 1).components[0];

    // the core loop slides past the handle-two curve
    CHECK(count_crossings(g2topo(), aL, e1) == 0);
    CHECK(count_crossings(g2topo(), e1, aL) == 0);
    CHECK(oracle_crossings(aL, e1) == 0);

    CHECK(count_crossings(g2topo(), m1, aL) == 1);
    CHECK(oracle_crossings(m1, aL) == 1);

    auto e1lvl0 = realize(weight_vec(0, 0, 0, 1, 1), {0, 0}, 0).components[0];
    CHECK(count_crossings(g2topo(), m1, e1lvl0) == 2);
    CHECK(oracle_crossings(m1, e1lvl0) == 2);
}

TEST_CASE("boundary-parallel pushoff of the second disk") {
    DrawnCurve po = circle_pushoff(g2topo(), 1, true, Rational(1, 10));
    CHECK(po.size() == 1);
    CHECK(transit_count(po, 0) == 0);
    CHECK(transit_count(po, 1) == 0);
    CHECK(handle_word(po).empty());
    CHECK(count_self_crossings(g2topo(), po) == 0);

    auto aL = realize(weight_vec(1, 0, 0, 0, 0), {0, 0}, 0).components[0];
    auto e1 = realize(weight_vec(0, 0, 0, 1, 1), {0, 0}, 0).components[0];
    auto br = realize(weight_vec(1, 1, 1, 0, 0), {0, 0}, 1);
    int bi = transit_count(br.components[0], 1) == 1 ? 0 : 1;

    CHECK(count_crossings(g2topo(), po, aL) == 0);
    CHECK(count_crossings(g2topo(), po, e1) == 0);
    CHECK(count_crossings(g2topo(), po, br.components[bi]) == 1);
    CHECK(oracle_crossings(po, br.components[bi]) == 1);
}

TEST_CASE("engine agrees with the unrolled oracle on random carried pairs") {
    std::mt19937_64 rng(20260815u);
    auto pick = [&](int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(rng);
    };
    for (int trial = 0; trial < 30; ++trial) {
        auto mkweights = [&]() {
            int u = pick(0, 4), v = pick(0, 3), a = pick(0, 4);
            return weight_vec(a, u, u, v, v);
        };
        auto w1 = mkweights(), w2 = mkweights();
        std::vector<BigInt> t1 = {pick(-4, 4), pick(-4, 4)};
        std::vector<BigInt> t2 = {pick(-4, 4), pick(-4, 4)};
        auto r1 = realize(w1, t1, 0);
        auto r2 = realize(w2, t2, 1);

        for (const auto& c : r1.components) {
            CHECK(count_self_crossings(g2topo(), c) == 0);
            DrawnCurve n = normalize_curve(g2topo(), c);
            CHECK(n.size() == c.size());
        }
        for (std::size_t i = 0; i < r1.components.size(); ++i)
            for (std::size_t j = i + 1; j < r1.components.size(); ++j)
                CHECK(count_crossings(g2topo(), r1.components[i],
                                      r1.components[j]) == 0);

        BigInt engine = multi_crossings(r1.components, r2.components, false);
        BigInt oracle = multi_crossings(r1.components, r2.components, true);
        CHECK(engine == oracle);
        CHECK(engine ==
              multi_crossings(r2.components, r1.components, false));

        // crossing number is unchanged when both curves are twisted along
        // the same disk boundaries the same number of times
        int k = pick(-2, 3);
        auto strands = [&](const std::vector<BigInt>& w, int d) {
            BigInt n = 0;
            for (int arc = 0; arc < g2().num_arcs(); ++arc)
                for (int e = 0; e < 2; ++e)
                    if (g2().arc(arc).ends[e].circle ==
                        Chart::circle_id(d, true))
                        n += w[arc];
            return n;
        };
        auto twist = [&](const std::vector<BigInt>& w,
                         const std::vector<BigInt>& t) {
            std::vector<BigInt> out = t;
            for (int d = 0; d < 2; ++d) out[d] += BigInt(k) * strands(w, d);
            return out;
        };
        auto r1t = realize(w1, twist(w1, t1), 0);
        auto r2t = realize(w2, twist(w2, t2), 1);
        CHECK(multi_crossings(r1t.components, r2t.components, false) ==
              engine);
        // free-group images are insensitive to disk twists
        REQUIRE(r1t.components.size() == r1.components.size());
    }
}

TEST_CASE("normalization cancels an annulus backtrack") {
    auto base = realize(weight_vec(1, 0, 0, 0, 0), {0, 0}, 0, 1);
    DrawnCurve c = base.components[0];
    REQUIRE(c.size() == 1);
    Event tA = c.events[0];

    DrawnCurve detour;
    detour.closed = true;
    detour.events = {
        tA,
        Event::transit(0, Rational(1, 5), Rational(31, 100), 0, true),
        Event::transit(0, Rational(21, 100), Rational(3, 10), 0, false),
    };
    CHECK(count_self_crossings(g2topo(), detour) == 0);
    CHECK(transit_count(detour, 0) == 3);

    DrawnCurve n = normalize_curve(g2topo(), detour);
    CHECK(n.size() == 1);
    CHECK(transit_count(n, 0) == 1);

    // crossing counts with a reference curve return to the reduced value
    auto e1 = realize(weight_vec(0, 0, 0, 1, 1), {0, 0}, 1).components[0];
    CHECK(count_crossings(g2topo(), n, e1) ==
          count_crossings(g2topo(), c, e1));

    // idempotent
    CHECK(normalize_curve(g2topo(), n).size() == 1);
}

TEST_CASE("normalization cancels an immediate double arc crossing") {
    auto base = realize(weight_vec(1, 0, 0, 0, 0), {0, 0}, 0, 1);
    DrawnCurve c = base.components[0];
    DrawnCurve detour;
    detour.closed = true;
    detour.events = {
        c.events[0],
        Event::cross(kArcA, Rational(2, 5), true),
        Event::cross(kArcA, Rational(9, 20), false),
    };
    CHECK(count_self_crossings(g2topo(), detour) == 0);
    DrawnCurve n = normalize_curve(g2topo(), detour);
    CHECK(n.size() == 1);
    CHECK(n.events[0].kind == Event::Kind::Transit);
}
