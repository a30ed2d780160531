#include <catch2/catch_amalgamated.hpp>

#include <handlebody/curve.hpp>
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

Multicurve carried(BigInt a, BigInt x, BigInt y, BigInt rp, BigInt rm,
                   BigInt t0 = 0, BigInt t1 = 0) {
    return carried_multicurve({std::move(a), std::move(x), std::move(y),
                               std::move(rp), std::move(rm)},
                              {std::move(t0), std::move(t1)});
}

Multicurve fixture_m1() { return carried(2, 0, 0, 0, 0, 1, 0); }
Multicurve fixture_m2() { return carried(0, 1, 1, 0, 0); }
Multicurve fixture_e1() { return carried(0, 0, 0, 1, 1); }
Multicurve fixture_aloop() { return carried(1, 0, 0, 0, 0); }

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

BigInt oracle_intersection(const Multicurve& a, const Multicurve& b) {
    RealizedPair rp = realize_pair(g2topo(), a, b);
    BigInt total = 0;
    for (const auto& x : rp.first)
        for (const auto& y : rp.second) total += oracle_crossings(x, y);
    return total;
}

// random multicurve satisfying the matching condition (x = y, r+ = r-)
Multicurve random_carried(std::mt19937_64& rng, bool forceStrands = false) {
    std::uniform_int_distribution<int> w(forceStrands ? 1 : 0, 4);
    std::uniform_int_distribution<int> tw(-4, 4);
    BigInt a = w(rng), x = w(rng), rp = w(rng);
    BigInt t0 = tw(rng), t1 = tw(rng);
    if (a + x + 2 * rp == 0 && t0 < 0) t0 = -t0;
    if (x == 0 && t1 < 0) t1 = -t1;
    return carried(a, x, x, rp, rp, t0, t1);
}

}  // namespace

TEST_CASE("coordinate validation rejects inconsistent multicurves") {
    CHECK_THROWS_AS(validate_multicurve(g2topo(), carried(0, 1, 0, 0, 0)),
                    std::invalid_argument);
    CHECK_THROWS_AS(validate_multicurve(g2topo(), carried(1, 0, 0, 1, 0)),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        validate_multicurve(g2topo(), carried(-1, 0, 0, 0, 0)),
        std::invalid_argument);
    // strand-free disk: the per-disk integer counts circle copies, so it
    // cannot be negative
    CHECK_THROWS_AS(
        validate_multicurve(g2topo(), carried(0, 0, 0, 0, 0, -1, 0)),
        std::invalid_argument);
    CHECK_THROWS_AS(
        normalize_multicurve(g2topo(), carried(0, 1, 0, 0, 0)),
        std::invalid_argument);
    Multicurve wrongSize;
    wrongSize.weights = {1, 2};
    wrongSize.twists = {0, 0};
    CHECK_THROWS_AS(validate_multicurve(g2topo(), wrongSize),
                    std::invalid_argument);
    CHECK_NOTHROW(validate_multicurve(g2topo(), fixture_m1()));
    CHECK_NOTHROW(validate_multicurve(g2topo(), fixture_e1()));
}

TEST_CASE("strand counts through the support system") {
    CHECK(intersection_with_sigma(g2topo(), empty_multicurve(g2())) == 0);
    CHECK(intersection_with_sigma(g2topo(), fixture_m1()) == 2);
    CHECK(intersection_with_sigma(g2topo(), fixture_m2()) == 2);
    CHECK(intersection_with_sigma(g2topo(), fixture_e1()) == 2);
    CHECK(intersection_with_sigma(g2topo(), fixture_aloop()) == 1);
    // circle copies never cross the system
    CHECK(intersection_with_sigma(g2topo(), carried(0, 0, 0, 0, 0, 3, 2)) ==
          0);
    CHECK(intersection_with_sigma(g2topo(), carried(0, 0, 0, 1, 1, 0, 2)) ==
          2);
}

TEST_CASE("circle copies realize as disjoint parallel loops") {
    Multicurve copies = carried(0, 0, 0, 0, 0, 2, 1);
    auto r = realize_multicurve(g2topo(), copies);
    REQUIRE(r.size() == 3);
    for (std::size_t i = 0; i < r.size(); ++i) {
        CHECK(count_self_crossings(g2topo(), r[i]) == 0);
        for (std::size_t j = i + 1; j < r.size(); ++j)
            CHECK(count_crossings(g2topo(), r[i], r[j]) == 0);
    }
    CHECK(intersection_number(g2topo(), copies, copies) == 0);
}

TEST_CASE("intersection numbers of the standard fixtures") {
    Multicurve m1 = fixture_m1(), m2 = fixture_m2(), e1 = fixture_e1();
    Multicurve aloop = fixture_aloop();
    CHECK(intersection_number(g2topo(), m1, aloop) == 1);
    CHECK(intersection_number(g2topo(), m1, e1) == 2);
    CHECK(intersection_number(g2topo(), aloop, e1) == 0);
    CHECK(intersection_number(g2topo(), m1, empty_multicurve(g2())) == 0);
    // the two-strand example against the independent drawing oracle
    CHECK(intersection_number(g2topo(), m1, m2) == oracle_intersection(m1, m2));
    // one circle copy around the first disk meets every strand through it
    Multicurve copy1 = carried(0, 0, 0, 0, 0, 1, 0);
    CHECK(intersection_number(g2topo(), copy1, aloop) == 1);
    CHECK(intersection_number(g2topo(), copy1, m1) == 2);
    CHECK(intersection_number(g2topo(), copy1, e1) == 2);
    Multicurve copy2 = carried(0, 0, 0, 0, 0, 0, 1);
    CHECK(intersection_number(g2topo(), copy2, e1) == 0);
    CHECK(intersection_number(g2topo(), copy2, m2) == 1);
}

TEST_CASE("intersection is symmetric and vanishes on the diagonal") {
    std::mt19937_64 rng(0x5eedc0de);
    for (int trial = 0; trial < 200; ++trial) {
        Multicurve a = random_carried(rng);
        Multicurve b = random_carried(rng);
        BigInt ab = intersection_number(g2topo(), a, b);
        CHECK(intersection_number(g2topo(), a, a) == 0);
        CHECK(intersection_number(g2topo(), b, a) == ab);
    }
}

TEST_CASE("intersection against the drawing oracle on random pairs") {
    std::mt19937_64 rng(0xfeedface);
    for (int trial = 0; trial < 40; ++trial) {
        Multicurve a = random_carried(rng);
        Multicurve b = random_carried(rng);
        CHECK(intersection_number(g2topo(), a, b) == oracle_intersection(a, b));
    }
}

TEST_CASE("simultaneous disk twists preserve intersection numbers") {
    std::mt19937_64 rng(0xabcdef12);
    for (int trial = 0; trial < 40; ++trial) {
        Multicurve a = random_carried(rng, true);
        Multicurve b = random_carried(rng, true);
        BigInt base = intersection_number(g2topo(), a, b);
        // a full twist along a disk boundary shifts each curve's matching by
        // its own strand count through that disk
        for (int d = 0; d < 2; ++d) {
            Multicurve ta = a, tb = b;
            ta.twists[d] += carried_strands(g2(), a, d);
            tb.twists[d] += carried_strands(g2(), b, d);
            CHECK(intersection_number(g2topo(), ta, tb) == base);
        }
    }
}

TEST_CASE("normalization is the identity on taut carried coordinates") {
    std::mt19937_64 rng(0x12345678);
    for (int trial = 0; trial < 200; ++trial) {
        Multicurve m = random_carried(rng);
        Multicurve n = normalize_multicurve(g2topo(), m);
        CHECK(n.weights == m.weights);
        CHECK(n.twists == m.twists);
        Multicurve nn = normalize_multicurve(g2topo(), n);
        CHECK(nn.weights == n.weights);
        CHECK(nn.twists == n.twists);
    }
}

TEST_CASE("normalization cancels a strand entering and re-exiting a disk") {
    // a drawn component that dips into the first annulus and immediately
    // backs out through parallel positions
    DrawnCurve dip;
    dip.closed = true;
    dip.events.push_back(Event::transit(
        0, Rational(1, 100), g2().push_to_minus(0, Rational(3, 100)), 0,
        true));
    dip.events.push_back(Event::transit(
        0, Rational(2, 100), g2().push_to_minus(0, Rational(4, 100)), 0,
        false));
    Multicurve m = drawn_multicurve(g2(), dip);
    CHECK(intersection_with_sigma(g2topo(), m) == 2);
    Multicurve n = normalize_multicurve(g2topo(), m);
    CHECK(intersection_with_sigma(g2topo(), n) == 0);
    CHECK(n.extras.empty());
    // weights and copies are untouched
    CHECK(n.weights == m.weights);
    CHECK(n.twists == m.twists);
    // idempotent
    Multicurve nn = normalize_multicurve(g2topo(), n);
    CHECK(nn.extras.empty());
}

TEST_CASE("algebraic crossing numbers") {
    auto one = [&](const Multicurve& m, int level) {
        auto r = realize_multicurve(g2topo(), m, level, 2);
        REQUIRE(r.size() == 1);
        return r[0];
    };
    DrawnCurve aloop = one(fixture_aloop(), 0);
    DrawnCurve m1 = one(fixture_m1(), 0);
    DrawnCurve e1 = one(fixture_e1(), 1);
    DrawnCurve push1 = one(carried(0, 0, 0, 0, 0, 1, 0), 1);
    DrawnCurve push2 = one(carried(0, 0, 0, 0, 0, 0, 1), 1);

    // antisymmetry of the local frame
    CHECK(signed_crossings(g2topo(), m1, e1) ==
          -signed_crossings(g2topo(), e1, m1));
    CHECK(signed_crossings(g2topo(), aloop, push1) ==
          -signed_crossings(g2topo(), push1, aloop));

    // the curve around the second handle separates, so every algebraic
    // count against it vanishes even when the geometric count does not
    CHECK(count_crossings(g2topo(), m1, e1) == 2);
    CHECK(signed_crossings(g2topo(), m1, e1) == 0);
    CHECK(signed_crossings(g2topo(), aloop, e1) == 0);

    // a disk boundary meets the core loop of its own handle exactly once
    BigInt s1 = signed_crossings(g2topo(), aloop, push1);
    CHECK((s1 == 1 || s1 == -1));
    CHECK(signed_crossings(g2topo(), aloop, push2) == 0);
    DrawnCurve bridge = one(fixture_m2(), 0);
    BigInt s2 = signed_crossings(g2topo(), bridge, push2);
    CHECK((s2 == 1 || s2 == -1));
    BigInt s3 = signed_crossings(g2topo(), bridge, push1);
    CHECK((s3 == 1 || s3 == -1));

    // parity and magnitude agree with the geometric count
    std::mt19937_64 rng(0x0badcafe);
    for (int trial = 0; trial < 40; ++trial) {
        Multicurve a = random_carried(rng);
        Multicurve b = random_carried(rng);
        RealizedPair rp = realize_pair(g2topo(), a, b);
        for (const auto& x : rp.first)
            for (const auto& y : rp.second) {
                BigInt gs = signed_crossings(g2topo(), x, y);
                BigInt gc = count_crossings(g2topo(), x, y);
                CHECK(abs(gs) <= gc);
                CHECK((gc - gs) % 2 == 0);
            }
    }
}
