#include <catch2/catch_amalgamated.hpp>

#include <handlebody/fixtures.hpp>
#include <handlebody/regions.hpp>

#include <set>

using namespace hb;

namespace {

using R = Rational;

const Chart& g2() {
    static Chart c = make_g2std();
    return c;
}
const ChartTopology& g2topo() {
    static ChartTopology t(g2());
    return t;
}

std::vector<BigInt> weight_vec(int a, int x, int y, int rp, int rm) {
    return {BigInt(a), BigInt(x), BigInt(y), BigInt(rp), BigInt(rm)};
}

DrawnCurve carried_loop(const std::vector<BigInt>& w,
                        const std::vector<BigInt>& t, int level = 0) {
    auto r = realize_carried(g2topo(), w, t, level, 2);
    REQUIRE(r.components.size() == 1);
    return r.components[0];
}

std::vector<long long> eulers(const std::vector<FamilyComponent>& fam) {
    RegionComplex rc(g2topo(), fam);
    return rc.euler_list();
}

}  // namespace

TEST_CASE("empty family leaves the whole surface") {
    RegionComplex rc(g2topo(), {});
    REQUIRE(rc.num_regions() == 1);
    REQUIRE(rc.euler(0) == -2);
    REQUIRE(rc.num_boundary_cycles(0) == 0);
}

TEST_CASE("cutting along both gluing circles yields a four-holed sphere") {
    RegionComplex rc(g2topo(),
                     {FamilyComponent::circle(0), FamilyComponent::circle(1)});
    REQUIRE(rc.num_regions() == 1);
    REQUIRE(rc.euler(0) == -2);
    REQUIRE(rc.num_boundary_cycles(0) == 4);
}

TEST_CASE("circles plus all chart arcs cut the surface into disk cells") {
    std::vector<FamilyComponent> fam = {FamilyComponent::circle(0),
                                        FamilyComponent::circle(1)};
    for (int a = 0; a < g2().num_arcs(); ++a)
        fam.push_back(FamilyComponent::chart_arc(a));
    RegionComplex rc(g2topo(), fam);
    REQUIRE(rc.num_regions() == 3);
    REQUIRE(rc.all_disks());
    std::set<int> seen;
    for (int a = 0; a < g2().num_arcs(); ++a) {
        int left = rc.region_at_arc(a, R(1, 3), true);
        int right = rc.region_at_arc(a, R(1, 3), false);
        seen.insert(left);
        seen.insert(right);
        REQUIRE(rc.num_boundary_cycles(left) == 1);
        REQUIRE(rc.num_boundary_cycles(right) == 1);
    }
    REQUIRE(static_cast<int>(seen.size()) == 3);
    // both sides of the first arc bound the same cell, as do both sides of
    // the second
    REQUIRE(rc.region_at_arc(kArcA, R(1, 3), true) ==
            rc.region_at_arc(kArcA, R(1, 3), false));
    REQUIRE(rc.region_at_arc(kArcX, R(1, 3), true) ==
            rc.region_at_arc(kArcX, R(1, 3), false));
    REQUIRE(rc.region_at_arc(kArcA, R(1, 3), true) !=
            rc.region_at_arc(kArcX, R(1, 3), false));
}

TEST_CASE("a single arc cuts the surface along a contractible slit") {
    RegionComplex rc(g2topo(), {FamilyComponent::chart_arc(kArcA)});
    // removing an open neighborhood of the slit leaves genus two with one
    // boundary circle
    REQUIRE(rc.num_regions() == 1);
    REQUIRE(rc.euler(0) == -3);
    REQUIRE(rc.num_boundary_cycles(0) == 1);
}

TEST_CASE("the curve around the second handle separates the surface") {
    DrawnCurve e1 = carried_loop(weight_vec(0, 0, 0, 1, 1), {0, 0});
    RegionComplex rc(g2topo(), {FamilyComponent::drawn(e1)});
    REQUIRE(rc.num_regions() == 2);
    auto eu = rc.euler_list();
    REQUIRE(eu == std::vector<long long>{-1, -1});
    REQUIRE(rc.num_boundary_cycles(0) == 1);
    REQUIRE(rc.num_boundary_cycles(1) == 1);
}

TEST_CASE("core loops and bridges do not separate") {
    for (auto& c : {carried_loop(weight_vec(1, 0, 0, 0, 0), {0, 0}),
                    carried_loop(weight_vec(0, 1, 1, 0, 0), {0, 0}),
                    carried_loop(weight_vec(2, 0, 0, 0, 0), {1, 0})}) {
        RegionComplex rc(g2topo(), {FamilyComponent::drawn(c)});
        REQUIRE(rc.num_regions() == 1);
        REQUIRE(rc.euler(0) == -2);
        REQUIRE(rc.num_boundary_cycles(0) == 2);
    }
}

TEST_CASE("parallel carried copies cobound an annulus") {
    DrawnCurve inner = carried_loop(weight_vec(1, 0, 0, 0, 0), {0, 0}, 0);
    DrawnCurve outer = carried_loop(weight_vec(1, 0, 0, 0, 0), {0, 0}, 1);
    REQUIRE(count_crossings(g2topo(), inner, outer) == 0);
    RegionComplex rc(g2topo(), {FamilyComponent::drawn(inner),
                                FamilyComponent::drawn(outer)});
    REQUIRE(rc.num_regions() == 2);
    REQUIRE(rc.euler_list() == std::vector<long long>{-2, 0});
}

TEST_CASE("separating curve plus circles carves off both handle pockets") {
    DrawnCurve e1 = carried_loop(weight_vec(0, 0, 0, 1, 1), {0, 0});
    RegionComplex rc(g2topo(),
                     {FamilyComponent::circle(0), FamilyComponent::circle(1),
                      FamilyComponent::drawn(e1)});
    // the curve crosses the first gluing circle twice, so the union is a
    // graph with two 4-valent vertices and the three complement pieces are
    // all annular
    REQUIRE(rc.num_regions() == 3);
    REQUIRE(rc.euler_list() == std::vector<long long>{0, 0, 0});
    int plusPocket = rc.region_at_core(1, R(1, 5), true);
    int minusPocket = rc.region_at_core(1, R(1, 5), false);
    REQUIRE(plusPocket != minusPocket);
    REQUIRE(rc.euler(plusPocket) == 0);
    REQUIRE(rc.euler(minusPocket) == 0);
}

TEST_CASE("a rope pinned to a circle cuts off a lens against the core") {
    DrawnCurve rope;
    rope.closed = false;
    rope.events = {Event::end_on_circle(0, R(1, 5), true),
                   Event::end_on_circle(0, R(3, 10), true)};
    RegionComplex rc(g2topo(),
                     {FamilyComponent::circle(0), FamilyComponent::circle(1),
                      FamilyComponent::drawn(rope)});
    REQUIRE(rc.num_regions() == 2);
    REQUIRE(rc.euler_list() == std::vector<long long>{-2, 1});
    int lens = rc.region_at_core(0, R(1, 4), true);
    REQUIRE(rc.euler(lens) == 1);
    REQUIRE(rc.num_boundary_cycles(lens) == 1);
}

TEST_CASE("strands sweeping a pinned rope end are counted as crossings") {
    DrawnCurve rope;
    rope.closed = false;
    rope.events = {Event::end_on_circle(0, R(1, 5), true),
                   Event::end_on_circle(0, R(3, 10), true)};
    // double core loop with one twist: one strand winds once around the
    // collar and sweeps past both pinned ends
    DrawnCurve m1 = carried_loop(weight_vec(2, 0, 0, 0, 0), {1, 0});
    REQUIRE(count_crossings(g2topo(), rope, m1) == 2);
    REQUIRE(count_crossings(g2topo(), m1, rope) == 2);
    // the plain core loop stays near the slot and misses the rope
    DrawnCurve aLoop = carried_loop(weight_vec(1, 0, 0, 0, 0), {0, 0});
    REQUIRE(count_crossings(g2topo(), rope, aLoop) == 0);
}

TEST_CASE("coincident copies are rejected as not in general position") {
    DrawnCurve c = carried_loop(weight_vec(1, 0, 0, 0, 0), {0, 0});
    REQUIRE_THROWS(RegionComplex(
        g2topo(), {FamilyComponent::drawn(c), FamilyComponent::drawn(c)}));
}
