#pragma once

#include <handlebody/bigint.hpp>
#include <handlebody/chart.hpp>
#include <handlebody/diagram.hpp>
#include <handlebody/min_cut.hpp>

#include <algorithm>
#include <array>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hb {

// A multicurve on a chart, stored in carried coordinates: one non-negative
// weight per chart arc (parallel strands running along the arc) plus one
// integer per disk. For a disk crossed by strands the integer is the regluing
// twist; for a strand-free disk it counts parallel copies of that disk's
// gluing circle and must be non-negative. Components that are not carried by
// the arc system (surgery outputs, custom loops) travel verbatim in `extras`.
struct Multicurve {
    std::vector<BigInt> weights;
    std::vector<BigInt> twists;
    std::vector<DrawnCurve> extras;
};

inline Multicurve empty_multicurve(const Chart& chart) {
    Multicurve m;
    m.weights.assign(chart.num_arcs(), 0);
    m.twists.assign(chart.genus(), 0);
    return m;
}

inline Multicurve carried_multicurve(std::vector<BigInt> weights,
                                     std::vector<BigInt> twists) {
    Multicurve m;
    m.weights = std::move(weights);
    m.twists = std::move(twists);
    return m;
}

inline Multicurve drawn_multicurve(const Chart& chart, DrawnCurve c) {
    Multicurve m = empty_multicurve(chart);
    m.extras.push_back(std::move(c));
    return m;
}

// Number of strands the carried weights send through a disk (= the count of
// arc endpoints, weighted, on its + circle; the matching condition makes the
// - circle give the same number).
inline BigInt carried_strands(const Chart& chart, const Multicurve& m,
                              int disk) {
    BigInt n = 0;
    for (int a = 0; a < chart.num_arcs(); ++a)
        for (int e = 0; e < 2; ++e)
            if (chart.arc(a).ends[e].circle == Chart::circle_id(disk, true))
                n += m.weights[a];
    return n;
}

inline void validate_multicurve(const ChartTopology& topo,
                                const Multicurve& m) {
    const Chart& chart = topo.chart();
    if (!topo.valid())
        throw std::invalid_argument("chart is not valid: " +
                                    (topo.problems().empty()
                                         ? std::string("unknown problem")
                                         : topo.problems().front()));
    if (static_cast<int>(m.weights.size()) != chart.num_arcs())
        throw std::invalid_argument("one weight per chart arc");
    if (static_cast<int>(m.twists.size()) != chart.genus())
        throw std::invalid_argument("one twist per disk");
    for (const BigInt& w : m.weights)
        if (w < 0) throw std::invalid_argument("negative weight");
    for (int d = 0; d < chart.genus(); ++d) {
        BigInt plus = 0, minus = 0;
        for (int a = 0; a < chart.num_arcs(); ++a)
            for (int e = 0; e < 2; ++e) {
                int c = chart.arc(a).ends[e].circle;
                if (c == Chart::circle_id(d, true)) plus += m.weights[a];
                if (c == Chart::circle_id(d, false)) minus += m.weights[a];
            }
        if (plus != minus)
            throw std::invalid_argument(
                "matching condition violated at disk " + std::to_string(d));
        if (plus == 0 && m.twists[d] < 0)
            throw std::invalid_argument(
                "negative circle-copy count at strand-free disk " +
                std::to_string(d));
    }
    for (const DrawnCurve& c : m.extras)
        if (!c.closed || c.empty())
            throw std::invalid_argument(
                "extra components must be non-empty closed curves");
}

namespace detail {

inline bool has_carried_part(const Multicurve& m) {
    for (const BigInt& w : m.weights)
        if (w > 0) return true;
    return false;
}

inline void append_circle_copies(const ChartTopology& topo,
                                 const Multicurve& m, int level, int levels,
                                 std::vector<DrawnCurve>& out) {
    const Chart& chart = topo.chart();
    for (int d = 0; d < chart.genus(); ++d) {
        if (carried_strands(chart, m, d) > 0) continue;
        long long copies = to_int64(m.twists[d]);
        for (long long i = 0; i < copies; ++i) {
            // distinct depths per copy and per level keep all copies parallel
            Rational depth(i * (levels + 2) + level + 1,
                           4 * (copies * (levels + 2) + 1));
            out.push_back(circle_pushoff(topo, d, true, depth));
        }
    }
}

}  // namespace detail

// Realize the multicurve as drawn components. `level`/`levels` pick disjoint
// nesting bands, so realizations of two multicurves at different levels are
// in general position with respect to each other.
inline std::vector<DrawnCurve> realize_multicurve(const ChartTopology& topo,
                                                  const Multicurve& m,
                                                  int level = 0,
                                                  int levels = 1) {
    validate_multicurve(topo, m);
    std::vector<DrawnCurve> out;
    if (detail::has_carried_part(m)) {
        auto carried =
            realize_carried(topo, m.weights, m.twists, level, levels);
        for (auto& c : carried.components) out.push_back(std::move(c));
    }
    detail::append_circle_copies(topo, m, level, levels, out);
    for (const DrawnCurve& c : m.extras) out.push_back(c);
    return out;
}

// Normal position: carried strands are already taut, so normalization only
// validates the coordinates and cancels backtracks inside extra components.
// Components whose events all cancel are contractible and dropped.
inline Multicurve normalize_multicurve(const ChartTopology& topo,
                                       Multicurve m) {
    validate_multicurve(topo, m);
    std::vector<DrawnCurve> kept;
    for (DrawnCurve& c : m.extras) {
        DrawnCurve n = normalize_curve(topo, std::move(c));
        if (!n.empty()) kept.push_back(std::move(n));
    }
    m.extras = std::move(kept);
    return m;
}

// Total strand count through the disk system's annuli.
inline BigInt intersection_with_sigma(const ChartTopology& topo,
                                      const Multicurve& m) {
    validate_multicurve(topo, m);
    const Chart& chart = topo.chart();
    BigInt total = 0;
    for (int d = 0; d < chart.genus(); ++d) {
        total += carried_strands(chart, m, d);
        for (const DrawnCurve& c : m.extras) total += transit_count(c, d);
    }
    return total;
}

namespace detail {

// ---- relative position of two carried realizations ------------------------
//
// Each realization on its own is embedded, but nesting bands cannot decide
// how the lane stacks of two different curves interleave: along an arc whose
// two ends disagree about the annulus direction, "outside at every end" is
// not a parallel position, and stretches of the two curves can tie over long
// distances with conflicting preferences at their ends. A crossing-minimal
// position is therefore found by exact combinatorial optimization: one order
// bit per opposite-curve pair of lane ends at a shared slot, crossing costs
// read off the diagram's own crossing predicates for either bit value, and
// each curve's internal stack order kept as hard constraints.

// One strand endpoint of a realized carried component, resolved to the slot
// whose lane stack it belongs to.
struct LaneAnchor {
    int circle = -1;
    int slot = -1;
    Rational anchor;    // slot position in the circle's own coordinates
    int arc = -1;
    int arcEnd = -1;
    bool ccw = true;    // lanes sit ccw of an end-0 slot, cw of an end-1 slot
    int ell = 1;        // +1 when a larger lane offset = larger annulus coord
};

struct LaneCursor {
    int comp = -1;
    int event = -1;
    int side = 0;  // 0 = + endpoint of the transit, 1 = - endpoint
};

struct CarriedLayout {
    CarriedRealization real;
    // anchors[comp][event][side]
    std::vector<std::vector<std::array<LaneAnchor, 2>>> anchors;
    std::vector<int> firstEvent;  // prefix sums for state ids
    int totalEvents = 0;

    int state_id(const LaneCursor& c) const {
        return (firstEvent[c.comp] + c.event) * 2 + c.side;
    }
    const Event& event_at(const LaneCursor& c) const {
        return real.components[c.comp].events[c.event];
    }
    const LaneAnchor& anchor_at(const LaneCursor& c) const {
        return anchors[c.comp][c.event][c.side];
    }
};

inline LaneAnchor resolve_lane_anchor(const ChartTopology& topo, int circle,
                                      const Rational& pos) {
    const auto& sl = topo.slots()[circle];
    LaneAnchor a;
    a.circle = circle;
    Rational best(2);
    for (int i = 0; i < static_cast<int>(sl.size()); ++i) {
        Rational d = frac_part(pos - sl[i].pos);
        d = std::min(d, Rational(1) - d);
        if (d < best) {
            best = d;
            a.slot = i;
        }
    }
    if (a.slot < 0)
        throw std::logic_error("carried lane endpoint on a slotless circle");
    a.anchor = sl[a.slot].pos;
    a.arc = sl[a.slot].arc;
    a.arcEnd = sl[a.slot].end;
    a.ccw = (a.arcEnd == 0);
    a.ell = (Chart::is_plus_circle(circle) == a.ccw) ? 1 : -1;
    return a;
}

inline CarriedLayout carried_layout(const ChartTopology& topo,
                                    CarriedRealization real) {
    CarriedLayout lay;
    lay.real = std::move(real);
    int n = static_cast<int>(lay.real.components.size());
    lay.anchors.resize(n);
    lay.firstEvent.resize(n);
    for (int k = 0; k < n; ++k) {
        const DrawnCurve& comp = lay.real.components[k];
        lay.firstEvent[k] = lay.totalEvents;
        lay.totalEvents += comp.size();
        lay.anchors[k].resize(comp.events.size());
        for (int i = 0; i < comp.size(); ++i) {
            const Event& e = comp.events[i];
            lay.anchors[k][i][0] = resolve_lane_anchor(
                topo, Chart::circle_id(e.disk, true), e.p);
            lay.anchors[k][i][1] = resolve_lane_anchor(
                topo, Chart::circle_id(e.disk, false), e.q);
        }
    }
    return lay;
}

// Reassign lane-end positions of two realizations so that every slot's lane
// stack is interleaved the way a crossing-minimal position interleaves it.
// Each curve's internal order is kept (each is already embedded); the
// relative orders at shared slots minimize the total crossing count over
// all interleavings. One binary variable per opposite-curve end pair at a
// shared slot records which end comes first; every crossing predicate of
// the final diagram is probed for either value of the bits it depends on,
// and the probed tables form the energy. Orienting each stack suitably
// makes almost every table submodular at once; the sparse tied pairs that
// sit on an odd orientation cycle are branched on explicitly, each branch
// is solved exactly by a minimum cut, and the cheapest branch wins.
inline void merge_lane_positions(const ChartTopology& topo, CarriedLayout& A,
                                 CarriedLayout& B) {
    const Chart& chart = topo.chart();
    std::vector<Rational> anchorGap = anchor_gaps(topo);
    CarriedLayout* lays[2] = {&A, &B};

    // ---- gather both curves' lane ends per slot ----------------------------
    struct BlockEnd {
        LaneCursor cur;
        Rational key;  // annulus cover coordinate, for the in-curve order
    };
    struct Block {
        LaneAnchor an;
        Rational gap;                  // fan half-width for rebuilt stacks
        std::vector<BlockEnd> as, bs;  // each curve's ends, in stack order
        int varBase = -1;              // first order bit, when both present
    };
    std::map<std::pair<int, int>, int> blockIndex;
    std::vector<Block> blocks;
    // endBlock/endIdx[tag][state id] = the end's block and stack position
    std::array<std::vector<int>, 2> endBlock, endIdx;
    for (int tag = 0; tag < 2; ++tag) {
        const CarriedLayout& lay = *lays[tag];
        endBlock[tag].assign(2 * lay.totalEvents, -1);
        endIdx[tag].assign(2 * lay.totalEvents, -1);
        for (int k = 0; k < static_cast<int>(lay.real.components.size()); ++k)
            for (int i = 0; i < lay.real.components[k].size(); ++i)
                for (int side = 0; side < 2; ++side) {
                    LaneCursor c{k, i, side};
                    const LaneAnchor& an = lay.anchor_at(c);
                    auto [it, fresh] = blockIndex.try_emplace(
                        {an.circle, an.slot}, static_cast<int>(blocks.size()));
                    if (fresh) {
                        Block b;
                        b.an = an;
                        b.gap = std::min(lane_gap(topo, an.circle, an.anchor,
                                                  an.ccw),
                                         anchorGap[Chart::disk_of_circle(
                                             an.circle)]) /
                                2;
                        blocks.push_back(std::move(b));
                    }
                    const Event& e = lay.event_at(c);
                    Block& b = blocks[it->second];
                    endBlock[tag][lay.state_id(c)] = it->second;
                    (tag == 0 ? b.as : b.bs)
                        .push_back({c, side == 0 ? e.p
                                                 : chart.pull_to_plus(e.disk,
                                                                      e.q)});
                }
    }
    int nvars = 0;
    for (Block& b : blocks) {
        auto byKey = [](const BlockEnd& l, const BlockEnd& r) {
            return l.key < r.key;
        };
        std::stable_sort(b.as.begin(), b.as.end(), byKey);
        std::stable_sort(b.bs.begin(), b.bs.end(), byKey);
        if (!b.as.empty() && !b.bs.empty()) {
            b.varBase = nvars;
            nvars += static_cast<int>(b.as.size() * b.bs.size());
        }
    }
    for (int bi = 0; bi < static_cast<int>(blocks.size()); ++bi) {
        for (int i = 0; i < static_cast<int>(blocks[bi].as.size()); ++i)
            endIdx[0][A.state_id(blocks[bi].as[i].cur)] = i;
        for (int j = 0; j < static_cast<int>(blocks[bi].bs.size()); ++j)
            endIdx[1][B.state_id(blocks[bi].bs[j].cur)] = j;
    }

    // order bit for an opposite-curve end pair: 1 = the B end stacks first
    auto var = [&](int blockId, int ai, int bj) {
        const Block& b = blocks[blockId];
        return b.varBase + ai * static_cast<int>(b.bs.size()) + bj;
    };
    // probe positions: the pair rebuilt alone as a two-lane stack
    auto pos2 = [&](int blockId, int rank) {
        const Block& b = blocks[blockId];
        int magRank = b.an.ell == 1 ? rank : 1 - rank;
        Rational mag = b.gap * (magRank + 1) / 3;
        return frac_part(b.an.anchor + (b.an.ccw ? mag : -mag) + Rational(1));
    };
    auto probeA = [&](int blockId, int x) { return pos2(blockId, x ? 1 : 0); };
    auto probeB = [&](int blockId, int x) { return pos2(blockId, x ? 0 : 1); };

    // ---- probe every stacking-dependent crossing predicate -----------------
    struct UnaryTerm {
        int v, b;
        std::array<long long, 2> c;
    };
    struct PairTerm {
        int u = -1, v = -1;    // order bits, always in different blocks
        int bu = -1, bv = -1;  // their blocks
        std::array<std::array<long long, 2>, 2> e{};
    };
    std::vector<UnaryTerm> unaries;
    std::vector<PairTerm> pairs;

    // Annulus strands of the same disk: pairs with no shared stack cross a
    // fixed number of times; one or two shared stacks give a cost per bit.
    std::array<std::vector<LaneCursor>, 2> strands;
    for (int tag = 0; tag < 2; ++tag) {
        const CarriedLayout& lay = *lays[tag];
        for (int k = 0; k < static_cast<int>(lay.real.components.size()); ++k)
            for (int i = 0; i < lay.real.components[k].size(); ++i)
                strands[tag].push_back({k, i, 0});
    }
    for (const LaneCursor& ua : strands[0])
        for (const LaneCursor& vb : strands[1]) {
            const Event& eu = A.event_at(ua);
            const Event& ev = B.event_at(vb);
            if (eu.disk != ev.disk) continue;
            int sbU = A.state_id({ua.comp, ua.event, 0});
            int stU = A.state_id({ua.comp, ua.event, 1});
            int sbV = B.state_id({vb.comp, vb.event, 0});
            int stV = B.state_id({vb.comp, vb.event, 1});
            int botBlock = endBlock[0][sbU];
            int topBlock = endBlock[0][stU];
            bool coBot = botBlock == endBlock[1][sbV];
            bool coTop = topBlock == endBlock[1][stV];
            if (!coBot && !coTop) continue;
            auto count = [&](int xb, int xt) {
                TransitStrand su{
                    eu.disk, coBot ? probeA(botBlock, xb) : eu.p,
                    chart.pull_to_plus(eu.disk, coTop ? probeA(topBlock, xt)
                                                      : eu.q) +
                        Rational(eu.w)};
                TransitStrand tv{
                    ev.disk, coBot ? probeB(botBlock, xb) : ev.p,
                    chart.pull_to_plus(ev.disk, coTop ? probeB(topBlock, xt)
                                                      : ev.q) +
                        Rational(ev.w)};
                return to_int64(annulus_crossings(su, tv));
            };
            if (coBot && coTop) {
                PairTerm t;
                t.u = var(botBlock, endIdx[0][sbU], endIdx[1][sbV]);
                t.v = var(topBlock, endIdx[0][stU], endIdx[1][stV]);
                t.bu = botBlock;
                t.bv = topBlock;
                for (int xb : {0, 1})
                    for (int xt : {0, 1}) t.e[xb][xt] = count(xb, xt);
                pairs.push_back(t);
            } else if (coBot) {
                unaries.push_back(
                    {var(botBlock, endIdx[0][sbU], endIdx[1][sbV]), botBlock,
                     {count(0, 0), count(1, 0)}});
            } else {
                unaries.push_back(
                    {var(topBlock, endIdx[0][stU], endIdx[1][stV]), topBlock,
                     {count(0, 0), count(0, 1)}});
            }
        }

    // Cell chords along the same arc share both of its stacks; whether two
    // cross is the interleaving of their four endpoints on the cell walk.
    struct ChordRef {
        int face = -1;
        std::array<int, 2> state{};  // state ids of the chord's two ends
    };
    std::map<int, std::array<std::vector<ChordRef>, 2>> chordsByArc;
    for (int tag = 0; tag < 2; ++tag) {
        const CarriedLayout& lay = *lays[tag];
        for (int k = 0; k < static_cast<int>(lay.real.components.size());
             ++k) {
            const DrawnCurve& comp = lay.real.components[k];
            int n = comp.size();
            int nch = comp.closed ? n : n - 1;
            for (int i = 0; i < nch; ++i) {
                int i2 = (i + 1) % n;
                LaneCursor c1{k, i, comp.events[i].plusToMinus ? 1 : 0};
                LaneCursor c2{k, i2, comp.events[i2].plusToMinus ? 0 : 1};
                const LaneAnchor& a1 = lay.anchor_at(c1);
                const LaneAnchor& a2 = lay.anchor_at(c2);
                if (a1.arc != a2.arc)
                    throw std::logic_error(
                        "corridor chord does not follow one arc");
                const Event& e1 = lay.event_at(c1);
                const Event& e2 = lay.event_at(c2);
                CellPoint p1 = locate_on_circle(
                    topo, a1.circle, c1.side == 0 ? e1.p : e1.q);
                CellPoint p2 = locate_on_circle(
                    topo, a2.circle, c2.side == 0 ? e2.p : e2.q);
                if (p1.face != p2.face)
                    throw std::logic_error(
                        "corridor chord ends in different cells");
                chordsByArc[a1.arc][tag].push_back(
                    {p1.face, {lay.state_id(c1), lay.state_id(c2)}});
            }
        }
    }
    for (auto& [arc, pq] : chordsByArc)
        for (const ChordRef& P : pq[0])
            for (const ChordRef& Q : pq[1]) {
                if (P.face != Q.face) continue;
                int pb0 = endBlock[0][P.state[0]];
                int pb1 = endBlock[0][P.state[1]];
                std::array<int, 2> qs = {Q.state[0], Q.state[1]};
                if (endBlock[1][qs[0]] != pb0) std::swap(qs[0], qs[1]);
                if (endBlock[1][qs[0]] != pb0 || endBlock[1][qs[1]] != pb1)
                    throw std::logic_error(
                        "parallel corridors at mismatched slots");
                PairTerm t;
                t.u = var(pb0, endIdx[0][P.state[0]], endIdx[1][qs[0]]);
                t.v = var(pb1, endIdx[0][P.state[1]], endIdx[1][qs[1]]);
                t.bu = pb0;
                t.bv = pb1;
                auto wp = [&](int blockId, const Rational& pos) {
                    return locate_on_circle(topo, blocks[blockId].an.circle,
                                            pos)
                        .pos;
                };
                for (int x0 : {0, 1})
                    for (int x1 : {0, 1}) {
                        CellChord cp, cq;
                        cp.face = cq.face = P.face;
                        cp.a = wp(pb0, probeA(pb0, x0));
                        cp.b = wp(pb1, probeA(pb1, x1));
                        cq.a = wp(pb0, probeB(pb0, x0));
                        cq.b = wp(pb1, probeB(pb1, x1));
                        t.e[x0][x1] = chords_interleave(cp, cq) ? 1 : 0;
                    }
                pairs.push_back(t);
            }

    // each curve's own stack order is hard: bits are monotone staircases
    struct Forbid {
        int u, a, v, b;  // the combination x_u == a && x_v == b never occurs
    };
    std::vector<Forbid> forbids;
    std::vector<int> varBlock(nvars, -1);
    for (int bi = 0; bi < static_cast<int>(blocks.size()); ++bi) {
        const Block& b = blocks[bi];
        if (b.varBase < 0) continue;
        int na = static_cast<int>(b.as.size());
        int nb = static_cast<int>(b.bs.size());
        for (int i = 0; i < na; ++i)
            for (int j = 0; j < nb; ++j) {
                varBlock[var(bi, i, j)] = bi;
                if (i + 1 < na)
                    forbids.push_back(
                        {var(bi, i, j), 1, var(bi, i + 1, j), 0});
                if (j + 1 < nb)
                    forbids.push_back(
                        {var(bi, i, j), 0, var(bi, i, j + 1), 1});
            }
    }
    std::vector<std::vector<int>> forbidsAt(nvars);
    for (int f = 0; f < static_cast<int>(forbids.size()); ++f) {
        forbidsAt[forbids[f].u].push_back(f);
        forbidsAt[forbids[f].v].push_back(f);
    }
    // fixing a bit forces its staircase neighbours; false on a contradiction
    auto propagate = [&](std::vector<signed char>& fx, int start) -> bool {
        std::vector<int> work{start};
        while (!work.empty()) {
            int u = work.back();
            work.pop_back();
            for (int f : forbidsAt[u]) {
                const Forbid& fo = forbids[f];
                if (fx[fo.u] == fo.a) {
                    if (fx[fo.v] == fo.b) return false;
                    if (fx[fo.v] < 0) {
                        fx[fo.v] = static_cast<signed char>(1 - fo.b);
                        work.push_back(fo.v);
                    }
                }
                if (fx[fo.v] == fo.b) {
                    if (fx[fo.u] == fo.a) return false;
                    if (fx[fo.u] < 0) {
                        fx[fo.u] = static_cast<signed char>(1 - fo.a);
                        work.push_back(fo.u);
                    }
                }
            }
        }
        return true;
    };

    // ---- branch, orient, and min-cut -----------------------------------------
    long long bestCost = std::numeric_limits<long long>::max();
    std::vector<signed char> bestX;
    auto evaluate = [&](const std::vector<signed char>& x) -> long long {
        for (const Forbid& f : forbids)
            if (x[f.u] == f.a && x[f.v] == f.b)
                return std::numeric_limits<long long>::max();
        long long c = 0;
        for (const UnaryTerm& t : unaries) c += t.c[x[t.v]];
        for (const PairTerm& t : pairs) c += t.e[x[t.u]][x[t.v]];
        return c;
    };
    auto solve = [&](auto&& self, std::vector<signed char> fx) -> void {
        // orient the stacks so every still-free pair table is submodular
        struct PEdge {
            int to, parity, term;
        };
        std::vector<std::vector<PEdge>> padj(blocks.size());
        for (int ti = 0; ti < static_cast<int>(pairs.size()); ++ti) {
            const PairTerm& t = pairs[ti];
            if (fx[t.u] >= 0 || fx[t.v] >= 0) continue;
            long long lam = t.e[0][1] + t.e[1][0] - t.e[0][0] - t.e[1][1];
            if (lam == 0) continue;
            int parity = lam < 0 ? 1 : 0;
            padj[t.bu].push_back({t.bv, parity, ti});
            padj[t.bv].push_back({t.bu, parity, ti});
        }
        std::vector<int> gauge(blocks.size(), -1);
        int clash = -1;
        std::vector<int> stack;
        for (int s = 0; s < static_cast<int>(blocks.size()) && clash < 0;
             ++s) {
            if (gauge[s] >= 0) continue;
            gauge[s] = 0;
            stack.assign(1, s);
            while (!stack.empty() && clash < 0) {
                int u = stack.back();
                stack.pop_back();
                for (const PEdge& e : padj[u]) {
                    int want = gauge[u] ^ e.parity;
                    if (gauge[e.to] < 0) {
                        gauge[e.to] = want;
                        stack.push_back(e.to);
                    } else if (gauge[e.to] != want) {
                        clash = e.term;
                        break;
                    }
                }
            }
        }
        if (clash >= 0) {
            // a tied pair on an odd orientation cycle: branch on the bit of
            // it that touches the most still-tied pairs
            int bu = pairs[clash].u, bv = pairs[clash].v;
            int degU = 0, degV = 0;
            for (const PairTerm& t : pairs) {
                if (fx[t.u] >= 0 || fx[t.v] >= 0) continue;
                degU += (t.u == bu) + (t.v == bu);
                degV += (t.u == bv) + (t.v == bv);
            }
            int pick = degU >= degV ? bu : bv;
            for (int val : {0, 1}) {
                std::vector<signed char> sub = fx;
                sub[pick] = static_cast<signed char>(val);
                if (propagate(sub, pick)) self(self, std::move(sub));
            }
            return;
        }
        BinaryEnergy energy(nvars);
        for (const UnaryTerm& t : unaries) {
            if (fx[t.v] >= 0) continue;
            int g = gauge[t.b];
            energy.add_unary(t.v, t.c[g], t.c[1 - g]);
        }
        for (const PairTerm& t : pairs) {
            int fu = fx[t.u], fv = fx[t.v];
            if (fu >= 0 && fv >= 0) continue;
            if (fu >= 0) {
                int g = gauge[t.bv];
                energy.add_unary(t.v, t.e[fu][g], t.e[fu][1 - g]);
            } else if (fv >= 0) {
                int g = gauge[t.bu];
                energy.add_unary(t.u, t.e[g][fv], t.e[1 - g][fv]);
            } else {
                int gu = gauge[t.bu], gv = gauge[t.bv];
                long long e00 = t.e[gu][gv], e01 = t.e[gu][1 - gv];
                long long e10 = t.e[1 - gu][gv], e11 = t.e[1 - gu][1 - gv];
                energy.add_unary(t.u, e00, e10);
                energy.add_unary(t.v, e10, e11);
                energy.add_zero_one(t.u, t.v, e01 + e10 - e00 - e11);
            }
        }
        for (const Forbid& f : forbids) {
            if (fx[f.u] >= 0 || fx[f.v] >= 0) continue;  // closed under fixing
            energy.add_forbid(f.u, f.a ^ gauge[varBlock[f.u]], f.v,
                              f.b ^ gauge[varBlock[f.v]]);
        }
        std::vector<char> y = energy.minimize();
        std::vector<signed char> x(nvars);
        for (int v = 0; v < nvars; ++v)
            x[v] = fx[v] >= 0
                       ? fx[v]
                       : static_cast<signed char>(y[v] ^ gauge[varBlock[v]]);
        long long c = evaluate(x);
        if (c < bestCost) {
            bestCost = c;
            bestX = std::move(x);
        }
    };
    solve(solve, std::vector<signed char>(nvars, -1));
    if (nvars > 0 && bestX.empty())
        throw std::logic_error("lane merge found no feasible stacking");

    // ---- rebuild every stack in the optimal interleaving -------------------
    for (int bi = 0; bi < static_cast<int>(blocks.size()); ++bi) {
        const Block& b = blocks[bi];
        struct Ref {
            int tag;
            LaneCursor cur;
        };
        std::vector<Ref> merged;
        if (b.varBase < 0) {
            for (const BlockEnd& e : b.as) merged.push_back({0, e.cur});
            for (const BlockEnd& e : b.bs) merged.push_back({1, e.cur});
        } else {
            int na = static_cast<int>(b.as.size());
            int nb = static_cast<int>(b.bs.size());
            std::vector<int> ranks(nb);
            int prev = 0;
            for (int j = 0; j < nb; ++j) {
                int r = 0;
                for (int i = 0; i < na; ++i)
                    if (bestX[var(bi, i, j)] == 0) ++r;
                if (r < prev)
                    throw std::logic_error("lane merge is not monotone");
                ranks[j] = prev = r;
            }
            int j = 0;
            for (int i = 0; i <= na; ++i) {
                while (j < nb && ranks[j] == i)
                    merged.push_back({1, b.bs[j++].cur});
                if (i < na) merged.push_back({0, b.as[i].cur});
            }
        }
        int n = static_cast<int>(merged.size());
        for (int r = 0; r < n; ++r) {
            int magRank = b.an.ell == 1 ? r : n - 1 - r;
            Rational mag = b.gap * (magRank + 1) / (n + 1);
            Rational pos =
                frac_part(b.an.anchor + (b.an.ccw ? mag : -mag) + Rational(1));
            CarriedLayout& lay = merged[r].tag == 0 ? A : B;
            Event& e = lay.real.components[merged[r].cur.comp]
                           .events[merged[r].cur.event];
            (merged[r].cur.side == 0 ? e.p : e.q) = pos;
        }
    }
}

}  // namespace detail

// Both multicurves realized in a common crossing-minimal position: each
// curve's own realization with the lane stacks at shared slots interleaved
// geodesically.
struct RealizedPair {
    std::vector<DrawnCurve> first, second;
};

inline RealizedPair realize_pair(const ChartTopology& topo,
                                 const Multicurve& a, const Multicurve& b) {
    validate_multicurve(topo, a);
    validate_multicurve(topo, b);
    RealizedPair out;
    bool ca = detail::has_carried_part(a), cb = detail::has_carried_part(b);
    if (ca && cb) {
        auto A = detail::carried_layout(
            topo, realize_carried(topo, a.weights, a.twists, 0, 2));
        auto B = detail::carried_layout(
            topo, realize_carried(topo, b.weights, b.twists, 1, 2));
        detail::merge_lane_positions(topo, A, B);
        out.first = std::move(A.real.components);
        out.second = std::move(B.real.components);
    } else {
        if (ca)
            out.first =
                realize_carried(topo, a.weights, a.twists, 0, 2).components;
        if (cb)
            out.second =
                realize_carried(topo, b.weights, b.twists, 1, 2).components;
    }
    detail::append_circle_copies(topo, a, 0, 2, out.first);
    detail::append_circle_copies(topo, b, 1, 2, out.second);
    for (const DrawnCurve& c : a.extras) out.first.push_back(c);
    for (const DrawnCurve& c : b.extras) out.second.push_back(c);
    return out;
}

// Geometric intersection number of two multicurves in normal position:
// realize the pair in a common minimal position and count transversal
// crossings (cell chords cross when their endpoints interleave; annulus
// strands cross once per separating integer translate).
inline BigInt intersection_number(const ChartTopology& topo,
                                  const Multicurve& a, const Multicurve& b) {
    RealizedPair rp = realize_pair(topo, a, b);
    BigInt total = 0;
    for (const DrawnCurve& x : rp.first)
        for (const DrawnCurve& y : rp.second)
            total += count_crossings(topo, x, y);
    return total;
}

}  // namespace hb
