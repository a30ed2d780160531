#pragma once

#include <handlebody/bigint.hpp>
#include <handlebody/chart.hpp>
#include <handlebody/word.hpp>

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

namespace hb {

// Drawn curves on a chart. A curve is a cyclic (or open) sequence of events;
// between consecutive events it runs as a chord through a single cell.
//   Cross   - transversal crossing of a chart arc at parameter t in (0,1),
//             measured from ends[0]; toLeft tells which side of the arc the
//             curve is on after the crossing (left of the ends[0]->ends[1]
//             direction).
//   Transit - full passage through the gluing annulus of a disk, entering at
//             position p on the + circle and leaving at q on the - circle
//             (in their own coordinates), winding w extra turns. plusToMinus
//             gives the traversal direction.
//   End     - endpoint of an open curve (a rope), lying on a support
//             component: either on the glued circle of a disk, or attached
//             to a drawn component at a boundary-anchored point.
struct AttachAnchor {
    int targetObject = -1;  // index into the caller's object table
    int targetPiece = -1;   // chord index along the target curve
    int anchorEdge = -1;    // boundary anchor: edge id ...
    Rational anchorParam;   // ... and parameter on it
    bool anchorSide = true; // arc-side flag for the anchor point
    bool leftOfTarget = true;
};

struct Event {
    enum class Kind { Cross, Transit, End };
    Kind kind = Kind::Cross;

    // Cross
    int arc = -1;
    Rational t;
    bool toLeft = true;

    // Transit
    int disk = -1;
    Rational p, q;
    BigInt w = 0;
    bool plusToMinus = true;

    // End
    Rational endPos;           // position on the circle actually touched
    bool endFromPlus = true;   // which circle of `disk` the rope ends on
    bool endOnCircle = true;   // false: attached to a drawn component
    AttachAnchor attach;

    static Event cross(int arc, Rational t, bool toLeft) {
        Event e;
        e.kind = Kind::Cross;
        e.arc = arc;
        e.t = std::move(t);
        e.toLeft = toLeft;
        return e;
    }
    static Event transit(int disk, Rational p, Rational q, BigInt w,
                         bool plusToMinus) {
        Event e;
        e.kind = Kind::Transit;
        e.disk = disk;
        e.p = std::move(p);
        e.q = std::move(q);
        e.w = std::move(w);
        e.plusToMinus = plusToMinus;
        return e;
    }
    static Event end_on_circle(int disk, Rational pos, bool fromPlus) {
        Event e;
        e.kind = Kind::End;
        e.disk = disk;
        e.endPos = std::move(pos);
        e.endFromPlus = fromPlus;
        e.endOnCircle = true;
        return e;
    }
    static Event end_attached(AttachAnchor a) {
        Event e;
        e.kind = Kind::End;
        e.endOnCircle = false;
        e.attach = std::move(a);
        return e;
    }
};

struct DrawnCurve {
    bool closed = true;
    std::vector<Event> events;

    bool empty() const { return events.empty(); }
    int size() const { return static_cast<int>(events.size()); }
};

// A point on the boundary walk of a cell: the walk step index plus the exact
// offset along that step, measured in the walk direction. Lexicographic order
// equals cyclic boundary order within one face.
struct WalkPos {
    int step = -1;
    Rational within;

    friend bool operator<(const WalkPos& a, const WalkPos& b) {
        if (a.step != b.step) return a.step < b.step;
        return a.within < b.within;
    }
    friend bool operator==(const WalkPos& a, const WalkPos& b) {
        return a.step == b.step && a.within == b.within;
    }
};

// A chord endpoint resolved into a cell.
struct CellPoint {
    int face = -1;
    WalkPos pos;
};

struct CellChord {
    int face = -1;
    WalkPos a, b;
    // provenance: index of the chord along its curve (piece index)
    int piece = -1;
    // attachment-aware chords carry the anchor of the attached endpoint in b
    bool bAttached = false;
    AttachAnchor battach;
};

// One transit strand, normalized for the annulus crossing count: bottom
// coordinate on the + circle and top coordinate in the annulus cover.
struct TransitStrand {
    int disk = -1;
    Rational bottom;  // position on + circle
    Rational top;     // pulled-back - position plus winding (cover coordinate)
    int piece = -1;   // event index along its curve
};

namespace detail {

// Resolve a point on an edge into (face, walk position). For arcs, sideLeft
// selects the occurrence; for segments the unique surface cell is used.
inline CellPoint locate_on_arc(const ChartTopology& topo, int arc,
                               const Rational& t, bool sideLeft) {
    // faces on the left are traversed forward
    int face = topo.face_of(arc, sideLeft);
    const auto& walk = topo.faces()[face];
    for (int s = 0; s < static_cast<int>(walk.size()); ++s) {
        if (walk[s].edge != arc) continue;
        if (walk[s].forward != sideLeft) continue;
        Rational within = walk[s].forward ? t : Rational(1) - t;
        return {face, {s, within}};
    }
    throw std::logic_error("arc occurrence not found in face walk");
}

inline CellPoint locate_on_circle(const ChartTopology& topo, int circle,
                                  const Rational& pos) {
    int seg = topo.segment_containing(circle, pos);
    const auto& sdata = topo.segment_of_edge(seg);
    int face = topo.cell_of_segment(seg);
    const auto& walk = topo.faces()[face];
    Rational offset = frac_part(pos - sdata.from);
    for (int s = 0; s < static_cast<int>(walk.size()); ++s) {
        if (walk[s].edge != seg) continue;
        // surface cells traverse segments backward
        Rational within =
            walk[s].forward ? offset : sdata.length - offset;
        return {face, {s, within}};
    }
    throw std::logic_error("segment occurrence not found in face walk");
}

}  // namespace detail

// The two cell points around an event: where the incoming chord ends and the
// outgoing chord starts.
inline CellPoint point_before(const ChartTopology& topo, const Event& e) {
    switch (e.kind) {
        case Event::Kind::Cross:
            return detail::locate_on_arc(topo, e.arc, e.t, !e.toLeft);
        case Event::Kind::Transit:
            if (e.plusToMinus)
                return detail::locate_on_circle(
                    topo, Chart::circle_id(e.disk, true), e.p);
            return detail::locate_on_circle(
                topo, Chart::circle_id(e.disk, false), e.q);
        case Event::Kind::End:
            if (e.endOnCircle)
                return detail::locate_on_circle(
                    topo, Chart::circle_id(e.disk, e.endFromPlus), e.endPos);
            if (e.attach.anchorEdge < topo.chart().num_arcs())
                return detail::locate_on_arc(topo, e.attach.anchorEdge,
                                             e.attach.anchorParam,
                                             e.attach.anchorSide);
            return detail::locate_on_circle(
                topo, topo.segment_of_edge(e.attach.anchorEdge).circle,
                e.attach.anchorParam);
    }
    throw std::logic_error("unreachable");
}

inline CellPoint point_after(const ChartTopology& topo, const Event& e) {
    switch (e.kind) {
        case Event::Kind::Cross:
            return detail::locate_on_arc(topo, e.arc, e.t, e.toLeft);
        case Event::Kind::Transit:
            if (e.plusToMinus)
                return detail::locate_on_circle(
                    topo, Chart::circle_id(e.disk, false), e.q);
            return detail::locate_on_circle(
                topo, Chart::circle_id(e.disk, true), e.p);
        case Event::Kind::End:
            return point_before(topo, e);  // endpoints have a single location
    }
    throw std::logic_error("unreachable");
}

// All chords of a curve. For closed curves there is one chord per event
// (cyclically); an open curve with n events has n-1 chords. Throws if two
// consecutive events do not share a cell — that means the itinerary is
// geometrically inconsistent.
inline std::vector<CellChord> cell_chords(const ChartTopology& topo,
                                          const DrawnCurve& c) {
    std::vector<CellChord> out;
    int n = c.size();
    if (n == 0) return out;
    int chords = c.closed ? n : n - 1;
    for (int i = 0; i < chords; ++i) {
        const Event& e1 = c.events[i];
        const Event& e2 = c.events[(i + 1) % n];
        CellPoint a = point_after(topo, e1);
        CellPoint b = point_before(topo, e2);
        if (a.face != b.face)
            throw std::invalid_argument(
                "consecutive events do not share a cell");
        CellChord ch;
        ch.face = a.face;
        ch.a = a.pos;
        ch.b = b.pos;
        ch.piece = i;
        if (e2.kind == Event::Kind::End && !e2.endOnCircle) {
            ch.bAttached = true;
            ch.battach = e2.attach;
        }
        out.push_back(std::move(ch));
    }
    return out;
}

inline std::vector<TransitStrand> transit_strands(const Chart& chart,
                                                  const DrawnCurve& c) {
    std::vector<TransitStrand> out;
    for (int i = 0; i < c.size(); ++i) {
        const Event& e = c.events[i];
        if (e.kind != Event::Kind::Transit) continue;
        TransitStrand s;
        s.disk = e.disk;
        s.bottom = e.p;
        s.top = chart.pull_to_plus(e.disk, e.q) + Rational(e.w);
        s.piece = i;
        out.push_back(std::move(s));
    }
    return out;
}

// ---------------------------------------------------------------------------
// crossing counts

namespace detail {

// strict cyclic interleaving of chord endpoints within one face walk
inline bool chords_interleave(const CellChord& x, const CellChord& y) {
    const WalkPos& a1 = std::min(x.a, x.b);
    const WalkPos& a2 = std::max(x.a, x.b);
    auto inside = [&](const WalkPos& p) { return a1 < p && p < a2; };
    return inside(y.a) != inside(y.b);
}

// Two straight strands in the annulus cover cross once for every integer
// translate that separates their endpoints; integer endpoints of the open
// interval are tangencies, which valid diagrams avoid.
inline BigInt annulus_crossings(const TransitStrand& s,
                                const TransitStrand& t) {
    Rational A = s.bottom - t.bottom;
    Rational B = s.top - t.top;
    return integers_strictly_between(std::min(A, B), std::max(A, B));
}

// A rope end pinned to a circle drops a radial stub from its side of the
// collar to the core; a strand crosses it once for every cover column of the
// stub inside the strand's sweep on that side.
inline BigInt stub_strand_crossings(const Chart& ch, const Event& end,
                                    const TransitStrand& s) {
    if (end.kind != Event::Kind::End || !end.endOnCircle ||
        end.disk != s.disk)
        return 0;
    Rational col = end.endFromPlus
                       ? end.endPos
                       : ch.pull_to_plus(end.disk, end.endPos);
    Rational mid = (s.bottom + s.top) / 2;
    Rational lo =
        end.endFromPlus ? std::min(s.bottom, mid) : std::min(mid, s.top);
    Rational hi =
        end.endFromPlus ? std::max(s.bottom, mid) : std::max(mid, s.top);
    return integers_strictly_between(lo - col, hi - col);
}

inline std::vector<const Event*> circle_ends(const DrawnCurve& c) {
    std::vector<const Event*> out;
    for (const Event& e : c.events)
        if (e.kind == Event::Kind::End && e.endOnCircle) out.push_back(&e);
    return out;
}

}  // namespace detail

// Crossings between two distinct curves (no attachment-ended chords).
inline BigInt count_crossings(const ChartTopology& topo, const DrawnCurve& c1,
                              const DrawnCurve& c2) {
    BigInt total = 0;
    auto ch1 = cell_chords(topo, c1);
    auto ch2 = cell_chords(topo, c2);
    for (const auto& x : ch1)
        for (const auto& y : ch2)
            if (x.face == y.face && detail::chords_interleave(x, y)) ++total;
    auto tr1 = transit_strands(topo.chart(), c1);
    auto tr2 = transit_strands(topo.chart(), c2);
    for (const auto& s : tr1)
        for (const auto& t : tr2)
            if (s.disk == t.disk) total += detail::annulus_crossings(s, t);
    for (const Event* e : detail::circle_ends(c1))
        for (const auto& t : tr2)
            total += detail::stub_strand_crossings(topo.chart(), *e, t);
    for (const Event* e : detail::circle_ends(c2))
        for (const auto& s : tr1)
            total += detail::stub_strand_crossings(topo.chart(), *e, s);
    return total;
}

// Self-crossings of one curve; 0 for an embedded diagram.
inline BigInt count_self_crossings(const ChartTopology& topo,
                                   const DrawnCurve& c) {
    BigInt total = 0;
    auto ch = cell_chords(topo, c);
    for (std::size_t i = 0; i < ch.size(); ++i)
        for (std::size_t j = i + 1; j < ch.size(); ++j)
            if (ch[i].face == ch[j].face &&
                detail::chords_interleave(ch[i], ch[j]))
                ++total;
    auto tr = transit_strands(topo.chart(), c);
    for (std::size_t i = 0; i < tr.size(); ++i)
        for (std::size_t j = i + 1; j < tr.size(); ++j)
            if (tr[i].disk == tr[j].disk)
                total += detail::annulus_crossings(tr[i], tr[j]);
    for (const Event* e : detail::circle_ends(c))
        for (const auto& s : tr)
            total += detail::stub_strand_crossings(topo.chart(), *e, s);
    return total;
}

namespace detail {

// Sign of a transversal chord crossing in a cell with counterclockwise
// boundary walk: +1 when the second chord's start lies in the walk interval
// cut off from the first chord's start to its end.
inline bool in_open_cyclic(const WalkPos& from, const WalkPos& to,
                           const WalkPos& p) {
    if (from < to) return from < p && p < to;
    return from < p || p < to;
}

inline int chord_cross_sign(const CellChord& x, const CellChord& y) {
    return in_open_cyclic(x.a, x.b, y.a) ? 1 : -1;
}

}  // namespace detail

// Algebraic crossing number of two closed drawn curves; each transversal
// crossing counts with the sign of the local frame (tangent of c1, tangent
// of c2).
inline BigInt signed_crossings(const ChartTopology& topo,
                               const DrawnCurve& c1, const DrawnCurve& c2) {
    BigInt total = 0;
    auto ch1 = cell_chords(topo, c1);
    auto ch2 = cell_chords(topo, c2);
    for (const auto& x : ch1)
        for (const auto& y : ch2)
            if (x.face == y.face && detail::chords_interleave(x, y))
                total += detail::chord_cross_sign(x, y);
    auto tr1 = transit_strands(topo.chart(), c1);
    auto tr2 = transit_strands(topo.chart(), c2);
    for (const auto& s : tr1)
        for (const auto& t : tr2) {
            if (s.disk != t.disk) continue;
            int dir1 = c1.events[s.piece].plusToMinus ? 1 : -1;
            int dir2 = c2.events[t.piece].plusToMinus ? 1 : -1;
            Rational d = (s.top - s.bottom) - (t.top - t.bottom);
            int slope = d > Rational(0) ? 1 : (d < Rational(0) ? -1 : 0);
            total +=
                BigInt(dir1 * dir2 * slope) * detail::annulus_crossings(s, t);
        }
    return total;
}

// Number of transits through a given disk's annulus (= crossings with the
// glued circle of that disk).
inline BigInt transit_count(const DrawnCurve& c, int disk) {
    BigInt n = 0;
    for (const Event& e : c.events)
        if (e.kind == Event::Kind::Transit && e.disk == disk) ++n;
    return n;
}

// Free-group image of a closed curve: one letter per transit, positively
// oriented when passing + to -.
inline CyclicWord handle_word(const DrawnCurve& c) {
    std::vector<Letter> letters;
    for (const Event& e : c.events)
        if (e.kind == Event::Kind::Transit)
            letters.push_back(e.plusToMinus ? Letter(e.disk + 1)
                                            : Letter(-(e.disk + 1)));
    return CyclicWord(reduce(letters));
}

// ---------------------------------------------------------------------------
// carried realization

// Weights per chart arc plus twists per disk, realized as parallel lanes.
// `level`/`levels` choose a nesting band so independently realized curves
// stack consistently (level 0 nearest the slots) and never cross in cells.
struct CarriedRealization {
    std::vector<DrawnCurve> components;
    // per component, the arcs its strands run along, in itinerary order:
    // strandArcs[k][i] = arc of the chord following event i
    std::vector<std::vector<int>> strandArcs;
};

namespace detail {

struct LaneEnd {
    int arc;
    int lane;
    int whichEnd;   // 0 or 1
    int circle;
    Rational pos;   // actual position of this lane end on the circle
};

// offset direction: lanes sit counterclockwise of an ends[0] slot and
// clockwise of an ends[1] slot, so all lanes of an arc run through one cell.
inline Rational lane_gap(const ChartTopology& topo, int circle,
                         const Rational& slotPos, bool ccw) {
    const auto& slots = topo.slots()[circle];
    int n = static_cast<int>(slots.size());
    int idx = -1;
    for (int i = 0; i < n; ++i)
        if (slots[i].pos == slotPos) idx = i;
    if (idx < 0) throw std::logic_error("slot not found");
    if (n == 1) return Rational(1);
    Rational d;
    if (ccw)
        d = frac_part(slots[(idx + 1) % n].pos - slotPos);
    else
        d = frac_part(slotPos - slots[(idx + n - 1) % n].pos);
    return d;
}

// Minimal gap between anchor positions of each disk: slot positions, pulled
// far-side slot positions, and the coordinate origin. Lane offsets below half
// this keep the cyclic order of lane endpoints chart-determined.
inline std::vector<Rational> anchor_gaps(const ChartTopology& topo) {
    const Chart& chart = topo.chart();
    std::vector<Rational> gaps(chart.genus(), Rational(1));
    for (int d = 0; d < chart.genus(); ++d) {
        std::vector<Rational> pts{Rational(0)};
        for (const auto& slot : topo.slots()[Chart::circle_id(d, true)])
            pts.push_back(slot.pos);
        for (const auto& slot : topo.slots()[Chart::circle_id(d, false)])
            pts.push_back(chart.pull_to_plus(d, slot.pos));
        std::sort(pts.begin(), pts.end());
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        int m = static_cast<int>(pts.size());
        if (m >= 2) {
            Rational g = pts[0] + Rational(1) - pts[m - 1];
            for (int i = 1; i < m; ++i) g = std::min(g, pts[i] - pts[i - 1]);
            gaps[d] = g;
        }
    }
    return gaps;
}

}  // namespace detail

inline CarriedRealization realize_carried(const ChartTopology& topo,
                                          const std::vector<BigInt>& weights,
                                          const std::vector<BigInt>& twists,
                                          int level = 0, int levels = 1) {
    const Chart& chart = topo.chart();
    if (static_cast<int>(weights.size()) != chart.num_arcs())
        throw std::invalid_argument("one weight per chart arc");
    if (static_cast<int>(twists.size()) != chart.genus())
        throw std::invalid_argument("one twist per disk");
    for (const BigInt& w : weights)
        if (w < 0) throw std::invalid_argument("negative weight");

    // matching condition
    for (int d = 0; d < chart.genus(); ++d) {
        BigInt plus = 0, minus = 0;
        for (int a = 0; a < chart.num_arcs(); ++a)
            for (int e = 0; e < 2; ++e) {
                int c = chart.arc(a).ends[e].circle;
                if (c == Chart::circle_id(d, true)) plus += weights[a];
                if (c == Chart::circle_id(d, false)) minus += weights[a];
            }
        if (plus != minus)
            throw std::invalid_argument("matching condition violated at disk " +
                                        std::to_string(d));
    }

    // Lane offsets must stay below half the minimal anchor gap of each disk.
    // Then the cyclic order of lane endpoints around each gluing circle is
    // determined by the chart alone, and the zero-twist matching does not
    // depend on offset arithmetic.
    std::vector<Rational> anchorGap = detail::anchor_gaps(topo);

    // lane end positions
    std::vector<detail::LaneEnd> ends;
    for (int a = 0; a < chart.num_arcs(); ++a) {
        long long wa = to_int64(weights[a]);
        if (wa == 0) continue;
        for (int e = 0; e < 2; ++e) {
            const ArcEndpoint& ep = chart.arc(a).ends[e];
            bool ccw = (e == 0);
            Rational gap =
                std::min(
                    detail::lane_gap(topo, ep.circle, ep.pos, ccw),
                    anchorGap[Chart::disk_of_circle(ep.circle)]) /
                2;
            // Orient the nesting bands along the annulus coordinate: on a +
            // circle the ccw direction is increasing, on a - circle the
            // regluing reverses it. Then a higher level sits at a larger
            // annulus coordinate at every lane end, and realizations of equal
            // coordinates at different levels are honestly parallel.
            bool annulusUp = (Chart::is_plus_circle(ep.circle) == ccw);
            int band = annulusUp ? level : levels - 1 - level;
            Rational bandLo = gap * (band + 1) / (levels + 2);
            Rational bandHi = gap * (band + 2) / (levels + 2);
            for (long long l = 0; l < wa; ++l) {
                Rational off =
                    bandLo + (bandHi - bandLo) * (l + 1) / (wa + 2);
                Rational pos =
                    ccw ? frac_part(ep.pos + off) : frac_part(ep.pos - off);
                ends.push_back({a, static_cast<int>(l), e, ep.circle, pos});
            }
        }
    }

    // transit matching per disk
    struct Link {
        int plusEnd = -1;   // index into `ends`
        int minusEnd = -1;
        BigInt winding = 0;
    };
    std::vector<std::vector<Link>> links(chart.genus());
    // lane-end index -> (disk, link index) when it touches a disk side
    std::map<int, std::pair<int, int>> endLink;
    for (int d = 0; d < chart.genus(); ++d) {
        std::vector<int> plusEnds, minusEnds;
        for (int i = 0; i < static_cast<int>(ends.size()); ++i) {
            if (ends[i].circle == Chart::circle_id(d, true))
                plusEnds.push_back(i);
            else if (ends[i].circle == Chart::circle_id(d, false))
                minusEnds.push_back(i);
        }
        std::sort(plusEnds.begin(), plusEnds.end(), [&](int i, int j) {
            return ends[i].pos < ends[j].pos;
        });
        // sort minus ends by pulled-back coordinate
        std::sort(minusEnds.begin(), minusEnds.end(), [&](int i, int j) {
            return chart.pull_to_plus(d, ends[i].pos) <
                   chart.pull_to_plus(d, ends[j].pos);
        });
        long long n = static_cast<long long>(plusEnds.size());
        if (n == 0) continue;
        long long s = to_int64(twists[d]);
        for (long long i = 0; i < n; ++i) {
            long long m = i + s;
            long long j = ((m % n) + n) % n;
            BigInt winding = floor_div(BigInt(m), BigInt(n));
            Link link;
            link.plusEnd = plusEnds[i];
            link.minusEnd = minusEnds[j];
            link.winding = winding;
            endLink[link.plusEnd] = {d, static_cast<int>(links[d].size())};
            endLink[link.minusEnd] = {d, static_cast<int>(links[d].size())};
            links[d].push_back(link);
        }
    }

    // lane partner: the other end of the same lane
    std::map<std::pair<std::pair<int, int>, int>, int> endId;
    for (int i = 0; i < static_cast<int>(ends.size()); ++i)
        endId[{{ends[i].arc, ends[i].lane}, ends[i].whichEnd}] = i;

    // trace components: walk lane -> transit -> lane ...
    CarriedRealization out;
    std::vector<char> visited(ends.size(), 0);
    for (int start = 0; start < static_cast<int>(ends.size()); ++start) {
        if (visited[start]) continue;
        DrawnCurve comp;
        comp.closed = true;
        std::vector<int> arcsAlong;
        int cur = start;  // current lane end: about to run along the lane
        do {
            visited[cur] = 1;
            const auto& le = ends[cur];
            arcsAlong.push_back(le.arc);
            int other = endId[{{le.arc, le.lane}, 1 - le.whichEnd}];
            visited[other] = 1;
            // transit away from `other`
            auto [d, li] = endLink.at(other);
            const Link& link = links[d][li];
            bool fromPlus = (link.plusEnd == other);
            const auto& pe = ends[link.plusEnd];
            const auto& me = ends[link.minusEnd];
            comp.events.push_back(Event::transit(d, pe.pos, me.pos,
                                                 link.winding, fromPlus));
            cur = fromPlus ? link.minusEnd : link.plusEnd;
        } while (cur != start);
        out.components.push_back(std::move(comp));
        out.strandArcs.push_back(std::move(arcsAlong));
    }
    return out;
}

// ---------------------------------------------------------------------------
// normalization: cancel immediate re-entries

namespace detail {

// Is the open position interval (between a and b, the direct way) on the
// given circle free of arc slots and of the curve's own points?
inline bool circle_interval_clear(const ChartTopology& topo,
                                  const DrawnCurve& c, int circle,
                                  const Rational& a, const Rational& b,
                                  int skip1, int skip2) {
    Rational lo = std::min(a, b), hi = std::max(a, b);
    auto inside = [&](const Rational& x) { return lo < x && x < hi; };
    for (const auto& slot : topo.slots()[circle])
        if (inside(slot.pos)) return false;
    int disk = Chart::disk_of_circle(circle);
    bool plus = Chart::is_plus_circle(circle);
    for (int k = 0; k < c.size(); ++k) {
        if (k == skip1 || k == skip2) continue;
        const Event& e = c.events[k];
        if (e.kind == Event::Kind::Transit && e.disk == disk) {
            if (inside(plus ? e.p : e.q)) return false;
        } else if (e.kind == Event::Kind::End && e.endOnCircle &&
                   e.disk == disk && e.endFromPlus == plus) {
            if (inside(e.endPos)) return false;
        }
    }
    return true;
}

}  // namespace detail

// Remove immediate backtracks, iterating to a fixed point.
//
// Annulus case: two consecutive transits of one disk in opposite directions
// cancel when the strands align in the annulus cover (they cobound a square
// with the two boundary intervals) and both intervals are free of slots and
// of the curve itself. The curve is then isotopic to one staying on the near
// side, joined by a direct chord.
//
// Arc case: two consecutive crossings of one chart arc from opposite sides
// cancel when no other crossing of the curve lies between them on the arc;
// arc interiors carry no vertices, so the cut-off lens is always empty of
// chart structure.
inline DrawnCurve normalize_curve(const ChartTopology& topo, DrawnCurve c) {
    const Chart& chart = topo.chart();
    bool changed = true;
    while (changed && c.size() >= 2) {
        changed = false;
        int n = c.size();
        int last = c.closed ? n : n - 1;
        for (int i = 0; i < last && !changed; ++i) {
            int j = (i + 1) % n;
            const Event& e1 = c.events[i];
            const Event& e2 = c.events[j];
            bool cancellable = false;
            if (e1.kind == Event::Kind::Transit &&
                e2.kind == Event::Kind::Transit && e1.disk == e2.disk &&
                e1.plusToMinus != e2.plusToMinus) {
                int d = e1.disk;
                Rational u1 = chart.pull_to_plus(d, e1.q) + Rational(e1.w);
                Rational u2 = chart.pull_to_plus(d, e2.q) + Rational(e2.w);
                bool aligned = (u2 - u1 == -(e2.q - e1.q));
                Rational A = e1.p - e2.p, B = u1 - u2;
                bool disjoint =
                    integers_strictly_between(std::min(A, B),
                                              std::max(A, B)) == 0;
                bool farClear = detail::circle_interval_clear(
                    topo, c, Chart::circle_id(d, false), e1.q, e2.q, i, j);
                bool nearClear = detail::circle_interval_clear(
                    topo, c, Chart::circle_id(d, true), e1.p, e2.p, i, j);
                cancellable = aligned && disjoint && farClear && nearClear;
            }
            if (e1.kind == Event::Kind::Cross &&
                e2.kind == Event::Kind::Cross && e1.arc == e2.arc &&
                e1.toLeft != e2.toLeft) {
                Rational lo = std::min(e1.t, e2.t), hi = std::max(e1.t, e2.t);
                bool clear = true;
                for (int k = 0; k < n && clear; ++k) {
                    if (k == i || k == j) continue;
                    const Event& e = c.events[k];
                    if (e.kind == Event::Kind::Cross && e.arc == e1.arc &&
                        lo < e.t && e.t < hi)
                        clear = false;
                    if (e.kind == Event::Kind::End && !e.endOnCircle &&
                        e.attach.anchorEdge == e1.arc &&
                        lo < e.attach.anchorParam &&
                        e.attach.anchorParam < hi)
                        clear = false;
                }
                cancellable = clear;
            }
            if (cancellable) {
                std::vector<Event> kept;
                for (int k = 0; k < n; ++k)
                    if (k != i && k != j) kept.push_back(c.events[k]);
                c.events = std::move(kept);
                changed = true;
            }
        }
    }
    return c;
}

// ---------------------------------------------------------------------------
// helpers for constructing fresh positions

// Midpoint of the first free gap in (lo, hi) avoiding `taken` (sorted or not).
inline Rational fresh_between(const Rational& lo, const Rational& hi,
                              std::vector<Rational> taken) {
    if (!(lo < hi)) throw std::invalid_argument("empty interval");
    taken.erase(std::remove_if(taken.begin(), taken.end(),
                               [&](const Rational& r) {
                                   return r <= lo || r >= hi;
                               }),
                taken.end());
    std::sort(taken.begin(), taken.end());
    Rational prev = lo;
    for (const Rational& r : taken) {
        if (prev < r) return prev + (r - prev) / 2;
        prev = r;
    }
    return prev + (hi - prev) / 2;
}

// A curve parallel to the glued circle of `disk`, pushed off to the chosen
// side: it crosses exactly the arcs slotted on that circle, in cyclic order,
// each at the given parameter distance from the slotted end.
inline DrawnCurve circle_pushoff(const ChartTopology& topo, int disk,
                                 bool plusSide, const Rational& depth) {
    const Chart& chart = topo.chart();
    int circle = Chart::circle_id(disk, plusSide);
    DrawnCurve c;
    c.closed = true;
    for (const auto& slot : topo.slots()[circle]) {
        const ChartArc& a = chart.arc(slot.arc);
        bool atEnd0 = (slot.end == 0);
        Rational t = atEnd0 ? depth : Rational(1) - depth;
        // direction of crossing: the pushoff travels counterclockwise around
        // the circle; it crosses the arc from the cw side to the ccw side.
        // With lanes-at-ends[0]-ccw convention, the left side of the arc at
        // ends[0] is the ccw side; at ends[1] it is the cw side.
        bool toLeft = atEnd0;
        c.events.push_back(Event::cross(slot.arc, t, toLeft));
    }
    if (c.events.empty())
        throw std::invalid_argument("circle has no slotted arcs");
    return c;
}

}  // namespace hb
