#pragma once

#include <handlebody/bigint.hpp>

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace hb {

// A chart of the cut surface: genus-g handlebody boundary cut along a reduced
// disk system into a sphere with 2g holes. Holes ("circles") are indexed so
// that disk d has its + copy at circle 2d and its - copy at circle 2d+1.
// Chart arcs are disjoint embedded arcs between hole boundaries; along with
// the endpoint positions (exact rationals in [0,1), counterclockwise), the
// arc set determines a rotation system and hence the embedding. Each disk
// carries a regluing offset: position t on the + circle glues to (offset - t)
// mod 1 on the - circle (orientation-reversing, as regluing requires).
struct ArcEndpoint {
    int circle = 0;
    Rational pos;  // in [0, 1)
};

struct ChartArc {
    ArcEndpoint ends[2];
};

class Chart {
public:
    Chart(int genus, int markedPoints, std::vector<ChartArc> arcs,
          std::vector<Rational> gluingOffsets)
        : genus_(genus),
          marked_(markedPoints),
          arcs_(std::move(arcs)),
          gluing_(std::move(gluingOffsets)) {
        if (genus_ < 2) throw std::invalid_argument("genus must be >= 2");
        if (static_cast<int>(gluing_.size()) != genus_)
            throw std::invalid_argument("one gluing offset per disk");
        for (const ChartArc& a : arcs_)
            for (const ArcEndpoint& e : a.ends) {
                if (e.circle < 0 || e.circle >= 2 * genus_)
                    throw std::invalid_argument("arc endpoint circle out of range");
                if (e.pos < Rational(0) || e.pos >= Rational(1))
                    throw std::invalid_argument("arc endpoint position not in [0,1)");
            }
    }

    int genus() const { return genus_; }
    int marked_points() const { return marked_; }
    int num_circles() const { return 2 * genus_; }
    int num_arcs() const { return static_cast<int>(arcs_.size()); }
    const std::vector<ChartArc>& arcs() const { return arcs_; }
    const ChartArc& arc(int i) const { return arcs_.at(i); }
    const Rational& gluing_offset(int disk) const { return gluing_.at(disk); }

    static int circle_id(int disk, bool plusSide) {
        return 2 * disk + (plusSide ? 0 : 1);
    }
    static int disk_of_circle(int circle) { return circle / 2; }
    static bool is_plus_circle(int circle) { return circle % 2 == 0; }

    // Position on the + circle of disk d glued to position q on the - circle.
    Rational pull_to_plus(int disk, const Rational& minusPos) const {
        return frac_part(Rational(gluing_.at(disk)) - minusPos);
    }
    // Inverse: position on the - circle glued to position p on the + circle.
    Rational push_to_minus(int disk, const Rational& plusPos) const {
        return frac_part(Rational(gluing_.at(disk)) - plusPos);
    }

private:
    int genus_;
    int marked_;
    std::vector<ChartArc> arcs_;
    std::vector<Rational> gluing_;
};

// Derived combinatorics of a chart: slots per circle, boundary segments,
// complementary faces with their boundary walks, and lookup tables used by
// the curve engine.
class ChartTopology {
public:
    struct Slot {
        Rational pos;
        int arc;
        int end;  // 0 or 1
    };

    // Edge ids: 0..A-1 are arcs; A..A+S-1 are circle segments. Segment k of
    // circle c runs from slot k to slot k+1 (cyclic, counterclockwise).
    struct Segment {
        int circle;
        int slotIndex;   // starting slot within the circle
        Rational from;   // position of starting slot
        Rational to;     // position of next slot (may be <= from when wrapping)
        Rational length; // cyclic length, in (0, 1]
    };

    struct WalkStep {
        int edge;
        bool forward;  // arcs: e0->e1; segments: ccw (increasing position)
    };

    explicit ChartTopology(const Chart& chart) : chart_(&chart) { build(); }

    const Chart& chart() const { return *chart_; }

    const std::vector<std::vector<Slot>>& slots() const { return slots_; }
    const std::vector<Segment>& segments() const { return segments_; }
    int num_edges() const {
        return chart_->num_arcs() + static_cast<int>(segments_.size());
    }
    bool edge_is_arc(int edge) const { return edge < chart_->num_arcs(); }
    const Segment& segment_of_edge(int edge) const {
        return segments_.at(edge - chart_->num_arcs());
    }
    int segment_edge_id(int circle, int slotIndex) const {
        return chart_->num_arcs() + segFirst_[circle] + slotIndex;
    }
    int num_slots(int circle) const {
        return static_cast<int>(slots_[circle].size());
    }

    // Segment of `circle` whose half-open span [from, to) contains pos.
    int segment_containing(int circle, const Rational& pos) const;

    const std::vector<std::vector<WalkStep>>& faces() const { return faces_; }
    // face seen from a directed edge occurrence: side 0 = walk traverses the
    // edge forward, side 1 = backward.
    int face_of(int edge, bool forward) const {
        return edgeFace_[edge][forward ? 0 : 1];
    }
    // For segments: the unique complementary cell (the other side is the hole).
    int cell_of_segment(int edge) const;
    int hole_face(int circle) const { return holeFace_[circle]; }
    bool is_hole_face(int f) const { return holeOf_[f] >= 0; }

    const std::vector<std::string>& problems() const { return problems_; }
    bool valid() const { return problems_.empty(); }

    // Euler characteristic of the reglued closed surface, computed directly.
    int reglued_euler() const { return regluedEuler_; }

private:
    void build();
    void trace_faces();
    void run_checks();

    const Chart* chart_;
    std::vector<std::vector<Slot>> slots_;
    std::vector<Segment> segments_;
    std::vector<int> segFirst_;  // per circle: first segment index
    std::vector<std::vector<WalkStep>> faces_;
    std::vector<std::array<int, 2>> edgeFace_;
    std::vector<int> holeFace_;  // per circle: face id of its hole disk
    std::vector<int> holeOf_;    // per face: circle id or -1
    std::vector<std::string> problems_;
    int regluedEuler_ = 0;
};

inline int ChartTopology::segment_containing(int circle,
                                             const Rational& pos) const {
    const auto& sl = slots_[circle];
    if (sl.empty()) throw std::logic_error("circle without slots");
    // find last slot with slot.pos <= pos, cyclically
    int lo = 0, n = static_cast<int>(sl.size());
    if (pos < sl[0].pos || pos >= sl[n - 1].pos) {
        lo = n - 1;  // wrapping segment
    } else {
        for (int i = 0; i + 1 < n; ++i)
            if (sl[i].pos <= pos && pos < sl[i + 1].pos) {
                lo = i;
                break;
            }
    }
    return segment_edge_id(circle, lo);
}

inline int ChartTopology::cell_of_segment(int edge) const {
    int f0 = edgeFace_[edge][0], f1 = edgeFace_[edge][1];
    if (holeOf_[f0] >= 0) return f1;
    return f0;
}

inline void ChartTopology::build() {
    const Chart& c = *chart_;
    slots_.assign(c.num_circles(), {});
    for (int i = 0; i < c.num_arcs(); ++i)
        for (int e = 0; e < 2; ++e) {
            const ArcEndpoint& ep = c.arc(i).ends[e];
            slots_[ep.circle].push_back({ep.pos, i, e});
        }
    for (int circle = 0; circle < c.num_circles(); ++circle) {
        auto& sl = slots_[circle];
        std::sort(sl.begin(), sl.end(),
                  [](const Slot& a, const Slot& b) { return a.pos < b.pos; });
        for (std::size_t i = 0; i + 1 < sl.size(); ++i)
            if (sl[i].pos == sl[i + 1].pos)
                problems_.push_back("coincident slots on circle " +
                                    std::to_string(circle));
        if (sl.empty())
            problems_.push_back("circle " + std::to_string(circle) +
                                " has no arc endpoints");
    }
    if (!problems_.empty()) return;

    segFirst_.assign(c.num_circles(), 0);
    for (int circle = 0; circle < c.num_circles(); ++circle) {
        segFirst_[circle] = static_cast<int>(segments_.size());
        int n = static_cast<int>(slots_[circle].size());
        for (int i = 0; i < n; ++i) {
            const Rational& from = slots_[circle][i].pos;
            const Rational& to = slots_[circle][(i + 1) % n].pos;
            Rational len = frac_part(to - from);
            if (len == Rational(0)) len = Rational(1);  // single-slot circle
            segments_.push_back({circle, i, from, to, len});
        }
    }
    trace_faces();
    if (problems_.empty()) run_checks();
}

inline void ChartTopology::trace_faces() {
    const Chart& c = *chart_;
    const int A = c.num_arcs();
    const int E = num_edges();
    // Half edge h = 2*edge + (forward ? 0 : 1).
    // Rotation at each vertex (circle, slotIndex), counterclockwise as seen
    // in the surface (which lies outside the circles):
    //   [arc end (outward), ccw segment (leaving forward), cw segment
    //    (leaving backward)].
    // Face rule with faces on the left: successor of half-edge h arriving at
    // v is the clockwise-successor of reversed(h) among half-edges leaving v.
    auto leaving = [&](int circle, int slotIdx, int which) -> int {
        // which: 0 = arc, 1 = ccw segment, 2 = cw segment (ccw rotation order)
        const Slot& s = slots_[circle][slotIdx];
        int n = static_cast<int>(slots_[circle].size());
        if (which == 0) {
            int arcEdge = s.arc;
            // leaving along the arc: forward if this is end 0
            return 2 * arcEdge + (s.end == 0 ? 0 : 1);
        }
        if (which == 1) return 2 * segment_edge_id(circle, slotIdx);
        int prev = (slotIdx + n - 1) % n;
        return 2 * segment_edge_id(circle, prev) + 1;
    };

    // Where does a half-edge arrive, and what is its reversal's rotation pos?
    // Build successor by: for each vertex, for each rotation index r, the
    // half-edge leaving at rotation r has predecessor-in-face equal to the
    // arrival whose reversal sits at rotation r+1 (cw successor = previous in
    // ccw order means: next(h) = leaving at (rot(reverse(h)) - 1 mod 3)).
    std::vector<int> succ(2 * E, -1);
    for (int circle = 0; circle < c.num_circles(); ++circle) {
        int n = static_cast<int>(slots_[circle].size());
        for (int i = 0; i < n; ++i) {
            for (int r = 0; r < 3; ++r) {
                int out = leaving(circle, i, r);
                int arriving = out ^ 1;  // reversal arrives at this vertex
                int nxt = leaving(circle, i, (r + 2) % 3);  // cw successor
                succ[arriving] = nxt;
            }
        }
    }
    for (int h = 0; h < 2 * E; ++h)
        if (succ[h] < 0) {
            problems_.push_back("dangling half-edge");
            return;
        }

    edgeFace_.assign(E, {-1, -1});
    std::vector<int> faceOfHalf(2 * E, -1);
    for (int h0 = 0; h0 < 2 * E; ++h0) {
        if (faceOfHalf[h0] >= 0) continue;
        int f = static_cast<int>(faces_.size());
        faces_.emplace_back();
        int h = h0;
        do {
            faceOfHalf[h] = f;
            faces_.back().push_back({h / 2, h % 2 == 0});
            edgeFace_[h / 2][h % 2] = f;
            h = succ[h];
        } while (h != h0);
    }

    // Identify hole faces: the face seen by every segment of the circle on
    // its hole side. With ccw parameterization and the surface outside the
    // circles, the hole side of a segment is its left when traversed ccw;
    // detect instead by structure: a face whose walk consists solely of all
    // segments of one circle, each exactly once, same direction.
    holeFace_.assign(c.num_circles(), -1);
    holeOf_.assign(faces_.size(), -1);
    for (int f = 0; f < static_cast<int>(faces_.size()); ++f) {
        bool allSeg = true;
        std::set<int> circles;
        std::set<bool> dirs;
        for (const WalkStep& ws : faces_[f]) {
            if (edge_is_arc(ws.edge)) {
                allSeg = false;
                break;
            }
            circles.insert(segment_of_edge(ws.edge).circle);
            dirs.insert(ws.forward);
        }
        if (!allSeg || circles.size() != 1 || dirs.size() != 1) continue;
        int circle = *circles.begin();
        if (static_cast<int>(faces_[f].size()) != num_slots(circle)) continue;
        if (holeFace_[circle] >= 0) {
            problems_.push_back("circle " + std::to_string(circle) +
                                " bounds two candidate holes");
            continue;
        }
        holeFace_[circle] = f;
        holeOf_[f] = circle;
    }
    for (int circle = 0; circle < c.num_circles(); ++circle)
        if (holeFace_[circle] < 0)
            problems_.push_back("no hole face for circle " +
                                std::to_string(circle) +
                                " (arcs do not embed in the sphere)");
}

inline void ChartTopology::run_checks() {
    const Chart& c = *chart_;
    // connectivity of the chart graph
    int V = 0;
    for (auto& sl : slots_) V += static_cast<int>(sl.size());
    {
        std::map<std::pair<int, int>, int> vid;  // (circle, slot) -> id
        int next = 0;
        for (int circle = 0; circle < c.num_circles(); ++circle)
            for (int i = 0; i < num_slots(circle); ++i)
                vid[{circle, i}] = next++;
        std::vector<std::vector<int>> adj(V);
        auto link = [&](int a, int b) {
            adj[a].push_back(b);
            adj[b].push_back(a);
        };
        for (int circle = 0; circle < c.num_circles(); ++circle) {
            int n = num_slots(circle);
            for (int i = 0; i < n; ++i)
                link(vid[{circle, i}], vid[{circle, (i + 1) % n}]);
        }
        for (int i = 0; i < c.num_arcs(); ++i) {
            const ChartArc& a = c.arc(i);
            auto locate = [&](const ArcEndpoint& e) {
                const auto& sl = slots_[e.circle];
                for (int k = 0; k < static_cast<int>(sl.size()); ++k)
                    if (sl[k].pos == e.pos && sl[k].arc == i) return k;
                return -1;
            };
            int k0 = locate(a.ends[0]), k1 = locate(a.ends[1]);
            link(vid[{a.ends[0].circle, k0}], vid[{a.ends[1].circle, k1}]);
        }
        std::vector<char> seen(V, 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        int cnt = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int u : adj[v])
                if (!seen[u]) {
                    seen[u] = 1;
                    ++cnt;
                    stack.push_back(u);
                }
        }
        if (cnt != V) problems_.push_back("chart graph is disconnected");
    }

    // sphere Euler count (faces include the 2g holes)
    int E = num_edges();
    int F = static_cast<int>(faces_.size());
    if (V - E + F != 2)
        problems_.push_back("cut-surface Euler count is " +
                            std::to_string(V - E + F) + ", expected 2");

    // parallel arcs: a face [arc, seg, arc, seg]; trivial arc: face [arc, seg]
    for (int f = 0; f < F; ++f) {
        const auto& walk = faces_[f];
        int arcs = 0, segs = 0;
        for (const WalkStep& ws : walk) edge_is_arc(ws.edge) ? ++arcs : ++segs;
        if (arcs == 1 && segs == 1)
            problems_.push_back("trivial arc: face " + std::to_string(f) +
                                " is cut off by a single arc and segment");
        if (arcs == 2 && segs == 2 && walk.size() == 4)
            problems_.push_back("parallel arcs around face " +
                                std::to_string(f));
    }

    // gluing sanity: no collision between + endpoints and pulled-back -
    // endpoints on any disk
    for (int d = 0; d < c.genus(); ++d) {
        std::set<Rational> plus;
        for (const auto& s : slots_[Chart::circle_id(d, true)])
            plus.insert(s.pos);
        for (const auto& s : slots_[Chart::circle_id(d, false)])
            if (plus.count(c.pull_to_plus(d, s.pos)))
                problems_.push_back("gluing collision at disk " +
                                    std::to_string(d));
    }

    // reglued closed surface: V' = V, E' unchanged, holes disappear
    regluedEuler_ = V - E + (F - c.num_circles());
    if (regluedEuler_ != 2 - 2 * c.genus())
        problems_.push_back("reglued Euler count is " +
                            std::to_string(regluedEuler_) + ", expected " +
                            std::to_string(2 - 2 * c.genus()));
}

}  // namespace hb
