#pragma once

#include <handlebody/bigint.hpp>
#include <handlebody/chart.hpp>
#include <handlebody/diagram.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

namespace hb {

// Complement regions of a pairwise-disjoint family of walls on the glued
// surface. Family members are gluing circles, chart arcs, or embedded drawn
// curves. The complex refines the chart: around every gluing circle sits a
// collar, drawn as a strip in the annulus cover. Chart arcs reach into the
// collar as vertical tips that end on the core, rope ends become vertical
// stubs, and transits run as straight strands from the + interface to the -
// interface. Cells attach to the collars along the interface circles. Every
// face of the refined complex is a disk, so regions and their Euler
// characteristics come out of one rotation-system face trace followed by a
// union-find across the pieces that are not in the family.
struct FamilyComponent {
    enum class Kind { Circle, ChartArc, Drawn };
    Kind kind = Kind::Drawn;
    int index = -1;
    DrawnCurve curve;

    static FamilyComponent circle(int disk) {
        FamilyComponent f;
        f.kind = Kind::Circle;
        f.index = disk;
        return f;
    }
    static FamilyComponent chart_arc(int arc) {
        FamilyComponent f;
        f.kind = Kind::ChartArc;
        f.index = arc;
        return f;
    }
    static FamilyComponent drawn(DrawnCurve c) {
        FamilyComponent f;
        f.kind = Kind::Drawn;
        f.curve = std::move(c);
        return f;
    }
};

class RegionComplex {
public:
    // A directed wall piece on the boundary cycle of a region.
    struct BoundaryDart {
        int familyComponent = -1;  // index into the input family
        int wall = -1;             // internal wall id
        int piece = -1;            // piece index along the wall
        bool forward = true;
    };

    RegionComplex(const ChartTopology& topo,
                  std::vector<FamilyComponent> family)
        : topo_(&topo), family_(std::move(family)) {
        build_walls();
        build_points();
        build_pieces();
        trace_faces();
        merge_regions();
        trace_boundaries();
    }

    int num_regions() const { return static_cast<int>(regionEuler_.size()); }
    long long euler(int region) const { return regionEuler_[region]; }
    bool all_disks() const {
        for (long long e : regionEuler_)
            if (e != 1) return false;
        return true;
    }
    std::vector<long long> euler_list() const {
        std::vector<long long> out = regionEuler_;
        std::sort(out.begin(), out.end());
        return out;
    }

    // Region adjacent to the gluing circle of `disk` at core position `pos`
    // (given in + coordinates), approached from the chosen side.
    int region_at_core(int disk, const Rational& pos, bool plusSide) const {
        int w = coreWall_[disk];
        int piece = piece_containing(w, frac_part(pos));
        // core pieces point toward increasing position; the - half of the
        // collar lies to the left
        int dart = dart_id(w, piece, !plusSide);
        return faceRegion_[dartFace_[dart]];
    }

    // Region beside a chart arc at parameter t, on the left or right of the
    // ends[0] -> ends[1] direction.
    int region_at_arc(int arc, const Rational& t, bool leftSide) const {
        int w = arcMiddleWall_[arc];
        int piece = piece_containing(w, t);
        int dart = dart_id(w, piece, leftSide);
        return faceRegion_[dartFace_[dart]];
    }

    // Region on one side of a chord of a drawn family member; left is taken
    // along the curve direction.
    int region_at_chord(int familyComponent, int chordIndex,
                        bool leftSide) const {
        auto it = chordWall_.find({familyComponent, chordIndex});
        if (it == chordWall_.end())
            throw std::invalid_argument("no such chord");
        int dart = dart_id(it->second, 0, leftSide);
        return faceRegion_[dartFace_[dart]];
    }

    const std::vector<std::vector<BoundaryDart>>& boundary_cycles(
        int region) const {
        return regionBoundaries_[region];
    }
    int num_boundary_cycles(int region) const {
        return static_cast<int>(regionBoundaries_[region].size());
    }

    int num_fine_faces() const { return numFaces_; }
    int region_of_face(int face) const { return faceRegion_[face]; }

private:
    enum class WallKind {
        Core,            // a = disk
        InterfacePlus,   // a = disk
        InterfaceMinus,  // a = disk
        ArcMiddle,       // a = arc
        ArcTip,          // a = arc, b = end (0/1)
        Chord,           // a = family component, b = chord index
        Strand,          // a = family component, b = event index
        Stub,            // a = family component, b = event index
    };
    struct Wall {
        WallKind kind;
        int a = -1, b = -1;
        bool closed = false;
        bool inFamily = false;
        int familyComponent = -1;
        // strands: straight cover line from (bottom, 0) to (top, 1)
        Rational bottom, top;
        int disk = -1;
        bool tipPlus = true;  // tips/stubs hang from the + interface
        Rational column;      // tips/stubs: cover x position
        std::vector<int> points;
        std::vector<Rational> params;
    };

    const ChartTopology* topo_;
    std::vector<FamilyComponent> family_;

    std::vector<Wall> walls_;
    std::vector<int> coreWall_, ifacePlusWall_, ifaceMinusWall_;
    std::vector<int> arcMiddleWall_;
    std::map<std::pair<int, int>, int> arcTipWall_;   // (arc, end)
    std::map<std::pair<int, int>, int> chordWall_;    // (component, chord)
    std::map<std::pair<int, int>, int> strandWall_;   // (component, event)
    std::map<std::pair<int, int>, int> stubWall_;     // (component, event)

    int numNodes_ = 0;
    std::map<std::pair<int, Rational>, int> ifaceNode_;  // (2*disk+side, pos)
    std::map<std::pair<int, Rational>, int> coreNode_;   // (disk, x mod 1)
    std::map<std::pair<int, Rational>, int> arcNode_;    // (arc, t)
    std::map<std::tuple<int, int, Rational>, int> tipCrossNode_;

    std::vector<int> pieceOffset_;
    int numPieces_ = 0;
    std::vector<int> dartFace_;
    std::vector<std::vector<int>> nodeDarts_;  // ccw rotation per node
    int numFaces_ = 0;
    std::vector<int> faceRegion_;
    std::vector<long long> regionEuler_;
    std::vector<std::vector<std::vector<BoundaryDart>>> regionBoundaries_;

    const Chart& chart() const { return topo_->chart(); }

    // ----- nodes ----------------------------------------------------------

    int iface_node(int disk, bool plus, const Rational& pos) {
        auto [it, fresh] = ifaceNode_.try_emplace(
            {disk * 2 + (plus ? 0 : 1), pos}, numNodes_);
        if (fresh) ++numNodes_;
        return it->second;
    }
    int core_node(int disk, const Rational& x) {
        auto [it, fresh] =
            coreNode_.try_emplace({disk, frac_part(x)}, numNodes_);
        if (fresh) ++numNodes_;
        return it->second;
    }
    int arc_node(int arc, const Rational& t) {
        auto [it, fresh] = arcNode_.try_emplace({arc, t}, numNodes_);
        if (fresh) ++numNodes_;
        return it->second;
    }

    // ----- walls ----------------------------------------------------------

    void build_walls() {
        const Chart& ch = chart();
        int g = ch.genus();
        coreWall_.assign(g, -1);
        ifacePlusWall_.assign(g, -1);
        ifaceMinusWall_.assign(g, -1);
        arcMiddleWall_.assign(ch.num_arcs(), -1);

        std::vector<int> circleComp(g, -1), arcComp(ch.num_arcs(), -1);
        for (int i = 0; i < static_cast<int>(family_.size()); ++i) {
            const auto& f = family_[i];
            if (f.kind == FamilyComponent::Kind::Circle)
                circleComp[f.index] = i;
            else if (f.kind == FamilyComponent::Kind::ChartArc)
                arcComp[f.index] = i;
        }

        auto add = [&](Wall w) {
            walls_.push_back(std::move(w));
            return static_cast<int>(walls_.size()) - 1;
        };

        for (int d = 0; d < g; ++d) {
            Wall core;
            core.kind = WallKind::Core;
            core.a = d;
            core.disk = d;
            core.closed = true;
            core.inFamily = circleComp[d] >= 0;
            core.familyComponent = circleComp[d];
            coreWall_[d] = add(core);

            Wall ip;
            ip.kind = WallKind::InterfacePlus;
            ip.a = d;
            ip.disk = d;
            ip.closed = true;
            ifacePlusWall_[d] = add(ip);

            Wall im;
            im.kind = WallKind::InterfaceMinus;
            im.a = d;
            im.disk = d;
            im.closed = true;
            ifaceMinusWall_[d] = add(im);
        }
        for (int a = 0; a < ch.num_arcs(); ++a) {
            Wall mid;
            mid.kind = WallKind::ArcMiddle;
            mid.a = a;
            mid.inFamily = arcComp[a] >= 0;
            mid.familyComponent = arcComp[a];
            arcMiddleWall_[a] = add(mid);
            for (int e = 0; e < 2; ++e) {
                const ArcEndpoint& ep = ch.arc(a).ends[e];
                Wall tip;
                tip.kind = WallKind::ArcTip;
                tip.a = a;
                tip.b = e;
                tip.inFamily = arcComp[a] >= 0;
                tip.familyComponent = arcComp[a];
                tip.disk = Chart::disk_of_circle(ep.circle);
                tip.tipPlus = Chart::is_plus_circle(ep.circle);
                tip.column = tip.tipPlus ? ep.pos
                                         : ch.pull_to_plus(tip.disk, ep.pos);
                arcTipWall_[{a, e}] = add(tip);
            }
        }
        for (int i = 0; i < static_cast<int>(family_.size()); ++i) {
            const auto& f = family_[i];
            if (f.kind != FamilyComponent::Kind::Drawn) continue;
            int nchords =
                static_cast<int>(cell_chords(*topo_, f.curve).size());
            for (int k = 0; k < nchords; ++k) {
                Wall w;
                w.kind = WallKind::Chord;
                w.a = i;
                w.b = k;
                w.inFamily = true;
                w.familyComponent = i;
                chordWall_[{i, k}] = add(w);
            }
            for (int k = 0; k < f.curve.size(); ++k) {
                const Event& e = f.curve.events[k];
                if (e.kind == Event::Kind::Transit) {
                    Wall w;
                    w.kind = WallKind::Strand;
                    w.a = i;
                    w.b = k;
                    w.inFamily = true;
                    w.familyComponent = i;
                    w.disk = e.disk;
                    w.bottom = e.p;
                    w.top =
                        chart().pull_to_plus(e.disk, e.q) + Rational(e.w);
                    strandWall_[{i, k}] = add(w);
                } else if (e.kind == Event::Kind::End && e.endOnCircle) {
                    Wall w;
                    w.kind = WallKind::Stub;
                    w.a = i;
                    w.b = k;
                    w.inFamily = true;
                    w.familyComponent = i;
                    w.disk = e.disk;
                    w.tipPlus = e.endFromPlus;
                    w.column = e.endFromPlus
                                   ? e.endPos
                                   : chart().pull_to_plus(e.disk, e.endPos);
                    stubWall_[{i, k}] = add(w);
                } else if (e.kind == Event::Kind::End && !e.endOnCircle) {
                    throw std::invalid_argument(
                        "attached rope ends are not supported here yet");
                }
            }
        }
    }

    // Heights at which the strand crosses the vertical wall (tip or stub) at
    // cover columns column + k. A + vertical spans heights [0,1/2], a -
    // vertical spans [1/2,1].
    std::vector<Rational> vertical_hits(const Wall& strand,
                                        const Wall& vert) const {
        std::vector<Rational> hits;
        if (strand.disk != vert.disk) return hits;
        const Rational& p = strand.bottom;
        const Rational& u = strand.top;
        if (p == u) return hits;
        Rational mid = (p + u) / 2;
        Rational lo = vert.tipPlus ? std::min(p, mid) : std::min(mid, u);
        Rational hi = vert.tipPlus ? std::max(p, mid) : std::max(mid, u);
        BigInt k0 = floor_of(lo - vert.column) + 1;
        BigInt k1 = ceil_of(hi - vert.column) - 1;
        for (BigInt k = k0; k <= k1; ++k) {
            Rational x = vert.column + Rational(k);
            if (lo < x && x < hi) hits.push_back((x - p) / (u - p));
        }
        return hits;
    }

    void build_points() {
        const Chart& ch = chart();
        for (int w = 0; w < static_cast<int>(walls_.size()); ++w) {
            Wall& wall = walls_[w];
            if (wall.kind == WallKind::ArcTip) {
                const ArcEndpoint& ep = ch.arc(wall.a).ends[wall.b];
                wall.points = {iface_node(wall.disk, wall.tipPlus, ep.pos),
                               core_node(wall.disk, wall.column)};
                wall.params = {Rational(0), Rational(1, 2)};
            } else if (wall.kind == WallKind::Stub) {
                const Event& e = family_[wall.a].curve.events[wall.b];
                wall.points = {iface_node(wall.disk, wall.tipPlus, e.endPos),
                               core_node(wall.disk, wall.column)};
                wall.params = {Rational(0), Rational(1, 2)};
            } else if (wall.kind == WallKind::Strand) {
                const Event& e = family_[wall.a].curve.events[wall.b];
                Rational mid = (wall.bottom + wall.top) / 2;
                wall.points = {iface_node(wall.disk, true, e.p),
                               core_node(wall.disk, mid),
                               iface_node(wall.disk, false, e.q)};
                wall.params = {Rational(0), Rational(1, 2), Rational(1)};
            }
        }
        // crossings of strands with verticals
        for (auto& [key, sw] : strandWall_) {
            for (int vw = 0; vw < static_cast<int>(walls_.size()); ++vw) {
                if (walls_[vw].kind != WallKind::ArcTip &&
                    walls_[vw].kind != WallKind::Stub)
                    continue;
                auto hits = vertical_hits(walls_[sw], walls_[vw]);
                for (const Rational& t : hits) {
                    if (walls_[vw].kind == WallKind::Stub)
                        throw std::invalid_argument(
                            "a transit strand sweeps past a rope end pinned "
                            "to the same circle");
                    auto k = std::make_tuple(vw, sw, t);
                    auto [it, fresh] =
                        tipCrossNode_.try_emplace(k, numNodes_);
                    if (fresh) ++numNodes_;
                    walls_[sw].points.push_back(it->second);
                    walls_[sw].params.push_back(t);
                    Rational h = walls_[vw].tipPlus ? t : Rational(1) - t;
                    walls_[vw].points.push_back(it->second);
                    walls_[vw].params.push_back(h);
                }
            }
        }
        // chord endpoints
        for (auto& [key, cw] : chordWall_) {
            Wall& wall = walls_[cw];
            const DrawnCurve& c = family_[wall.a].curve;
            int n = c.size();
            wall.points = {chord_end_node(c.events[wall.b], true),
                           chord_end_node(c.events[(wall.b + 1) % n], false)};
            wall.params = {Rational(0), Rational(1)};
        }
        // arc middles: endpoints plus all cross nodes
        for (int a = 0; a < ch.num_arcs(); ++a) {
            Wall& mid = walls_[arcMiddleWall_[a]];
            for (int e = 0; e < 2; ++e) {
                const ArcEndpoint& ep = ch.arc(a).ends[e];
                mid.points.push_back(
                    iface_node(Chart::disk_of_circle(ep.circle),
                               Chart::is_plus_circle(ep.circle), ep.pos));
                mid.params.push_back(Rational(e));
            }
        }
        for (auto& [key, node] : arcNode_) {
            Wall& mid = walls_[arcMiddleWall_[key.first]];
            mid.points.push_back(node);
            mid.params.push_back(key.second);
        }
        // interface circles (minus side ordered by pulled coordinate) and
        // cores collect every node created on them
        for (auto& [key, node] : ifaceNode_) {
            int disk = key.first / 2;
            bool plus = key.first % 2 == 0;
            Wall& w =
                walls_[plus ? ifacePlusWall_[disk] : ifaceMinusWall_[disk]];
            w.points.push_back(node);
            w.params.push_back(plus ? key.second
                                    : chart().pull_to_plus(disk, key.second));
        }
        for (auto& [key, node] : coreNode_) {
            Wall& w = walls_[coreWall_[key.first]];
            w.points.push_back(node);
            w.params.push_back(key.second);
        }
        for (Wall& w : walls_) {
            std::vector<int> order(w.points.size());
            for (std::size_t i = 0; i < order.size(); ++i)
                order[i] = static_cast<int>(i);
            std::sort(order.begin(), order.end(), [&](int i, int j) {
                return w.params[i] < w.params[j];
            });
            for (std::size_t i = 1; i < order.size(); ++i)
                if (w.params[order[i - 1]] == w.params[order[i]])
                    throw std::invalid_argument(
                        "coincident wall positions; the family is not in "
                        "general position");
            std::vector<int> pts;
            std::vector<Rational> ps;
            pts.reserve(order.size());
            ps.reserve(order.size());
            for (int i : order) {
                pts.push_back(w.points[i]);
                ps.push_back(w.params[i]);
            }
            w.points = std::move(pts);
            w.params = std::move(ps);
        }
    }

    int chord_end_node(const Event& e, bool after) {
        switch (e.kind) {
            case Event::Kind::Cross:
                return arc_node(e.arc, e.t);
            case Event::Kind::Transit: {
                bool plusPoint = (e.plusToMinus != after);
                return iface_node(e.disk, plusPoint, plusPoint ? e.p : e.q);
            }
            case Event::Kind::End:
                return iface_node(e.disk, e.endFromPlus, e.endPos);
        }
        throw std::logic_error("unreachable");
    }

    // ----- pieces, darts, rotations ----------------------------------------

    int wall_pieces(int w) const {
        int n = static_cast<int>(walls_[w].points.size());
        if (n == 0) return 0;
        return walls_[w].closed ? n : n - 1;
    }
    int piece_id(int w, int k) const { return pieceOffset_[w] + k; }
    int dart_id(int w, int k, bool forward) const {
        return 2 * piece_id(w, k) + (forward ? 0 : 1);
    }
    static int dart_reverse(int d) { return d ^ 1; }
    std::pair<int, int> dart_wall_piece(int d) const {
        int p = d / 2;
        int w = static_cast<int>(std::upper_bound(pieceOffset_.begin(),
                                                  pieceOffset_.end(), p) -
                                 pieceOffset_.begin()) -
                1;
        return {w, p - pieceOffset_[w]};
    }
    int dart_tail(int d) const {
        auto [w, k] = dart_wall_piece(d);
        const Wall& wall = walls_[w];
        int n = static_cast<int>(wall.points.size());
        return (d % 2) == 0 ? wall.points[k] : wall.points[(k + 1) % n];
    }
    int dart_head(int d) const { return dart_tail(dart_reverse(d)); }

    // Compass code of the out-dart at its tail node: 0 = east, counted
    // counterclockwise in eighth turns. In every collar picture the + side
    // is south and positions grow eastward; inside cells the crossed arc is
    // the east-west axis and the crossing curve runs north-south.
    int angle_code(int d) const {
        auto [w, k] = dart_wall_piece(d);
        const Wall& wall = walls_[w];
        bool fwd = (d % 2) == 0;
        switch (wall.kind) {
            case WallKind::Core:
            case WallKind::InterfacePlus:
            case WallKind::InterfaceMinus:
                return fwd ? 0 : 4;
            case WallKind::ArcMiddle: {
                int last = static_cast<int>(wall.points.size()) - 2;
                if (fwd && k == 0) return end_cell_code(wall.a, 0);
                if (!fwd && k == last) return end_cell_code(wall.a, 1);
                return fwd ? 0 : 4;
            }
            case WallKind::ArcTip:
            case WallKind::Stub: {
                bool towardCore = fwd;
                bool south = wall.tipPlus ? !towardCore : towardCore;
                return south ? 6 : 2;
            }
            case WallKind::Strand: {
                bool up = fwd;
                int sgn = wall.top > wall.bottom
                              ? 1
                              : (wall.top < wall.bottom ? -1 : 0);
                if (sgn == 0) return up ? 2 : 6;
                if (up) return sgn > 0 ? 1 : 3;
                return sgn > 0 ? 5 : 7;
            }
            case WallKind::Chord: {
                const DrawnCurve& c = family_[wall.a].curve;
                int n = c.size();
                const Event& ev =
                    fwd ? c.events[wall.b] : c.events[(wall.b + 1) % n];
                return chord_event_code(ev, fwd);
            }
        }
        throw std::logic_error("unreachable");
    }

    // cell-side compass code of an arc-middle dart leaving its end node
    int end_cell_code(int arc, int end) const {
        const ArcEndpoint& ep = chart().arc(arc).ends[end];
        return Chart::is_plus_circle(ep.circle) ? 6 : 2;
    }

    // compass code of a chord dart at the event it leaves (after = true) or
    // arrives at (after = false)
    int chord_event_code(const Event& e, bool after) const {
        switch (e.kind) {
            case Event::Kind::Cross: {
                bool left = after ? e.toLeft : !e.toLeft;
                return left ? 2 : 6;
            }
            case Event::Kind::Transit: {
                bool plusPoint = (e.plusToMinus != after);
                return plusPoint ? 6 : 2;
            }
            case Event::Kind::End:
                return e.endFromPlus ? 6 : 2;
        }
        throw std::logic_error("unreachable");
    }

    void build_pieces() {
        pieceOffset_.assign(walls_.size(), 0);
        numPieces_ = 0;
        for (int w = 0; w < static_cast<int>(walls_.size()); ++w) {
            pieceOffset_[w] = numPieces_;
            numPieces_ += wall_pieces(w);
        }
        std::vector<std::vector<std::pair<int, int>>> rot(numNodes_);
        for (int w = 0; w < static_cast<int>(walls_.size()); ++w) {
            int np = wall_pieces(w);
            for (int k = 0; k < np; ++k)
                for (int f = 0; f < 2; ++f) {
                    int d = dart_id(w, k, f == 0);
                    rot[dart_tail(d)].push_back({angle_code(d), d});
                }
        }
        nodeDarts_.assign(numNodes_, {});
        for (int nid = 0; nid < numNodes_; ++nid) {
            auto& v = rot[nid];
            std::sort(v.begin(), v.end());
            for (std::size_t i = 1; i < v.size(); ++i)
                if (v[i - 1].first == v[i].first)
                    throw std::logic_error(
                        "ambiguous rotation at a refined-complex node");
            nodeDarts_[nid].reserve(v.size());
            for (auto& [code, dd] : v) nodeDarts_[nid].push_back(dd);
        }
    }

    int face_next(int d) const {
        int r = dart_reverse(d);
        const auto& rotlist = nodeDarts_[dart_head(d)];
        int idx = -1;
        for (int i = 0; i < static_cast<int>(rotlist.size()); ++i)
            if (rotlist[i] == r) idx = i;
        if (idx < 0) throw std::logic_error("dart missing from its rotation");
        int m = static_cast<int>(rotlist.size());
        return rotlist[(idx + m - 1) % m];
    }

    void trace_faces() {
        int nd = 2 * numPieces_;
        dartFace_.assign(nd, -1);
        numFaces_ = 0;
        for (int start = 0; start < nd; ++start) {
            if (dartFace_[start] != -1) continue;
            int f = numFaces_++;
            int d = start;
            do {
                dartFace_[d] = f;
                d = face_next(d);
            } while (d != start);
        }
        long long V = numNodes_, E = numPieces_, F = numFaces_;
        if (V - E + F != 2 - 2 * static_cast<long long>(chart().genus()))
            throw std::logic_error(
                "refined complex has the wrong Euler characteristic");
    }

    void merge_regions() {
        std::vector<int> parent(numFaces_);
        for (int i = 0; i < numFaces_; ++i) parent[i] = i;
        std::function<int(int)> find = [&](int x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        for (int w = 0; w < static_cast<int>(walls_.size()); ++w) {
            if (walls_[w].inFamily) continue;
            for (int k = 0; k < wall_pieces(w); ++k) {
                int a = find(dartFace_[dart_id(w, k, true)]);
                int b = find(dartFace_[dart_id(w, k, false)]);
                if (a != b) parent[a] = b;
            }
        }
        std::map<int, int> regionId;
        faceRegion_.assign(numFaces_, -1);
        for (int f = 0; f < numFaces_; ++f) {
            auto [it, fresh] = regionId.try_emplace(
                find(f), static_cast<int>(regionId.size()));
            faceRegion_[f] = it->second;
        }
        int nr = static_cast<int>(regionId.size());

        // Euler characteristic of the closed-up region (the surface obtained
        // by cutting along the family): faces, minus interior pieces, plus
        // interior nodes. A piece not in the family is interior to its
        // region; a node is interior when no family piece ends there. Every
        // boundary cycle contributes vertices and edges in equal number, so
        // the boundary cancels out of V - E + F.
        std::vector<char> nodeOnFamily(numNodes_, 0);
        std::vector<int> nodeFace(numNodes_, -1);
        for (int w = 0; w < static_cast<int>(walls_.size()); ++w) {
            const Wall& wall = walls_[w];
            int n = static_cast<int>(wall.points.size());
            for (int k = 0; k < wall_pieces(w); ++k) {
                int t = wall.points[k];
                int h = wall.points[(k + 1) % n];
                if (wall.inFamily) {
                    nodeOnFamily[t] = 1;
                    nodeOnFamily[h] = 1;
                }
                nodeFace[t] = dartFace_[dart_id(w, k, true)];
                nodeFace[h] = dartFace_[dart_id(w, k, false)];
            }
        }
        regionEuler_.assign(nr, 0);
        for (int f = 0; f < numFaces_; ++f) ++regionEuler_[faceRegion_[f]];
        for (int w = 0; w < static_cast<int>(walls_.size()); ++w) {
            if (walls_[w].inFamily) continue;
            for (int k = 0; k < wall_pieces(w); ++k)
                --regionEuler_[faceRegion_[dartFace_[dart_id(w, k, true)]]];
        }
        for (int nid = 0; nid < numNodes_; ++nid)
            if (!nodeOnFamily[nid])
                ++regionEuler_[faceRegion_[nodeFace[nid]]];
    }

    void trace_boundaries() {
        regionBoundaries_.assign(num_regions(), {});
        std::vector<char> used(2 * numPieces_, 0);
        for (int start = 0; start < 2 * numPieces_; ++start) {
            auto [w0, k0] = dart_wall_piece(start);
            if (!walls_[w0].inFamily || used[start]) continue;
            std::vector<BoundaryDart> cycle;
            int region = faceRegion_[dartFace_[start]];
            int d = start;
            do {
                auto [w, k] = dart_wall_piece(d);
                used[d] = 1;
                BoundaryDart bd;
                bd.familyComponent = walls_[w].familyComponent;
                bd.wall = w;
                bd.piece = k;
                bd.forward = (d % 2) == 0;
                cycle.push_back(bd);
                d = face_next(d);
                while (true) {
                    auto [w2, k2] = dart_wall_piece(d);
                    if (walls_[w2].inFamily) break;
                    d = face_next(dart_reverse(d));
                }
            } while (d != start);
            regionBoundaries_[region].push_back(std::move(cycle));
        }
    }

    int piece_containing(int w, const Rational& pos) const {
        const Wall& wall = walls_[w];
        int n = static_cast<int>(wall.points.size());
        if (n == 0) throw std::logic_error("empty wall");
        for (int k = 0; k < n; ++k)
            if (wall.params[k] == pos)
                throw std::invalid_argument(
                    "query position coincides with a complex node");
        for (int k = 0; k + 1 < n; ++k)
            if (wall.params[k] < pos && pos < wall.params[k + 1]) return k;
        if (!wall.closed)
            throw std::invalid_argument("position not interior to the wall");
        return n - 1;  // wrap piece of a closed wall
    }
};

}  // namespace hb
