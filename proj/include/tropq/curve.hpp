#pragma once

// Dual tropical curves of regular unimodular triangulations, in the min-plus
// convention f(x) = min_p (h(p) + <p, x>), together with the skeleton (the
// genus-carrying metric subgraph) and the retraction of curve points onto it.

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

#include "tropq/errors.hpp"
#include "tropq/heights.hpp"
#include "tropq/lattice.hpp"
#include "tropq/metric_graph.hpp"
#include "tropq/rational.hpp"

namespace tropq {

struct PlanePoint {
    Rat x, y;

    friend bool operator==(const PlanePoint&, const PlanePoint&) = default;
    friend auto operator<=>(const PlanePoint& a, const PlanePoint& b) {
        if (auto c = a.x.compare(b.x); c != 0) return c <=> 0;
        return a.y.compare(b.y) <=> 0;
    }
    PlanePoint operator+(const PlanePoint& o) const { return {x + o.x, y + o.y}; }
    PlanePoint operator-(const PlanePoint& o) const { return {x - o.x, y - o.y}; }
};

inline std::string plane_point_str(const PlanePoint& p) {
    return "(" + rat_str(p.x) + ", " + rat_str(p.y) + ")";
}

struct CurveVertex {
    PlanePoint pos;
    LatticeTriangle cell;
};

// bounded edge: pos(b) = pos(a) + steps * dir, dir primitive, steps > 0
struct CurveEdge {
    int a = 0, b = 0;
    LatticeSegment dual;  // the interior triangulation edge it is dual to
    LatticePoint dir;
    Rat steps;  // lattice length
};

struct CurveRay {
    int v = 0;
    LatticeSegment dual;  // boundary triangulation edge
    LatticePoint dir;
};

struct TropicalCurve {
    int degree = 0;
    Triangulation triangulation;
    HeightFunction heights;
    std::vector<CurveVertex> vertices;
    std::vector<CurveEdge> edges;
    std::vector<CurveRay> rays;

    PlanePoint edge_point(int e, const Rat& t) const {
        const auto& ed = edges[e];
        return {vertices[ed.a].pos.x + t * ed.dir.x, vertices[ed.a].pos.y + t * ed.dir.y};
    }
};

// Every vertex of a smooth curve is trivalent with primitive edge directions
// summing to zero; violations would mean the dual construction is broken.
inline bool is_balanced(const TropicalCurve& c, std::string* diag = nullptr) {
    std::vector<long long> sx(c.vertices.size(), 0), sy(c.vertices.size(), 0);
    std::vector<int> val(c.vertices.size(), 0);
    for (const auto& e : c.edges) {
        sx[e.a] += e.dir.x;
        sy[e.a] += e.dir.y;
        sx[e.b] -= e.dir.x;
        sy[e.b] -= e.dir.y;
        ++val[e.a];
        ++val[e.b];
    }
    for (const auto& r : c.rays) {
        sx[r.v] += r.dir.x;
        sy[r.v] += r.dir.y;
        ++val[r.v];
    }
    for (size_t v = 0; v < c.vertices.size(); ++v) {
        if (sx[v] != 0 || sy[v] != 0) {
            if (diag) *diag = "direction sum nonzero at vertex " + std::to_string(v);
            return false;
        }
        if (val[v] != 3) {
            if (diag) *diag = "vertex " + std::to_string(v) + " is not trivalent";
            return false;
        }
    }
    return true;
}

inline bool is_smooth(const TropicalCurve& c, std::string* diag = nullptr) {
    for (const auto& tri : c.triangulation.triangles)
        if (!tri.unimodular()) {
            if (diag) *diag = "non-unimodular dual cell";
            return false;
        }
    return is_balanced(c, diag);
}

// The dual curve of a lift.  The triangulation argument is cross-checked
// against the subdivision the heights actually induce.
inline TropicalCurve dual_curve(const HeightFunction& h, const Triangulation& t) {
    if (h.degree != t.degree)
        throw invalid_argument_error("dual_curve: degree mismatch between heights and triangulation");
    if (!heights_induce(h, t))
        throw inconsistent_lift_error("heights do not induce the given triangulation");

    TropicalCurve c;
    c.degree = t.degree;
    c.triangulation = t;
    c.heights = h;

    std::map<LatticeTriangle, int> cell_index;
    for (const auto& tri : t.triangles) {
        // vertex where the three terms h(p) + <p, x> agree: an integer 2x2
        // system with determinant +-1
        LatticePoint p0 = tri.v[0], p1 = tri.v[1], p2 = tri.v[2];
        long long a11 = p1.x - p0.x, a12 = p1.y - p0.y;
        long long a21 = p2.x - p0.x, a22 = p2.y - p0.y;
        long long det = a11 * a22 - a12 * a21;
        Rat r1 = h.at(p0) - h.at(p1);
        Rat r2 = h.at(p0) - h.at(p2);
        PlanePoint pos{(a22 * r1 - a12 * r2) / det, (a11 * r2 - a21 * r1) / det};
        cell_index[tri] = (int)c.vertices.size();
        c.vertices.push_back({pos, tri});
    }

    for (const auto& [seg, use] : t.edge_use()) {
        std::vector<int> cells;
        for (const auto& tri : t.triangles) {
            auto ss = tri.segments();
            if (std::find(ss.begin(), ss.end(), seg) != ss.end()) cells.push_back(cell_index[tri]);
        }
        if ((int)cells.size() != use) throw internal_error("dual_curve: edge use mismatch");
        if (use == 2) {
            CurveEdge e;
            e.a = cells[0];
            e.b = cells[1];
            e.dual = seg;
            // direction perpendicular to the dual segment, oriented a -> b
            LatticePoint d{-(seg.b.y - seg.a.y), seg.b.x - seg.a.x};
            PlanePoint delta = c.vertices[e.b].pos - c.vertices[e.a].pos;
            Rat steps = d.x != 0 ? delta.x / d.x : delta.y / d.y;
            if (steps < 0) {
                d = {-d.x, -d.y};
                steps = -steps;
            }
            if (steps == 0 || delta.x != steps * d.x || delta.y != steps * d.y)
                throw internal_error("dual_curve: edge not perpendicular to its dual segment");
            e.dir = d;
            e.steps = steps;
            c.edges.push_back(e);
        } else {
            CurveRay r;
            r.v = cells[0];
            r.dual = seg;
            // min-plus: terms with small exponents win far out, so the rays
            // dual to the bottom side point north, left side east, hypotenuse
            // southwest
            if (seg.a.y == 0 && seg.b.y == 0)
                r.dir = {0, 1};
            else if (seg.a.x == 0 && seg.b.x == 0)
                r.dir = {1, 0};
            else if (seg.a.x + seg.a.y == t.degree && seg.b.x + seg.b.y == t.degree)
                r.dir = {-1, -1};
            else
                throw internal_error("dual_curve: boundary segment not on a triangle side");
            c.rays.push_back(r);
        }
    }
    std::string diag;
    if (!is_balanced(c, &diag)) throw internal_error("dual_curve: unbalanced output: " + diag);
    return c;
}

inline TropicalCurve dual_curve(const HeightFunction& h) {
    Subdivision s = induced_subdivision(h, h.degree);
    if (!s.unimodular)
        throw invalid_argument_error("dual_curve: heights do not induce a unimodular triangulation");
    return dual_curve(h, s.as_triangulation());
}

inline TropicalCurve dual_curve(const Triangulation& t, const HeightFunction& h) {
    return dual_curve(h, t);
}

inline bool check_balancing(const TropicalCurve& c) { return is_balanced(c); }

// ---- tropical lines ----------------------------------------------------

// min(c, x + a, y + b): a degree-1 curve with rays east, north, southwest
struct TropicalLine {
    PlanePoint vertex;

    friend bool operator==(const TropicalLine&, const TropicalLine&) = default;
    friend auto operator<=>(const TropicalLine&, const TropicalLine&) = default;

    TropicalCurve as_curve() const {
        HeightFunction h;
        h.degree = 1;
        h.heights[{0, 0}] = 0;
        h.heights[{1, 0}] = -vertex.x;
        h.heights[{0, 1}] = -vertex.y;
        return dual_curve(h);
    }
};

// ---- points on the curve ---------------------------------------------------

// location of a plane point on the curve, if any
struct CurveLocation {
    enum Kind { Vertex, Edge, Ray } kind;
    int index = 0;
    Rat t;  // lattice-length parameter from the edge/ray start
};

inline std::optional<CurveLocation> locate_on_curve(const TropicalCurve& c, const PlanePoint& p) {
    for (int v = 0; v < (int)c.vertices.size(); ++v)
        if (c.vertices[v].pos == p) return CurveLocation{CurveLocation::Vertex, v, Rat(0)};
    auto param = [&](const PlanePoint& a, LatticePoint dir) -> std::optional<Rat> {
        PlanePoint d = p - a;
        Rat t = dir.x != 0 ? d.x / dir.x : d.y / dir.y;
        if (t <= 0) return std::nullopt;
        if (d.x == t * dir.x && d.y == t * dir.y) return t;
        return std::nullopt;
    };
    for (int e = 0; e < (int)c.edges.size(); ++e) {
        auto t = param(c.vertices[c.edges[e].a].pos, c.edges[e].dir);
        if (t && *t < c.edges[e].steps) return CurveLocation{CurveLocation::Edge, e, *t};
    }
    for (int r = 0; r < (int)c.rays.size(); ++r) {
        auto t = param(c.vertices[c.rays[r].v].pos, c.rays[r].dir);
        if (t) return CurveLocation{CurveLocation::Ray, r, *t};
    }
    return std::nullopt;
}

// ---- skeleton --------------------------------------------------------------

// The skeleton of the curve: the maximal subgraph without 1-valent vertices,
// carried as a metric graph with lattice lengths, plus the retraction of the
// whole curve onto it and the minimal (2-valent-suppressed) model.
struct Skeleton {
    MetricGraph refined;                      // vertices = surviving curve vertices
    std::vector<int> curve_to_refined;        // -1 for pruned curve vertices
    std::vector<int> refined_to_curve;
    std::vector<int> refined_edge_to_curve;   // refined edge -> curve edge
    std::vector<int> retract_to;              // curve vertex -> surviving curve vertex
    MinimalModel minimal;                     // of `refined`

    int genus() const { return refined.genus(); }
    GraphType type() const { return classify_graph(minimal.graph); }
};

inline Skeleton skeleton(const TropicalCurve& c) {
    const int n = (int)c.vertices.size();
    std::vector<char> alive(n, 1);
    auto bounded_valence = [&](int v) {
        int d = 0;
        for (const auto& e : c.edges)
            if ((e.a == v && alive[e.b]) || (e.b == v && alive[e.a])) ++d;
        return d;
    };
    // prune 1-valent vertices (with respect to bounded edges) to a fixpoint;
    // record, for each pruned vertex, the neighbour it retracts toward
    std::vector<int> toward(n, -1);
    bool changed = true;
    while (changed) {
        changed = false;
        for (int v = 0; v < n; ++v) {
            if (!alive[v] || bounded_valence(v) != 1) continue;
            for (const auto& e : c.edges) {
                if (e.a == v && alive[e.b]) toward[v] = e.b;
                if (e.b == v && alive[e.a]) toward[v] = e.a;
            }
            alive[v] = 0;
            changed = true;
        }
    }

    // a genus-0 curve retracts to a single point: use the last survivor of
    // the pruning as the designated trivial graph
    if (std::count(alive.begin(), alive.end(), (char)1) == 0)
        throw internal_error("skeleton: pruning removed every vertex");

    Skeleton s;
    s.curve_to_refined.assign(n, -1);
    for (int v = 0; v < n; ++v)
        if (alive[v]) {
            s.curve_to_refined[v] = s.refined.add_vertex();
            s.refined_to_curve.push_back(v);
        }
    for (int e = 0; e < (int)c.edges.size(); ++e) {
        const auto& ed = c.edges[e];
        if (!alive[ed.a] || !alive[ed.b]) continue;
        s.refined.add_edge(s.curve_to_refined[ed.a], s.curve_to_refined[ed.b], ed.steps);
        s.refined_edge_to_curve.push_back(e);
    }
    s.retract_to.assign(n, -1);
    for (int v = 0; v < n; ++v) {
        int w = v;
        while (!alive[w]) {
            if (toward[w] < 0) throw internal_error("skeleton: pruned vertex without retraction");
            w = toward[w];
        }
        s.retract_to[v] = w;
    }
    s.minimal = minimal_model(s.refined);
    return s;
}

// retraction of a curve point onto the refined skeleton graph
inline GraphPoint retract(const TropicalCurve& c, const Skeleton& s, const CurveLocation& loc) {
    auto vertex_target = [&](int curve_vertex) {
        return GraphPoint::at_vertex(s.curve_to_refined[s.retract_to[curve_vertex]]);
    };
    switch (loc.kind) {
        case CurveLocation::Vertex:
            return vertex_target(loc.index);
        case CurveLocation::Ray:
            return vertex_target(c.rays[loc.index].v);
        case CurveLocation::Edge: {
            const auto& e = c.edges[loc.index];
            for (int re = 0; re < (int)s.refined_edge_to_curve.size(); ++re)
                if (s.refined_edge_to_curve[re] == loc.index) {
                    bool fwd = s.refined_to_curve[s.refined.edges[re].u] == e.a;
                    return canonical_point(s.refined,
                                           GraphPoint::on_edge(re, fwd ? loc.t : e.steps - loc.t));
                }
            // edge was pruned: both endpoints retract to the same survivor
            return vertex_target(e.a);
        }
    }
    throw internal_error("retract: bad location kind");
}

inline GraphPoint retract_plane_point(const TropicalCurve& c, const Skeleton& s, const PlanePoint& p) {
    auto loc = locate_on_curve(c, p);
    if (!loc) throw invalid_argument_error("retract: point " + plane_point_str(p) + " is not on the curve");
    return retract(c, s, *loc);
}

}  // namespace tropq
