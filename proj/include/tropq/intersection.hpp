#pragma once

// Stable intersection of tropical curves via symbolic first-order
// perturbation, tropical lines through point pairs (with one-parameter
// families), and the exact overlay of a line with a curve into connected
// components.

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

#include "tropq/curve.hpp"
#include "tropq/divisor.hpp"
#include "tropq/errors.hpp"
#include "tropq/metric_graph.hpp"
#include "tropq/rational.hpp"

namespace tropq {

// ---- first-order infinitesimals -----------------------------------------

// a + b*eps with eps an infinitesimal; enough structure for solving the 2x2
// transversal-intersection systems, whose determinants are plain integers
struct Eps1 {
    Rat a, b;

    Eps1(Rat a_ = Rat(0), Rat b_ = Rat(0)) : a(std::move(a_)), b(std::move(b_)) {}

    Eps1 operator+(const Eps1& o) const { return {a + o.a, b + o.b}; }
    Eps1 operator-(const Eps1& o) const { return {a - o.a, b - o.b}; }
    Eps1 operator*(const Rat& s) const { return {a * s, b * s}; }
    Eps1 operator/(const Rat& s) const { return {a / s, b / s}; }

    friend bool operator==(const Eps1&, const Eps1&) = default;
    friend auto operator<=>(const Eps1& x, const Eps1& y) {
        if (auto c = x.a.compare(y.a); c != 0) return c <=> 0;  // lexicographic: eps > 0 tiny
        return x.b.compare(y.b) <=> 0;
    }
};

namespace detail {

struct EPoint {
    Eps1 x, y;
};

// one linear piece of a curve: start + t * dir for t in [0, len), or [0, inf)
struct Piece {
    EPoint start;
    LatticePoint dir;
    Rat len;  // in primitive steps
    bool bounded;
};

inline std::vector<Piece> curve_pieces(const TropicalCurve& c, const Eps1& sx, const Eps1& sy) {
    std::vector<Piece> out;
    auto shift = [&](const PlanePoint& p) { return EPoint{Eps1(p.x) + sx, Eps1(p.y) + sy}; };
    for (const auto& e : c.edges)
        out.push_back({shift(c.vertices[e.a].pos), e.dir, e.steps, true});
    for (const auto& r : c.rays)
        out.push_back({shift(c.vertices[r.v].pos), r.dir, Rat(0), false});
    return out;
}

}  // namespace detail

using IntersectionDivisor = std::map<PlanePoint, int>;

inline int intersection_degree(const IntersectionDivisor& d) {
    int s = 0;
    for (const auto& [p, m] : d) s += m;
    return s;
}

// Stable intersection a . b: translate b by eps*(1, tau) for an infinitesimal
// eps, intersect transversally with exact first-order arithmetic, and read
// off the eps -> 0 limit positions.  Multiplicities are |det| of the primitive
// directions (all weights here are 1).  Half-open parameter ranges make every
// crossing count exactly once.
inline IntersectionDivisor stable_intersection(const TropicalCurve& a, const TropicalCurve& b,
                                               const Rat& tau = Rat(17, 12)) {
    auto pa = detail::curve_pieces(a, Eps1(), Eps1());
    auto pb = detail::curve_pieces(b, Eps1(Rat(0), Rat(1)), Eps1(Rat(0), tau));
    IntersectionDivisor out;
    for (const auto& p : pa) {
        for (const auto& q : pb) {
            long long det =
                (long long)p.dir.x * q.dir.y - (long long)p.dir.y * q.dir.x;
            if (det == 0) continue;  // parallel: no transversal crossing after the shift
            // p.start + t p.dir = q.start + s q.dir
            Eps1 rx = q.start.x - p.start.x;
            Eps1 ry = q.start.y - p.start.y;
            Eps1 t = (rx * Rat(q.dir.y) - ry * Rat(q.dir.x)) / Rat(det);
            Eps1 s = (rx * Rat(p.dir.y) - ry * Rat(p.dir.x)) / Rat(det);
            const Eps1 zero;
            if (t < zero || (p.bounded && !(t < Eps1(p.len)))) continue;
            if (s < zero || (q.bounded && !(s < Eps1(q.len)))) continue;
            PlanePoint limit{p.start.x.a + t.a * p.dir.x, p.start.y.a + t.a * p.dir.y};
            out[limit] += (int)(det < 0 ? -det : det);
        }
    }
    return out;
}

// ---- tropical lines through two points ------------------------------------

// A one-parameter family of tropical lines: vertices base + t * dir for
// t in [0, len] (or [0, inf) when unbounded)
struct LineFamily {
    PlanePoint base;
    LatticePoint dir;
    Rat len;
    bool bounded = false;

    TropicalLine at(const Rat& t) const {
        return TropicalLine{{base.x + t * dir.x, base.y + t * dir.y}};
    }
};

struct LinesThrough {
    std::optional<TropicalLine> unique_line;
    std::optional<LineFamily> family;
};

inline bool line_passes_through(const TropicalLine& l, const PlanePoint& p) {
    PlanePoint d{p.x - l.vertex.x, p.y - l.vertex.y};
    if (d.x == 0 && d.y >= 0) return true;                 // north ray
    if (d.y == 0 && d.x >= 0) return true;                 // east ray
    if (d.x == d.y && d.x <= 0) return true;               // southwest ray
    return false;
}

// The set of lines through p and q: generically unique; a one-parameter
// family exactly when q - p is proportional to a ray direction.  The vertex
// set V(p) of lines through p consists of three rays from p in the directions
// opposite to the line's rays.
inline LinesThrough tropical_lines_through(const PlanePoint& p, const PlanePoint& q) {
    if (p == q)
        throw invalid_argument_error("tropical_lines_through: points coincide (two-parameter family)");
    const LatticePoint back[3] = {{-1, 0}, {0, -1}, {1, 1}};  // V(p) ray directions
    PlanePoint d{q.x - p.x, q.y - p.y};

    // family case: q - p along a ray direction of the line
    auto family_between = [&](const PlanePoint& lo) -> LineFamily {
        // all vertices v with both p and q on the line of v form a ray or
        // segment of V(p) cap V(q); compute by scanning candidate directions
        for (auto dir : back) {
            // candidates v = lo + t*dir, t >= 0; find maximal closed interval
            // of t (including t unbounded) with both points on the line
            auto on_both = [&](const Rat& t) {
                TropicalLine l{{lo.x + t * dir.x, lo.y + t * dir.y}};
                return line_passes_through(l, p) && line_passes_through(l, q);
            };
            if (!on_both(Rat(0)) || !on_both(Rat(1))) continue;
            // the valid set is an interval starting at 0; find its end by
            // doubling + binary search over rationals is overkill: the
            // breakpoints are where lo + t*dir aligns with p or q on another
            // ray, all solutions of linear equations; collect them
            std::vector<Rat> breaks;
            for (const PlanePoint* pt : {&p, &q}) {
                // pt on line of v requires v on one of three rays from pt;
                // intersect {lo + t*dir} with each ray line
                for (auto rdir : back) {
                    long long det = (long long)dir.x * rdir.y - (long long)dir.y * rdir.x;
                    if (det == 0) continue;
                    Rat rx = pt->x - lo.x, ry = pt->y - lo.y;
                    Rat t = (rx * rdir.y - ry * rdir.x) / det;
                    if (t > 0) breaks.push_back(t);
                }
            }
            Rat end(0);
            bool bounded = false;
            std::sort(breaks.begin(), breaks.end());
            for (const Rat& t : breaks) {
                if (on_both(t)) {
                    end = t;
                } else {
                    bounded = true;
                    break;
                }
            }
            if (!bounded) return LineFamily{lo, dir, Rat(0), false};
            if (end > 0) return LineFamily{lo, dir, end, true};
        }
        throw internal_error("tropical_lines_through: family direction not found");
    };

    bool aligned = (d.x == 0) || (d.y == 0) || (d.x == d.y);
    if (aligned) {
        // base vertex: the lex-smaller of p, q works as one end of the family
        // interval after normalizing to the family's own base
        PlanePoint lo = std::min(p, q);
        PlanePoint hi = std::max(p, q);
        // the family base is the point from which vertices can move: both p
        // and q must stay on the line, so start from either end and scan
        for (const PlanePoint* cand : {&lo, &hi}) {
            TropicalLine l{*cand};
            if (line_passes_through(l, p) && line_passes_through(l, q)) {
                LinesThrough r;
                r.family = family_between(*cand);
                return r;
            }
        }
        throw internal_error("tropical_lines_through: aligned points without family base");
    }

    // generic case: intersect the three rays of V(p) with those of V(q)
    std::vector<PlanePoint> candidates;
    for (auto dp : back)
        for (auto dq : back) {
            long long det = (long long)dp.x * dq.y - (long long)dp.y * dq.x;
            if (det == 0) continue;
            Rat rx = q.x - p.x, ry = q.y - p.y;
            Rat t = (rx * dq.y - ry * dq.x) / det;
            Rat s = (rx * dp.y - ry * dp.x) / det;
            if (t < 0 || s < 0) continue;
            candidates.push_back({p.x + t * dp.x, p.y + t * dp.y});
        }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    std::erase_if(candidates, [&](const PlanePoint& v) {
        TropicalLine l{v};
        return !(line_passes_through(l, p) && line_passes_through(l, q));
    });
    if (candidates.size() != 1)
        throw internal_error("tropical_lines_through: expected a unique vertex, got " +
                             std::to_string(candidates.size()));
    LinesThrough r;
    r.unique_line = TropicalLine{candidates[0]};
    return r;
}

// ---- exact overlay of a line with a curve ---------------------------------

// connected component of the set L cap C, as closed parameter intervals on
// the line's three rays (ray index, [lo, hi] in primitive steps; hi < 0
// encodes unbounded)
struct OverlayComponent {
    struct Arc {
        int ray;  // 0 = east (1,0), 1 = north (0,1), 2 = southwest (-1,-1)
        Rat lo, hi;
        bool unbounded = false;
    };
    std::vector<Arc> arcs;
    bool contains(int ray, const Rat& t) const {
        for (const auto& a : arcs)
            if (a.ray == ray && a.lo <= t && (a.unbounded || t <= a.hi)) return true;
        return false;
    }
};

// All connected components of the set-theoretic intersection of line and
// curve, by exact 1-complex overlay: per-ray interval collection, merging,
// and gluing at the line's vertex.
inline std::vector<OverlayComponent> intersection_components(const TropicalLine& l,
                                                             const TropicalCurve& c) {
    const LatticePoint ray_dirs[3] = {{1, 0}, {0, 1}, {-1, -1}};
    struct Interval { Rat lo, hi; bool unbounded; };
    std::vector<std::vector<Interval>> per_ray(3);

    auto cpieces = detail::curve_pieces(c, Eps1(), Eps1());
    for (int r = 0; r < 3; ++r) {
        LatticePoint dir = ray_dirs[r];
        for (const auto& p : cpieces) {
            long long det = (long long)dir.x * p.dir.y - (long long)dir.y * p.dir.x;
            Rat rx = p.start.x.a - l.vertex.x, ry = p.start.y.a - l.vertex.y;
            if (det != 0) {
                // transversal: l.vertex + t dir = start + s p.dir
                Rat t = (rx * p.dir.y - ry * p.dir.x) / det;
                Rat s = (rx * dir.y - ry * dir.x) / det;
                if (t < 0 || s < 0) continue;
                if (p.bounded && s > p.len) continue;
                per_ray[r].push_back({t, t, false});
            } else {
                // parallel: collinear iff start - vertex is along dir
                Rat crossv = rx * dir.y - ry * dir.x;
                if (crossv != 0) continue;
                Rat t0 = dir.x != 0 ? rx / dir.x : ry / dir.y;  // piece start on line param
                // piece runs from t0 to t0 + len * (p.dir o dir sign)
                long long align = (long long)p.dir.x * dir.x + (long long)p.dir.y * dir.y;
                bool same_dir = align > 0;
                if (!p.bounded) {
                    if (same_dir) {
                        Rat lo = t0 < 0 ? Rat(0) : t0;
                        per_ray[r].push_back({lo, Rat(0), true});
                    } else {
                        if (t0 < 0) continue;
                        per_ray[r].push_back({Rat(0), t0, false});
                    }
                } else {
                    Rat t1 = same_dir ? Rat(t0 + p.len) : Rat(t0 - p.len);
                    Rat lo = std::min(t0, t1), hi = std::max(t0, t1);
                    if (hi < 0) continue;
                    if (lo < 0) lo = 0;
                    per_ray[r].push_back({lo, hi, false});
                }
            }
        }
        // merge touching/overlapping intervals
        auto& iv = per_ray[r];
        std::sort(iv.begin(), iv.end(), [](const Interval& a, const Interval& b) {
            if (a.lo != b.lo) return a.lo < b.lo;
            if (a.unbounded != b.unbounded) return b.unbounded;
            return a.hi < b.hi;
        });
        std::vector<Interval> merged;
        for (const auto& cur : iv) {
            if (!merged.empty()) {
                auto& last = merged.back();
                if (last.unbounded || cur.lo <= last.hi) {
                    if (!last.unbounded) {
                        if (cur.unbounded)
                            last.unbounded = true;
                        else if (cur.hi > last.hi)
                            last.hi = cur.hi;
                    }
                    continue;
                }
            }
            merged.push_back(cur);
        }
        iv = std::move(merged);
    }

    // glue at the vertex: intervals starting at 0 on different rays join
    std::vector<OverlayComponent> comps;
    OverlayComponent at_vertex;
    for (int r = 0; r < 3; ++r)
        for (const auto& iv : per_ray[r]) {
            if (iv.lo == 0)
                at_vertex.arcs.push_back({r, iv.lo, iv.hi, iv.unbounded});
            else
                comps.push_back({{{r, iv.lo, iv.hi, iv.unbounded}}});
        }
    if (!at_vertex.arcs.empty()) comps.push_back(std::move(at_vertex));
    return comps;
}

// parameter of a plane point on the line, if it lies on it
inline std::optional<std::pair<int, Rat>> line_parameter(const TropicalLine& l, const PlanePoint& p) {
    PlanePoint d{p.x - l.vertex.x, p.y - l.vertex.y};
    if (d.x == 0 && d.y >= 0) return std::pair{1, d.y};
    if (d.y == 0 && d.x >= 0) return std::pair{0, d.x};
    if (d.x == d.y && d.x <= 0) return std::pair{2, Rat(-d.x)};
    return std::nullopt;
}

// ---- retraction to the skeleton -------------------------------------------

// Express an intersection divisor supported on the curve as a divisor on the
// skeleton: chips on rays and pruned tree parts retract along leaf edges.
inline Divisor push_to_metric(const TropicalCurve& c, const Skeleton& s,
                              const IntersectionDivisor& div) {
    Divisor out;
    for (const auto& [p, m] : div) {
        auto loc = locate_on_curve(c, p);
        if (!loc)
            throw mismatch_error("push_to_metric: point " + plane_point_str(p) +
                                 " is not on the curve");
        divisor_add(s.refined, out, retract(c, s, *loc), m);
    }
    return out;
}

}  // namespace tropq
