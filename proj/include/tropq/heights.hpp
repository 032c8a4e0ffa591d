#pragma once

// Regular lifts: exact LP certificates of regularity for a triangulation, and
// the inverse map from heights to the induced lower-hull subdivision.

#include <algorithm>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <vector>

#include "tropq/errors.hpp"
#include "tropq/lattice.hpp"
#include "tropq/lp.hpp"
#include "tropq/rational.hpp"

namespace tropq {

struct HeightFunction {
    int degree = 0;
    std::map<LatticePoint, Rat> heights;

    const Rat& at(LatticePoint p) const {
        auto it = heights.find(p);
        if (it == heights.end())
            throw invalid_argument_error("height undefined at lattice point");
        return it->second;
    }

    friend bool operator==(const HeightFunction&, const HeightFunction&) = default;
};

inline HeightFunction zero_heights(int d) {
    HeightFunction h;
    h.degree = d;
    for (auto p : newton_points(d)) h.heights[p] = 0;
    return h;
}

// h(p) = x^2 + xy + y^2: strictly convex, induces a unimodular triangulation.
inline HeightFunction quadratic_heights(int d) {
    HeightFunction h;
    h.degree = d;
    for (auto p : newton_points(d))
        h.heights[p] = Rat((long long)p.x * p.x + (long long)p.x * p.y + (long long)p.y * p.y);
    return h;
}

inline HeightFunction apply_symmetry(const SymmetryElement& sym, const HeightFunction& h) {
    HeightFunction out;
    out.degree = h.degree;
    for (const auto& [p, v] : h.heights) out.heights[sym.apply(p, h.degree)] = v;
    return out;
}

// ---- induced subdivision ---------------------------------------------------

struct Subdivision {
    int degree = 0;
    std::vector<std::vector<LatticePoint>> cells;  // ccw convex polygons
    bool unimodular = false;

    Triangulation as_triangulation() const {
        if (!unimodular) throw invalid_argument_error("subdivision is not a unimodular triangulation");
        Triangulation t;
        t.degree = degree;
        for (const auto& c : cells) t.triangles.emplace_back(c[0], c[1], c[2]);
        t.canonicalize();
        return t;
    }
};

namespace detail {

inline std::vector<LatticePoint> convex_hull(std::vector<LatticePoint> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) return pts;
    std::vector<LatticePoint> hull;
    auto build = [&](auto begin, auto end) {
        size_t base = hull.size();
        for (auto it = begin; it != end; ++it) {
            while (hull.size() >= base + 2 &&
                   cross(hull[hull.size() - 2], hull[hull.size() - 1], *it) <= 0)
                hull.pop_back();
            hull.push_back(*it);
        }
        hull.pop_back();
    };
    build(pts.begin(), pts.end());
    build(pts.rbegin(), pts.rend());
    return hull;
}

inline long long polygon_doubled_area(const std::vector<LatticePoint>& poly) {
    long long a = 0;
    for (size_t i = 0; i < poly.size(); ++i) {
        auto p = poly[i], q = poly[(i + 1) % poly.size()];
        a += (long long)p.x * q.y - (long long)p.y * q.x;
    }
    return a;
}

}  // namespace detail

// Projection of the lower convex hull of the lifted lattice points.  Cells
// are the maximal coplanar sets; the result is flagged unimodular when every
// cell is a lattice triangle of area 1/2.
inline Subdivision induced_subdivision(const HeightFunction& h, int d) {
    auto pts = newton_points(d);
    for (auto p : pts)
        if (!h.heights.count(p))
            throw invalid_argument_error("height function incomplete for degree " + std::to_string(d));

    Subdivision sub;
    sub.degree = d;
    std::vector<std::vector<LatticePoint>> seen_sets;
    const int n = (int)pts.size();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k) {
                long long det = cross(pts[i], pts[j], pts[k]);
                if (det == 0) continue;
                // plane z = a*x + b*y + c through the three lifted points
                const Rat hi = h.at(pts[i]), hj = h.at(pts[j]), hk = h.at(pts[k]);
                Rat a = ((hj - hi) * (pts[k].y - pts[i].y) - (hk - hi) * (pts[j].y - pts[i].y)) / det;
                Rat b = ((hk - hi) * (pts[j].x - pts[i].x) - (hj - hi) * (pts[k].x - pts[i].x)) / det;
                Rat c = hi - a * pts[i].x - b * pts[i].y;
                bool lower = true;
                std::vector<LatticePoint> eq;
                for (auto p : pts) {
                    Rat diff = h.at(p) - (a * p.x + b * p.y + c);
                    if (diff < 0) { lower = false; break; }
                    if (diff == 0) eq.push_back(p);
                }
                if (!lower) continue;
                auto hull = detail::convex_hull(eq);
                if (hull.size() < 3) continue;
                if (std::find(seen_sets.begin(), seen_sets.end(), hull) == seen_sets.end())
                    seen_sets.push_back(hull);
            }
    std::sort(seen_sets.begin(), seen_sets.end());
    sub.cells = std::move(seen_sets);

    long long area2 = 0;
    bool all_unit = true;
    for (const auto& c : sub.cells) {
        long long a2 = detail::polygon_doubled_area(c);
        area2 += a2;
        if (c.size() != 3 || a2 != 1) all_unit = false;
    }
    if (area2 != (long long)d * d)
        throw internal_error("induced_subdivision: cells do not tile the triangle");
    sub.unimodular = all_unit && (long long)sub.cells.size() == (long long)d * d;
    return sub;
}

inline bool heights_induce(const HeightFunction& h, const Triangulation& t) {
    Subdivision s = induced_subdivision(h, t.degree);
    return s.unimodular && s.as_triangulation() == t;
}

// ---- regular lift ----------------------------------------------------------

// One strict convexity inequality per interior edge: the opposite vertex of
// the second triangle must lift strictly above the plane of the first.  The
// three corner heights are pinned to zero (affine gauge).
inline std::optional<HeightFunction> try_regular_heights(const Triangulation& t) {
    const int d = t.degree;
    std::string diag;
    if (!is_unimodular_triangulation(t, &diag))
        throw invalid_argument_error("regular_heights: not a unimodular triangulation: " + diag);

    auto pts = newton_points(d);
    std::map<LatticePoint, int> var;  // -1 for pinned corners
    const LatticePoint corners[3] = {{0, 0}, {d, 0}, {0, d}};
    int nv = 0;
    for (auto p : pts) {
        bool pinned = false;
        for (auto c : corners) pinned |= (p == c);
        var[p] = pinned ? -1 : nv++;
    }

    std::vector<std::vector<Rat>> A;
    for (const auto& seg : t.interior_edges()) {
        std::vector<const LatticeTriangle*> tris;
        for (const auto& tri : t.triangles) {
            auto segs = tri.segments();
            if (std::find(segs.begin(), segs.end(), seg) != segs.end()) tris.push_back(&tri);
        }
        if (tris.size() != 2) throw internal_error("interior edge without two triangles");
        LatticePoint a = seg.a, b = seg.b, c{}, e{};
        for (auto p : tris[0]->v)
            if (!(p == a) && !(p == b)) c = p;
        for (auto p : tris[1]->v)
            if (!(p == a) && !(p == b)) e = p;
        // integral barycentric coordinates of e with respect to (a, b, c)
        long long det = cross(a, b, c);  // +-1
        long long beta = cross(a, e, c) / det;
        long long gamma = cross(a, b, e) / det;
        long long alpha = 1 - beta - gamma;
        // alpha h(a) + beta h(b) + gamma h(c) - h(e) < 0
        std::vector<Rat> row(nv, Rat(0));
        auto add = [&](LatticePoint p, long long coef) {
            if (var[p] >= 0) row[var[p]] += Rat(coef);
        };
        add(a, alpha);
        add(b, beta);
        add(c, gamma);
        add(e, -1);
        A.push_back(std::move(row));
    }
    std::vector<Rat> rhs(A.size(), Rat(0));

    auto x = strict_feasible_point(A, rhs);
    if (!x) return std::nullopt;

    HeightFunction h;
    h.degree = d;
    for (auto p : pts) h.heights[p] = var[p] >= 0 ? (*x)[var[p]] : Rat(0);

    // clear denominators to integers, then divide by the common content
    Int l = 1;
    for (const auto& [p, v] : h.heights) l = int_lcm(l, rat_den(v));
    Int g = 0;
    for (auto& [p, v] : h.heights) {
        v *= l;
        g = int_gcd(g, rat_num(v));
    }
    if (g > 1)
        for (auto& [p, v] : h.heights) v /= g;
    return h;
}

inline HeightFunction regular_heights(const Triangulation& t) {
    auto h = try_regular_heights(t);
    if (!h)
        throw non_regular_error("triangulation admits no strictly convex lift:\n" +
                                triangulation_to_string(t));
    if (!heights_induce(*h, t))
        throw internal_error("regular_heights: round-trip failed");
    return *h;
}

// ---- text format: one "x,y num[/den]" line per lattice point ---------------

inline void write_heights(std::ostream& os, const HeightFunction& h) {
    os << "degree " << h.degree << "\n";
    for (const auto& [p, v] : h.heights)
        os << p.x << ',' << p.y << ' ' << rat_str(v) << "\n";
}

inline HeightFunction read_heights(std::istream& is) {
    HeightFunction h;
    std::string line;
    int lineno = 0;
    if (!std::getline(is, line)) throw parse_error("empty height input", 1);
    ++lineno;
    {
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw >> h.degree) || kw != "degree" || h.degree < 1)
            throw parse_error("expected header 'degree d'", lineno);
    }
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string coord, val;
        if (!(ls >> coord >> val)) throw parse_error("expected 'x,y value'", lineno);
        auto comma = coord.find(',');
        if (comma == std::string::npos) throw parse_error("expected 'x,y'", lineno);
        LatticePoint p;
        try {
            p.x = std::stoi(coord.substr(0, comma));
            p.y = std::stoi(coord.substr(comma + 1));
            h.heights[p] = parse_rat(val);
        } catch (const parse_error&) {
            throw;
        } catch (const std::exception&) {
            throw parse_error("bad height entry '" + line + "'", lineno);
        }
    }
    return h;
}

}  // namespace tropq
