#pragma once

// Unimodular triangulations of the dilated standard triangle: enumeration,
// S3 symmetry classes, and the line-oriented text format.

#include <algorithm>
#include <array>
#include <cstdint>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "tropq/errors.hpp"

namespace tropq {

struct LatticePoint {
    int x = 0;
    int y = 0;
    friend bool operator==(const LatticePoint&, const LatticePoint&) = default;
    friend auto operator<=>(const LatticePoint&, const LatticePoint&) = default;
};

inline LatticePoint operator-(LatticePoint a, LatticePoint b) { return {a.x - b.x, a.y - b.y}; }

inline long long cross(LatticePoint o, LatticePoint a, LatticePoint b) {
    return (long long)(a.x - o.x) * (b.y - o.y) - (long long)(a.y - o.y) * (b.x - o.x);
}

inline bool in_newton_triangle(LatticePoint p, int d) {
    return p.x >= 0 && p.y >= 0 && p.x + p.y <= d;
}

inline bool is_interior_point(LatticePoint p, int d) {
    return p.x >= 1 && p.y >= 1 && p.x + p.y <= d - 1;
}

// Lattice points of the degree-d triangle, row by row from (0,0):
// (0,0),(1,0),...,(d,0),(0,1),...  Count is (d+1)(d+2)/2.
inline std::vector<LatticePoint> newton_points(int d) {
    if (d < 1) throw invalid_argument_error("newton_points: degree must be positive");
    std::vector<LatticePoint> pts;
    for (int y = 0; y <= d; ++y)
        for (int x = 0; x + y <= d; ++x) pts.push_back({x, y});
    return pts;
}

// Undirected primitive lattice segment, endpoints sorted.
struct LatticeSegment {
    LatticePoint a, b;
    LatticeSegment() = default;
    LatticeSegment(LatticePoint p, LatticePoint q) : a(p), b(q) {
        if (b < a) std::swap(a, b);
    }
    friend bool operator==(const LatticeSegment&, const LatticeSegment&) = default;
    friend auto operator<=>(const LatticeSegment&, const LatticeSegment&) = default;
};

// Counterclockwise triangle; canonical form rotates the smallest vertex first.
struct LatticeTriangle {
    std::array<LatticePoint, 3> v;

    LatticeTriangle() = default;
    LatticeTriangle(LatticePoint a, LatticePoint b, LatticePoint c) : v{a, b, c} {
        if (cross(v[0], v[1], v[2]) < 0) std::swap(v[1], v[2]);
        int lo = 0;
        if (v[1] < v[lo]) lo = 1;
        if (v[2] < v[lo]) lo = 2;
        std::rotate(v.begin(), v.begin() + lo, v.end());
    }

    long long doubled_area() const { return cross(v[0], v[1], v[2]); }
    bool unimodular() const { return doubled_area() == 1; }

    std::array<LatticeSegment, 3> segments() const {
        return {LatticeSegment(v[0], v[1]), LatticeSegment(v[1], v[2]),
                LatticeSegment(v[2], v[0])};
    }

    friend bool operator==(const LatticeTriangle&, const LatticeTriangle&) = default;
    friend auto operator<=>(const LatticeTriangle&, const LatticeTriangle&) = default;
};

// Separating-axis test on the edge normals; all arithmetic is integral.
// Triangles sharing only boundary (edge or vertex) count as disjoint.
inline bool triangles_interior_disjoint(const LatticeTriangle& s, const LatticeTriangle& t) {
    auto separated_by_axes_of = [](const LatticeTriangle& p, const LatticeTriangle& q) {
        for (int i = 0; i < 3; ++i) {
            LatticePoint e = p.v[(i + 1) % 3] - p.v[i];
            // inward normal of ccw edge
            long long nx = -e.y, ny = e.x;
            long long pmin = 0, pmax = 0, qmin = 0, qmax = 0;
            for (int j = 0; j < 3; ++j) {
                long long dp = nx * p.v[j].x + ny * p.v[j].y;
                long long dq = nx * q.v[j].x + ny * q.v[j].y;
                if (j == 0) { pmin = pmax = dp; qmin = qmax = dq; }
                else {
                    pmin = std::min(pmin, dp); pmax = std::max(pmax, dp);
                    qmin = std::min(qmin, dq); qmax = std::max(qmax, dq);
                }
            }
            if (pmax <= qmin || qmax <= pmin) return true;
        }
        return false;
    };
    return separated_by_axes_of(s, t) || separated_by_axes_of(t, s);
}

struct Triangulation {
    int degree = 0;
    std::vector<LatticeTriangle> triangles;  // kept sorted

    void canonicalize() { std::sort(triangles.begin(), triangles.end()); }

    // segment -> number of incident triangles
    std::map<LatticeSegment, int> edge_use() const {
        std::map<LatticeSegment, int> use;
        for (const auto& t : triangles)
            for (const auto& s : t.segments()) ++use[s];
        return use;
    }

    std::vector<LatticeSegment> interior_edges() const {
        std::vector<LatticeSegment> out;
        for (const auto& [s, n] : edge_use())
            if (n == 2) out.push_back(s);
        return out;
    }

    friend bool operator==(const Triangulation&, const Triangulation&) = default;
    friend auto operator<=>(const Triangulation&, const Triangulation&) = default;
};

inline bool segment_on_boundary(const LatticeSegment& s, int d) {
    auto on_line = [&](LatticePoint p, int which) {
        switch (which) {
            case 0: return p.y == 0;
            case 1: return p.x == 0;
            default: return p.x + p.y == d;
        }
    };
    for (int w = 0; w < 3; ++w)
        if (on_line(s.a, w) && on_line(s.b, w)) return true;
    return false;
}

// True iff t tiles the degree-d triangle with d^2 unimodular triangles.
// Failures are reported through the optional diagnostic, never thrown.
inline bool is_unimodular_triangulation(const Triangulation& t, std::string* diagnostic = nullptr) {
    auto fail = [&](const std::string& why) {
        if (diagnostic) *diagnostic = why;
        return false;
    };
    int d = t.degree;
    if (d < 1) return fail("degree must be positive");
    if ((long long)t.triangles.size() != (long long)d * d)
        return fail("expected " + std::to_string(d * d) + " triangles, found " +
                    std::to_string(t.triangles.size()));
    long long area2 = 0;
    for (const auto& tri : t.triangles) {
        for (const auto& p : tri.v)
            if (!in_newton_triangle(p, d)) return fail("vertex outside the degree-d triangle");
        if (!tri.unimodular()) return fail("triangle of doubled area " + std::to_string(tri.doubled_area()));
        area2 += tri.doubled_area();
    }
    if (area2 != (long long)d * d) return fail("areas do not sum to d^2/2");
    for (size_t i = 0; i < t.triangles.size(); ++i)
        for (size_t j = i + 1; j < t.triangles.size(); ++j) {
            if (t.triangles[i] == t.triangles[j]) return fail("duplicate triangle");
            if (!triangles_interior_disjoint(t.triangles[i], t.triangles[j]))
                return fail("overlapping triangles");
        }
    // Disjoint unimodular triangles of total area d^2/2 inside the triangle
    // leave no gaps; check the edge-pairing closure property as well.
    for (const auto& [s, n] : t.edge_use()) {
        bool bnd = segment_on_boundary(s, d);
        if (bnd && n != 1) return fail("boundary edge used " + std::to_string(n) + " times");
        if (!bnd && n != 2) return fail("interior edge used " + std::to_string(n) + " times");
    }
    return true;
}

namespace detail {

// Precomputed geometry shared by the enumerator.
struct TriangleUniverse {
    int degree;
    std::vector<LatticeTriangle> all;                 // all unimodular triangles in T_d
    std::vector<std::array<int, 3>> tri_segments;     // segment ids per triangle
    std::vector<LatticeSegment> segments;             // id -> segment
    std::vector<int> required_use;                    // 1 on boundary, 2 inside
    std::vector<std::vector<int>> by_segment;         // segment id -> triangle ids
    std::vector<std::vector<uint64_t>> compatible;    // bitset: interior-disjoint pairs

    explicit TriangleUniverse(int d) : degree(d) {
        auto pts = newton_points(d);
        for (size_t i = 0; i < pts.size(); ++i)
            for (size_t j = i + 1; j < pts.size(); ++j)
                for (size_t k = j + 1; k < pts.size(); ++k) {
                    LatticeTriangle t(pts[i], pts[j], pts[k]);
                    if (std::abs((long long)cross(pts[i], pts[j], pts[k])) == 1) all.push_back(t);
                }
        std::sort(all.begin(), all.end());

        std::map<LatticeSegment, int> seg_id;
        for (const auto& t : all) {
            std::array<int, 3> ids;
            int si = 0;
            for (const auto& s : t.segments()) {
                auto it = seg_id.find(s);
                if (it == seg_id.end()) {
                    it = seg_id.emplace(s, (int)segments.size()).first;
                    segments.push_back(s);
                    required_use.push_back(segment_on_boundary(s, d) ? 1 : 2);
                    by_segment.emplace_back();
                }
                ids[si++] = it->second;
            }
            tri_segments.push_back(ids);
        }
        for (size_t ti = 0; ti < all.size(); ++ti)
            for (int sid : tri_segments[ti]) by_segment[sid].push_back((int)ti);

        size_t words = (all.size() + 63) / 64;
        compatible.assign(all.size(), std::vector<uint64_t>(words, 0));
        for (size_t i = 0; i < all.size(); ++i)
            for (size_t j = i + 1; j < all.size(); ++j)
                if (triangles_interior_disjoint(all[i], all[j])) {
                    compatible[i][j / 64] |= 1ull << (j % 64);
                    compatible[j][i / 64] |= 1ull << (i % 64);
                }
    }
};

struct Enumerator {
    const TriangleUniverse& u;
    std::vector<int> use;             // per segment
    std::vector<uint64_t> allowed;    // triangles compatible with everything placed
    std::vector<int> placed;
    std::vector<Triangulation>& out;

    Enumerator(const TriangleUniverse& universe, std::vector<Triangulation>& sink)
        : u(universe), out(sink) {
        use.assign(u.segments.size(), 0);
        allowed.assign((u.all.size() + 63) / 64, ~0ull);
        if (u.all.size() % 64)
            allowed.back() = (1ull << (u.all.size() % 64)) - 1;
    }

    // Smallest segment still needing another triangle drives the search; each
    // node branches over the distinct fillers of that one segment, so no
    // triangulation is produced twice.
    int deficient_segment() const {
        for (size_t s = 0; s < u.segments.size(); ++s) {
            if (use[s] > 0 && use[s] < u.required_use[s]) return (int)s;
        }
        for (size_t s = 0; s < u.segments.size(); ++s)
            if (use[s] < u.required_use[s] && u.required_use[s] == 1) return (int)s;
        return -1;
    }

    void run() {
        int target = u.degree * u.degree;
        if ((int)placed.size() == target) {
            Triangulation t;
            t.degree = u.degree;
            for (int ti : placed) t.triangles.push_back(u.all[ti]);
            t.canonicalize();
            out.push_back(t);
            return;
        }
        int s = deficient_segment();
        if (s < 0) return;  // saturated but incomplete: dead branch
        for (int ti : u.by_segment[s]) {
            if (!(allowed[ti / 64] >> (ti % 64) & 1)) continue;
            bool ok = true;
            for (int sid : u.tri_segments[ti])
                if (use[sid] >= u.required_use[sid]) { ok = false; break; }
            if (!ok) continue;
            place(ti);
            run();
            unplace(ti);
        }
    }

    std::vector<std::vector<uint64_t>> saved;

    void place(int ti) {
        placed.push_back(ti);
        for (int sid : u.tri_segments[ti]) ++use[sid];
        saved.push_back(allowed);
        for (size_t w = 0; w < allowed.size(); ++w) allowed[w] &= u.compatible[ti][w];
    }

    void unplace(int ti) {
        placed.pop_back();
        for (int sid : u.tri_segments[ti]) --use[sid];
        allowed = std::move(saved.back());
        saved.pop_back();
    }
};

}  // namespace detail

// Complete duplicate-free list, sorted in canonical order.
inline std::vector<Triangulation> enumerate_unimodular_triangulations(int d, int max_degree = 4) {
    if (d < 1) throw invalid_argument_error("enumerate_unimodular_triangulations: degree must be positive");
    if (d > max_degree)
        throw resource_limit_error("enumeration limited to degree " + std::to_string(max_degree));
    detail::TriangleUniverse universe(d);
    std::vector<Triangulation> out;
    detail::Enumerator e(universe, out);
    e.run();
    std::sort(out.begin(), out.end());
    return out;
}

// ---- S3 symmetry ---------------------------------------------------------

// The affine automorphisms of T_d permute the barycentric coordinates
// (d-x-y, x, y).  Index 0 is the identity.
struct SymmetryElement {
    std::array<int, 3> perm{0, 1, 2};

    LatticePoint apply(LatticePoint p, int d) const {
        std::array<int, 3> b{d - p.x - p.y, p.x, p.y};
        std::array<int, 3> nb;
        for (int i = 0; i < 3; ++i) nb[i] = b[perm[i]];
        return {nb[1], nb[2]};
    }

    Triangulation apply(const Triangulation& t) const {
        Triangulation out;
        out.degree = t.degree;
        for (const auto& tri : t.triangles)
            out.triangles.emplace_back(apply(tri.v[0], t.degree), apply(tri.v[1], t.degree),
                                       apply(tri.v[2], t.degree));
        out.canonicalize();
        return out;
    }
};

inline const std::array<SymmetryElement, 6>& s3_elements() {
    static const std::array<SymmetryElement, 6> elems = {{
        {{0, 1, 2}}, {{0, 2, 1}}, {{1, 0, 2}}, {{1, 2, 0}}, {{2, 0, 1}}, {{2, 1, 0}},
    }};
    return elems;
}

inline Triangulation s3_canonical_representative(const Triangulation& t) {
    Triangulation best = s3_elements()[0].apply(t);
    for (int k = 1; k < 6; ++k) {
        Triangulation img = s3_elements()[k].apply(t);
        if (img < best) best = img;
    }
    return best;
}

struct S3Orbit {
    Triangulation representative;     // lexicographically minimal image
    std::vector<size_t> members;      // indices into the input list
};

inline std::vector<S3Orbit> s3_orbits(const std::vector<Triangulation>& ts) {
    std::map<Triangulation, S3Orbit> orbits;
    for (size_t i = 0; i < ts.size(); ++i) {
        Triangulation rep = s3_canonical_representative(ts[i]);
        auto& orb = orbits[rep];
        if (orb.members.empty()) orb.representative = rep;
        orb.members.push_back(i);
    }
    std::vector<S3Orbit> out;
    for (auto& [rep, orb] : orbits) out.push_back(std::move(orb));
    return out;
}

// ---- text format ---------------------------------------------------------
//
//   degree 4
//   0,0 1,0 0,1
//   ...

inline void write_triangulation(std::ostream& os, const Triangulation& t) {
    os << "degree " << t.degree << "\n";
    for (const auto& tri : t.triangles) {
        for (int i = 0; i < 3; ++i) {
            if (i) os << ' ';
            os << tri.v[i].x << ',' << tri.v[i].y;
        }
        os << "\n";
    }
}

inline std::string triangulation_to_string(const Triangulation& t) {
    std::ostringstream os;
    write_triangulation(os, t);
    return os.str();
}

inline Triangulation read_triangulation(std::istream& is) {
    Triangulation t;
    std::string line;
    int lineno = 0;
    if (!std::getline(is, line)) throw parse_error("empty triangulation input", 1);
    ++lineno;
    {
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw >> t.degree) || kw != "degree" || t.degree < 1)
            throw parse_error("expected header 'degree d'", lineno);
    }
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::array<LatticePoint, 3> v;
        std::istringstream ls(line);
        for (int i = 0; i < 3; ++i) {
            std::string tok;
            if (!(ls >> tok)) throw parse_error("expected three vertices", lineno);
            auto comma = tok.find(',');
            if (comma == std::string::npos) throw parse_error("expected 'x,y'", lineno);
            try {
                v[i].x = std::stoi(tok.substr(0, comma));
                v[i].y = std::stoi(tok.substr(comma + 1));
            } catch (const std::exception&) {
                throw parse_error("bad coordinate '" + tok + "'", lineno);
            }
        }
        if (cross(v[0], v[1], v[2]) == 0) throw parse_error("degenerate triangle", lineno);
        t.triangles.emplace_back(v[0], v[1], v[2]);
    }
    t.canonicalize();
    return t;
}

}  // namespace tropq
