#pragma once

// SVG emission for triangulations and analyzed curves: curve in black with
// the skeleton highlighted in red, theta chips as colored dots, bitangent
// lines in blue with one-parameter families drawn as shaded bands.  All
// coordinates pass through exact rational arithmetic and a deterministic
// fixed-point decimal printer, so output is byte-identical across runs.

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "tropq/census.hpp"
#include "tropq/curve.hpp"
#include "tropq/intersection.hpp"
#include "tropq/rational.hpp"

namespace tropq {

namespace detail {

struct SvgCanvas {
    Rat min_x, min_y, max_x, max_y;  // world box (mathematical y up)
    Rat scale{40};
    Rat margin{20};

    Rat width() const { return (max_x - min_x) * scale + 2 * margin; }
    Rat height() const { return (max_y - min_y) * scale + 2 * margin; }
    std::string sx(const Rat& x) const { return rat_decimal((x - min_x) * scale + margin, 2); }
    std::string sy(const Rat& y) const { return rat_decimal((max_y - y) * scale + margin, 2); }
    std::string pt(const PlanePoint& p) const { return sx(p.x) + "," + sy(p.y); }

    std::ostringstream body;

    void line(const PlanePoint& a, const PlanePoint& b, const std::string& style) {
        body << "<line x1=\"" << sx(a.x) << "\" y1=\"" << sy(a.y) << "\" x2=\"" << sx(b.x)
             << "\" y2=\"" << sy(b.y) << "\" " << style << "/>\n";
    }
    void circle(const PlanePoint& c, const std::string& r, const std::string& style) {
        body << "<circle cx=\"" << sx(c.x) << "\" cy=\"" << sy(c.y) << "\" r=\"" << r << "\" "
             << style << "/>\n";
    }
    void polygon(const std::vector<PlanePoint>& ps, const std::string& style) {
        body << "<polygon points=\"";
        for (size_t i = 0; i < ps.size(); ++i) body << (i ? " " : "") << pt(ps[i]);
        body << "\" " << style << "/>\n";
    }

    std::string finish() const {
        std::ostringstream os;
        os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << rat_decimal(width(), 0)
           << "\" height=\"" << rat_decimal(height(), 0) << "\" viewBox=\"0 0 "
           << rat_decimal(width(), 0) << " " << rat_decimal(height(), 0) << "\">\n"
           << body.str() << "</svg>\n";
        return os.str();
    }
};

// where a ray leaving `v` in direction `d` crosses the world box
inline PlanePoint clip_ray(const SvgCanvas& cv, const PlanePoint& v, LatticePoint d) {
    Rat best(-1);
    auto consider = [&](const Rat& t) {
        if (t > 0 && (best < 0 || t < best)) best = t;
    };
    if (d.x > 0) consider((cv.max_x - v.x) / d.x);
    if (d.x < 0) consider((cv.min_x - v.x) / d.x);
    if (d.y > 0) consider((cv.max_y - v.y) / d.y);
    if (d.y < 0) consider((cv.min_y - v.y) / d.y);
    if (best < 0) best = 0;
    return {v.x + best * d.x, v.y + best * d.y};
}

inline void draw_tropical_line(SvgCanvas& cv, const TropicalLine& l, const std::string& style) {
    const LatticePoint dirs[3] = {{1, 0}, {0, 1}, {-1, -1}};
    for (auto d : dirs) cv.line(l.vertex, clip_ray(cv, l.vertex, d), style);
}

}  // namespace detail

inline std::string render_triangulation_svg(const Triangulation& t) {
    detail::SvgCanvas cv;
    cv.min_x = cv.min_y = Rat(0);
    cv.max_x = cv.max_y = Rat(t.degree);
    cv.margin = Rat(10);
    // lattice points
    for (int x = 0; x <= t.degree; ++x)
        for (int y = 0; x + y <= t.degree; ++y)
            cv.circle({Rat(x), Rat(y)}, "2.5", "fill=\"#888888\"");
    // triangle edges, deduplicated and sorted for stable output
    std::vector<LatticeSegment> segs;
    for (const auto& tri : t.triangles)
        for (const auto& s : tri.segments()) segs.push_back(s);
    std::sort(segs.begin(), segs.end());
    segs.erase(std::unique(segs.begin(), segs.end()), segs.end());
    for (const auto& s : segs)
        cv.line({Rat(s.a.x), Rat(s.a.y)}, {Rat(s.b.x), Rat(s.b.y)},
                "stroke=\"#000000\" stroke-width=\"1.5\"");
    return cv.finish();
}

// the analyzed curve with skeleton in red, theta chips, and bitangents
inline std::string render_curve_svg(const CurveAnalysis& a) {
    const TropicalCurve& c = a.curve;
    detail::SvgCanvas cv;
    bool first = true;
    auto grow = [&](const PlanePoint& p) {
        if (first) {
            cv.min_x = cv.max_x = p.x;
            cv.min_y = cv.max_y = p.y;
            first = false;
            return;
        }
        cv.min_x = std::min(cv.min_x, p.x);
        cv.max_x = std::max(cv.max_x, p.x);
        cv.min_y = std::min(cv.min_y, p.y);
        cv.max_y = std::max(cv.max_y, p.y);
    };
    for (const auto& v : c.vertices) grow(v.pos);
    for (const auto& bc : a.bitangents) grow(bc.representative.vertex);
    cv.min_x -= 2;
    cv.min_y -= 2;
    cv.max_x += 2;
    cv.max_y += 2;

    // bitangent families first (shaded bands under everything else)
    for (const auto& bc : a.bitangents) {
        if (!bc.family) continue;
        const LineFamily& f = *bc.family;
        Rat span = f.bounded ? f.len : Rat(3);
        PlanePoint v0 = f.at(Rat(0)).vertex, v1 = f.at(span).vertex;
        const LatticePoint dirs[3] = {{1, 0}, {0, 1}, {-1, -1}};
        for (auto d : dirs)
            cv.polygon({v0, detail::clip_ray(cv, v0, d), detail::clip_ray(cv, v1, d), v1},
                       "fill=\"#3b6fd4\" fill-opacity=\"0.15\" stroke=\"none\"");
    }
    // bitangent lines
    for (const auto& bc : a.bitangents)
        detail::draw_tropical_line(cv, bc.representative,
                                   "stroke=\"#3b6fd4\" stroke-width=\"1.2\"");

    // curve: rays and pruned edges in black, skeleton edges in red
    const std::string black = "stroke=\"#000000\" stroke-width=\"1.5\"";
    const std::string red = "stroke=\"#cc2222\" stroke-width=\"2.5\"";
    std::vector<char> on_skeleton(c.edges.size(), 0);
    for (int re : a.skel.refined_edge_to_curve) on_skeleton[re] = 1;
    for (size_t e = 0; e < c.edges.size(); ++e)
        cv.line(c.vertices[c.edges[e].a].pos, c.vertices[c.edges[e].b].pos,
                on_skeleton[e] ? red : black);
    for (const auto& r : c.rays)
        cv.line(c.vertices[r.v].pos, detail::clip_ray(cv, c.vertices[r.v].pos, r.dir), black);

    // theta chips, one color per characteristic
    static const char* palette[7] = {"#1b9e77", "#d95f02", "#7570b3", "#e7298a",
                                     "#66a61e", "#e6ab02", "#a6761d"};
    for (size_t i = 0; i < a.thetas.size(); ++i) {
        std::string fill = std::string("fill=\"") + palette[i % 7] + "\"";
        for (const auto& [p, k] : a.thetas[i].divisor.chips) {
            PlanePoint pos = embed(c, a.skel, p);
            cv.circle(pos, k > 1 ? "6" : "4", fill);
        }
    }
    return cv.finish();
}

}  // namespace tropq
