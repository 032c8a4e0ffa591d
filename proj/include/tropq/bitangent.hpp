#pragma once

// Bitangent tropical lines of a smooth plane quartic: tangency recognition
// via the stable intersection grouped by connected components of the
// set-theoretic overlay, construction of a bitangent from each effective
// theta characteristic, and the seven bitangent classes.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "tropq/curve.hpp"
#include "tropq/divisor.hpp"
#include "tropq/errors.hpp"
#include "tropq/intersection.hpp"
#include "tropq/theta.hpp"

namespace tropq {

// embedding of a skeleton point back into the plane
inline PlanePoint embed(const TropicalCurve& c, const Skeleton& s, const GraphPoint& p) {
    GraphPoint q = canonical_point(s.refined, p);
    if (q.is_vertex()) return c.vertices[s.refined_to_curve[q.vertex]].pos;
    int ce = s.refined_edge_to_curve[q.edge];
    bool fwd = s.refined_to_curve[s.refined.edges[q.edge].u] == c.edges[ce].a;
    Rat t = fwd ? q.offset : Rat(c.edges[ce].steps - q.offset);
    return c.edge_point(ce, t);
}

// tangency data of a line against a quartic
struct Tangency {
    IntersectionDivisor stable;        // the full stable divisor L . C (degree 4)
    std::vector<int> component_mults;  // stable multiplicity per overlay component
    Divisor divisor;                   // tangency divisor on the skeleton, 2T ~ K
};

namespace detail {

// point on the line at given lattice distance from the vertex along a ray
inline PlanePoint line_point(const TropicalLine& l, int ray, const Rat& t) {
    static const LatticePoint dirs[3] = {{1, 0}, {0, 1}, {-1, -1}};
    return {l.vertex.x + t * dirs[ray].x, l.vertex.y + t * dirs[ray].y};
}

// midpoint of the unique path between two points of the line (a tripod)
inline PlanePoint line_midpoint(const TropicalLine& l, std::pair<int, Rat> a,
                                std::pair<int, Rat> b) {
    if (a.first == b.first) return line_point(l, a.first, (a.second + b.second) / 2);
    Rat half = (a.second + b.second) / 2;  // path runs through the vertex
    if (half <= a.second) return line_point(l, a.first, a.second - half);
    return line_point(l, b.first, half - a.second);
}

}  // namespace detail

// Whether the line is bitangent to the quartic: the stable intersection,
// grouped by connected components of the overlay L cap C, has component
// multiplicities (2, 2) or (4).  On success the tangency divisor (half of
// the pushed stable divisor, component by component) is returned; the
// halving and 2T ~ K are hard invariants of a tangency, so their failure
// raises an internal error rather than a negative answer.
inline std::optional<Tangency> is_bitangent(const TropicalLine& l, const TropicalCurve& c,
                                            const Skeleton& s,
                                            const Divisor* target = nullptr) {
    Tangency tg;
    tg.stable = stable_intersection(c, l.as_curve());
    auto comps = intersection_components(l, c);

    // assign each stable point to its component
    std::vector<std::vector<std::pair<PlanePoint, int>>> by_comp(comps.size());
    for (const auto& [p, m] : tg.stable) {
        auto lp = line_parameter(l, p);
        if (!lp) throw internal_error("is_bitangent: stable point off the line");
        bool placed = false;
        for (size_t i = 0; i < comps.size(); ++i)
            if (comps[i].contains(lp->first, lp->second)) {
                by_comp[i].push_back({p, m});
                placed = true;
                break;
            }
        if (!placed) throw internal_error("is_bitangent: stable point outside every component");
    }

    std::vector<int> mults;
    for (const auto& pts : by_comp) {
        int m = 0;
        for (const auto& [p, k] : pts) m += k;
        tg.component_mults.push_back(m);
        if (m > 0) mults.push_back(m);
    }
    std::sort(mults.begin(), mults.end());
    if (!(mults == std::vector<int>{2, 2} || mults == std::vector<int>{4})) return std::nullopt;

    // halve the stable divisor component by component.  Each component of
    // multiplicity m contributes m/2 tangency chips supported in it; a small
    // set of geometric candidate points per component (stable points, the
    // line vertex, midpoints along the line and along the skeleton) is
    // searched for the m/2-multiset whose double is equivalent to the pushed
    // stable divisor.  Supporting the chips inside their components is what
    // singles out the tangency class among the halves of the canonical class.
    Divisor pushed = push_to_metric(c, s, tg.stable);
    GraphPoint base = GraphPoint::at_vertex(0);
    Divisor pushed_reduced = reduced_divisor(s.refined, pushed, base);
    std::optional<Divisor> target_reduced;
    if (target) target_reduced = reduced_divisor(s.refined, *target, base);

    // whether a skeleton point maps back into the given overlay component
    auto in_component = [&](const GraphPoint& p, const OverlayComponent& comp) {
        auto lp = line_parameter(l, embed(c, s, p));
        return lp && comp.contains(lp->first, lp->second);
    };

    std::vector<std::vector<Divisor>> options;  // per component: its chip multisets
    for (size_t i = 0; i < comps.size(); ++i) {
        if (tg.component_mults[i] == 0) continue;
        std::vector<GraphPoint> cs;
        auto add = [&](const GraphPoint& p) {
            GraphPoint q = canonical_point(s.refined, p);
            if (std::find(cs.begin(), cs.end(), q) == cs.end()) cs.push_back(q);
        };
        for (const auto& [p, k] : by_comp[i]) add(retract_plane_point(c, s, p));
        for (const auto& arc : comps[i].arcs)
            if (arc.lo == 0) add(retract_plane_point(c, s, l.vertex));
        // pairwise skeleton midpoints, kept only when they stay inside the
        // component (the shortest path may detour through the rest of the
        // graph and land in another tangency's territory)
        size_t primary = cs.size();
        for (size_t x = 0; x < primary; ++x)
            for (size_t y = x + 1; y < primary; ++y) {
                GraphPoint m = metric_midpoint(s.refined, cs[x], cs[y]);
                if (in_component(m, comps[i])) add(m);
            }
        for (size_t x = 0; x < by_comp[i].size(); ++x)
            for (size_t y = x + 1; y < by_comp[i].size(); ++y) {
                auto lpx = line_parameter(l, by_comp[i][x].first);
                auto lpy = line_parameter(l, by_comp[i][y].first);
                PlanePoint mid = detail::line_midpoint(l, *lpx, *lpy);
                if (locate_on_curve(c, mid)) add(retract_plane_point(c, s, mid));
            }

        int chips = tg.component_mults[i] / 2;
        std::vector<Divisor> opts;
        if (chips == 1) {
            for (const auto& p : cs) {
                Divisor d;
                divisor_add(s.refined, d, p, 1);
                opts.push_back(std::move(d));
            }
        } else {  // chips == 2: both chips at one point, or at a pair
            for (size_t x = 0; x < cs.size(); ++x)
                for (size_t y = x; y < cs.size(); ++y) {
                    Divisor d;
                    divisor_add(s.refined, d, cs[x], 1);
                    divisor_add(s.refined, d, cs[y], 1);
                    opts.push_back(std::move(d));
                }
        }
        options.push_back(std::move(opts));
    }

    std::vector<size_t> pick(options.size(), 0);
    while (true) {
        Divisor t;
        for (size_t i = 0; i < options.size(); ++i)
            t = divisor_sum(s.refined, t, options[i][pick[i]]);
        if (reduced_divisor(s.refined, scale_divisor(t, 2), base) == pushed_reduced &&
            (!target_reduced || reduced_divisor(s.refined, t, base) == *target_reduced)) {
            tg.divisor = std::move(t);
            return tg;
        }
        size_t i = 0;
        for (; i < options.size(); ++i) {
            if (++pick[i] < options[i].size()) break;
            pick[i] = 0;
        }
        if (i == options.size()) break;
    }
    // an even-multiplicity contact with no realizable half supported on the
    // contact components: not a tangency in the divisorial sense
    return std::nullopt;
}

// A class of bitangent lines: a single line, or a one-parameter family of
// them, all sharing one tangency class
struct BitangentClass {
    TropicalLine representative;
    bool is_family = false;
    std::optional<LineFamily> family;  // set when is_family and the family is an
                                       // interval of vertices found as such
    Divisor tangency;
    std::vector<int> profile;  // sorted nonzero component multiplicities
};

namespace detail {

// vertices v on the curve with v = base + t * (1, 1): candidate vertices of
// bitangents whose diagonal ray produces the tangency
inline std::vector<PlanePoint> diagonal_hits(const TropicalCurve& c, const PlanePoint& base) {
    std::vector<PlanePoint> out;
    auto pieces = curve_pieces(c, Eps1(), Eps1());
    for (const auto& p : pieces) {
        long long det = 1LL * p.dir.y - 1LL * p.dir.x;  // det[(1,1), dir]
        Rat rx = p.start.x.a - base.x, ry = p.start.y.a - base.y;
        if (det == 0) {
            if (rx != ry) continue;
            // the whole piece is diagonal: its endpoints are enough, sliding
            // along it is handled by the family search
            out.push_back({p.start.x.a, p.start.y.a});
            if (p.bounded)
                out.push_back({p.start.x.a + p.len * p.dir.x, p.start.y.a + p.len * p.dir.y});
            continue;
        }
        // base + t(1,1) = start + s dir
        Rat s = (rx - ry) / det;
        if (s < 0 || (p.bounded && s > p.len)) continue;
        out.push_back({p.start.x.a + s * p.dir.x, p.start.y.a + s * p.dir.y});
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace detail

// The bitangent class of one effective theta characteristic.  Candidate
// lines come from the tropical lines through pairs of plane points carrying
// representatives of the theta class (the divisor itself and its reduced
// forms); for the tandem-cycle shape, whose tangency points sit in cycle
// interiors, vertices on the curve along diagonal lines through edge
// midpoints are scanned as well.  Each candidate is verified: bitangent and
// tangency linearly equivalent to the theta divisor.
inline BitangentClass bitangent_from_theta(const TropicalCurve& c, const Skeleton& s,
                                           const Divisor& theta) {
    const MetricGraph& g = s.refined;

    // representative effective divisors of the class
    std::vector<Divisor> reps{theta};
    for (int v = 0; v < g.num_vertices; ++v) {
        Divisor r = reduced_divisor(g, theta, GraphPoint::at_vertex(v));
        if (std::find(reps.begin(), reps.end(), r) == reps.end()) reps.push_back(r);
    }
    for (const auto& [p, k] : theta.chips) {
        Divisor r = reduced_divisor(g, theta, p);
        if (std::find(reps.begin(), reps.end(), r) == reps.end()) reps.push_back(r);
    }

    // candidate lines
    std::vector<TropicalLine> cands;
    std::vector<LineFamily> families;
    auto add_cand = [&](const TropicalLine& l) {
        if (std::find(cands.begin(), cands.end(), l) == cands.end()) cands.push_back(l);
    };
    for (const auto& rep : reps) {
        std::vector<GraphPoint> pts;
        for (const auto& [p, k] : rep.chips)
            for (int i = 0; i < k; ++i) pts.push_back(p);
        PlanePoint a = embed(c, s, pts[0]), b = embed(c, s, pts[1]);
        if (a == b) {
            add_cand(TropicalLine{a});
            continue;
        }
        auto lt = tropical_lines_through(a, b);
        if (lt.unique_line) add_cand(*lt.unique_line);
        if (lt.family) {
            families.push_back(*lt.family);
            add_cand(lt.family->at(Rat(0)));
            add_cand(lt.family->at(lt.family->bounded ? lt.family->len : Rat(1)));
            if (lt.family->bounded) add_cand(lt.family->at(lt.family->len / 2));
        }
    }
    // diagonal scan through curve edge midpoints (tandem tangencies)
    for (const auto& e : c.edges) {
        PlanePoint mid = c.edge_point((int)(&e - &c.edges[0]), e.steps / 2);
        for (const auto& v : detail::diagonal_hits(c, mid)) add_cand(TropicalLine{v});
    }

    std::vector<std::pair<TropicalLine, Tangency>> verified;
    for (const auto& l : cands) {
        auto tg = is_bitangent(l, c, s, &theta);  // tangency pinned to the class
        if (tg) verified.push_back({l, std::move(*tg)});
    }
    if (verified.empty())
        throw theorem_violation_error("no bitangent line found for theta divisor " +
                                      divisor_str(theta));

    std::sort(verified.begin(), verified.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    BitangentClass bc;
    bc.representative = verified[0].first;  // lex-least vertex
    bc.is_family = verified.size() > 1;
    bc.tangency = verified[0].second.divisor;
    for (int m : verified[0].second.component_mults)
        if (m > 0) bc.profile.push_back(m);
    std::sort(bc.profile.begin(), bc.profile.end());
    if (bc.is_family) {
        // report the interval family when one was found and its samples verify
        for (const auto& f : families) {
            auto t0 = is_bitangent(f.at(Rat(0)), c, s, &theta);
            auto t1 = is_bitangent(f.at(f.bounded ? f.len : Rat(1)), c, s, &theta);
            if (t0 && t1) {
                bc.family = f;
                break;
            }
        }
    }
    return bc;
}

// The seven bitangent classes of a smooth tropical quartic, one per
// effective theta characteristic.
inline std::vector<BitangentClass> bitangent_classes(const TropicalCurve& c, const Skeleton& s) {
    if (s.genus() != 3)
        throw invalid_argument_error("bitangent_classes: curve must have genus 3");
    std::vector<BitangentClass> out;
    for (const auto& tc : all_theta_characteristics(s.refined))
        out.push_back(bitangent_from_theta(c, s, tc.divisor));
    if (out.size() != 7)
        throw theorem_violation_error("expected 7 bitangent classes, found " +
                                      std::to_string(out.size()));
    for (size_t i = 0; i < out.size(); ++i)
        for (size_t j = i + 1; j < out.size(); ++j)
            if (linearly_equivalent(s.refined, out[i].tangency, out[j].tangency))
                throw theorem_violation_error("distinct bitangent classes with equivalent tangencies");
    return out;
}

// Two bitangent lines are equivalent when their tangency divisors are
// linearly equivalent on the skeleton.
inline bool equivalent_bitangents(const TropicalCurve& c, const Skeleton& s,
                                  const TropicalLine& l1, const TropicalLine& l2) {
    auto t1 = is_bitangent(l1, c, s);
    auto t2 = is_bitangent(l2, c, s);
    if (!t1 || !t2)
        throw invalid_argument_error("equivalent_bitangents: both lines must be bitangent");
    return linearly_equivalent(s.refined, t1->divisor, t2->divisor);
}

}  // namespace tropq
