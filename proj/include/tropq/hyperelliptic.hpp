#pragma once

// Hyperellipticity of genus-3 skeletons (existence of a degree-2 rank-1
// divisor), the strict cut-length inequality witnessing why smooth plane
// quartics never have one, and the census-facing verification wrapper.

#include <algorithm>
#include <optional>
#include <vector>

#include "tropq/curve.hpp"
#include "tropq/divisor.hpp"
#include "tropq/errors.hpp"
#include "tropq/metric_graph.hpp"

namespace tropq {

namespace detail {

// orient a 2-edge-cut consistently: both edges from the same side of the cut
inline std::pair<bool, bool> cut_orientation(const MetricGraph& g, int e, int f) {
    // components after removing both edges
    std::vector<int> comp(g.num_vertices, -1);
    int nc = 0;
    for (int st = 0; st < g.num_vertices; ++st) {
        if (comp[st] >= 0) continue;
        comp[st] = nc;
        std::vector<int> stack{st};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int k = 0; k < (int)g.edges.size(); ++k) {
                if (k == e || k == f) continue;
                const auto& ed = g.edges[k];
                int w = ed.u == v ? ed.v : ed.v == v ? ed.u : -1;
                if (w >= 0 && comp[w] < 0) {
                    comp[w] = nc;
                    stack.push_back(w);
                }
            }
        }
        ++nc;
    }
    // first edge oriented u -> v; flip the second if its u is on the far side
    return {true, comp[g.edges[f].u] == comp[g.edges[e].u]};
}

}  // namespace detail

// Whether the metric graph carries a divisor of degree 2 and rank 1.
// Decided for the genus <= 3 trivalent families: any genus-2 graph is
// hyperelliptic; for genus 3 a complete-graph minimal model never is, a
// 2-edge-cut of unequal lengths rules it out, and otherwise a direct rank
// search over vertices and cut-symmetric point pairs confirms.
inline bool is_hyperelliptic(const MetricGraph& g) {
    if (!g.connected()) throw invalid_argument_error("is_hyperelliptic: graph must be connected");
    int gen = g.genus();
    if (gen < 2) throw out_of_scope_error("is_hyperelliptic: genus must be at least 2");
    if (gen == 2) return true;  // the canonical class is a degree-2 rank-1 divisor
    if (gen > 3) throw out_of_scope_error("is_hyperelliptic: genus > 3 not supported");

    MinimalModel mm = minimal_model(g);
    if (classify_graph(mm.graph) == GraphType::Honeycomb) return false;
    auto cuts = two_edge_cuts(mm.graph);
    for (auto [e, f] : cuts)
        if (mm.graph.edges[e].length != mm.graph.edges[f].length) return false;

    // candidate points: vertices, loop midpoints, and symmetric pairs on the
    // equal-length cuts (a degree-2 rank-1 class sweeps the whole graph, so
    // it meets this set if it exists at all)
    std::vector<GraphPoint> pts;
    for (int v = 0; v < mm.graph.num_vertices; ++v)
        pts.push_back(mm.to_refined(g, GraphPoint::at_vertex(v)));
    for (int e = 0; e < (int)mm.graph.edges.size(); ++e)
        if (mm.graph.is_loop(e))
            pts.push_back(mm.to_refined(g, GraphPoint::on_edge(e, mm.graph.edges[e].length / 2)));

    std::vector<Divisor> cands;
    auto add_pair = [&](const GraphPoint& p, const GraphPoint& q) {
        Divisor d;
        divisor_add(g, d, p, 1);
        divisor_add(g, d, q, 1);
        if (std::find(cands.begin(), cands.end(), d) == cands.end()) cands.push_back(d);
    };
    for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = i; j < pts.size(); ++j) add_pair(pts[i], pts[j]);
    for (auto [e, f] : cuts) {
        auto [oe, of] = detail::cut_orientation(mm.graph, e, f);
        const Rat& len = mm.graph.edges[e].length;
        for (int k = 0; k <= 4; ++k) {
            Rat t = len * k / 4;
            GraphPoint p = GraphPoint::on_edge(e, oe ? t : len - t);
            GraphPoint q = GraphPoint::on_edge(f, of ? t : len - t);
            add_pair(mm.to_refined(g, p), mm.to_refined(g, q));
        }
    }
    for (const auto& d : cands)
        if (rank(g, d) == 1) return true;
    return false;
}

// The strict length inequality from the non-hyperellipticity argument: the
// skeleton edge e1 dual to the lattice segment from the central interior
// point of the middle cycle to the boundary, and the edge e2 completing the
// 2-edge-cut that separates the middle cycle, satisfy e2 > e1.
struct CutLengthWitness {
    Rat e1_length, e2_length;
    int e1_minimal_edge = -1, e2_minimal_edge = -1;
    LatticeSegment dual_segment;  // the interior-to-boundary lattice edge
};

inline CutLengthWitness cut_length_witness(const TropicalCurve& c, const Skeleton& s) {
    GraphType ty = s.type();
    if (ty != GraphType::MickeyMouse && ty != GraphType::OneBridge && ty != GraphType::TwoBridge)
        throw not_applicable_error("cut_length_witness: no separating cut for type " +
                                   graph_type_name(ty));
    if (c.degree != 4) throw invalid_argument_error("cut_length_witness: quartic expected");

    // the three symmetric images of the segment from an interior lattice
    // point to its opposite boundary point
    const std::pair<LatticePoint, LatticePoint> seg_choices[3] = {
        {{1, 1}, {2, 2}}, {{2, 1}, {0, 2}}, {{1, 2}, {2, 0}}};

    const MetricGraph& mg = s.minimal.graph;
    auto cuts = two_edge_cuts(mg);

    CutLengthWitness best;
    for (auto [m, om] : seg_choices) {
        LatticeSegment want{m, om};
        // the curve edge dual to the segment, if present in the subdivision
        int ce = -1;
        for (int e = 0; e < (int)c.edges.size(); ++e)
            if (c.edges[e].dual == want) ce = e;
        if (ce < 0) continue;
        // its refined skeleton edge and the minimal edge containing it
        int re = -1;
        for (int k = 0; k < (int)s.refined_edge_to_curve.size(); ++k)
            if (s.refined_edge_to_curve[k] == ce) re = k;
        if (re < 0) continue;  // retracted away: not on the skeleton
        int me1 = -1;
        for (int me = 0; me < (int)s.minimal.chains.size(); ++me)
            for (auto [e, fwd] : s.minimal.chains[me])
                if (e == re) me1 = me;
        if (me1 < 0) throw internal_error("cut_length_witness: edge not on any chain");

        // the cut completing e1; among several, the shortest partner gives
        // the strongest witness
        for (auto [e, f] : cuts) {
            int other = e == me1 ? f : f == me1 ? e : -1;
            if (other < 0) continue;
            if (best.e1_minimal_edge < 0 || mg.edges[other].length < best.e2_length) {
                best.e1_minimal_edge = me1;
                best.e2_minimal_edge = other;
                best.e1_length = mg.edges[me1].length;
                best.e2_length = mg.edges[other].length;
                best.dual_segment = want;
            }
        }
    }
    if (best.e1_minimal_edge < 0)
        throw not_applicable_error(
            "cut_length_witness: no interior-to-boundary dual edge lies on a 2-edge-cut");
    return best;
}

inline CutLengthWitness cut_length_witness(const TropicalCurve& c) {
    return cut_length_witness(c, skeleton(c));
}

// Census-facing check: a smooth plane quartic is never hyperelliptic; a
// counterexample would be a theorem violation, not a negative answer.
inline bool verify_nonhyperelliptic(const TropicalCurve& c) {
    Skeleton s = skeleton(c);
    if (s.genus() != 3)
        throw invalid_argument_error("verify_nonhyperelliptic: genus-3 curve expected");
    if (is_hyperelliptic(s.refined))
        throw theorem_violation_error("smooth plane quartic with a hyperelliptic skeleton");
    return true;
}

}  // namespace tropq
