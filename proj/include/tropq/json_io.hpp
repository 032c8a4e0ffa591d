#pragma once

// JSON views of the core value types.  All rationals are serialized as exact
// "num/den" strings and all containers in canonical order, so the output is
// byte-stable across runs.

#include <string>

#include <nlohmann/json.hpp>

#include "tropq/bitangent.hpp"
#include "tropq/curve.hpp"
#include "tropq/divisor.hpp"
#include "tropq/heights.hpp"
#include "tropq/hyperelliptic.hpp"
#include "tropq/lattice.hpp"
#include "tropq/metric_graph.hpp"
#include "tropq/theta.hpp"

namespace tropq {

using json = nlohmann::ordered_json;

inline json lattice_point_json(const LatticePoint& p) { return json::array({p.x, p.y}); }

inline json segment_json(const LatticeSegment& s) {
    return json::array({lattice_point_json(s.a), lattice_point_json(s.b)});
}

inline json triangulation_json(const Triangulation& t) {
    json tris = json::array();
    for (const auto& tri : t.triangles)
        tris.push_back(json::array(
            {lattice_point_json(tri.v[0]), lattice_point_json(tri.v[1]), lattice_point_json(tri.v[2])}));
    return json{{"degree", t.degree}, {"triangles", tris}};
}

inline json heights_json(const HeightFunction& h) {
    json entries = json::array();
    for (const auto& [p, v] : h.heights)
        entries.push_back(json{{"point", lattice_point_json(p)}, {"value", rat_str(v)}});
    return json{{"degree", h.degree}, {"entries", entries}};
}

inline json plane_point_json(const PlanePoint& p) {
    return json::array({rat_str(p.x), rat_str(p.y)});
}

inline json curve_json(const TropicalCurve& c) {
    json j{{"schema", "tropical-curve/1"}, {"degree", c.degree}};
    json vs = json::array();
    for (const auto& v : c.vertices) vs.push_back(plane_point_json(v.pos));
    j["vertices"] = vs;
    json es = json::array();
    for (const auto& e : c.edges)
        es.push_back(json{{"ends", json::array({e.a, e.b})},
                          {"dual", segment_json(e.dual)},
                          {"weight", 1},
                          {"lattice_length", rat_str(e.steps)}});
    j["edges"] = es;
    json rs = json::array();
    for (const auto& r : c.rays)
        rs.push_back(json{{"vertex", r.v},
                          {"dual", segment_json(r.dual)},
                          {"direction", json::array({r.dir.x, r.dir.y})}});
    j["rays"] = rs;
    return j;
}

inline json metric_graph_json(const MetricGraph& g) {
    json es = json::array();
    for (const auto& e : g.edges)
        es.push_back(json{{"ends", json::array({e.u, e.v})}, {"length", rat_str(e.length)}});
    return json{{"vertices", g.num_vertices}, {"edges", es}};
}

inline json graph_point_json(const GraphPoint& p) {
    if (p.is_vertex()) return json{{"vertex", p.vertex}};
    return json{{"edge", p.edge}, {"offset", rat_str(p.offset)}};
}

inline json divisor_json(const Divisor& d) {
    json chips = json::array();
    for (const auto& [p, c] : d.chips) {
        json e = graph_point_json(p);
        e["coefficient"] = c;
        chips.push_back(e);
    }
    return chips;
}

inline json theta_json(const ThetaCharacteristic& tc, ThetaKind kind) {
    return json{{"flow", tc.flow},
                {"divisor", divisor_json(tc.divisor)},
                {"category", theta_kind_name(kind)}};
}

inline json bitangent_json(const BitangentClass& bc) {
    json j{{"line_vertex", plane_point_json(bc.representative.vertex)},
           {"profile", bc.profile},
           {"tangency", divisor_json(bc.tangency)},
           {"is_family", bc.is_family}};
    if (bc.family) {
        json f{{"base", plane_point_json(bc.family->base)},
               {"direction", json::array({bc.family->dir.x, bc.family->dir.y})},
               {"bounded", bc.family->bounded}};
        if (bc.family->bounded) f["length"] = rat_str(bc.family->len);
        j["family"] = f;
    }
    return j;
}

inline json witness_json(const CutLengthWitness& w) {
    return json{{"e1_length", rat_str(w.e1_length)},
                {"e2_length", rat_str(w.e2_length)},
                {"e1_edge", w.e1_minimal_edge},
                {"e2_edge", w.e2_minimal_edge},
                {"dual_segment", segment_json(w.dual_segment)}};
}

}  // namespace tropq
