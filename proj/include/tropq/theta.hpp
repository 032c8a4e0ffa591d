#pragma once

// Effective theta characteristics of a metric graph: one per nonzero Z/2
// flow, built from the distance function away from the flow's support, and
// their classification into rigid / flexible / tandem-cycle divisors.

#include <algorithm>
#include <set>
#include <vector>

#include "tropq/divisor.hpp"
#include "tropq/errors.hpp"
#include "tropq/metric_graph.hpp"

namespace tropq {

// All 2^g - 1 nonzero Z/2 flows (edge sets with even degree at every vertex),
// generated from the fundamental cycles of a spanning tree.
inline std::vector<std::vector<int>> nonzero_flows(const MetricGraph& g) {
    if (!g.connected()) throw invalid_argument_error("nonzero_flows: graph must be connected");
    // spanning tree by union-find; the rest are chords
    std::vector<int> parent(g.num_vertices);
    for (int i = 0; i < g.num_vertices; ++i) parent[i] = i;
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::vector<char> in_tree(g.edges.size(), 0);
    std::vector<int> chords;
    for (int e = 0; e < (int)g.edges.size(); ++e) {
        int a = find(g.edges[e].u), b = find(g.edges[e].v);
        if (a != b) {
            parent[a] = b;
            in_tree[e] = 1;
        } else {
            chords.push_back(e);
        }
    }

    // tree path between two vertices, as an edge set
    auto tree_path = [&](int from, int to) {
        std::vector<int> prev_edge(g.num_vertices, -1), prev_vertex(g.num_vertices, -1);
        std::vector<int> stack{from};
        std::vector<char> seen(g.num_vertices, 0);
        seen[from] = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int e = 0; e < (int)g.edges.size(); ++e) {
                if (!in_tree[e]) continue;
                int w = g.edges[e].u == v ? g.edges[e].v : g.edges[e].v == v ? g.edges[e].u : -1;
                if (w < 0 || seen[w]) continue;
                seen[w] = 1;
                prev_edge[w] = e;
                prev_vertex[w] = v;
                stack.push_back(w);
            }
        }
        std::set<int> path;
        for (int v = to; v != from; v = prev_vertex[v]) {
            if (prev_edge[v] < 0) throw internal_error("nonzero_flows: broken tree path");
            path.insert(prev_edge[v]);
        }
        return path;
    };

    std::vector<std::set<int>> fundamental;
    for (int e : chords) {
        std::set<int> cyc = tree_path(g.edges[e].u, g.edges[e].v);
        cyc.insert(e);
        fundamental.push_back(std::move(cyc));
    }

    std::vector<std::vector<int>> flows;
    const int gg = (int)fundamental.size();
    for (int mask = 1; mask < (1 << gg); ++mask) {
        std::set<int> acc;
        for (int i = 0; i < gg; ++i) {
            if (!((mask >> i) & 1)) continue;
            std::set<int> sym;
            std::set_symmetric_difference(acc.begin(), acc.end(), fundamental[i].begin(),
                                          fundamental[i].end(), std::inserter(sym, sym.begin()));
            acc = std::move(sym);
        }
        flows.emplace_back(acc.begin(), acc.end());
    }
    std::sort(flows.begin(), flows.end());
    return flows;
}

// Zharkov's divisor of a nonzero flow: arrows point away from the flow's
// support S along the gradient of the distance function; a chip sits wherever
// arrows collide (edge-interior midpoints between the two approaches), and a
// vertex v outside S holds (#incoming arrows - 1) chips.
inline Divisor zharkov_divisor(const MetricGraph& g, const std::vector<int>& flow) {
    if (flow.empty()) throw invalid_argument_error("zharkov_divisor: flow must be nonzero");
    std::vector<char> in_flow(g.edges.size(), 0);
    std::vector<char> in_s(g.num_vertices, 0);
    for (int e : flow) {
        in_flow[e] = 1;
        in_s[g.edges[e].u] = 1;
        in_s[g.edges[e].v] = 1;
    }
    std::vector<int> flow_degree(g.num_vertices, 0);
    for (int e : flow) {
        ++flow_degree[g.edges[e].u];
        ++flow_degree[g.edges[e].v];
    }
    for (int v = 0; v < g.num_vertices; ++v)
        if (flow_degree[v] % 2 != 0)
            throw invalid_argument_error("zharkov_divisor: edge set is not a flow");

    // multi-source distance from S
    std::vector<Rat> delta(g.num_vertices, Rat(-1));
    using Item = std::pair<Rat, int>;
    auto cmp = [](const Item& a, const Item& b) { return a.first > b.first; };
    std::priority_queue<Item, std::vector<Item>, decltype(cmp)> pq(cmp);
    for (int v = 0; v < g.num_vertices; ++v)
        if (in_s[v]) {
            delta[v] = 0;
            pq.push({Rat(0), v});
        }
    while (!pq.empty()) {
        auto [dv, v] = pq.top();
        pq.pop();
        if (dv > delta[v]) continue;
        for (int e = 0; e < (int)g.edges.size(); ++e) {
            if (in_flow[e]) continue;
            const auto& ed = g.edges[e];
            for (auto [a, b] : {std::pair{ed.u, ed.v}, std::pair{ed.v, ed.u}})
                if (a == v && (delta[b] < 0 || dv + ed.length < delta[b])) {
                    delta[b] = dv + ed.length;
                    pq.push({delta[b], b});
                }
        }
    }

    Divisor d;
    std::vector<int> incoming(g.num_vertices, 0);
    for (int e = 0; e < (int)g.edges.size(); ++e) {
        if (in_flow[e]) continue;
        const auto& ed = g.edges[e];
        if (delta[ed.u] < 0 || delta[ed.v] < 0)
            throw invalid_argument_error("zharkov_divisor: graph disconnected away from flow");
        // arrows meet at the point equidistant from S through both ends
        Rat t = (delta[ed.v] - delta[ed.u] + ed.length) / 2;
        if (t < 0 || t > ed.length) throw internal_error("zharkov_divisor: meeting point off edge");
        if (t == ed.length)
            ++incoming[ed.v];
        else if (t == 0)
            ++incoming[ed.u];
        else
            divisor_add(g, d, GraphPoint::on_edge(e, t), 1);
    }
    for (int v = 0; v < g.num_vertices; ++v) {
        if (in_s[v]) {
            // where the flow crosses itself, the crossing vertex absorbs one
            // chip per extra passage (the flow support is then not a disjoint
            // union of simple cycles)
            divisor_add(g, d, GraphPoint::at_vertex(v), flow_degree[v] / 2 - 1);
            continue;
        }
        if (incoming[v] < 1) throw internal_error("zharkov_divisor: vertex with no incoming arrow");
        divisor_add(g, d, GraphPoint::at_vertex(v), incoming[v] - 1);
    }
    return d;
}

struct ThetaCharacteristic {
    std::vector<int> flow;
    Divisor divisor;
};

// The 2^g - 1 effective theta characteristics, with their defining claims
// (effective, degree g-1, 2D ~ K, pairwise inequivalent) machine-checked.
inline std::vector<ThetaCharacteristic> all_theta_characteristics(const MetricGraph& g) {
    std::vector<ThetaCharacteristic> out;
    Divisor k = canonical_divisor(g);
    for (const auto& flow : nonzero_flows(g)) {
        ThetaCharacteristic tc{flow, zharkov_divisor(g, flow)};
        if (!tc.divisor.effective() || tc.divisor.degree() != g.genus() - 1)
            throw internal_error("theta characteristic not effective of degree g-1: " +
                                          divisor_str(tc.divisor));
        if (!linearly_equivalent(g, scale_divisor(tc.divisor, 2), k))
            throw internal_error("2D is not canonical for theta divisor " +
                                          divisor_str(tc.divisor));
        out.push_back(std::move(tc));
    }
    for (size_t i = 0; i < out.size(); ++i)
        for (size_t j = i + 1; j < out.size(); ++j)
            if (linearly_equivalent(g, out[i].divisor, out[j].divisor))
                throw internal_error("theta characteristics of distinct flows are equivalent");
    return out;
}

enum class ThetaKind { Rigid, Flexible, Tandem };

inline std::string theta_kind_name(ThetaKind k) {
    switch (k) {
        case ThetaKind::Rigid: return "Rigid";
        case ThetaKind::Flexible: return "Flexible";
        case ThetaKind::Tandem: return "Tandem";
    }
    return "Rigid";
}

// Rigid: the unique effective divisor in its class.  Flexible: a chip sits on
// a bridge (or retracts to one), so it slides freely.  Tandem: the two points
// pinch the graph into pieces and move in tandem around their cycles.
inline ThetaKind classify_theta(const MetricGraph& g, const Divisor& d) {
    if (!d.effective() || d.degree() != 2)
        throw invalid_argument_error("classify_theta: expected an effective degree-2 divisor");
    auto br = bridges(g);
    std::set<int> bridge_set(br.begin(), br.end());
    for (const auto& [p, c] : d.chips)
        if (!p.is_vertex() && bridge_set.count(p.edge)) return ThetaKind::Flexible;

    std::vector<GraphPoint> pts;
    for (const auto& [p, c] : d.chips)
        for (int i = 0; i < c; ++i) pts.push_back(p);
    bool rigid = is_rigid(g, d);
    if (!rigid && disconnects_without_points(g, pts[0], pts[1])) return ThetaKind::Tandem;
    if (rigid) return ThetaKind::Rigid;
    // non-rigid without a bridge-interior chip: a chip sits at a vertex of a
    // bridge and is about to slide onto it
    return ThetaKind::Flexible;
}

}  // namespace tropq
