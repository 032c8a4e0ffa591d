#pragma once

// Metric graphs with exact rational edge lengths, points on edges, and the
// structural predicates (bridges, 2-edge-cuts, trivalent type fingerprints)
// the divisor theory is built on.

#include <algorithm>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "tropq/errors.hpp"
#include "tropq/rational.hpp"

namespace tropq {

struct MetricEdge {
    int u = 0, v = 0;
    Rat length;

    friend bool operator==(const MetricEdge&, const MetricEdge&) = default;
};

struct MetricGraph {
    int num_vertices = 0;
    std::vector<MetricEdge> edges;

    int add_vertex() { return num_vertices++; }

    int add_edge(int u, int v, Rat length) {
        if (u < 0 || u >= num_vertices || v < 0 || v >= num_vertices)
            throw invalid_argument_error("add_edge: vertex out of range");
        if (length <= 0) throw invalid_argument_error("add_edge: length must be positive");
        edges.push_back({u, v, std::move(length)});
        return (int)edges.size() - 1;
    }

    bool is_loop(int e) const { return edges[e].u == edges[e].v; }

    // loops contribute 2 to the valence of their vertex
    int valence(int v) const {
        int d = 0;
        for (const auto& e : edges) {
            if (e.u == v) ++d;
            if (e.v == v) ++d;
        }
        return d;
    }

    std::vector<std::vector<int>> incident_edges() const {
        std::vector<std::vector<int>> inc(num_vertices);
        for (int e = 0; e < (int)edges.size(); ++e) {
            inc[edges[e].u].push_back(e);
            if (!is_loop(e)) inc[edges[e].v].push_back(e);
        }
        return inc;
    }

    bool connected() const {
        if (num_vertices == 0) return true;
        std::vector<char> seen(num_vertices, 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        int count = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (const auto& e : edges) {
                for (int w : {e.u == v ? e.v : -1, e.v == v ? e.u : -1})
                    if (w >= 0 && !seen[w]) {
                        seen[w] = 1;
                        ++count;
                        stack.push_back(w);
                    }
            }
        }
        return count == num_vertices;
    }

    // first Betti number b1 = E - V + (#components)
    int genus() const {
        std::vector<int> parent(num_vertices);
        for (int i = 0; i < num_vertices; ++i) parent[i] = i;
        auto find = [&](int x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        int comps = num_vertices;
        for (const auto& e : edges) {
            int a = find(e.u), b = find(e.v);
            if (a != b) {
                parent[a] = b;
                --comps;
            }
        }
        return (int)edges.size() - num_vertices + comps;
    }

    Rat total_length() const {
        Rat s = 0;
        for (const auto& e : edges) s += e.length;
        return s;
    }
};

// A point of the metric graph: either a vertex, or an interior point of edge
// `edge` at distance `offset` from its u endpoint.  Canonical form uses the
// vertex representation at offsets 0 and length.
struct GraphPoint {
    int vertex = -1;  // >= 0 for the vertex form
    int edge = -1;
    Rat offset;

    static GraphPoint at_vertex(int v) { return {v, -1, Rat(0)}; }
    static GraphPoint on_edge(int e, Rat off) { return {-1, e, std::move(off)}; }

    bool is_vertex() const { return vertex >= 0; }

    friend bool operator==(const GraphPoint&, const GraphPoint&) = default;
    friend auto operator<=>(const GraphPoint& a, const GraphPoint& b) {
        if (auto c = a.vertex <=> b.vertex; c != 0) return c;
        if (auto c = a.edge <=> b.edge; c != 0) return c;
        return a.offset.compare(b.offset) <=> 0;
    }
};

inline GraphPoint canonical_point(const MetricGraph& g, GraphPoint p) {
    if (p.is_vertex()) {
        if (p.vertex >= g.num_vertices) throw invalid_argument_error("point: vertex out of range");
        return GraphPoint::at_vertex(p.vertex);
    }
    if (p.edge < 0 || p.edge >= (int)g.edges.size())
        throw invalid_argument_error("point: edge out of range");
    const auto& e = g.edges[p.edge];
    if (p.offset < 0 || p.offset > e.length)
        throw invalid_argument_error("point: offset outside edge");
    if (p.offset == 0) return GraphPoint::at_vertex(e.u);
    if (p.offset == e.length) return GraphPoint::at_vertex(e.v);
    return p;
}

inline std::string point_str(const GraphPoint& p) {
    if (p.is_vertex()) return "v" + std::to_string(p.vertex);
    return "e" + std::to_string(p.edge) + "@" + rat_str(p.offset);
}

// ---- cuts and bridges ------------------------------------------------------

namespace detail {

// number of connected components of the graph with the given edges removed
inline int components_without(const MetricGraph& g, const std::vector<int>& removed) {
    std::vector<char> gone(g.edges.size(), 0);
    for (int e : removed) gone[e] = 1;
    std::vector<int> parent(g.num_vertices);
    for (int i = 0; i < g.num_vertices; ++i) parent[i] = i;
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    int comps = g.num_vertices;
    for (int e = 0; e < (int)g.edges.size(); ++e) {
        if (gone[e]) continue;
        int a = find(g.edges[e].u), b = find(g.edges[e].v);
        if (a != b) {
            parent[a] = b;
            --comps;
        }
    }
    return comps;
}

}  // namespace detail

inline std::vector<int> bridges(const MetricGraph& g) {
    int base = detail::components_without(g, {});
    std::vector<int> out;
    for (int e = 0; e < (int)g.edges.size(); ++e)
        if (!g.is_loop(e) && detail::components_without(g, {e}) > base) out.push_back(e);
    return out;
}

// unordered pairs {e, f} of non-bridge edges whose joint removal disconnects
inline std::vector<std::pair<int, int>> two_edge_cuts(const MetricGraph& g) {
    int base = detail::components_without(g, {});
    auto br = bridges(g);
    std::set<int> is_bridge(br.begin(), br.end());
    std::vector<std::pair<int, int>> out;
    for (int e = 0; e < (int)g.edges.size(); ++e) {
        if (g.is_loop(e) || is_bridge.count(e)) continue;
        for (int f = e + 1; f < (int)g.edges.size(); ++f) {
            if (g.is_loop(f) || is_bridge.count(f)) continue;
            if (detail::components_without(g, {e, f}) > base) out.emplace_back(e, f);
        }
    }
    return out;
}

// Does removing the two (interior) points disconnect the graph?  Removing an
// interior point of edge e severs e; removing a vertex deletes the vertex with
// all incident edges.  Isolated leftover loops at a removed vertex vanish.
inline bool disconnects_without_points(const MetricGraph& g, GraphPoint p, GraphPoint q) {
    p = canonical_point(g, p);
    q = canonical_point(g, q);
    // build the punctured graph: removed vertices disappear; a removed edge
    // interior point splits its edge into two dangling half-edges, modelled by
    // fresh degree-1 vertices
    std::vector<int> vmap(g.num_vertices, -1);
    auto vertex_removed = [&](int v) {
        return (p.is_vertex() && p.vertex == v) || (q.is_vertex() && q.vertex == v);
    };
    MetricGraph h;
    for (int v = 0; v < g.num_vertices; ++v)
        if (!vertex_removed(v)) vmap[v] = h.add_vertex();
    for (int e = 0; e < (int)g.edges.size(); ++e) {
        bool cut_p = !p.is_vertex() && p.edge == e;
        bool cut_q = !q.is_vertex() && q.edge == e;
        int u = g.edges[e].u, v = g.edges[e].v;
        if (vmap[u] < 0 || vmap[v] < 0) continue;  // incident to a removed vertex
        if (!cut_p && !cut_q) {
            h.add_edge(vmap[u], vmap[v], g.edges[e].length);
        } else {
            // one or two punctures on this edge leave dangling stubs at both
            // endpoints (and, with two punctures, a free middle arc that is
            // its own component only if the edge is not a loop glued back)
            int su = h.add_vertex();
            int sv = h.add_vertex();
            h.add_edge(vmap[u], su, Rat(1));
            h.add_edge(vmap[v], sv, Rat(1));
            if (cut_p && cut_q && p.offset != q.offset) {
                int a = h.add_vertex(), b = h.add_vertex();
                h.add_edge(a, b, Rat(1));
            }
        }
    }
    if (h.num_vertices == 0) return false;
    return detail::components_without(h, {}) > 1;
}

// ---- minimal model ---------------------------------------------------------

// Result of suppressing all 2-valent vertices of a connected graph.  Each
// minimal edge carries the ordered chain of original edges it concatenates,
// so points can be transported both ways.
struct MinimalModel {
    MetricGraph graph;
    std::vector<int> minimal_to_refined;  // minimal vertex -> original vertex
    std::vector<int> refined_to_minimal;  // -1 for suppressed vertices
    // per minimal edge: original edges in order, with traversal direction
    // (true = from the original edge's u to its v)
    std::vector<std::vector<std::pair<int, bool>>> chains;

    // a point of the minimal graph as a point of the original graph
    GraphPoint to_refined(const MetricGraph& refined, GraphPoint p) const {
        p = canonical_point(graph, p);
        if (p.is_vertex()) return GraphPoint::at_vertex(minimal_to_refined[p.vertex]);
        Rat off = p.offset;
        for (auto [e, fwd] : chains[p.edge]) {
            const Rat& len = refined.edges[e].length;
            if (off <= len) return canonical_point(refined, GraphPoint::on_edge(e, fwd ? off : len - off));
            off -= len;
        }
        throw internal_error("to_refined: offset exceeds chain length");
    }

    // inverse transport; every original point lies on exactly one chain (or a
    // surviving vertex) when the graph is connected with min valence >= 2
    GraphPoint to_minimal(const MetricGraph& refined, GraphPoint p) const {
        p = canonical_point(refined, p);
        if (p.is_vertex() && refined_to_minimal[p.vertex] >= 0)
            return GraphPoint::at_vertex(refined_to_minimal[p.vertex]);
        for (int me = 0; me < (int)chains.size(); ++me) {
            Rat acc = 0;
            for (auto [e, fwd] : chains[me]) {
                const Rat& len = refined.edges[e].length;
                if (!p.is_vertex() && p.edge == e)
                    return canonical_point(graph,
                                           GraphPoint::on_edge(me, acc + (fwd ? p.offset : len - p.offset)));
                acc += len;
                if (p.is_vertex()) {
                    int reached = fwd ? refined.edges[e].v : refined.edges[e].u;
                    if (reached == p.vertex && refined_to_minimal[p.vertex] < 0)
                        return canonical_point(graph, GraphPoint::on_edge(me, acc));
                }
            }
        }
        throw internal_error("to_minimal: point not found on any chain");
    }
};

inline MinimalModel minimal_model(const MetricGraph& g) {
    if (!g.connected()) throw invalid_argument_error("minimal_model: graph must be connected");
    if (g.edges.empty()) {
        // trivial graph (a single point): its own minimal model
        MinimalModel m;
        m.graph = g;
        m.refined_to_minimal.assign(g.num_vertices, 0);
        m.minimal_to_refined.assign(g.num_vertices, 0);
        return m;
    }
    for (int v = 0; v < g.num_vertices; ++v)
        if (g.valence(v) < 2)
            throw invalid_argument_error("minimal_model: graph has a vertex of valence < 2");

    MinimalModel m;
    std::vector<char> keep(g.num_vertices, 0);
    bool any_kept = false;
    for (int v = 0; v < g.num_vertices; ++v)
        if (g.valence(v) != 2) {
            keep[v] = 1;
            any_kept = true;
        }
    // a pure cycle has no >2-valent vertex; keep one arbitrary base vertex
    if (!any_kept && g.num_vertices > 0) keep[0] = 1;

    m.refined_to_minimal.assign(g.num_vertices, -1);
    for (int v = 0; v < g.num_vertices; ++v)
        if (keep[v]) {
            m.refined_to_minimal[v] = m.graph.add_vertex();
            m.minimal_to_refined.push_back(v);
        }

    auto inc = g.incident_edges();
    std::vector<char> used(g.edges.size(), 0);
    for (int v0 = 0; v0 < g.num_vertices; ++v0) {
        if (!keep[v0]) continue;
        for (int e0 : inc[v0]) {
            // walk each half-edge leaving a kept vertex; loops at kept
            // vertices are walked once from each end, so claim them on the
            // first visit only
            if (used[e0]) continue;
            std::vector<std::pair<int, bool>> chain;
            Rat len = 0;
            int cur = v0, e = e0;
            for (;;) {
                used[e] = 1;
                bool fwd = (g.edges[e].u == cur);
                chain.emplace_back(e, fwd);
                len += g.edges[e].length;
                cur = fwd ? g.edges[e].v : g.edges[e].u;
                if (keep[cur]) break;
                int next = -1;
                for (int f : inc[cur])
                    if (f != e) next = f;
                if (next < 0 || used[next]) throw internal_error("minimal_model: broken chain walk");
                e = next;
            }
            m.chains.push_back(std::move(chain));
            m.graph.add_edge(m.refined_to_minimal[v0], m.refined_to_minimal[cur], len);
        }
    }
    if (m.graph.genus() != g.genus())
        throw internal_error("minimal_model: genus changed");
    return m;
}

// ---- combinatorial type ----------------------------------------------------

enum class GraphType { Honeycomb, MickeyMouse, OneBridge, TwoBridge, Lollipop, Other };

inline std::string graph_type_name(GraphType t) {
    switch (t) {
        case GraphType::Honeycomb: return "Honeycomb";
        case GraphType::MickeyMouse: return "MickeyMouse";
        case GraphType::OneBridge: return "OneBridge";
        case GraphType::TwoBridge: return "TwoBridge";
        case GraphType::Lollipop: return "Lollipop";
        case GraphType::Other: return "Other";
    }
    return "Other";
}

// Type of a genus-3 trivalent graph, read off the minimal model: the number
// of loops determines the shape, with the loopless case split into the
// complete graph K4 and the theta-pair ("dumbbell of thetas") graph.
inline GraphType classify_graph(const MetricGraph& minimal) {
    const MetricGraph& g = minimal;
    if (g.genus() != 3 || !g.connected()) return GraphType::Other;
    if (g.num_vertices != 4 || g.edges.size() != 6) return GraphType::Other;
    for (int v = 0; v < g.num_vertices; ++v)
        if (g.valence(v) != 3) return GraphType::Other;

    int loops = 0;
    for (int e = 0; e < (int)g.edges.size(); ++e)
        if (g.is_loop(e)) ++loops;
    int nbridges = (int)bridges(g).size();

    if (loops == 3) return nbridges == 3 ? GraphType::Lollipop : GraphType::Other;
    if (loops == 2) return nbridges == 2 ? GraphType::TwoBridge : GraphType::Other;
    if (loops == 1) return nbridges == 1 ? GraphType::OneBridge : GraphType::Other;
    if (nbridges != 0) return GraphType::Other;

    // loopless: count parallel pairs
    std::map<std::pair<int, int>, int> mult;
    for (const auto& e : g.edges)
        ++mult[{std::min(e.u, e.v), std::max(e.u, e.v)}];
    int doubled = 0;
    bool simple = true;
    for (auto& [uv, k] : mult) {
        if (k == 2) ++doubled;
        if (k != 1) simple = false;
    }
    if (simple) return GraphType::Honeycomb;  // K4
    if (doubled == 2 && mult.size() == 4) return GraphType::MickeyMouse;
    return GraphType::Other;
}

// ---- shortest path distances ----------------------------------------------

// exact Dijkstra from a point; returns the distance to every vertex
inline std::vector<Rat> distances_from(const MetricGraph& g, GraphPoint src) {
    src = canonical_point(g, src);
    std::vector<Rat> dist(g.num_vertices, Rat(-1));
    using Item = std::pair<Rat, int>;
    auto cmp = [](const Item& a, const Item& b) { return a.first > b.first; };
    std::priority_queue<Item, std::vector<Item>, decltype(cmp)> pq(cmp);
    auto push = [&](int v, const Rat& d) {
        if (dist[v] < 0 || d < dist[v]) {
            dist[v] = d;
            pq.push({d, v});
        }
    };
    if (src.is_vertex()) {
        push(src.vertex, Rat(0));
    } else {
        const auto& e = g.edges[src.edge];
        push(e.u, src.offset);
        push(e.v, e.length - src.offset);
    }
    while (!pq.empty()) {
        auto [d, v] = pq.top();
        pq.pop();
        if (d > dist[v]) continue;
        for (const auto& e : g.edges) {
            if (e.u == v) push(e.v, d + e.length);
            if (e.v == v) push(e.u, d + e.length);
        }
    }
    return dist;
}

// distance between two points (through the graph, exact)
inline Rat distance(const MetricGraph& g, GraphPoint a, GraphPoint b) {
    a = canonical_point(g, a);
    b = canonical_point(g, b);
    if (a == b) return Rat(0);
    auto dist = distances_from(g, a);
    if (b.is_vertex()) {
        if (dist[b.vertex] < 0) throw invalid_argument_error("distance: disconnected");
        return dist[b.vertex];
    }
    const auto& e = g.edges[b.edge];
    Rat best = dist[e.u] + b.offset;
    Rat alt = dist[e.v] + (e.length - b.offset);
    if (alt < best) best = alt;
    // both points interior to the same edge: the direct arc may be shorter
    if (!a.is_vertex() && a.edge == b.edge) {
        Rat direct = rat_abs(a.offset - b.offset);
        if (direct < best) best = direct;
    }
    return best;
}

// a point at half the distance from a to b along some shortest path:
// candidates are solved per edge from the vertex distances and then verified
inline GraphPoint metric_midpoint(const MetricGraph& g, GraphPoint a, GraphPoint b) {
    a = canonical_point(g, a);
    b = canonical_point(g, b);
    Rat total = distance(g, a, b);
    Rat half = total / 2;
    auto ok = [&](const GraphPoint& m) {
        return distance(g, a, m) == half && distance(g, m, b) == total - half;
    };
    if (total == 0) return a;
    std::vector<GraphPoint> cands;
    auto da = distances_from(g, a);
    for (int v = 0; v < g.num_vertices; ++v)
        if (da[v] == half) cands.push_back(GraphPoint::at_vertex(v));
    for (int e = 0; e < (int)g.edges.size(); ++e) {
        const auto& ed = g.edges[e];
        for (auto [w, t] : {std::pair{ed.u, Rat(half - da[ed.u])},
                            std::pair{ed.v, Rat(ed.length - (half - da[ed.v]))}})
            if (da[w] >= 0 && da[w] <= half && t >= 0 && t <= ed.length)
                cands.push_back(canonical_point(g, GraphPoint::on_edge(e, t)));
    }
    if (!a.is_vertex())
        for (const Rat& t : {Rat(a.offset + half), Rat(a.offset - half)})
            if (t >= 0 && t <= g.edges[a.edge].length)
                cands.push_back(canonical_point(g, GraphPoint::on_edge(a.edge, t)));
    for (const auto& m : cands)
        if (ok(m)) return m;
    throw internal_error("metric_midpoint: no midpoint found");
}

}  // namespace tropq
