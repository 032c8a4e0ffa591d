#pragma once

// Divisor theory on metric graphs: q-reduced forms via Dhar's burning
// algorithm with exact rational firing amounts, linear equivalence, rank,
// Riemann-Roch, and rigidity of effective divisors.

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <vector>

#include "tropq/errors.hpp"
#include "tropq/metric_graph.hpp"
#include "tropq/rational.hpp"

namespace tropq {

struct Divisor {
    std::map<GraphPoint, int> chips;  // canonical points -> nonzero coefficients

    int degree() const {
        int d = 0;
        for (const auto& [p, k] : chips) d += k;
        return d;
    }
    bool effective() const {
        for (const auto& [p, k] : chips)
            if (k < 0) return false;
        return true;
    }
    int coeff(const GraphPoint& p) const {
        auto it = chips.find(p);
        return it == chips.end() ? 0 : it->second;
    }
    friend bool operator==(const Divisor&, const Divisor&) = default;
};

inline Divisor& divisor_add(const MetricGraph& g, Divisor& d, GraphPoint p, int k) {
    if (k == 0) return d;
    p = canonical_point(g, p);
    int c = (d.chips[p] += k);
    if (c == 0) d.chips.erase(p);
    return d;
}

inline Divisor make_divisor(const MetricGraph& g,
                            const std::vector<std::pair<GraphPoint, int>>& entries) {
    Divisor d;
    for (const auto& [p, k] : entries) divisor_add(g, d, p, k);
    return d;
}

inline Divisor divisor_sum(const MetricGraph& g, const Divisor& a, const Divisor& b, int sign_b = 1) {
    Divisor d = a;
    for (const auto& [p, k] : b.chips) divisor_add(g, d, p, sign_b * k);
    return d;
}

inline Divisor scale_divisor(const Divisor& a, int s) {
    Divisor d;
    if (s == 0) return d;
    for (const auto& [p, k] : a.chips) d.chips[p] = s * k;
    return d;
}

inline std::string divisor_str(const Divisor& d) {
    if (d.chips.empty()) return "0";
    std::string s;
    for (const auto& [p, k] : d.chips) {
        if (!s.empty()) s += " + ";
        if (k != 1) s += std::to_string(k) + "*";
        s += point_str(p);
    }
    return s;
}

// K = sum (val(v) - 2) v
inline Divisor canonical_divisor(const MetricGraph& g) {
    Divisor d;
    for (int v = 0; v < g.num_vertices; ++v)
        divisor_add(g, d, GraphPoint::at_vertex(v), g.valence(v) - 2);
    return d;
}

// ---- chip-firing model -------------------------------------------------

namespace detail {

// A refinement of the base graph that grows as chips land inside edges.
// Every model edge is a sub-interval of one base edge, so model vertices
// always know their base-graph coordinates.
struct FiringModel {
    const MetricGraph& base;
    MetricGraph g;
    std::vector<GraphPoint> pos;  // model vertex -> canonical base point
    struct Span { int base_edge; Rat ou, ov; };
    std::vector<Span> spans;  // per model edge: base offsets at its u and v
    std::vector<long long> chips;

    explicit FiringModel(const MetricGraph& b) : base(b) {
        g.num_vertices = b.num_vertices;
        pos.reserve(b.num_vertices);
        for (int v = 0; v < b.num_vertices; ++v) pos.push_back(GraphPoint::at_vertex(v));
        for (int e = 0; e < (int)b.edges.size(); ++e) {
            g.edges.push_back(b.edges[e]);
            spans.push_back({e, Rat(0), b.edges[e].length});
        }
        chips.assign(b.num_vertices, 0);
    }

    // split model edge me at distance 0 < dist < length from its u endpoint
    int split(int me, const Rat& dist) {
        MetricEdge e = g.edges[me];
        Span sp = spans[me];
        if (dist <= 0 || dist >= e.length) throw internal_error("split: bad distance");
        Rat t = sp.ov > sp.ou ? Rat(sp.ou + dist) : Rat(sp.ou - dist);
        int w = g.add_vertex();
        chips.push_back(0);
        pos.push_back(canonical_point(base, GraphPoint::on_edge(sp.base_edge, t)));
        g.edges[me] = {e.u, w, dist};
        spans[me] = {sp.base_edge, sp.ou, t};
        g.edges.push_back({w, e.v, e.length - dist});
        spans.push_back({sp.base_edge, t, sp.ov});
        return w;
    }

    int locate(GraphPoint p) {
        p = canonical_point(base, p);
        for (int v = 0; v < g.num_vertices; ++v)
            if (pos[v] == p) return v;
        for (int me = 0; me < (int)g.edges.size(); ++me) {
            const Span& sp = spans[me];
            if (sp.base_edge != p.edge) continue;
            Rat lo = std::min(sp.ou, sp.ov), hi = std::max(sp.ou, sp.ov);
            if (lo < p.offset && p.offset < hi)
                return split(me, rat_abs(p.offset - sp.ou));
        }
        throw internal_error("locate: point not found in model");
    }

    std::vector<Rat> distances(int src) const {
        std::vector<Rat> dist(g.num_vertices, Rat(-1));
        using Item = std::pair<Rat, int>;
        auto cmp = [](const Item& a, const Item& b) { return a.first > b.first; };
        std::priority_queue<Item, std::vector<Item>, decltype(cmp)> pq(cmp);
        dist[src] = 0;
        pq.push({Rat(0), src});
        while (!pq.empty()) {
            auto [d, v] = pq.top();
            pq.pop();
            if (d > dist[v]) continue;
            for (const auto& e : g.edges)
                for (auto [a, b] : {std::pair{e.u, e.v}, std::pair{e.v, e.u}})
                    if (a == v && (dist[b] < 0 || d + e.length < dist[b])) {
                        dist[b] = d + e.length;
                        pq.push({dist[b], b});
                    }
        }
        return dist;
    }
};

// Dhar's burning algorithm: fire spreads from q; an unburnt vertex burns
// when the approaches from burnt territory exceed its chips.
inline std::vector<char> dhar_burnt(const FiringModel& m, int q) {
    const int n = m.g.num_vertices;
    std::vector<std::vector<int>> adj(n);  // neighbor per non-loop edge end
    for (const auto& e : m.g.edges)
        if (e.u != e.v) {
            adj[e.u].push_back(e.v);
            adj[e.v].push_back(e.u);
        }
    std::vector<char> burnt(n, 0);
    std::vector<long long> approaches(n, 0);
    std::vector<int> queue{q};
    burnt[q] = 1;
    while (!queue.empty()) {
        int u = queue.back();
        queue.pop_back();
        for (int v : adj[u]) {
            if (burnt[v]) continue;
            if (++approaches[v] > m.chips[v]) {
                burnt[v] = 1;
                queue.push_back(v);
            }
        }
    }
    return burnt;
}

}  // namespace detail

// One firing move: the closed region spanned by `region` (base-graph points
// of the model vertices inside it) fires for time `eps`; one chip crosses
// every boundary edge outward.
struct FiringStep {
    std::vector<GraphPoint> region;
    Rat eps;
    long long times = 1;  // chips crossing each boundary edge (slope of the move)
};

struct ReductionResult {
    Divisor reduced;
    std::vector<FiringStep> steps;
};

namespace detail {

inline void fire_region(FiringModel& m, const std::vector<char>& in_region, const Rat& eps,
                        std::vector<FiringStep>* log, long long times = 1) {
    if (log) {
        FiringStep st;
        st.eps = eps;
        st.times = times;
        for (int v = 0; v < m.g.num_vertices; ++v)
            if (in_region[v]) st.region.push_back(m.pos[v]);
        log->push_back(std::move(st));
    }
    struct Crossing { int edge, from; };
    std::vector<Crossing> crossings;
    for (int e = 0; e < (int)m.g.edges.size(); ++e) {
        int u = m.g.edges[e].u, v = m.g.edges[e].v;
        if (in_region[u] == in_region[v]) continue;
        crossings.push_back({e, in_region[u] ? u : v});
    }
    for (const auto& cr : crossings) {
        const MetricEdge& e = m.g.edges[cr.edge];
        m.chips[cr.from] -= times;
        if (eps == e.length) {
            m.chips[cr.from == e.u ? e.v : e.u] += times;
        } else {
            int w = m.split(cr.edge, cr.from == e.u ? eps : e.length - eps);
            m.chips[w] += times;
        }
    }
}

inline Rat boundary_eps(const FiringModel& m, const std::vector<char>& in_region) {
    Rat eps(-1);
    for (const auto& e : m.g.edges) {
        if (in_region[e.u] == in_region[e.v]) continue;
        if (eps < 0 || e.length < eps) eps = e.length;
    }
    if (eps <= 0) throw internal_error("fire: region has no boundary");
    return eps;
}

}  // namespace detail

// The unique q-reduced divisor linearly equivalent to d, with the firing
// moves that realize the equivalence.  Debt away from q is cleared first by
// a single graded wave of chips out of q, then Dhar's algorithm pushes
// everything as close to q as possible.
inline ReductionResult reduce_divisor(const MetricGraph& g, const Divisor& d, GraphPoint q,
                                      long long max_steps = 1000000) {
    if (!g.connected()) throw invalid_argument_error("reduce_divisor: graph must be connected");
    detail::FiringModel m(g);
    int mq = m.locate(q);
    for (const auto& [p, k] : d.chips) {
        int v = m.locate(p);
        m.chips[v] += k;
    }
    ReductionResult out;
    long long steps = 0;

    // phase 1: clear debt away from q with one graded wave out of q.  Over
    // the distinct vertex radii r_1 < ... < r_K, choose (backward) a
    // non-increasing multiplicity profile mult[k] so that the wave crossing
    // (r_{k-1}, r_k] delivers, to each vertex at radius r_k, mult[k] chips
    // per shortest-path end -- enough to cover its debt plus the mult[k+1]
    // it pays per outward end when the wave moves on.  Chips parked where
    // the profile steps down or where fronts meet are non-negative because
    // the profile never increases outward.  q funds the wave, which costs a
    // q-reduced form nothing.  The fronts advance in lock step at radius
    // rho, so every vertex radius takes exactly one region firing.
    {
        bool any_debt = false;
        for (int v = 0; v < m.g.num_vertices; ++v)
            if (v != mq && m.chips[v] < 0) any_debt = true;
        if (any_debt) {
            auto dist = m.distances(mq);
            std::vector<Rat> radii;
            for (int v = 0; v < m.g.num_vertices; ++v)
                if (v != mq) radii.push_back(dist[v]);
            std::sort(radii.begin(), radii.end());
            radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
            const int K = (int)radii.size();
            std::vector<long long> mult(K + 1, 0);  // mult[k] covers (radii[k-1], radii[k]]
            for (int k = K - 1; k >= 0; --k) {
                long long need = mult[k + 1];
                for (int v = 0; v < m.g.num_vertices; ++v) {
                    if (v == mq || dist[v] != radii[k]) continue;
                    long long in = 0, out_ends = 0;
                    for (const auto& e : m.g.edges)
                        for (auto [a, b] : {std::pair{e.u, e.v}, std::pair{e.v, e.u}}) {
                            if (a != v) continue;
                            if (b != v && dist[b] + e.length == dist[v]) ++in;
                            else ++out_ends;
                        }
                    long long deficit = out_ends * mult[k + 1] - m.chips[v];
                    if (deficit > 0) need = std::max(need, (deficit + in - 1) / in);
                }
                mult[k] = need;
            }
            const int n_orig = m.g.num_vertices;
            std::vector<char> in_region(n_orig, 0);
            in_region[mq] = 1;
            Rat rho(0);
            int k = 0;
            for (;;) {
                while (k < K && radii[k] == rho) ++k;
                if (k >= K || mult[k] == 0) break;
                Rat eps = radii[k] - rho;
                int before = m.g.num_vertices;
                detail::fire_region(m, in_region, eps, &out.steps, mult[k]);
                rho += eps;
                in_region.resize(m.g.num_vertices, 0);
                // new split vertices are exactly the advanced fronts
                for (int v = before; v < m.g.num_vertices; ++v) in_region[v] = 1;
                for (int v = 0; v < n_orig; ++v)
                    if (dist[v] == rho) in_region[v] = 1;
                if (++steps > max_steps)
                    throw internal_error("reduce_divisor: phase 1 step limit exceeded");
            }
            for (int v = 0; v < m.g.num_vertices; ++v)
                if (v != mq && m.chips[v] < 0)
                    throw internal_error("reduce_divisor: debt survived the clearing wave");
        }
    }

    // phase 2: repeat Dhar until everything burns
    for (;;) {
        auto burnt = detail::dhar_burnt(m, mq);
        bool all = true;
        std::vector<char> in_region(m.g.num_vertices, 0);
        for (int v = 0; v < m.g.num_vertices; ++v)
            if (!burnt[v]) {
                in_region[v] = 1;
                all = false;
            }
        if (all) break;
        detail::fire_region(m, in_region, detail::boundary_eps(m, in_region), &out.steps);
        if (++steps > max_steps) throw internal_error("reduce_divisor: phase 2 step limit exceeded");
    }

    for (int v = 0; v < m.g.num_vertices; ++v)
        if (m.chips[v] != 0) divisor_add(g, out.reduced, m.pos[v], (int)m.chips[v]);
    return out;
}

inline Divisor reduced_divisor(const MetricGraph& g, const Divisor& d, GraphPoint q) {
    return reduce_divisor(g, d, q).reduced;
}

inline bool linearly_equivalent(const MetricGraph& g, const Divisor& a, const Divisor& b) {
    if (a.degree() != b.degree()) return false;
    GraphPoint q = GraphPoint::at_vertex(0);
    return reduced_divisor(g, a, q) == reduced_divisor(g, b, q);
}

inline bool equivalent_to_effective(const MetricGraph& g, const Divisor& d) {
    if (d.degree() < 0) return false;
    return reduced_divisor(g, d, GraphPoint::at_vertex(0)).effective();
}

// ---- rank -------------------------------------------------------------

// Vertices of a loopless model together with the support of d: testing
// effective divisors supported on this set decides the rank.
inline std::vector<GraphPoint> rank_determining_set(const MetricGraph& g, const Divisor& d) {
    std::set<GraphPoint> pts;
    for (int v = 0; v < g.num_vertices; ++v) pts.insert(GraphPoint::at_vertex(v));
    for (int e = 0; e < (int)g.edges.size(); ++e)
        if (g.is_loop(e))
            pts.insert(GraphPoint::on_edge(e, g.edges[e].length / 2));
    for (const auto& [p, k] : d.chips) pts.insert(p);
    return {pts.begin(), pts.end()};
}

// r(d) = largest r such that d - E is equivalent to an effective divisor for
// every effective E of degree r.
inline int rank(const MetricGraph& g, const Divisor& d) {
    const int deg = d.degree();
    if (deg < 0) return -1;
    if (!equivalent_to_effective(g, d)) return -1;
    auto A = rank_determining_set(g, d);
    const int n = (int)A.size();
    // starting every test from the base-point-reduced form of d (an
    // equivalent divisor concentrated near the base point) makes the
    // per-multiset reductions cheap without changing any outcome
    std::map<int, Divisor> at_base;
    for (int r = 1; r <= deg; ++r) {
        // multisets of size r over A, as non-decreasing index tuples
        std::vector<int> idx(r, 0);
        for (;;) {
            auto it = at_base.find(idx[0]);
            if (it == at_base.end())
                it = at_base.emplace(idx[0], reduced_divisor(g, d, A[idx[0]])).first;
            Divisor e = it->second;
            for (int i : idx) divisor_add(g, e, A[i], -1);
            if (!e.effective() && !reduced_divisor(g, e, A[idx[0]]).effective()) return r - 1;
            int i = r - 1;
            while (i >= 0 && idx[i] == n - 1) --i;
            if (i < 0) break;
            int v = idx[i] + 1;
            for (int j = i; j < r; ++j) idx[j] = v;
        }
    }
    return deg;
}

// r(D) - r(K - D) - deg(D) + g - 1, which is zero for every divisor
inline int riemann_roch_residual(const MetricGraph& g, const Divisor& d) {
    Divisor k = canonical_divisor(g);
    return rank(g, d) - rank(g, divisor_sum(g, k, d, -1)) - d.degree() + g.genus() - 1;
}

// ---- rigidity -----------------------------------------------------------

// An effective divisor is rigid when it is the only effective divisor in its
// class.  It fails to be rigid exactly when some closed region whose
// boundary lies in supp(d) can fire: enumerate candidate regions as unions
// of closures of components of (graph minus support) plus isolated support
// points, and check the chip budget on the boundary.
inline bool is_rigid(const MetricGraph& g, const Divisor& d) {
    if (!d.effective()) throw invalid_argument_error("is_rigid: divisor must be effective");
    if (d.chips.empty()) return true;
    detail::FiringModel m(g);
    std::vector<int> supp;
    for (const auto& [p, k] : d.chips) {
        int v = m.locate(p);
        m.chips[v] += k;
        supp.push_back(v);
    }
    std::sort(supp.begin(), supp.end());
    auto is_supp = [&](int v) { return std::binary_search(supp.begin(), supp.end(), v); };

    // faces: connected components of the model minus the support vertices,
    // as sets of model edges glued at non-support vertices
    const int ne = (int)m.g.edges.size();
    std::vector<int> face(ne);
    for (int e = 0; e < ne; ++e) face[e] = e;
    auto find = [&](int x) {
        while (face[x] != x) x = face[x] = face[face[x]];
        return x;
    };
    for (int e = 0; e < ne; ++e)
        for (int f = e + 1; f < ne; ++f)
            for (int a : {m.g.edges[e].u, m.g.edges[e].v})
                for (int b : {m.g.edges[f].u, m.g.edges[f].v})
                    if (a == b && !is_supp(a)) face[find(e)] = find(f);
    std::vector<int> face_ids;
    for (int e = 0; e < ne; ++e)
        if (find(e) == e) face_ids.push_back(e);
    const int nf = (int)face_ids.size();
    const int ns = (int)supp.size();

    // ends[f][s] = number of edge-ends of face f at support vertex s
    std::vector<std::vector<int>> ends(nf, std::vector<int>(ns, 0));
    for (int e = 0; e < ne; ++e) {
        int f = (int)(std::find(face_ids.begin(), face_ids.end(), find(e)) - face_ids.begin());
        for (int v : {m.g.edges[e].u, m.g.edges[e].v})
            if (is_supp(v)) {
                int s = (int)(std::lower_bound(supp.begin(), supp.end(), v) - supp.begin());
                ++ends[f][s];
            }
    }

    if (nf > 20 || ns > 20) throw resource_limit_error("is_rigid: too many faces");
    for (int fmask = 0; fmask < (1 << nf); ++fmask) {
        if (fmask == (1 << nf) - 1) continue;  // the whole graph is not a valid region
        for (int pmask = 0; pmask < (1 << ns); ++pmask) {
            if (fmask == 0 && pmask == 0) continue;
            bool ok = true;
            for (int s = 0; s < ns && ok; ++s) {
                bool in_closure = (pmask >> s) & 1;
                int outdeg = 0;
                for (int f = 0; f < nf; ++f) {
                    if ((fmask >> f) & 1) {
                        if (ends[f][s] > 0) in_closure = true;
                    } else {
                        outdeg += ends[f][s];
                    }
                }
                if (in_closure && m.chips[supp[s]] < outdeg) ok = false;
            }
            if (ok) return false;  // this region can fire: d moves
        }
    }
    return true;
}

// Finite-sample variant: d is declared rigid when its q-reduced form equals d
// for every q among the vertices, the support, and all edge midpoints.  Any
// other effective representative with extra chips at such a q would force the
// q-reduced divisor to dominate d there.  Kept as a cross-check against the
// exact region-enumeration test above.
inline bool is_rigid_scan(const MetricGraph& g, const Divisor& d) {
    if (!d.effective()) throw invalid_argument_error("is_rigid_scan: divisor must be effective");
    std::set<GraphPoint> qs;
    for (int v = 0; v < g.num_vertices; ++v) qs.insert(GraphPoint::at_vertex(v));
    for (int e = 0; e < (int)g.edges.size(); ++e)
        qs.insert(canonical_point(g, GraphPoint::on_edge(e, g.edges[e].length / 2)));
    for (const auto& [p, k] : d.chips) qs.insert(p);
    for (const auto& q : qs)
        if (reduced_divisor(g, d, q) != d) return false;
    return true;
}

}  // namespace tropq
