#include <catch2/catch_amalgamated.hpp>

#include "tropq/hyperelliptic.hpp"
#include "tropq/lattice.hpp"

using namespace tropq;

namespace {

// two doubled pairs joined by two single edges of lengths a and b
MetricGraph mickey_mouse(Rat a, Rat b) {
    MetricGraph g;
    for (int i = 0; i < 4; ++i) g.add_vertex();
    g.add_edge(0, 1, Rat(1));
    g.add_edge(0, 1, Rat(1));
    g.add_edge(2, 3, Rat(2));
    g.add_edge(2, 3, Rat(2));
    g.add_edge(0, 2, a);
    g.add_edge(1, 3, b);
    return g;
}

}  // namespace

TEST_CASE("every genus-2 graph is hyperelliptic", "[hyperelliptic]") {
    MetricGraph th;
    th.add_vertex();
    th.add_vertex();
    th.add_edge(0, 1, Rat(1));
    th.add_edge(0, 1, Rat(2));
    th.add_edge(0, 1, make_rat(7, 2));
    CHECK(is_hyperelliptic(th));

    MetricGraph db;
    db.add_vertex();
    db.add_vertex();
    db.add_edge(0, 0, Rat(3));
    db.add_edge(1, 1, Rat(5));
    db.add_edge(0, 1, Rat(2));
    CHECK(is_hyperelliptic(db));
}

TEST_CASE("is_hyperelliptic rejects out-of-scope genus", "[hyperelliptic]") {
    MetricGraph circle;
    circle.add_vertex();
    circle.add_edge(0, 0, Rat(1));
    CHECK_THROWS_AS(is_hyperelliptic(circle), out_of_scope_error);

    MetricGraph g4;  // two vertices joined by five edges: genus 4
    g4.add_vertex();
    g4.add_vertex();
    for (int i = 0; i < 5; ++i) g4.add_edge(0, 1, Rat(i + 1));
    CHECK_THROWS_AS(is_hyperelliptic(g4), out_of_scope_error);
}

TEST_CASE("genus 3: cut symmetry decides hyperellipticity", "[hyperelliptic]") {
    // equal cut lengths: the symmetric involution exists
    CHECK(is_hyperelliptic(mickey_mouse(Rat(3), Rat(3))));
    // unequal cut lengths rule it out
    CHECK_FALSE(is_hyperelliptic(mickey_mouse(Rat(3), Rat(4))));
    // a complete-graph minimal model never is
    MetricGraph k4;
    for (int i = 0; i < 4; ++i) k4.add_vertex();
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) k4.add_edge(i, j, Rat(i + j + 1));
    CHECK_FALSE(is_hyperelliptic(k4));
}

TEST_CASE("the honeycomb quartic is not hyperelliptic", "[hyperelliptic]") {
    auto c = dual_curve(quadratic_heights(4));
    CHECK(verify_nonhyperelliptic(c));
    // no separating 2-edge cut: the witness does not apply
    CHECK_THROWS_AS(cut_length_witness(c), not_applicable_error);
}

TEST_CASE("cut-length witness on bridged and doubled quartics", "[hyperelliptic]") {
    // scan the degree-4 census until each cut-separated skeleton type appears
    auto orbits = s3_orbits(enumerate_unimodular_triangulations(4));
    std::set<GraphType> seen;
    const std::set<GraphType> wanted{GraphType::MickeyMouse, GraphType::OneBridge,
                                     GraphType::TwoBridge};
    for (const auto& o : orbits) {
        if (seen == wanted) break;
        auto h = try_regular_heights(o.representative);
        if (!h) continue;
        auto c = dual_curve(*h, o.representative);
        auto s = skeleton(c);
        GraphType ty = s.type();
        if (!wanted.count(ty) || seen.count(ty)) continue;
        seen.insert(ty);
        INFO(graph_type_name(ty));
        auto w = cut_length_witness(c, s);
        CHECK(w.e2_length > w.e1_length);  // strict: the hyperelliptic symmetry is broken
        CHECK(w.e1_minimal_edge >= 0);
        CHECK(w.e2_minimal_edge >= 0);
        CHECK(w.e1_length == s.minimal.graph.edges[w.e1_minimal_edge].length);
        CHECK(w.e2_length == s.minimal.graph.edges[w.e2_minimal_edge].length);
        CHECK(verify_nonhyperelliptic(c));
    }
    CHECK(seen == wanted);
}
