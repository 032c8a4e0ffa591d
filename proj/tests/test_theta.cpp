#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "tropq/curve.hpp"
#include "tropq/heights.hpp"
#include "tropq/theta.hpp"

using namespace tropq;

namespace {

MetricGraph theta_graph(Rat a, Rat b, Rat c) {
    MetricGraph g;
    g.add_vertex();
    g.add_vertex();
    g.add_edge(0, 1, a);
    g.add_edge(0, 1, b);
    g.add_edge(0, 1, c);
    return g;
}

// a quartic whose skeleton carries flexible and tandem-cycle theta divisors
const char* NON_RIGID_TRI =
    "degree 4\n"
    "0,0 1,0 0,1\n0,1 1,0 0,2\n0,2 1,0 0,3\n0,3 1,0 0,4\n0,4 1,0 1,1\n"
    "0,4 1,1 1,2\n0,4 1,2 1,3\n1,0 2,0 1,1\n1,1 2,0 3,0\n1,1 2,1 1,2\n"
    "1,1 3,0 2,1\n1,2 2,1 3,1\n1,2 2,2 1,3\n1,2 3,1 2,2\n2,1 3,0 3,1\n"
    "3,0 4,0 3,1\n";

Skeleton quartic_skeleton(const char* text) {
    std::istringstream is(text);
    auto t = read_triangulation(is);
    return skeleton(dual_curve(regular_heights(t), t));
}

}  // namespace

TEST_CASE("nonzero flows of small graphs", "[theta]") {
    auto th = theta_graph(Rat(1), Rat(2), Rat(3));
    auto flows = nonzero_flows(th);  // genus 2: three flows, each an edge pair
    REQUIRE(flows.size() == 3);
    std::set<std::vector<int>> got(flows.begin(), flows.end());
    CHECK(got == std::set<std::vector<int>>{{0, 1}, {0, 2}, {1, 2}});

    MetricGraph k4;
    for (int i = 0; i < 4; ++i) k4.add_vertex();
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) k4.add_edge(i, j, Rat(1));
    auto f4 = nonzero_flows(k4);
    CHECK(f4.size() == 7);  // 2^3 - 1
    for (const auto& f : f4) {
        std::vector<int> deg(4, 0);
        for (int e : f) {
            ++deg[k4.edges[e].u];
            ++deg[k4.edges[e].v];
        }
        for (int v = 0; v < 4; ++v) CHECK(deg[v] % 2 == 0);
    }
}

TEST_CASE("Zharkov divisor of a theta graph flow", "[theta]") {
    auto g = theta_graph(Rat(1), Rat(2), Rat(3));
    // flow on the two shorter edges: arrows run along the long edge from both
    // ends and collide at its midpoint-by-distance, 3/2 from either vertex
    Divisor d = zharkov_divisor(g, {0, 1});
    CHECK(divisor_str(d) == "e2@3/2");
    CHECK(divisor_str(zharkov_divisor(g, {0, 2})) == "e1@1");
    CHECK(divisor_str(zharkov_divisor(g, {1, 2})) == "e0@1/2");

    CHECK_THROWS_AS(zharkov_divisor(g, {}), invalid_argument_error);
    CHECK_THROWS_AS(zharkov_divisor(g, {0}), invalid_argument_error);  // odd degree
}

TEST_CASE("circle: one theta characteristic, the empty divisor", "[theta]") {
    MetricGraph circle;
    circle.add_vertex();
    circle.add_edge(0, 0, Rat(5));
    auto tcs = all_theta_characteristics(circle);
    REQUIRE(tcs.size() == 1);
    CHECK(tcs[0].divisor.degree() == 0);
    CHECK(tcs[0].divisor.chips.empty());
}

TEST_CASE("theta characteristics verify their defining claims", "[theta]") {
    // all_theta_characteristics machine-checks effectivity, degree g-1,
    // 2D ~ K, and pairwise inequivalence; reaching the counts below means
    // every claim held
    auto g = theta_graph(Rat(1), Rat(2), Rat(3));
    CHECK(all_theta_characteristics(g).size() == 3);

    MetricGraph db;
    db.add_vertex();
    db.add_vertex();
    db.add_edge(0, 0, Rat(2));
    db.add_edge(1, 1, Rat(2));
    db.add_edge(0, 1, Rat(1));
    auto tcs = all_theta_characteristics(db);
    REQUIRE(tcs.size() == 3);
    for (const auto& tc : tcs) CHECK(tc.divisor.degree() == 1);
}

TEST_CASE("honeycomb quartic: seven rigid theta characteristics", "[theta]") {
    auto s = skeleton(dual_curve(quadratic_heights(4)));
    auto tcs = all_theta_characteristics(s.refined);
    REQUIRE(tcs.size() == 7);
    const char* expected[7] = {
        "e5@1/2 + v11", "2*v7",         "e8@1/2 + e14@1/2", "e7@1/2 + v4",
        "e9@1/2 + v0",  "e4@1/2 + e13@1/2", "e0@1/2 + e3@1/2",
    };
    for (int i = 0; i < 7; ++i) {
        CHECK(divisor_str(tcs[i].divisor) == expected[i]);
        CHECK(classify_theta(s.refined, tcs[i].divisor) == ThetaKind::Rigid);
    }
}

TEST_CASE("a bridged quartic has flexible and tandem theta divisors", "[theta]") {
    auto s = quartic_skeleton(NON_RIGID_TRI);
    REQUIRE(s.genus() == 3);
    auto tcs = all_theta_characteristics(s.refined);
    REQUIRE(tcs.size() == 7);
    const ThetaKind expected[7] = {
        ThetaKind::Rigid, ThetaKind::Flexible, ThetaKind::Rigid,  ThetaKind::Rigid,
        ThetaKind::Rigid, ThetaKind::Rigid,    ThetaKind::Tandem,
    };
    for (int i = 0; i < 7; ++i) {
        INFO("theta " << i << ": " << divisor_str(tcs[i].divisor));
        CHECK(classify_theta(s.refined, tcs[i].divisor) == expected[i]);
    }
    CHECK(theta_kind_name(ThetaKind::Flexible) == "Flexible");
    CHECK(theta_kind_name(ThetaKind::Tandem) == "Tandem");
    CHECK(theta_kind_name(ThetaKind::Rigid) == "Rigid");
}

TEST_CASE("classify_theta validates its input", "[theta]") {
    auto g = theta_graph(Rat(1), Rat(2), Rat(3));
    Divisor deg1 = make_divisor(g, {{GraphPoint::at_vertex(0), 1}});
    CHECK_THROWS_AS(classify_theta(g, deg1), invalid_argument_error);
    Divisor neg = make_divisor(g, {{GraphPoint::at_vertex(0), 3},
                                   {GraphPoint::at_vertex(1), -1}});
    CHECK_THROWS_AS(classify_theta(g, neg), invalid_argument_error);
}
