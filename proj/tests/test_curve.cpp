#include <catch2/catch_amalgamated.hpp>

#include "tropq/curve.hpp"

using namespace tropq;

TEST_CASE("degree-4 quadratic lift: golden structure", "[curve]") {
    auto c = dual_curve(quadratic_heights(4));
    CHECK(c.degree == 4);
    CHECK(c.vertices.size() == 16);
    CHECK(c.edges.size() == 18);
    CHECK(c.rays.size() == 12);
    std::string diag;
    INFO(diag);
    CHECK(is_smooth(c, &diag));

    // four rays in each of the three directions
    int east = 0, north = 0, sw = 0;
    for (const auto& r : c.rays) {
        if (r.dir == LatticePoint{1, 0}) ++east;
        if (r.dir == LatticePoint{0, 1}) ++north;
        if (r.dir == LatticePoint{-1, -1}) ++sw;
    }
    CHECK(east == 4);
    CHECK(north == 4);
    CHECK(sw == 4);
}

TEST_CASE("degree-4 quadratic lift: golden skeleton", "[curve]") {
    auto c = dual_curve(quadratic_heights(4));
    auto s = skeleton(c);
    CHECK(s.genus() == 3);
    CHECK(s.type() == GraphType::Honeycomb);
    CHECK(s.refined.num_vertices == 13);
    CHECK(s.refined.edges.size() == 15);
    REQUIRE(s.minimal.graph.edges.size() == 6);
    std::vector<Rat> lens;
    for (const auto& e : s.minimal.graph.edges) lens.push_back(e.length);
    std::sort(lens.begin(), lens.end());
    CHECK(lens == std::vector<Rat>{Rat(1), Rat(1), Rat(1), Rat(4), Rat(4), Rat(4)});
}

TEST_CASE("edge geometry is consistent", "[curve]") {
    auto c = dual_curve(quadratic_heights(4));
    for (const auto& e : c.edges) {
        // pos(b) = pos(a) + steps * dir, dir primitive
        PlanePoint expect{c.vertices[e.a].pos.x + e.steps * e.dir.x,
                          c.vertices[e.a].pos.y + e.steps * e.dir.y};
        CHECK(c.vertices[e.b].pos == expect);
        long long g = std::abs((long long)e.dir.x);
        long long h = std::abs((long long)e.dir.y);
        while (h) { long long t = g % h; g = h; h = t; }
        CHECK(g == 1);
        CHECK(e.steps > 0);
        // dual segment is an interior edge perpendicular to dir
        long long dot = (long long)(e.dual.b.x - e.dual.a.x) * e.dir.x +
                        (long long)(e.dual.b.y - e.dual.a.y) * e.dir.y;
        CHECK(dot == 0);
    }
}

TEST_CASE("small degrees: genus matches (d-1)(d-2)/2", "[curve]") {
    for (int d = 1; d <= 3; ++d) {
        auto c = dual_curve(quadratic_heights(d));
        auto s = skeleton(c);
        CHECK(s.genus() == (d - 1) * (d - 2) / 2);
    }
}

TEST_CASE("dual_curve rejects inconsistent lifts", "[curve]") {
    auto h = quadratic_heights(2);
    auto t = induced_subdivision(h, 2).as_triangulation();
    // a different triangulation of the same degree
    auto other = enumerate_unimodular_triangulations(2);
    bool tried = false;
    for (const auto& t2 : other)
        if (!(t2 == t)) {
            CHECK_THROWS_AS(dual_curve(h, t2), inconsistent_lift_error);
            tried = true;
            break;
        }
    CHECK(tried);

    HeightFunction wrong_degree = quadratic_heights(3);
    CHECK_THROWS_AS(dual_curve(wrong_degree, t), invalid_argument_error);
}

TEST_CASE("tropical line as a curve", "[curve]") {
    TropicalLine l{{make_rat(5, 2), Rat(-3)}};
    auto c = l.as_curve();
    REQUIRE(c.vertices.size() == 1);
    CHECK(c.vertices[0].pos == PlanePoint{make_rat(5, 2), Rat(-3)});
    CHECK(c.edges.empty());
    REQUIRE(c.rays.size() == 3);
    std::set<std::pair<int, int>> dirs;
    for (const auto& r : c.rays) dirs.insert({r.dir.x, r.dir.y});
    CHECK(dirs == std::set<std::pair<int, int>>{{1, 0}, {0, 1}, {-1, -1}});
}

TEST_CASE("locate_on_curve finds vertices, edge points, ray points", "[curve]") {
    auto c = dual_curve(quadratic_heights(4));
    // vertex
    auto lv = locate_on_curve(c, c.vertices[3].pos);
    REQUIRE(lv);
    CHECK(lv->kind == CurveLocation::Vertex);
    CHECK(lv->index == 3);
    // interior edge point
    PlanePoint mid = c.edge_point(0, c.edges[0].steps / 2);
    auto le = locate_on_curve(c, mid);
    REQUIRE(le);
    CHECK(le->kind == CurveLocation::Edge);
    CHECK(le->index == 0);
    CHECK(le->t == c.edges[0].steps / 2);
    // ray point
    const auto& ray = c.rays[0];
    PlanePoint rp{c.vertices[ray.v].pos.x + 7 * ray.dir.x, c.vertices[ray.v].pos.y + 7 * ray.dir.y};
    auto lr = locate_on_curve(c, rp);
    REQUIRE(lr);
    CHECK(lr->kind == CurveLocation::Ray);
    CHECK(lr->t == Rat(7));
    // a point far off the curve
    CHECK_FALSE(locate_on_curve(c, {Rat(1000), Rat(999)}));
}

TEST_CASE("retraction maps the whole curve onto the skeleton", "[curve]") {
    auto c = dual_curve(quadratic_heights(4));
    auto s = skeleton(c);
    // skeleton vertices retract to themselves
    for (int rv = 0; rv < s.refined.num_vertices; ++rv) {
        GraphPoint p = retract_plane_point(c, s, c.vertices[s.refined_to_curve[rv]].pos);
        CHECK(p == GraphPoint::at_vertex(rv));
    }
    // ray points retract to vertices
    for (const auto& r : c.rays) {
        PlanePoint far{c.vertices[r.v].pos.x + 11 * r.dir.x, c.vertices[r.v].pos.y + 11 * r.dir.y};
        CHECK(retract_plane_point(c, s, far).is_vertex());
    }
    CHECK_THROWS_AS(retract_plane_point(c, s, {Rat(1000), Rat(999)}), invalid_argument_error);
}
