#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <sstream>

#include "tropq/lattice.hpp"

using namespace tropq;

namespace {

// Independent oracle enumerator: breadth-first search of the flip graph,
// starting from the staircase triangulation.  Every unimodular triangulation
// of the triangle is reachable by flips, so the BFS closure must equal the
// direct enumeration exactly.
Triangulation staircase(int d) {
    Triangulation t;
    t.degree = d;
    for (int y = 0; y < d; ++y)
        for (int x = 0; x + y < d; ++x) {
            t.triangles.emplace_back(LatticePoint{x, y}, LatticePoint{x + 1, y},
                                     LatticePoint{x, y + 1});
            if (x + y < d - 1)
                t.triangles.emplace_back(LatticePoint{x + 1, y}, LatticePoint{x + 1, y + 1},
                                         LatticePoint{x, y + 1});
        }
    t.canonicalize();
    return t;
}

std::vector<Triangulation> flip_neighbors(const Triangulation& t) {
    std::vector<Triangulation> out;
    for (const auto& seg : t.interior_edges()) {
        // the two triangles sharing seg and their opposite vertices
        std::vector<LatticePoint> apex;
        std::vector<LatticeTriangle> keep;
        for (const auto& tri : t.triangles) {
            auto ss = tri.segments();
            if (std::find(ss.begin(), ss.end(), seg) != ss.end()) {
                for (auto p : tri.v)
                    if (!(p == seg.a) && !(p == seg.b)) apex.push_back(p);
            } else {
                keep.push_back(tri);
            }
        }
        REQUIRE(apex.size() == 2);
        Triangulation cand;
        cand.degree = t.degree;
        cand.triangles = keep;
        cand.triangles.emplace_back(apex[0], apex[1], seg.a);
        cand.triangles.emplace_back(apex[0], apex[1], seg.b);
        cand.canonicalize();
        if (is_unimodular_triangulation(cand)) out.push_back(std::move(cand));
    }
    return out;
}

std::vector<Triangulation> flip_closure(int d) {
    std::set<Triangulation> seen;
    std::vector<Triangulation> queue{staircase(d)};
    seen.insert(queue[0]);
    while (!queue.empty()) {
        Triangulation cur = std::move(queue.back());
        queue.pop_back();
        for (auto& nb : flip_neighbors(cur))
            if (seen.insert(nb).second) queue.push_back(nb);
    }
    return {seen.begin(), seen.end()};
}

}  // namespace

TEST_CASE("newton triangle points and predicates", "[lattice]") {
    auto pts = newton_points(4);
    CHECK(pts.size() == 15);
    CHECK(in_newton_triangle({2, 2}, 4));
    CHECK_FALSE(in_newton_triangle({3, 2}, 4));
    CHECK(is_interior_point({1, 1}, 4));
    CHECK(is_interior_point({2, 1}, 4));
    CHECK_FALSE(is_interior_point({0, 1}, 4));
    CHECK_FALSE(is_interior_point({2, 2}, 4));
    CHECK_THROWS_AS(newton_points(0), invalid_argument_error);
}

TEST_CASE("lattice triangle canonical form", "[lattice]") {
    LatticeTriangle a({0, 0}, {1, 0}, {0, 1});
    LatticeTriangle b({1, 0}, {0, 1}, {0, 0});  // rotated
    LatticeTriangle c({0, 1}, {1, 0}, {0, 0});  // reflected orientation
    CHECK(a == b);
    CHECK(a == c);
    CHECK(a.doubled_area() == 1);
    CHECK(a.unimodular());
    CHECK_FALSE(LatticeTriangle({0, 0}, {2, 0}, {0, 1}).unimodular());
}

TEST_CASE("enumeration counts for small degrees", "[lattice]") {
    CHECK(enumerate_unimodular_triangulations(1).size() == 1);
    CHECK(enumerate_unimodular_triangulations(2).size() == 4);
    CHECK(enumerate_unimodular_triangulations(3).size() == 79);
    CHECK_THROWS_AS(enumerate_unimodular_triangulations(5), resource_limit_error);
    CHECK_THROWS_AS(enumerate_unimodular_triangulations(0), invalid_argument_error);
}

TEST_CASE("enumeration agrees with the flip-graph oracle", "[lattice]") {
    for (int d = 1; d <= 3; ++d) {
        auto direct = enumerate_unimodular_triangulations(d);
        auto oracle = flip_closure(d);
        REQUIRE(direct.size() == oracle.size());
        CHECK(direct == oracle);  // both sorted canonically
    }
}

TEST_CASE("every enumerated triangulation validates", "[lattice]") {
    for (const auto& t : enumerate_unimodular_triangulations(3)) {
        std::string diag;
        INFO(diag);
        CHECK(is_unimodular_triangulation(t, &diag));
    }
}

TEST_CASE("validation rejects broken inputs", "[lattice]") {
    auto good = staircase(2);
    std::string diag;

    Triangulation missing = good;
    missing.triangles.pop_back();
    CHECK_FALSE(is_unimodular_triangulation(missing, &diag));

    Triangulation dup = good;
    dup.triangles[0] = dup.triangles[1];
    dup.canonicalize();
    CHECK_FALSE(is_unimodular_triangulation(dup, &diag));

    Triangulation outside = good;
    outside.triangles[0] = LatticeTriangle({2, 1}, {3, 1}, {2, 2});
    outside.canonicalize();
    CHECK_FALSE(is_unimodular_triangulation(outside, &diag));
}

TEST_CASE("S3 orbit counts and structure", "[lattice]") {
    auto ts = enumerate_unimodular_triangulations(3);
    auto orbits = s3_orbits(ts);
    CHECK(orbits.size() == 18);
    size_t total = 0;
    for (const auto& o : orbits) {
        total += o.members.size();
        CHECK((o.members.size() == 1 || o.members.size() == 2 || o.members.size() == 3 ||
               o.members.size() == 6));
        // representative is the minimal symmetric image of each member
        for (size_t m : o.members)
            CHECK(s3_canonical_representative(ts[m]) == o.representative);
    }
    CHECK(total == ts.size());
    CHECK(s3_orbits(enumerate_unimodular_triangulations(2)).size() == 2);
}

TEST_CASE("symmetry elements are bijections of the triangle", "[lattice]") {
    for (const auto& sym : s3_elements()) {
        std::set<LatticePoint> img;
        for (auto p : newton_points(3)) {
            auto q = sym.apply(p, 3);
            CHECK(in_newton_triangle(q, 3));
            img.insert(q);
        }
        CHECK(img.size() == newton_points(3).size());
    }
}

TEST_CASE("triangulation text round-trip", "[lattice]") {
    for (const auto& t : enumerate_unimodular_triangulations(3)) {
        std::stringstream ss;
        write_triangulation(ss, t);
        CHECK(read_triangulation(ss) == t);
    }
}

TEST_CASE("triangulation parse errors carry line numbers", "[lattice]") {
    auto expect_line = [](const std::string& text, int line) {
        std::istringstream is(text);
        try {
            read_triangulation(is);
            FAIL("expected parse_error");
        } catch (const parse_error& e) {
            CHECK(e.line_number == line);
        }
    };
    expect_line("", 1);
    expect_line("deg 2\n", 1);
    expect_line("degree 1\n0,0 1,0\n", 2);
    expect_line("degree 1\n0,0 1,0 0,1\nx,y 1,0 0,1\n", 3);
    expect_line("degree 1\n0,0 1,0 2,0\n", 2);  // collinear
}
