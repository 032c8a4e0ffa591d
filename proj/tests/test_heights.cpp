#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "tropq/heights.hpp"

using namespace tropq;

namespace {

// the unique non-regular S3 orbit of the degree-4 triangle (orbit size 2):
// a spiral of triangles around the interior whose convexity constraints are
// cyclically unsatisfiable
const char* NON_REGULAR_TRI =
    "degree 4\n"
    "0,0 1,0 1,1\n0,0 1,1 1,2\n0,0 1,2 0,1\n0,1 1,2 0,2\n0,2 1,2 0,3\n"
    "0,3 1,2 0,4\n0,4 1,2 2,1\n0,4 2,1 1,3\n1,0 2,0 1,1\n1,1 2,0 3,0\n"
    "1,1 2,1 1,2\n1,1 3,0 4,0\n1,1 4,0 2,1\n1,3 2,1 2,2\n2,1 3,1 2,2\n"
    "2,1 4,0 3,1\n";

Triangulation non_regular() {
    std::istringstream is(NON_REGULAR_TRI);
    return read_triangulation(is);
}

}  // namespace

TEST_CASE("quadratic heights induce a unimodular triangulation", "[heights]") {
    for (int d = 1; d <= 4; ++d) {
        auto sub = induced_subdivision(quadratic_heights(d), d);
        CHECK(sub.unimodular);
        CHECK((int)sub.cells.size() == d * d);
        CHECK(is_unimodular_triangulation(sub.as_triangulation()));
    }
}

TEST_CASE("zero heights induce the trivial subdivision", "[heights]") {
    auto sub = induced_subdivision(zero_heights(3), 3);
    CHECK_FALSE(sub.unimodular);
    REQUIRE(sub.cells.size() == 1);
    CHECK(sub.cells[0].size() == 3);  // the whole triangle, corners only
    CHECK_THROWS_AS(sub.as_triangulation(), invalid_argument_error);
}

TEST_CASE("regular lift round-trips through the induced subdivision", "[heights]") {
    auto ts = enumerate_unimodular_triangulations(3);
    for (const auto& o : s3_orbits(ts)) {
        auto h = try_regular_heights(o.representative);
        REQUIRE(h);  // every degree-3 triangulation is regular
        CHECK(heights_induce(*h, o.representative));
        // corners pinned, integral output
        CHECK(h->at({0, 0}) == 0);
        CHECK(h->at({3, 0}) == 0);
        CHECK(h->at({0, 3}) == 0);
        for (const auto& [p, v] : h->heights) CHECK(rat_den(v) == 1);
    }
}

TEST_CASE("the non-regular degree-4 triangulation is detected", "[heights]") {
    Triangulation t = non_regular();
    REQUIRE(is_unimodular_triangulation(t));
    CHECK_FALSE(try_regular_heights(t));
    CHECK_THROWS_AS(regular_heights(t), non_regular_error);
    // its symmetric images are equally non-regular
    for (const auto& sym : s3_elements()) CHECK_FALSE(try_regular_heights(sym.apply(t)));
}

TEST_CASE("regular_heights validates its input", "[heights]") {
    Triangulation broken;
    broken.degree = 2;
    broken.triangles.emplace_back(LatticePoint{0, 0}, LatticePoint{1, 0}, LatticePoint{0, 1});
    CHECK_THROWS_AS(try_regular_heights(broken), invalid_argument_error);
}

TEST_CASE("apply_symmetry commutes with the induced subdivision", "[heights]") {
    auto h = quadratic_heights(3);
    auto t = induced_subdivision(h, 3).as_triangulation();
    for (const auto& sym : s3_elements()) {
        auto ht = apply_symmetry(sym, h);
        auto st = induced_subdivision(ht, 3);
        REQUIRE(st.unimodular);
        CHECK(st.as_triangulation() == sym.apply(t));
    }
}

TEST_CASE("height text round-trip", "[heights]") {
    auto h = quadratic_heights(4);
    h.heights[{1, 1}] = make_rat(7, 3);  // exercise a fractional value
    std::stringstream ss;
    write_heights(ss, h);
    auto h2 = read_heights(ss);
    CHECK(h2 == h);
}

TEST_CASE("height parse errors carry line numbers", "[heights]") {
    auto expect_line = [](const std::string& text, int line) {
        std::istringstream is(text);
        try {
            read_heights(is);
            FAIL("expected parse_error");
        } catch (const parse_error& e) {
            CHECK(e.line_number == line);
        }
    };
    expect_line("", 1);
    expect_line("heights 2\n", 1);
    expect_line("degree 2\n0,0\n", 2);
    expect_line("degree 2\n0,0 1\n1,zero 2\n", 3);
    expect_line("degree 2\n0,0 1/0\n", 2);
}

TEST_CASE("incomplete heights are rejected by the subdivision", "[heights]") {
    auto h = quadratic_heights(2);
    h.heights.erase({1, 1});
    CHECK_THROWS_AS(induced_subdivision(h, 2), invalid_argument_error);
    CHECK_THROWS_AS(h.at({1, 1}), invalid_argument_error);
}
