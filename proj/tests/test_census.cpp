#include <catch2/catch_amalgamated.hpp>

#include "tropq/census.hpp"
#include "tropq/svg.hpp"

using namespace tropq;

namespace {

std::string dump_records(const CensusResult& r) {
    std::string out;
    for (const auto& rec : r.records) out += census_record_json(rec).dump() + "\n";
    return out;
}

}  // namespace

TEST_CASE("degree-2 census golden counts", "[census]") {
    auto r = run_census(2);
    CHECK(r.summary.degree == 2);
    CHECK(r.summary.triangulations == 4);
    CHECK(r.summary.orbits == 2);
    CHECK(r.summary.regular_triangulations == 4);
    CHECK(r.summary.regular_orbits == 2);
    CHECK(r.summary.hyperelliptic == 0);
    REQUIRE(r.records.size() == 2);
    for (const auto& rec : r.records) {
        CHECK(rec.regular);
        CHECK(rec.theta_categories.empty());  // genus 0
        CHECK(rec.bitangent_profiles.empty());
    }
    CHECK(r.records[0].orbit_size + r.records[1].orbit_size == 4);
}

TEST_CASE("degree-3 census golden counts", "[census]") {
    auto r = run_census(3);
    CHECK(r.summary.triangulations == 79);
    CHECK(r.summary.orbits == 18);
    CHECK(r.summary.regular_triangulations == 79);
    CHECK(r.summary.regular_orbits == 18);
    int members = 0;
    for (const auto& rec : r.records) {
        CHECK(rec.regular);
        members += rec.orbit_size;
    }
    CHECK(members == 79);
}

TEST_CASE("census output is identical for every parallelism width", "[census]") {
    auto r1 = run_census(3, 1);
    auto r4 = run_census(3, 4);
    CHECK(dump_records(r1) == dump_records(r4));
    CHECK(census_summary_json(r1.summary).dump() == census_summary_json(r4.summary).dump());
}

TEST_CASE("census records serialize with the expected fields", "[census]") {
    auto r = run_census(2);
    json j = census_record_json(r.records[0]);
    CHECK(j.contains("triangulation_id"));
    CHECK(j.contains("orbit_id"));
    CHECK(j.contains("orbit_size"));
    CHECK(j["regular"] == true);
    CHECK(j.contains("type"));
    CHECK(j.contains("edge_lengths"));
    CHECK(j.contains("hyperelliptic"));
    CHECK(j.contains("triangulation"));

    json s = census_summary_json(r.summary);
    CHECK(s["triangulations"] == 4);
    CHECK(s["regular_orbits"] == 2);
}

TEST_CASE("triangulation SVG is deterministic, golden at degree 1", "[census]") {
    auto ts = enumerate_unimodular_triangulations(1);
    REQUIRE(ts.size() == 1);
    const char* golden =
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"60\" height=\"60\" "
        "viewBox=\"0 0 60 60\">\n"
        "<circle cx=\"10\" cy=\"50\" r=\"2.5\" fill=\"#888888\"/>\n"
        "<circle cx=\"10\" cy=\"10\" r=\"2.5\" fill=\"#888888\"/>\n"
        "<circle cx=\"50\" cy=\"50\" r=\"2.5\" fill=\"#888888\"/>\n"
        "<line x1=\"10\" y1=\"50\" x2=\"10\" y2=\"10\" stroke=\"#000000\" "
        "stroke-width=\"1.5\"/>\n"
        "<line x1=\"10\" y1=\"50\" x2=\"50\" y2=\"50\" stroke=\"#000000\" "
        "stroke-width=\"1.5\"/>\n"
        "<line x1=\"10\" y1=\"10\" x2=\"50\" y2=\"50\" stroke=\"#000000\" "
        "stroke-width=\"1.5\"/>\n"
        "</svg>\n";
    CHECK(render_triangulation_svg(ts[0]) == golden);
}

TEST_CASE("curve SVG is deterministic", "[census]") {
    auto t = induced_subdivision(quadratic_heights(4), 4).as_triangulation();
    auto a = analyze_curve(t, quadratic_heights(4), /*with_bitangents=*/true);
    std::string svg1 = render_curve_svg(a);
    std::string svg2 = render_curve_svg(a);
    CHECK(svg1 == svg2);
    CHECK(svg1.starts_with("<svg xmlns"));
    CHECK(svg1.ends_with("</svg>\n"));
    // skeleton highlighted, bitangents drawn, theta chips present
    CHECK(svg1.find("#cc2222") != std::string::npos);
    CHECK(svg1.find("#3b6fd4") != std::string::npos);
    CHECK(svg1.find("#1b9e77") != std::string::npos);
}

TEST_CASE("analyze_curve refuses non-regular input", "[census]") {
    // regular_heights throws before any analysis can start
    auto ts = enumerate_unimodular_triangulations(4);
    auto orbits = s3_orbits(ts);
    bool found = false;
    for (const auto& o : orbits)
        if (!try_regular_heights(o.representative)) {
            CHECK_THROWS_AS(analyze_curve(o.representative), non_regular_error);
            found = true;
            break;
        }
    CHECK(found);  // the degree-4 census contains a non-regular orbit
}
