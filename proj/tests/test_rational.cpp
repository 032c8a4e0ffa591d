#include <catch2/catch_amalgamated.hpp>

#include "tropq/rational.hpp"

using namespace tropq;

TEST_CASE("make_rat and exact arithmetic", "[rational]") {
    Rat a = make_rat(1, 3), b = make_rat(1, 6);
    CHECK(a + b == make_rat(1, 2));
    CHECK(a - b == b);
    CHECK(a * b == make_rat(1, 18));
    CHECK(a / b == Rat(2));
    CHECK_THROWS_AS(make_rat(1, 0), std::invalid_argument);
}

TEST_CASE("parse_rat round-trips rat_str", "[rational]") {
    for (const char* s : {"0", "7", "-7", "22/7", "-22/7", "123456789123456789/2"}) {
        Rat r = parse_rat(s);
        CHECK(rat_str(r) == s);
    }
    CHECK(parse_rat("4/6") == make_rat(2, 3));  // normalized on construction
    CHECK_THROWS_AS(parse_rat("1/0"), std::invalid_argument);
}

TEST_CASE("sgn and rat_abs", "[rational]") {
    CHECK(sgn(make_rat(-3, 7)) == -1);
    CHECK(sgn(Rat(0)) == 0);
    CHECK(sgn(Rat(5)) == 1);
    CHECK(rat_abs(make_rat(-3, 7)) == make_rat(3, 7));
    CHECK(rat_abs(make_rat(3, 7)) == make_rat(3, 7));
}

TEST_CASE("rat_decimal truncation", "[rational]") {
    CHECK(rat_decimal(make_rat(1, 2), 2) == "0.5");
    CHECK(rat_decimal(make_rat(1, 3), 4) == "0.3333");
    CHECK(rat_decimal(make_rat(-5, 4), 2) == "-1.25");
    CHECK(rat_decimal(Rat(3), 2) == "3");
    CHECK(rat_decimal(Rat(3), 0) == "3");
}

TEST_CASE("int_gcd and int_lcm", "[rational]") {
    CHECK(int_gcd(Int(12), Int(18)) == 6);
    CHECK(int_gcd(Int(-12), Int(18)) == 6);
    CHECK(int_gcd(Int(0), Int(5)) == 5);
    CHECK(int_lcm(Int(4), Int(6)) == 12);
    CHECK(int_lcm(Int(0), Int(6)) == 0);
    CHECK(int_lcm(Int(-4), Int(6)) == 12);
}

TEST_CASE("numerator and denominator accessors", "[rational]") {
    Rat r = make_rat(-10, 4);
    CHECK(rat_num(r) == -5);
    CHECK(rat_den(r) == 2);
}
