#include "fasolve/error.hpp"
#include "fasolve/grade.hpp"

#include "support.hpp"

using namespace fasolve;
using fasolve::test::G;

TEST_CASE("decimal literals parse exactly") {
    Rational r;
    REQUIRE(parse_rational("0.55", r));
    CHECK(r == Rational(11, 20));
    REQUIRE(parse_rational("3/9", r));
    CHECK(r == Rational(1, 3));
    REQUIRE(parse_rational("-2.5", r));
    CHECK(r == Rational(-5, 2));
    REQUIRE(parse_rational("40", r));
    CHECK(r == 40);
    CHECK_FALSE(parse_rational("", r));
    CHECK_FALSE(parse_rational("0.", r));
    CHECK_FALSE(parse_rational("1/0", r));
    CHECK_FALSE(parse_rational("abc", r));
}

TEST_CASE("formatting uses the shortest exact decimal, else p/q") {
    CHECK(format_rational(Rational(11, 20)) == "0.55");
    CHECK(format_rational(Rational(1)) == "1");
    CHECK(format_rational(Rational(0)) == "0");
    CHECK(format_rational(Rational(1, 3)) == "1/3");
    CHECK(format_rational(Rational(7, 8)) == "0.875");
    CHECK(format_rational(Rational(-1, 4)) == "-0.25");
}

TEST_CASE("grades outside [0,1] are rejected") {
    CHECK_THROWS_AS(Grade(Rational(3, 2)), Error);
    CHECK_THROWS_AS(Grade::parse("1.5"), Error);
    CHECK_THROWS_AS(Grade::parse("-0.1"), Error);
    try {
        Grade::parse("2");
    }
    catch (Error const &e) {
        CHECK(e.kind() == ErrorKind::InvalidGrade);
    }
    CHECK(Grade::parse("0").is_zero());
    CHECK(Grade::parse("1").is_one());
}

TEST_CASE("grade equality is exact") {
    CHECK(G("0.5") == G("1/2"));
    CHECK(G("0.3") != G("0.30000001"));
    CHECK(G("0.4") < G("0.9"));
}

TEST_CASE("join and meet") {
    CHECK(join(G("0.4"), G("0.9")) == G("0.9"));
    CHECK(meet(G("0.4"), G("0.9")) == G("0.4"));

    std::vector<Grade> grid;
    for (int i = 0; i <= 10; ++i) { grid.emplace_back(Rational(i, 10)); }
    grid.push_back(G("1/3"));
    for (auto const &a : grid) {
        CHECK(join(a, a) == a);
        CHECK(meet(a, a) == a);
        CHECK(join(a, Grade::zero()) == a);
        CHECK(meet(a, Grade::one()) == a);
        for (auto const &b : grid) {
            CHECK(join(a, b) == join(b, a));
            CHECK(meet(a, b) == meet(b, a));
            for (auto const &c : grid) {
                CHECK(join(join(a, b), c) == join(a, join(b, c)));
                CHECK(meet(meet(a, b), c) == meet(a, meet(b, c)));
            }
        }
    }
}
