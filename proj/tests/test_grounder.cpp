#include "fasolve/error.hpp"
#include "fasolve/grounder.hpp"

#include "support.hpp"

using namespace fasolve;
using fasolve::test::A;
using fasolve::test::G;
using fasolve::test::parse_ok;

namespace {

ErrorKind ground_error(std::string const &text, GroundOptions const &opts = {}) {
    try {
        ground_program(parse_ok(text), opts);
    } catch (Error const &e) {
        return e.kind();
    }
    FAIL("expected a grounding error");
    return ErrorKind::InvalidGrade;
}

} // namespace

TEST_CASE("herbrand universe collects constants") {
    auto u = herbrand_universe(parse_ok("p(a,1). q(X) :- p(X,b)."));
    REQUIRE(u.terms.size() == 3);
    CHECK(u.terms[0] == Term::number(1));
}

TEST_CASE("herbrand universe closes under function symbols up to depth") {
    auto p = parse_ok("p(f(a)). q(X) :- p(X).");
    CHECK(herbrand_universe(p, 0).terms.size() == 1);
    auto u1 = herbrand_universe(p, 1);
    CHECK(std::find(u1.terms.begin(), u1.terms.end(), Term::function("f", {Term::symbol("a")})) != u1.terms.end());
    CHECK(herbrand_universe(p, 2).terms.size() > u1.terms.size());
}

TEST_CASE("safety violations") {
    CHECK(ground_error("p(X) :- not q(X). q(1).") == ErrorKind::UnsafeRule);
    CHECK(ground_error("p(X).") == ErrorKind::UnsafeRule);
    CHECK(ground_error("p : V :- not q : V.") == ErrorKind::UnsafeRule);
    CHECK(ground_error("p : V.") == ErrorKind::UnsafeRule);
    CHECK(ground_error("p :- #sum_f{ X : V | q(X) : 0.5 } > 1.") == ErrorKind::UnsafeRule);
}

TEST_CASE("safe rules ground") {
    CHECK_NOTHROW(ground_program(parse_ok("q(1). p(X) :- q(X), not r(X).")));
    CHECK_NOTHROW(ground_program(parse_ok("q(1):0.3. p : V :- q(1) : V.")));
    // global variable bound through a positive aggregate's conjunction
    CHECK_NOTHROW(ground_program(parse_ok("o(a,1). c(X) :- #sum_f{ P : V | o(X,P) : V } > 0. s(X) :- o(X,1), "
                                          "#count_f{ P : 1 | o(X,P) : 1 } > 0.")));
}

TEST_CASE("guards must be ground numbers") {
    CHECK(ground_error("q(a). p :- q(X), #sum_f{ 1 : 1 | q(X) : 1 } > a.") == ErrorKind::GuardTypeMismatch);
    // instances whose guard becomes a symbol are dropped
    auto dropped = ground_program(parse_ok("q(a). p :- q(X), #sum_f{ 1 : 1 | q(X) : 1 } > X."));
    CHECK(dropped.program.rules.size() == 2); // X = 1 from the set item survives
    CHECK_FALSE(dropped.warnings.empty());
    CHECK_NOTHROW(ground_program(parse_ok("q(3). p :- q(X), #sum_f{ 1 : 1 | q(X) : 1 } > X.")));
}

TEST_CASE("function depth") {
    GroundOptions opts;
    opts.max_depth = 1;
    CHECK(ground_error("p(f(f(a))).", opts) == ErrorKind::FunctionDepthExceeded);
}

TEST_CASE("grounding overflow") {
    GroundOptions opts;
    opts.max_instances = 10;
    CHECK(ground_error("d(1). d(2). d(3). d(4). p(X,Y) :- d(X), d(Y).", opts) == ErrorKind::GroundingOverflow);
}

TEST_CASE("ground rules carry provenance") {
    auto g = ground_program(parse_ok("d(1). d(2). p(X) :- d(X)."));
    REQUIRE(g.program.rules.size() == g.provenance.size());
    CHECK(g.program.is_ground());
    std::size_t from_rule = 0;
    for (auto const &p : g.provenance) {
        if (p.source_rule == 2) {
            ++from_rule;
            CHECK(p.substitution.count("X") == 1);
        }
    }
    CHECK(from_rule == 2);
}

TEST_CASE("ground fuzzy sets enumerate local variables") {
    auto p = parse_ok("r :- #sum_f{ X : V | q(X) : V } > 1. q(1). q(b).");
    auto u = herbrand_universe(p);
    auto const &set = p.rules[0].body[0].aggregate().set;
    auto sum = ground_fuzzy_set(set, u, AggregateFn::Sum);
    CHECK(sum.elements.size() == 1); // q(b) has a non-numeric item
    auto count = ground_fuzzy_set(set, u, AggregateFn::Count);
    CHECK(count.elements.size() == 2);
}

TEST_CASE("identical ground pairs collapse") {
    auto p = parse_ok("r :- #count_f{ 1 : 1 | q(X) : 1 } > 0. q(1). q(2).");
    auto set = ground_fuzzy_set(p.rules[0].body[0].aggregate().set, herbrand_universe(p));
    CHECK(set.elements.size() == 2);
    auto p2 = parse_ok("r :- #count_f{ 1 : 1 | q(1) : 1 } > 0. q(1). q(2).");
    auto set2 = ground_fuzzy_set(p2.rules[0].body[0].aggregate().set, herbrand_universe(p2));
    CHECK(set2.elements.size() == 1);
}

TEST_CASE("grade lattice for the dice program") {
    auto g = test::ground_of(test::dice_text);
    auto lat = grade_lattice(g);
    CHECK(lat.converged);
    CHECK(lat.values(A("a(1,1)")) == std::vector<Grade>{G("0"), G("0.8")});
    CHECK(lat.values(A("a(2,2)")) == std::vector<Grade>{G("0"), G("0.9")});
    CHECK(lat.values(A("gamma")) == std::vector<Grade>{G("0"), G("1")});
    CHECK(lat.values(A("nothing")) == std::vector<Grade>{G("0")});
    CHECK(lat.global.front() == G("0"));
    CHECK(lat.global.back() == G("1"));
    CHECK(std::is_sorted(lat.global.begin(), lat.global.end()));
}

TEST_CASE("grade lattice propagates variable annotations") {
    auto lat = grade_lattice(test::ground_of("q:0.3. q:0.6 :- s. p : comp(V) :- q : V."));
    CHECK(lat.values(A("q")) == std::vector<Grade>{G("0"), G("0.3")});
    CHECK(lat.values(A("p")) == std::vector<Grade>{G("0"), G("0.7"), G("1")});
}

TEST_CASE("lattice cap and iteration cap") {
    LatticeOptions small;
    small.cap = 3;
    CHECK_THROWS_AS(grade_lattice(test::ground_of(test::fixture_text("company.dflp")), small), Error);
    LatticeOptions one;
    one.iter_cap = 1;
    auto lat = grade_lattice(test::ground_of("c : prod(V,V) :- b:V. b : prod(V,V) :- a:V. a:0.5."), one);
    CHECK_FALSE(lat.converged);
    auto full = grade_lattice(test::ground_of("d:V :- c:V. c:V :- b:V. b:V :- a:V. a:0.5."));
    CHECK(full.converged);
    CHECK(full.values(A("d")) == std::vector<Grade>{G("0"), G("0.5")});
}
