#include "fasolve/classical.hpp"
#include "fasolve/error.hpp"
#include "fasolve/oracle.hpp"
#include "fasolve/solver.hpp"

#include "support.hpp"

using namespace fasolve;
using fasolve::test::A;
using fasolve::test::I;

namespace {

ClassicalProgram C(std::string const &text) {
    auto r = parse_classical(text);
    if (!r.ok()) { throw std::runtime_error(r.errors.front().to_string()); }
    return r.program;
}

std::vector<ClassicalAnswerSet> via_solver(ClassicalProgram const &p) {
    auto ground = ground_program(embed(p)).program;
    std::vector<ClassicalAnswerSet> out;
    for (auto const &r : enumerate_answer_sets(ground, grade_lattice(ground))) { out.push_back(extract(r.interpretation)); }
    std::sort(out.begin(), out.end(), [](auto const &a, auto const &b) { return to_string(a) < to_string(b); });
    return out;
}

} // namespace

TEST_CASE("embedding annotates with 1") {
    CHECK(print_program(embed(C("ownsStk(a,b,40)."))) == "ownsStk(a,b,40) : 1.\n");
    CHECK(embed(ClassicalProgram{}).rules.empty());
    auto text = print_program(embed(C("controls(C1,C3) :- #sum{ P : controlStk(C1,C2,C3,P) } > 50.")));
    CHECK(text.find("#sum_f{ P : 1 | controlStk(C1,C2,C3,P) : 1 } > 50 : 1") != std::string::npos);
}

TEST_CASE("erasure inverts embedding") {
    auto p = C(test::fixture_text("company_classical.dflp"));
    CHECK(erase_annotations(embed(p)) == p);
    CHECK(print_classical(erase_annotations(embed(p))) == print_classical(p));
    CHECK_THROWS_AS(erase_annotations(test::parse_ok("p : 0.5.")), Error);
}

TEST_CASE("print_classical round trip") {
    auto p = C("a | b :- not c, #count{ X : r(X), s } >= 1. r(1).");
    CHECK(C(print_classical(p)) == p);
}

TEST_CASE("extract") {
    CHECK(extract(I("p:1. q:0.")) == ClassicalAnswerSet{A("p")});
    CHECK(extract(Interpretation{}).empty());
    CHECK_THROWS_AS(extract(I("p:0.4.")), Error);
    CHECK(to_string(ClassicalAnswerSet{}) == "{ }");
    CHECK(to_string(ClassicalAnswerSet{A("a"), A("b")}) == "{ a, b }");
}

TEST_CASE("classical oracle basics") {
    auto ab = classical_oracle(C("a | b."));
    REQUIRE(ab.size() == 2);
    CHECK(ab[0] == ClassicalAnswerSet{A("a")});
    CHECK(ab[1] == ClassicalAnswerSet{A("b")});
    CHECK(classical_oracle(C("p :- not p.")).empty());
    auto empty = classical_oracle(ClassicalProgram{});
    REQUIRE(empty.size() == 1);
    CHECK(empty[0].empty());
    auto even = classical_oracle(C("p :- not q. q :- not p."));
    CHECK(even.size() == 2);
}

TEST_CASE("classical oracle with aggregates") {
    auto r = classical_oracle(C("r(1). r(2). s :- #sum{ X : r(X) } > 2. t :- #min{ X : u(X) } < 5."));
    REQUIRE(r.size() == 1);
    CHECK(r[0].count(A("s")) == 1);
    CHECK(r[0].count(A("t")) == 0);
    // unfounded self-support through an aggregate is rejected
    auto loop = classical_oracle(C("p(1) :- #count{ X : p(X) } >= 1."));
    REQUIRE(loop.size() == 1);
    CHECK(loop[0].empty());
}

TEST_CASE("classical oracle overflow") {
    ClassicalOracleOptions opts;
    opts.max_atoms = 2;
    CHECK_THROWS_AS(classical_oracle(C("a | b. c | d."), opts), Error);
}

TEST_CASE("company program in both worlds") {
    auto p = C(test::fixture_text("company_classical.dflp"));
    auto oracle = classical_oracle(p);
    REQUIRE(oracle.size() == 1);
    ClassicalAnswerSet want;
    for (auto const *a : {"ownsStk(a,b,40)", "ownsStk(c,b,20)", "ownsStk(a,c,40)", "ownsStk(b,c,20)",
                          "controlStk(a,a,b,40)", "controlStk(a,a,c,40)", "controlStk(b,b,c,20)",
                          "controlStk(c,c,b,20)"}) {
        want.insert(A(a));
    }
    CHECK(oracle[0] == want);
    CHECK(via_solver(p) == oracle);
}

TEST_CASE("embedded solver agrees with the classical oracle on generated programs") {
    GeneratorConfig cfg;
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        cfg.seed = seed;
        auto p = generate_classical_program(cfg);
        INFO(print_classical(p));
        CHECK(via_solver(p) == classical_oracle(p));
    }
}
