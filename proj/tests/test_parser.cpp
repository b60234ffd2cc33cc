#include "fasolve/parser.hpp"

#include "ast_gen.hpp"
#include "support.hpp"

using namespace fasolve;
using fasolve::test::A;
using fasolve::test::G;

TEST_CASE("facts and default annotations") {
    auto r = parse_program("a(1,2) : 0.4.");
    REQUIRE(r.ok());
    REQUIRE(r.program.rules.size() == 1);
    auto const &rule = r.program.rules[0];
    CHECK(rule.body.empty());
    REQUIRE(rule.head.size() == 1);
    CHECK(rule.head[0].atom == A("a(1,2)"));
    CHECK(rule.head[0].annotation == Annotation::constant(G("0.4")));

    auto p = parse_program("p.");
    REQUIRE(p.ok());
    CHECK(p.program.rules[0].head[0].annotation == Annotation::constant(Grade::one()));
}

TEST_CASE("grade range errors") {
    auto r = parse_program("a : 1.5.");
    REQUIRE(r.errors.size() == 1);
    CHECK(r.errors[0].kind == ParseErrorKind::AnnotationRange);
    CHECK(r.errors[0].span.line == 1);
}

TEST_CASE("errors are collected across rules with recovery") {
    auto r = parse_program("p :- q(.\nok.\nr : 2.\ns(1). s(1,2).", "f.dflp");
    REQUIRE(r.errors.size() == 3);
    CHECK(r.errors[0].kind == ParseErrorKind::Syntax);
    CHECK(r.errors[1].kind == ParseErrorKind::AnnotationRange);
    CHECK(r.errors[1].span.line == 3);
    CHECK(r.errors[2].kind == ParseErrorKind::Arity);
    CHECK(r.errors[0].to_string().rfind("f.dflp:1:", 0) == 0);
}

TEST_CASE("lexical errors") {
    auto r = parse_program("p :- q $ r.");
    REQUIRE_FALSE(r.ok());
    CHECK(r.errors[0].kind == ParseErrorKind::Lex);
}

TEST_CASE("object and annotation variables may not share a name") {
    CHECK_FALSE(parse_program("p(V) : V :- q(V) : V.").ok());
    CHECK(parse_program("p(X) : V :- q(X) : V.").ok());
}

TEST_CASE("builtin arity is checked") {
    auto r = parse_program("p : comp(0.1, 0.2).");
    REQUIRE_FALSE(r.ok());
    CHECK(r.errors[0].kind == ParseErrorKind::Arity);
    CHECK_FALSE(parse_program("p : nosuch(0.1).").ok());
}

TEST_CASE("printing") {
    CHECK(print_program(parse_program("a(1,2):0.4.").program) == "a(1,2) : 0.4.\n");
    CHECK(print_program(Program{}).empty());
    auto company = parse_program(
        "controls(C1,C3):0.55 :- #sum_f{ P : V | controlStk(C1,C2,C3,P):V } > 50 : 0.6.");
    REQUIRE(company.ok());
    CHECK(print_program(company.program).find("#sum_f{ P : V | controlStk(C1,C2,C3,P) : V } > 50 : 0.6") !=
          std::string::npos);
    auto empty_set = parse_program("p :- #count_f{} = 0.");
    REQUIRE(empty_set.ok());
    CHECK(print_program(empty_set.program) == "p : 1 :- #count_f{} = 0 : 1.\n");
}

TEST_CASE("round trip on generated ASTs") {
    for (std::uint64_t seed = 1; seed <= 300; ++seed) {
        auto p = test::AstGen(seed).program();
        auto text = print_program(p);
        auto back = parse_program(text);
        INFO(text);
        REQUIRE(back.ok());
        CHECK(back.program == p);
        CHECK(print_program(back.program) == text);
    }
}

TEST_CASE("example fixtures parse and re-print stably") {
    for (char const *name : {"dice.dflp", "company.dflp", "samples.dflp"}) {
        auto r = parse_program(test::fixture_text(name), name);
        INFO(name);
        REQUIRE(r.ok());
        auto text = print_program(r.program);
        auto again = parse_program(text);
        REQUIRE(again.ok());
        CHECK(again.program == r.program);
    }
    auto classical = parse_program(test::fixture_text("company_classical.dflp"), "", Dialect::Classical);
    CHECK(classical.ok());
}

TEST_CASE("comments and whitespace") {
    auto r = parse_program("% leading\n  p :- % trailing\n q.\n");
    REQUIRE(r.ok());
    CHECK(r.program.rules.size() == 1);
}

TEST_CASE("classical dialect rejects annotations") {
    CHECK_FALSE(parse_program("p : 0.5.", "", Dialect::Classical).ok());
    auto r = parse_program("c(X) :- #sum{ P : o(X,P) } > 50.", "", Dialect::Classical);
    REQUIRE(r.ok());
    auto const &agg = r.program.rules[0].body[0].aggregate();
    CHECK(agg.set.elements[0].grade == Annotation::constant(Grade::one()));
}
