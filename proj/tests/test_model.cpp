#include "fasolve/error.hpp"
#include "fasolve/model.hpp"

#include "support.hpp"

#include <random>

using namespace fasolve;
using fasolve::test::A;
using fasolve::test::G;
using fasolve::test::I;

TEST_CASE("eval_annotation") {
    CHECK(eval_annotation(Annotation::constant(G("0.55"))) == G("0.55"));
    CHECK(eval_annotation(Annotation::function(BuiltinOp::Comp, {Annotation::constant(G("0.3"))})) == G("0.7"));
    // 0.8 * 0.5
    auto prod = Annotation::function(BuiltinOp::Prod, {Annotation::variable("V"), Annotation::constant(G("0.5"))});
    CHECK(eval_annotation(prod, {{"V", G("0.8")}}) == G("0.4"));
    auto bsum = Annotation::function(BuiltinOp::BSum, {Annotation::constant(G("0.7")), Annotation::constant(G("0.6"))});
    CHECK(eval_annotation(bsum) == G("1"));
    auto avg = Annotation::function(BuiltinOp::Avg, {Annotation::constant(G("0.2")), Annotation::constant(G("0.5"))});
    CHECK(eval_annotation(avg) == G("0.35"));
    auto mn = Annotation::function(BuiltinOp::Min, {Annotation::constant(G("0.2")), Annotation::constant(G("0.5"))});
    auto mx = Annotation::function(BuiltinOp::Max, {Annotation::constant(G("0.2")), Annotation::constant(G("0.5"))});
    CHECK(eval_annotation(mn) == G("0.2"));
    CHECK(eval_annotation(mx) == G("0.5"));
}

TEST_CASE("eval_annotation errors") {
    try {
        eval_annotation(Annotation::variable("V"));
        FAIL("expected an error");
    }
    catch (Error const &e) {
        CHECK(e.kind() == ErrorKind::UnboundAnnotationVariable);
    }
    try {
        Annotation::function(BuiltinOp::Comp, {Annotation{}, Annotation{}});
        FAIL("expected an error");
    }
    catch (Error const &e) {
        CHECK(e.kind() == ErrorKind::ArityMismatch);
    }
    std::vector<Grade> one{G("0.5")};
    CHECK_THROWS_AS(apply_builtin(BuiltinOp::Min, one), Error);
}

TEST_CASE("builtins stay inside [0,1] on grid grades") {
    std::vector<Grade> grid;
    for (int i = 0; i <= 8; ++i) { grid.emplace_back(Rational(i, 8)); }
    for (auto const &info : builtin_library()) {
        for (auto const &x : grid) {
            for (auto const &y : grid) {
                std::vector<Grade> args{x, y};
                args.resize(info.arity);
                Grade g = apply_builtin(info.op, args);
                CHECK(g == apply_builtin(info.op, args));
                CHECK(g.value() >= 0);
                CHECK(g.value() <= 1);
            }
        }
    }
}

TEST_CASE("interp_leq") {
    CHECK(interp_leq(I("a:0.4."), I("a:0.4. b:0.1.")));
    CHECK_FALSE(interp_leq(I("a:0.5."), I("a:0.4.")));
    auto i = I("a:0.4. b:0.9.");
    CHECK(interp_leq(i, i));
    CHECK_FALSE(interp_lt(i, i));
    CHECK(interp_lt(I("a:0.4."), i));
}

TEST_CASE("interp_leq is a partial order") {
    std::mt19937_64 rng(7);
    std::vector<Atom> atoms{A("p"), A("q"), A("r(1)")};
    std::vector<Grade> grid{G("0"), G("0.5"), G("1")};
    auto random_interp = [&] {
        Interpretation out;
        for (auto const &a : atoms) { out.set(a, grid[rng() % grid.size()]); }
        return out;
    };
    for (int n = 0; n < 300; ++n) {
        auto x = random_interp(), y = random_interp(), z = random_interp();
        CHECK(interp_leq(x, x));
        if (interp_leq(x, y) && interp_leq(y, x)) { CHECK(x == y); }
        if (interp_leq(x, y) && interp_leq(y, z)) { CHECK(interp_leq(x, z)); }
    }
}

TEST_CASE("interpretations omit zero grades and print sorted") {
    Interpretation i;
    i.set(A("a(2,2)"), G("0.9"));
    i.set(A("a(1,2)"), G("0.4"));
    i.set(A("b"), Grade::zero());
    CHECK(i.support_size() == 2);
    CHECK(i(A("b")).is_zero());
    CHECK(i(A("never")).is_zero());
    CHECK(i.to_string() == "{ a(1,2):0.4, a(2,2):0.9 }");
    CHECK(Interpretation{}.to_string() == "{ }");
}

TEST_CASE("terms") {
    auto f = Term::function("f", {Term::symbol("a"), Term::function("g", {Term::variable("X")})});
    CHECK(f.depth() == 2);
    CHECK_FALSE(f.is_ground());
    CHECK(f.to_string() == "f(a,g(X))");
    auto g = f.substitute({{"X", Term::number(3)}});
    CHECK(g.is_ground());
    CHECK(g.to_string() == "f(a,g(3))");
    CHECK(Term::number(Rational(1, 2)).to_string() == "0.5");
}
