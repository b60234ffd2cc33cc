#include "fasolve/error.hpp"
#include "fasolve/oracle.hpp"
#include "fasolve/parser.hpp"
#include "fasolve/solver.hpp"

#include "support.hpp"

#include <filesystem>

using namespace fasolve;
using fasolve::test::G;
using fasolve::test::I;

TEST_CASE("generator is deterministic") {
    GeneratorConfig cfg;
    cfg.seed = 7;
    CHECK(print_program(generate_program(cfg)) == print_program(generate_program(cfg)));
    cfg.max_rules = 0;
    CHECK(generate_program(cfg).rules.empty());
}

TEST_CASE("generated programs are safe and respect configuration") {
    GeneratorConfig cfg;
    cfg.aggregate_probability = 0;
    cfg.nonmonotone_functions = false;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        cfg.seed = seed;
        auto p = generate_program(cfg);
        CHECK_NOTHROW(ground_program(p));
        auto text = print_program(p);
        CHECK(text.find('#') == std::string::npos);
        CHECK(text.find("comp") == std::string::npos);
        CHECK(p.rules.size() <= cfg.max_rules);
    }
}

TEST_CASE("brute force on small programs") {
    auto dice = test::ground_of(test::dice_text);
    auto sets = brute_force_answer_sets(dice, {G("0"), G("0.3"), G("0.4"), G("0.8"), G("0.9"), G("1")});
    REQUIRE(sets.size() == 3);
    CHECK(sets[0] == I("a(1,1):0.8. a(2,1):0.3."));
    CHECK(sets[1] == I("a(1,2):0.4. a(2,1):0.3."));
    CHECK(sets[2] == I("a(1,2):0.4. a(2,2):0.9."));

    auto fact = brute_force_answer_sets(test::ground_of("p:0.5."), {G("0.5"), G("1")});
    REQUIRE(fact.size() == 1);
    CHECK(fact[0] == I("p:0.5."));
}

TEST_CASE("brute force on the company program") {
    auto ground = test::ground_of(test::fixture_text("company.dflp"));
    std::vector<Grade> grid = {G("0"), G("0.55"), G("0.6"), G("0.7"), G("0.8"), G("0.9"), G("1")};
    auto sets = brute_force_answer_sets(ground, grid);
    auto solver = enumerate_answer_sets(ground, grade_lattice(ground));
    REQUIRE(sets.size() == 1);
    REQUIRE(solver.size() == 1);
    CHECK(sets[0] == solver[0].interpretation);
}

TEST_CASE("oracle space overflow") {
    OracleOptions opts;
    opts.max_candidates = 10;
    CHECK_THROWS_AS(brute_force_answer_sets(test::ground_of("a:0.5 | b:0.5. c :- a. d :- b."),
                                            {G("0.5"), G("1")}, opts),
                    Error);
}

TEST_CASE("oracle satisfaction agrees on examples") {
    auto dice = test::ground_of(test::dice_text);
    CHECK(oracle_is_model(dice, I("a(1,2):0.4. a(2,2):0.9.")));
    CHECK_FALSE(oracle_is_model(dice, I("a(1,1):0.8. a(2,2):0.9.")));
    CHECK(oracle_is_model(Program{}, Interpretation{}));
}

TEST_CASE("oracle finds the comp fixed point the solver misses") {
    auto g = test::ground_of("p0 : comp(V) :- p0 : V.");
    auto sets = brute_force_answer_sets(g, {G("0.5"), G("1")});
    REQUIRE(sets.size() == 1);
    CHECK(sets[0] == I("p0:0.5."));
}

TEST_CASE("differential check") {
    CHECK(differential_check(GeneratorConfig{}, 0).discrepancies.empty());
    GeneratorConfig cfg;
    cfg.nonmonotone_functions = false;
    auto report = differential_check(cfg, 150);
    CHECK(report.trials == 150);
    CHECK(report.discrepancies.empty());
    CHECK(report.compared + report.skipped + report.unconverged == report.trials);
    CHECK(report.compared > 100);
}

TEST_CASE("a solver without minimality checks is caught") {
    GeneratorConfig cfg;
    cfg.nonmonotone_functions = false;
    DifferentialOptions opts;
    opts.solver = [](Program const &ground) {
        SolveOptions so;
        so.check_minimality = false;
        std::vector<Interpretation> out;
        for (auto &r : enumerate_answer_sets(ground, grade_lattice(ground), so)) { out.push_back(r.interpretation); }
        return out;
    };
    auto report = differential_check(cfg, 100, opts);
    bool minimality = std::any_of(report.discrepancies.begin(), report.discrepancies.end(),
                                  [](auto const &d) { return d.phase == DiscrepancyPhase::Minimality; });
    CHECK(minimality);
}

TEST_CASE("fixtures replay") {
    Discrepancy d;
    d.program = "p :- not p.\n";
    d.seed = 42;
    d.expected = "[]";
    d.actual = "[{ p:1 }]";
    d.phase = DiscrepancyPhase::Minimality;
    auto text = to_fixture(d);
    CHECK(text.find("% seed: 42") != std::string::npos);
    CHECK(parse_program(text).ok());
    auto dir = std::filesystem::temp_directory_path() / "fasolve-fixture-test";
    std::filesystem::remove_all(dir);
    auto path = write_fixture(d, dir);
    CHECK(path.filename() == "seed-42-minimality.dflp");
    CHECK(std::filesystem::exists(path));
    std::filesystem::remove_all(dir);
}
