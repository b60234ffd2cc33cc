#pragma once

#include "fasolve/classical.hpp"
#include "fasolve/model.hpp"

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace fasolve {

struct GeneratorConfig {
    unsigned max_atoms = 4; // size of the ground atom pool
    unsigned max_rules = 5;
    unsigned max_disjuncts = 2;
    unsigned max_body_lits = 3;
    std::vector<Grade> grade_pool = {Grade::parse("0.2"), Grade::parse("0.5"), Grade::parse("0.7"), Grade::one()};
    double aggregate_probability = 0.25;
    double negation_probability = 0.3;
    double function_probability = 0.2;  // builtin head/aggregate annotations
    double variable_probability = 0.3;  // annotation variables on positive body atoms
    double object_variable_probability = 0.3;
    bool nonmonotone_functions = true; // allow comp
    std::uint64_t seed = 1;
};

// Safe program over the pool p0, p1, ..., r(1), r(2), ...; identical for equal configs.
Program generate_program(GeneratorConfig const &cfg);
// Same shapes, no annotations; aggregates are `#f{ X : r(X) }`.
ClassicalProgram generate_classical_program(GeneratorConfig const &cfg);

struct OracleOptions {
    std::size_t max_candidates = 20'000'000; // |grid|^|free atoms|
    // Fix atoms no rule can raise above 0 (skipped when `comp` occurs).
    bool prune = true;
};

// Every interpretation over the uniform grid (0 always added) that is a minimal
// model of its own reduct, sorted like the solver's output.
// Throws Error(OracleSpaceOverflow).
std::vector<Interpretation> brute_force_answer_sets(Program const &ground, std::vector<Grade> grid,
                                                    OracleOptions const &options = {});

// The oracle's own satisfaction check.
bool oracle_is_model(Program const &ground, Interpretation const &interp);

enum class DiscrepancyPhase { Grounding, Evaluation, Minimality };
char const *to_string(DiscrepancyPhase phase);

struct Discrepancy {
    std::string program;
    std::uint64_t seed = 0;
    std::string expected;
    std::string actual;
    DiscrepancyPhase phase = DiscrepancyPhase::Evaluation;
    std::string note;
};

// Replayable fixture: the program text preceded by `%` header lines.
std::string to_fixture(Discrepancy const &d);
std::filesystem::path write_fixture(Discrepancy const &d, std::filesystem::path const &dir);

using SolverFn = std::function<std::vector<Interpretation>(Program const &ground)>;

struct DifferentialOptions {
    SolverFn solver;                                // defaults to the lattice solver
    std::optional<std::filesystem::path> fixture_dir;
    OracleOptions oracle{.max_candidates = 100'000};
};

struct DifferentialReport {
    std::vector<Discrepancy> discrepancies;
    std::size_t trials = 0;
    std::size_t compared = 0; // trials where the oracle ran
    std::size_t skipped = 0;  // a cap was hit on either path
    std::size_t unconverged = 0; // lattice cut by iter_cap: invariants only, no comparison
    std::size_t answer_sets = 0;
};

// Trial i uses seed cfg.seed + i.
DifferentialReport differential_check(GeneratorConfig const &cfg, std::size_t trials,
                                      DifferentialOptions const &options = {});

} // namespace fasolve
