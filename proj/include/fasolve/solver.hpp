#pragma once

#include "fasolve/grounder.hpp"
#include "fasolve/model.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace fasolve {

struct BodyResult {
    bool satisfied = false;
    // Rule-level annotation variables bound from the body (valid when satisfied).
    AnnotationBinding binding;
};

// All functions below expect ground rules/programs.
BodyResult satisfies_body(Rule const &rule, Interpretation const &interp);
bool satisfies_rule(Rule const &rule, Interpretation const &interp);
// Every rule is satisfied and, per atom, the largest head grade of a fired rule
// satisfied through that atom does not exceed the atom's grade.
bool satisfies_program(Program const &program, Interpretation const &interp);

// Rules whose body the interpretation satisfies, kept verbatim.
struct Reduct {
    std::vector<Rule> rules;
    std::vector<std::size_t> source_indices;
};

Reduct reduct(Program const &program, Interpretation const &interp);

// True iff no interpretation strictly below `interp` satisfies the reduct, where
// each atom ranges over its lattice values, the global grades, the midpoints
// between consecutive global grades, and 0.
bool is_minimal_model(Reduct const &reduct, Interpretation const &interp, GradeLattice const &lattice);

struct SolveOptions {
    std::size_t limit = 0; // 0 = unlimited
    std::size_t candidate_cap = 10'000'000;
    unsigned threads = 0; // 0 = FASOLVE_THREADS or hardware concurrency
    // Test hook: a solver with this off emits every model of its own reduct.
    bool check_minimality = true;
};

struct AnswerSetReport {
    Interpretation interpretation;
    bool minimality_witness_checked = false;
    std::size_t candidate_space_size = 0;
};

// Product of per-atom candidate counts, saturating at SIZE_MAX.
std::size_t candidate_space_size(Program const &ground, GradeLattice const &lattice);

// Exhaustive search over the per-atom lattice grid; answer sets sorted by their
// (atom text, grade) entries. Throws Error(CandidateSpaceOverflow).
std::vector<AnswerSetReport> enumerate_answer_sets(Program const &ground, GradeLattice const &lattice,
                                                   SolveOptions const &options = {});

// Worker count from FASOLVE_THREADS, else hardware concurrency (at least 1).
unsigned default_thread_count();

} // namespace fasolve
