#pragma once

#include "fasolve/model.hpp"

#include <map>
#include <string>
#include <vector>

namespace fasolve {

// Constants of the program closed under its function symbols up to a depth bound,
// in ascending term order.
struct HerbrandUniverse {
    std::vector<Term> terms;
};

HerbrandUniverse herbrand_universe(Program const &program, unsigned max_depth = 0);

// Throws Error(UnsafeRule) for the first rule where
//  - a global object variable occurs in no positive body atom and in no positive
//    aggregate's conjunction, or
//  - an annotation variable has no binder (a bare `a:V` in a positive body atom,
//    or inside a set element, a bare `a:V` in that element's conjunction).
void check_safety(Program const &program);

struct Provenance {
    std::size_t source_rule = 0;
    Substitution substitution; // global object variables only
};

struct GroundProgram {
    Program program;
    std::vector<Provenance> provenance; // parallel to program.rules
    std::vector<std::string> warnings;
};

struct GroundOptions {
    unsigned max_depth = 0;
    std::size_t max_instances = 10'000'000;
};

// Instantiates the element's remaining (local) object variables over `universe`.
// Numeric aggregates drop pairs with non-numeric items; identical pairs collapse.
FuzzySet ground_fuzzy_set(FuzzySet const &set, HerbrandUniverse const &universe,
                          AggregateFn fn = AggregateFn::Count, std::vector<std::string> *warnings = nullptr);

// One rule per substitution of the global object variables. Annotation variables
// stay symbolic. Throws Error(UngroundGuard), Error(GuardTypeMismatch),
// Error(GroundingOverflow).
std::vector<Rule> ground_rule(Rule const &rule, HerbrandUniverse const &universe,
                              std::vector<std::string> *warnings = nullptr,
                              std::vector<Substitution> *substitutions = nullptr,
                              std::size_t max_instances = 10'000'000);

// Safety check, depth check (Error(FunctionDepthExceeded)), then every rule in order.
GroundProgram ground_program(Program const &program, GroundOptions const &options = {});

struct LatticeOptions {
    std::size_t cap = 10'000;
    unsigned iter_cap = 16;
};

// Finite candidate grades per ground atom.
struct GradeLattice {
    // Ascending, always starting with 0; atoms missing here only take 0.
    std::map<Atom, std::vector<Grade>> per_atom;
    // Ascending; contains 0, 1 and every annotation constant of the program.
    std::vector<Grade> global;
    // Productive sweeps until the fixpoint.
    unsigned iterations = 0;
    // False when iter_cap sweeps kept introducing new grades and the closure was cut.
    bool converged = true;

    std::vector<Grade> const &values(Atom const &atom) const;
};

// Least fixpoint over the ground program: a rule contributes its head grades only
// when its body is satisfiable by some interpretation over the current value sets.
// Throws Error(LatticeOverflow) when more than `cap` distinct grades arise.
GradeLattice grade_lattice(Program const &ground, LatticeOptions const &options = {});

} // namespace fasolve
