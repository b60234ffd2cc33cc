#pragma once

#include "fasolve/model.hpp"
#include "fasolve/parser.hpp"

#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace fasolve {

// A classical DLP / DLP^A program kept in AST form with every annotation equal to 1.
struct ClassicalProgram {
    std::vector<Rule> rules;
    friend bool operator==(ClassicalProgram const &, ClassicalProgram const &) = default;
};

using ClassicalAnswerSet = std::set<Atom>;

struct ClassicalParseResult {
    ClassicalProgram program;
    std::vector<ParseError> errors;
    bool ok() const noexcept { return errors.empty(); }
};

ClassicalParseResult parse_classical(std::string_view text, std::string const &file = {});
std::string print_classical(ClassicalProgram const &program);

// atom -> atom:1, #f{X : conj} -> #f_f{X : 1 | conj:1} ... : 1.
Program embed(ClassicalProgram const &program);
// Inverse of embed; throws Error(NonBooleanGrade) on any annotation other than 1.
ClassicalProgram erase_annotations(Program const &program);

// {a | i(a) = 1}; throws Error(NonBooleanGrade) on a grade strictly inside (0,1).
ClassicalAnswerSet extract(Interpretation const &interp);
std::string to_string(ClassicalAnswerSet const &answer_set);

struct ClassicalOracleOptions {
    std::size_t max_atoms = 20; // candidate atoms left after pruning
    std::size_t max_instances = 1'000'000;
};

// Brute force over subsets of the atoms that can possibly be derived; keeps the
// minimal models of each candidate's reduct. Sorted by to_string.
// Throws Error(OracleSpaceOverflow).
std::vector<ClassicalAnswerSet> classical_oracle(ClassicalProgram const &program,
                                                 ClassicalOracleOptions const &options = {});

} // namespace fasolve
