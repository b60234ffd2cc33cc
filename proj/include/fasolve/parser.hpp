#pragma once

#include "fasolve/model.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace fasolve {

enum class ParseErrorKind { Lex, Syntax, AnnotationRange, Arity };

char const *to_string(ParseErrorKind kind);

struct ParseError {
    SourceSpan span;
    ParseErrorKind kind = ParseErrorKind::Syntax;
    std::string message;

    std::string to_string() const;
};

// Fuzzy: annotated atoms and `{ Item : Grade | conj }` set elements.
// Classical: no annotations anywhere, set elements are `{ Item : conj }`; every
// annotation in the resulting AST is the constant 1.
enum class Dialect { Fuzzy, Classical };

struct ParseResult {
    Program program;
    std::vector<ParseError> errors;

    bool ok() const noexcept { return errors.empty(); }
};

// Collects every error it finds, recovering at rule boundaries.
ParseResult parse_program(std::string_view text, std::string const &file = {}, Dialect dialect = Dialect::Fuzzy);

std::string print_annotated_atom(AnnotatedAtom const &atom);
std::string print_aggregate(AggregateAtom const &agg);
std::string print_literal(Literal const &lit);
std::string print_rule(Rule const &rule);
// Canonical text; parse_program(print_program(p)) reproduces p up to spans.
std::string print_program(Program const &program);

} // namespace fasolve
