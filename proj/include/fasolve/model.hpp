#pragma once

#include "fasolve/grade.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace fasolve {

struct SourceSpan {
    std::string file;
    unsigned line = 0;
    unsigned column = 0;

    std::string to_string() const;
};

class Term;
using Substitution = std::map<std::string, Term>;

// Constant (numeric or symbolic), object variable or function term.
class Term {
public:
    enum class Kind : std::uint8_t { Number, Symbol, Variable, Function };

    Term() = default;
    static Term number(Rational value);
    static Term symbol(std::string name);
    static Term variable(std::string name);
    static Term function(std::string name, std::vector<Term> args);

    Kind kind() const noexcept { return kind_; }
    bool is_number() const noexcept { return kind_ == Kind::Number; }
    bool is_symbol() const noexcept { return kind_ == Kind::Symbol; }
    bool is_variable() const noexcept { return kind_ == Kind::Variable; }
    bool is_function() const noexcept { return kind_ == Kind::Function; }
    bool is_constant() const noexcept { return is_number() || is_symbol(); }

    Rational const &number() const noexcept { return number_; }
    std::string const &name() const noexcept { return name_; }
    std::vector<Term> const &args() const noexcept { return args_; }

    bool is_ground() const;
    // 0 for constants and variables, 1 + max(arg depth) for function terms.
    unsigned depth() const;
    void collect_variables(std::set<std::string> &out) const;
    Term substitute(Substitution const &sub) const;
    std::string to_string() const;

    friend bool operator==(Term const &a, Term const &b);
    friend std::strong_ordering operator<=>(Term const &a, Term const &b);

private:
    Kind kind_ = Kind::Symbol;
    Rational number_{0};
    std::string name_;
    std::vector<Term> args_;
};

enum class BuiltinOp : std::uint8_t { Min, Max, Prod, BSum, Comp, Avg };

struct BuiltinInfo {
    BuiltinOp op;
    char const *name;
    unsigned arity;
};

std::span<BuiltinInfo const> builtin_library();
std::optional<BuiltinOp> find_builtin(std::string_view name);
BuiltinInfo const &builtin_info(BuiltinOp op);
// Throws Error(ArityMismatch) when args.size() differs from the declared arity.
Grade apply_builtin(BuiltinOp op, std::span<Grade const> args);

using AnnotationBinding = std::map<std::string, Grade>;

// Grade expression: constant, annotation variable or builtin applied to annotations.
class Annotation {
public:
    enum class Kind : std::uint8_t { Constant, Variable, Function };

    Annotation() = default; // constant 1
    static Annotation constant(Grade value);
    static Annotation variable(std::string name);
    // Throws Error(ArityMismatch).
    static Annotation function(BuiltinOp op, std::vector<Annotation> args);

    Kind kind() const noexcept { return kind_; }
    bool is_constant() const noexcept { return kind_ == Kind::Constant; }
    bool is_variable() const noexcept { return kind_ == Kind::Variable; }
    bool is_function() const noexcept { return kind_ == Kind::Function; }

    Grade const &value() const noexcept { return value_; }
    std::string const &name() const noexcept { return name_; }
    BuiltinOp op() const noexcept { return op_; }
    std::vector<Annotation> const &args() const noexcept { return args_; }

    bool is_ground() const;
    void collect_variables(std::set<std::string> &out) const;
    std::string to_string() const;

    friend bool operator==(Annotation const &a, Annotation const &b);
    friend std::strong_ordering operator<=>(Annotation const &a, Annotation const &b);

private:
    Kind kind_ = Kind::Constant;
    Grade value_ = Grade::one();
    std::string name_;
    BuiltinOp op_ = BuiltinOp::Min;
    std::vector<Annotation> args_;
};

// Throws Error(UnboundAnnotationVariable) for a variable missing from the binding.
Grade eval_annotation(Annotation const &ann, AnnotationBinding const &binding = {});

struct Atom {
    std::string predicate;
    std::vector<Term> args;

    bool is_ground() const;
    Atom substitute(Substitution const &sub) const;
    void collect_variables(std::set<std::string> &out) const;
    std::string to_string() const;

    friend bool operator==(Atom const &, Atom const &) = default;
    friend std::strong_ordering operator<=>(Atom const &a, Atom const &b);
};

struct AnnotatedAtom {
    Atom atom;
    Annotation annotation;
    SourceSpan span;

    std::string to_string() const;
    friend bool operator==(AnnotatedAtom const &a, AnnotatedAtom const &b) {
        return a.atom == b.atom && a.annotation == b.annotation;
    }
};

// One element { item : grade | conjunction } of a fuzzy set term. A symbolic set has
// variables in its element; a ground set is a list of variable-free pairs.
struct SetElement {
    Term item;
    Annotation grade;
    std::vector<AnnotatedAtom> conjunction;

    bool is_ground() const;
    void collect_object_variables(std::set<std::string> &out) const;
    friend bool operator==(SetElement const &, SetElement const &) = default;
};

struct FuzzySet {
    std::vector<SetElement> elements;

    bool is_ground() const;
    friend bool operator==(FuzzySet const &, FuzzySet const &) = default;
};

enum class AggregateFn : std::uint8_t { Sum, Times, Min, Max, Count };
enum class CmpOp : std::uint8_t { Eq, Ne, Lt, Gt, Le, Ge };

char const *to_string(AggregateFn fn);
char const *to_string(CmpOp op);
bool compare_with(CmpOp op, Rational const &lhs, Rational const &rhs);

struct AggregateAtom {
    AggregateFn fn = AggregateFn::Sum;
    FuzzySet set;
    CmpOp cmp = CmpOp::Eq;
    Term guard;
    Annotation annotation;
    SourceSpan span;

    friend bool operator==(AggregateAtom const &a, AggregateAtom const &b) {
        return a.fn == b.fn && a.set == b.set && a.cmp == b.cmp && a.guard == b.guard && a.annotation == b.annotation;
    }
};

struct Literal {
    bool negated = false;
    std::variant<AnnotatedAtom, AggregateAtom> content;

    bool is_aggregate() const noexcept { return content.index() == 1; }
    AnnotatedAtom const &atom() const { return std::get<AnnotatedAtom>(content); }
    AggregateAtom const &aggregate() const { return std::get<AggregateAtom>(content); }
    friend bool operator==(Literal const &, Literal const &) = default;
};

struct Rule {
    std::vector<AnnotatedAtom> head;
    std::vector<Literal> body;
    SourceSpan span;

    bool is_fact() const noexcept { return body.empty(); }
    bool is_ground() const;
    friend bool operator==(Rule const &a, Rule const &b) { return a.head == b.head && a.body == b.body; }
};

struct Program {
    std::vector<Rule> rules;

    bool is_ground() const;
    friend bool operator==(Program const &, Program const &) = default;
};

// Total map from ground atoms to grades; atoms not stored have grade 0.
class Interpretation {
public:
    Interpretation() = default;
    Interpretation(std::initializer_list<std::pair<Atom const, Grade>> init);

    Grade const &operator()(Atom const &atom) const;
    void set(Atom const &atom, Grade grade);
    // Nonzero entries ordered by atom.
    std::map<Atom, Grade> const &entries() const noexcept { return grades_; }
    std::size_t support_size() const noexcept { return grades_.size(); }

    // "{ a(1,2):0.4, a(2,2):0.9 }" with entries sorted by their text.
    std::string to_string() const;
    // Sorted (atom text, grade) pairs used for deterministic ordering.
    std::vector<std::pair<std::string, Grade>> sorted_entries() const;

    friend bool operator==(Interpretation const &, Interpretation const &) = default;

private:
    std::map<Atom, Grade> grades_;
};

// Pointwise i1(a) <= i2(a) over the union of supports.
bool interp_leq(Interpretation const &i1, Interpretation const &i2);
bool interp_lt(Interpretation const &i1, Interpretation const &i2);
// Orders interpretations by their sorted (atom text, grade) entry lists.
bool interp_before(Interpretation const &i1, Interpretation const &i2);

} // namespace fasolve
