#pragma once

#include "fasolve/model.hpp"

#include <vector>

namespace fasolve {

// Interpreted multiset S_I; every entry has a grade strictly above 0.
struct FuzzyMultiset {
    struct Entry {
        Term item;
        Grade grade;
        friend bool operator==(Entry const &, Entry const &) = default;
    };
    std::vector<Entry> entries;
};

// Defined(value, grade) or Bottom (min_f/max_f on the empty multiset).
struct AggResult {
    bool defined = false;
    Rational value{0};
    Grade grade;

    static AggResult bottom() { return {}; }
    static AggResult of(Rational value, Grade grade) { return {true, std::move(value), std::move(grade)}; }
    friend bool operator==(AggResult const &a, AggResult const &b) {
        return a.defined == b.defined && (!a.defined || (cmp(a.value, b.value) == 0 && a.grade == b.grade));
    }
};

std::string to_string(AggResult const &result);

// Pairs contribute (item, grade) when every conjunct a:mu has mu <= I(a) and the
// pair grade is positive. Annotation variables bare in a conjunct bind to I(a);
// `outer` supplies rule-level bindings.
FuzzyMultiset build_multiset(FuzzySet const &set, Interpretation const &interp, AnnotationBinding const &outer = {});

// Throws Error(GuardTypeMismatch) if a numeric aggregate meets a non-numeric item.
AggResult eval_aggregate(AggregateFn fn, FuzzyMultiset const &multiset);

// Positive: Defined(x, nu) with x cmp guard and mu <= nu. Negated: the complement
// (Bottom, or x not cmp guard, or mu not <= nu).
// Throws Error(GuardTypeMismatch) for a non-numeric guard.
bool satisfies_aggregate_atom(AggregateAtom const &atom, Interpretation const &interp, bool negated,
                              AnnotationBinding const &outer = {});

} // namespace fasolve
