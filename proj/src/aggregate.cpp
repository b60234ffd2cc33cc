#include "fasolve/aggregate.hpp"
#include "fasolve/error.hpp"

namespace fasolve {

std::string to_string(AggResult const &result) {
    if (!result.defined) { return "bottom"; }
    return "(" + format_rational(result.value) + ", " + result.grade.to_string() + ")";
}

FuzzyMultiset build_multiset(FuzzySet const &set, Interpretation const &interp, AnnotationBinding const &outer) {
    FuzzyMultiset out;
    for (auto const &pair : set.elements) {
        AnnotationBinding binding = outer;
        for (auto const &conj : pair.conjunction) {
            if (conj.annotation.is_variable()) { binding.emplace(conj.annotation.name(), interp(conj.atom)); }
        }
        bool holds = true;
        for (auto const &conj : pair.conjunction) {
            if (!(eval_annotation(conj.annotation, binding) <= interp(conj.atom))) {
                holds = false;
                break;
            }
        }
        if (!holds) { continue; }
        Grade grade = eval_annotation(pair.grade, binding);
        if (!grade.is_zero()) { out.entries.push_back({pair.item, std::move(grade)}); }
    }
    return out;
}

AggResult eval_aggregate(AggregateFn fn, FuzzyMultiset const &multiset) {
    auto const &entries = multiset.entries;
    if (entries.empty()) {
        switch (fn) {
            case AggregateFn::Sum: return AggResult::of(0, Grade::one());
            case AggregateFn::Times: return AggResult::of(1, Grade::one());
            case AggregateFn::Count: return AggResult::of(0, Grade::one());
            case AggregateFn::Min:
            case AggregateFn::Max: return AggResult::bottom();
        }
    }
    Grade grade = entries.front().grade;
    for (auto const &e : entries) { grade = meet(grade, e.grade); }
    if (fn == AggregateFn::Count) { return AggResult::of(Rational(static_cast<unsigned long>(entries.size())), grade); }
    for (auto const &e : entries) {
        if (!e.item.is_number()) {
            throw Error(ErrorKind::GuardTypeMismatch,
                        std::string("aggregate ") + to_string(fn) + " over non-numeric item " + e.item.to_string());
        }
    }
    Rational value = entries.front().item.number();
    for (std::size_t i = 1; i < entries.size(); ++i) {
        Rational const &x = entries[i].item.number();
        switch (fn) {
            case AggregateFn::Sum: value += x; break;
            case AggregateFn::Times: value *= x; break;
            case AggregateFn::Min: if (x < value) { value = x; } break;
            case AggregateFn::Max: if (x > value) { value = x; } break;
            case AggregateFn::Count: break;
        }
    }
    return AggResult::of(std::move(value), std::move(grade));
}

bool satisfies_aggregate_atom(AggregateAtom const &atom, Interpretation const &interp, bool negated,
                              AnnotationBinding const &outer) {
    if (!atom.guard.is_number()) {
        throw Error(ErrorKind::GuardTypeMismatch, "aggregate guard " + atom.guard.to_string() + " is not numeric");
    }
    Grade mu = eval_annotation(atom.annotation, outer);
    AggResult result = eval_aggregate(atom.fn, build_multiset(atom.set, interp, outer));
    bool positive = result.defined && compare_with(atom.cmp, result.value, atom.guard.number()) && mu <= result.grade;
    return negated ? !positive : positive;
}

} // namespace fasolve
