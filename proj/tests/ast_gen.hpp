#pragma once

// Random ASTs covering the whole concrete syntax, for parse/print round trips.

#include "fasolve/model.hpp"

#include <random>

namespace fasolve::test {

class AstGen {
public:
    explicit AstGen(std::uint64_t seed) : rng_(seed) {}

    Program program() {
        Program p;
        unsigned n = pick(0, 4);
        for (unsigned i = 0; i < n; ++i) { p.rules.push_back(rule()); }
        return p;
    }

private:
    unsigned pick(unsigned lo, unsigned hi) { return std::uniform_int_distribution<unsigned>(lo, hi)(rng_); }
    bool coin() { return pick(0, 1) == 1; }

    Grade grade() {
        switch (pick(0, 3)) {
            case 0: return Grade(Rational(pick(0, 10), 10));
            case 1: return Grade(Rational(pick(0, 7), 7));
            case 2: return Grade::one();
            default: return Grade(Rational(pick(0, 100), 100));
        }
    }

    Term term(unsigned depth = 0) {
        switch (pick(0, depth < 2 ? 5 : 3)) {
            case 0: return Term::number(Rational(static_cast<int>(pick(0, 60)) - 20));
            case 1: return Term::number(Rational(static_cast<int>(pick(0, 40)) - 10, 4));
            case 2: return Term::symbol(std::string(1, static_cast<char>('a' + pick(0, 3))));
            case 3: return Term::variable(obj_vars_[pick(0, 2)]);
            default: {
                std::vector<Term> args;
                unsigned n = pick(1, 2);
                for (unsigned i = 0; i < n; ++i) { args.push_back(term(depth + 1)); }
                return Term::function((coin() ? "f" : "g") + std::to_string(n), std::move(args));
            }
        }
    }

    Atom atom() {
        // arity fixed by name: p0/0, p1/1, p2/2
        unsigned arity = pick(0, 2);
        Atom a{"p" + std::to_string(arity), {}};
        for (unsigned i = 0; i < arity; ++i) { a.args.push_back(term()); }
        return a;
    }

    Annotation annotation(unsigned depth = 0) {
        switch (pick(0, depth < 2 ? 3 : 1)) {
            case 0: return Annotation::constant(grade());
            case 1: return Annotation::variable(ann_vars_[pick(0, 2)]);
            default: {
                auto lib = builtin_library();
                auto const &info = lib[pick(0, lib.size() - 1)];
                std::vector<Annotation> args;
                for (unsigned i = 0; i < info.arity; ++i) { args.push_back(annotation(depth + 1)); }
                return Annotation::function(info.op, std::move(args));
            }
        }
    }

    AnnotatedAtom annotated() { return AnnotatedAtom{atom(), annotation(), {}}; }

    AggregateAtom aggregate() {
        AggregateAtom agg;
        agg.fn = static_cast<AggregateFn>(pick(0, 4));
        unsigned n = pick(0, 2);
        for (unsigned i = 0; i < n; ++i) {
            SetElement el;
            el.item = term();
            el.grade = annotation();
            unsigned c = pick(1, 2);
            for (unsigned j = 0; j < c; ++j) { el.conjunction.push_back(annotated()); }
            agg.set.elements.push_back(std::move(el));
        }
        agg.cmp = static_cast<CmpOp>(pick(0, 5));
        agg.guard = coin() ? Term::number(Rational(static_cast<int>(pick(0, 100)) - 10)) : Term::variable("X");
        agg.annotation = annotation();
        return agg;
    }

    Rule rule() {
        Rule r;
        unsigned h = pick(1, 3);
        for (unsigned i = 0; i < h; ++i) { r.head.push_back(annotated()); }
        unsigned b = pick(0, 3);
        for (unsigned i = 0; i < b; ++i) {
            Literal lit;
            lit.negated = pick(0, 3) == 0;
            if (pick(0, 2) == 0) { lit.content = aggregate(); }
            else { lit.content = annotated(); }
            r.body.push_back(std::move(lit));
        }
        return r;
    }

    std::mt19937_64 rng_;
    std::vector<std::string> obj_vars_{"X", "Y", "Z"};
    std::vector<std::string> ann_vars_{"U", "V", "W1"};
};

} // namespace fasolve::test
