#include "fasolve/grounder.hpp"
#include "fasolve/error.hpp"

#include "compiled.hpp"

#include <algorithm>
#include <set>

namespace fasolve {

namespace {

void collect_constants(Term const &t, std::set<Term> &constants, std::set<std::pair<std::string, std::size_t>> &functions) {
    switch (t.kind()) {
        case Term::Kind::Number:
        case Term::Kind::Symbol: constants.insert(t); break;
        case Term::Kind::Function:
            functions.emplace(t.name(), t.args().size());
            for (auto const &a : t.args()) { collect_constants(a, constants, functions); }
            break;
        case Term::Kind::Variable: break;
    }
}

template <class F>
void for_each_atom(Rule const &rule, F &&f) {
    for (auto const &h : rule.head) { f(h); }
    for (auto const &lit : rule.body) {
        if (!lit.is_aggregate()) {
            f(lit.atom());
            continue;
        }
        for (auto const &el : lit.aggregate().set.elements) {
            for (auto const &c : el.conjunction) { f(c); }
        }
    }
}

template <class F>
void for_each_term(Rule const &rule, F &&f) {
    for_each_atom(rule, [&](AnnotatedAtom const &a) {
        for (auto const &t : a.atom.args) { f(t); }
    });
    for (auto const &lit : rule.body) {
        if (!lit.is_aggregate()) { continue; }
        f(lit.aggregate().guard);
        for (auto const &el : lit.aggregate().set.elements) { f(el.item); }
    }
}

struct RuleVars {
    std::set<std::string> global;
};

RuleVars classify(Rule const &rule) {
    RuleVars out;
    for (auto const &h : rule.head) { h.atom.collect_variables(out.global); }
    std::map<std::string, unsigned> set_occurrences;
    for (auto const &lit : rule.body) {
        if (!lit.is_aggregate()) {
            lit.atom().atom.collect_variables(out.global);
            continue;
        }
        auto const &agg = lit.aggregate();
        agg.guard.collect_variables(out.global);
        std::set<std::string> in_set;
        for (auto const &el : agg.set.elements) { el.collect_object_variables(in_set); }
        for (auto const &v : in_set) { ++set_occurrences[v]; }
    }
    for (auto const &[v, n] : set_occurrences) {
        if (n > 1) { out.global.insert(v); }
    }
    return out;
}

[[noreturn]] void unsafe(Rule const &rule, std::string const &what) {
    throw Error(ErrorKind::UnsafeRule, rule.span.to_string() + ": unsafe rule: " + what);
}

void check_rule_safety(Rule const &rule) {
    auto vars = classify(rule);
    std::set<std::string> positive;
    std::set<std::string> binders;
    for (auto const &lit : rule.body) {
        if (lit.negated) { continue; }
        if (lit.is_aggregate()) {
            for (auto const &el : lit.aggregate().set.elements) {
                for (auto const &c : el.conjunction) { c.atom.collect_variables(positive); }
            }
        }
        else {
            lit.atom().atom.collect_variables(positive);
            if (lit.atom().annotation.is_variable()) { binders.insert(lit.atom().annotation.name()); }
        }
    }
    for (auto const &v : vars.global) {
        if (!positive.count(v)) { unsafe(rule, "variable " + v + " does not occur in a positive body atom"); }
    }
    auto require = [&](Annotation const &ann, std::set<std::string> const &bound) {
        std::set<std::string> used;
        ann.collect_variables(used);
        for (auto const &v : used) {
            if (!bound.count(v)) { unsafe(rule, "annotation variable " + v + " is not bound by a positive body atom"); }
        }
    };
    for (auto const &h : rule.head) { require(h.annotation, binders); }
    for (auto const &lit : rule.body) {
        if (!lit.is_aggregate()) {
            if (lit.negated || !lit.atom().annotation.is_variable()) { require(lit.atom().annotation, binders); }
            continue;
        }
        auto const &agg = lit.aggregate();
        require(agg.annotation, binders);
        for (auto const &el : agg.set.elements) {
            std::set<std::string> local = binders;
            for (auto const &c : el.conjunction) {
                if (c.annotation.is_variable()) { local.insert(c.annotation.name()); }
            }
            require(el.grade, local);
            for (auto const &c : el.conjunction) { require(c.annotation, local); }
        }
    }
}

// Mixed-radix walk over universe^vars.
template <class F>
void for_each_substitution(std::vector<std::string> const &vars, HerbrandUniverse const &universe, F &&f) {
    if (!vars.empty() && universe.terms.empty()) { return; }
    std::vector<std::size_t> idx(vars.size(), 0);
    Substitution sub;
    for (;;) {
        for (std::size_t i = 0; i < vars.size(); ++i) { sub.insert_or_assign(vars[i], universe.terms[idx[i]]); }
        f(sub);
        std::size_t i = vars.size();
        while (i > 0) {
            --i;
            if (++idx[i] < universe.terms.size()) { break; }
            idx[i] = 0;
            if (i == 0) { return; }
        }
        if (vars.empty()) { return; }
    }
}

std::size_t instance_count(std::size_t base, std::size_t exponent, std::size_t cap) {
    std::size_t n = 1;
    for (std::size_t i = 0; i < exponent; ++i) {
        if (base != 0 && n > cap / base) { return cap + 1; }
        n *= base;
    }
    return n;
}

bool is_numeric_fn(AggregateFn fn) { return fn != AggregateFn::Count; }

struct PairLess {
    bool operator()(SetElement const &a, SetElement const &b) const {
        if (auto c = a.item <=> b.item; c != 0) { return c < 0; }
        if (auto c = a.grade <=> b.grade; c != 0) { return c < 0; }
        if (a.conjunction.size() != b.conjunction.size()) { return a.conjunction.size() < b.conjunction.size(); }
        for (std::size_t i = 0; i < a.conjunction.size(); ++i) {
            if (auto c = a.conjunction[i].atom <=> b.conjunction[i].atom; c != 0) { return c < 0; }
            if (auto c = a.conjunction[i].annotation <=> b.conjunction[i].annotation; c != 0) { return c < 0; }
        }
        return false;
    }
};

FuzzySet ground_set(FuzzySet const &set, HerbrandUniverse const &universe, AggregateFn fn, std::size_t &dropped) {
    FuzzySet out;
    std::set<SetElement, PairLess> seen;
    for (auto const &el : set.elements) {
        std::set<std::string> vars_set;
        el.collect_object_variables(vars_set);
        std::vector<std::string> vars(vars_set.begin(), vars_set.end());
        for_each_substitution(vars, universe, [&](Substitution const &sub) {
            SetElement pair;
            pair.item = el.item.substitute(sub);
            if (is_numeric_fn(fn) && !pair.item.is_number()) {
                ++dropped;
                return;
            }
            pair.grade = el.grade;
            for (auto const &c : el.conjunction) { pair.conjunction.push_back({c.atom.substitute(sub), c.annotation, c.span}); }
            if (seen.insert(pair).second) { out.elements.push_back(std::move(pair)); }
        });
    }
    return out;
}

void check_depth(Program const &program, unsigned max_depth) {
    for (auto const &rule : program.rules) {
        for_each_term(rule, [&](Term const &t) {
            if (t.depth() > max_depth) {
                throw Error(ErrorKind::FunctionDepthExceeded,
                            rule.span.to_string() + ": term " + t.to_string() + " has nesting depth " +
                                std::to_string(t.depth()) + ", above the configured maximum " +
                                std::to_string(max_depth));
            }
        });
    }
}

void collect_annotation_constants(Annotation const &ann, std::vector<Grade> &out) {
    if (ann.is_constant()) { detail::insert_sorted(out, ann.value()); }
    for (auto const &a : ann.args()) { collect_annotation_constants(a, out); }
}

} // namespace

HerbrandUniverse herbrand_universe(Program const &program, unsigned max_depth) {
    std::set<Term> terms;
    std::set<std::pair<std::string, std::size_t>> functions;
    for (auto const &rule : program.rules) {
        for_each_atom(rule, [&](AnnotatedAtom const &a) {
            for (auto const &t : a.atom.args) { collect_constants(t, terms, functions); }
        });
        for (auto const &lit : rule.body) {
            if (!lit.is_aggregate()) { continue; }
            for (auto const &el : lit.aggregate().set.elements) { collect_constants(el.item, terms, functions); }
        }
    }
    for (unsigned d = 0; d < max_depth && !functions.empty(); ++d) {
        std::vector<Term> base(terms.begin(), terms.end());
        for (auto const &[name, arity] : functions) {
            std::vector<std::size_t> idx(arity, 0);
            if (base.empty()) { break; }
            for (;;) {
                std::vector<Term> args;
                for (auto i : idx) { args.push_back(base[i]); }
                terms.insert(Term::function(name, std::move(args)));
                std::size_t i = 0;
                for (; i < idx.size(); ++i) {
                    if (++idx[i] < base.size()) { break; }
                    idx[i] = 0;
                }
                if (i == idx.size()) { break; }
            }
        }
    }
    return {{terms.begin(), terms.end()}};
}

void check_safety(Program const &program) {
    for (auto const &rule : program.rules) { check_rule_safety(rule); }
}

FuzzySet ground_fuzzy_set(FuzzySet const &set, HerbrandUniverse const &universe, AggregateFn fn,
                          std::vector<std::string> *warnings) {
    std::size_t dropped = 0;
    FuzzySet out = ground_set(set, universe, fn, dropped);
    if (dropped && warnings) {
        warnings->push_back("dropped " + std::to_string(dropped) + " pair(s) with non-numeric items from #" +
                            to_string(fn));
    }
    return out;
}

std::vector<Rule> ground_rule(Rule const &rule, HerbrandUniverse const &universe, std::vector<std::string> *warnings,
                              std::vector<Substitution> *substitutions, std::size_t max_instances) {
    auto vars = classify(rule);
    std::vector<std::string> globals(vars.global.begin(), vars.global.end());
    if (instance_count(universe.terms.size(), globals.size(), max_instances) > max_instances) {
        throw Error(ErrorKind::GroundingOverflow, rule.span.to_string() + ": more than " + std::to_string(max_instances) +
                                                      " ground instances");
    }
    std::vector<Rule> out;
    std::size_t dropped_pairs = 0;
    std::size_t dropped_guards = 0;
    for_each_substitution(globals, universe, [&](Substitution const &sub) {
        Rule g;
        g.span = rule.span;
        for (auto const &h : rule.head) { g.head.push_back({h.atom.substitute(sub), h.annotation, h.span}); }
        for (auto const &lit : rule.body) {
            if (!lit.is_aggregate()) {
                auto const &a = lit.atom();
                g.body.push_back({lit.negated, AnnotatedAtom{a.atom.substitute(sub), a.annotation, a.span}});
                continue;
            }
            auto const &agg = lit.aggregate();
            AggregateAtom ga;
            ga.fn = agg.fn;
            ga.cmp = agg.cmp;
            ga.annotation = agg.annotation;
            ga.span = agg.span;
            ga.guard = agg.guard.substitute(sub);
            if (!ga.guard.is_ground()) {
                throw Error(ErrorKind::UngroundGuard,
                            agg.span.to_string() + ": aggregate guard " + ga.guard.to_string() + " is not ground");
            }
            if (!ga.guard.is_number()) {
                if (agg.guard.is_ground()) {
                    throw Error(ErrorKind::GuardTypeMismatch,
                                agg.span.to_string() + ": aggregate guard " + ga.guard.to_string() + " is not numeric");
                }
                ++dropped_guards;
                return;
            }
            FuzzySet partial;
            for (auto const &el : agg.set.elements) {
                SetElement p{el.item.substitute(sub), el.grade, {}};
                for (auto const &c : el.conjunction) { p.conjunction.push_back({c.atom.substitute(sub), c.annotation, c.span}); }
                partial.elements.push_back(std::move(p));
            }
            ga.set = ground_set(partial, universe, agg.fn, dropped_pairs);
            g.body.push_back({lit.negated, std::move(ga)});
        }
        out.push_back(std::move(g));
        if (substitutions) { substitutions->push_back(sub); }
    });
    if (warnings && dropped_pairs) {
        warnings->push_back(rule.span.to_string() + ": dropped " + std::to_string(dropped_pairs) +
                            " aggregate pair(s) with non-numeric items");
    }
    if (warnings && dropped_guards) {
        warnings->push_back(rule.span.to_string() + ": dropped " + std::to_string(dropped_guards) +
                            " instance(s) whose aggregate guard is not numeric");
    }
    return out;
}

GroundProgram ground_program(Program const &program, GroundOptions const &options) {
    check_safety(program);
    check_depth(program, options.max_depth);
    auto universe = herbrand_universe(program, options.max_depth);
    GroundProgram out;
    for (std::size_t i = 0; i < program.rules.size(); ++i) {
        std::vector<Substitution> subs;
        auto rules = ground_rule(program.rules[i], universe, &out.warnings, &subs, options.max_instances);
        for (std::size_t j = 0; j < rules.size(); ++j) {
            out.program.rules.push_back(std::move(rules[j]));
            out.provenance.push_back({i, std::move(subs[j])});
        }
    }
    return out;
}

std::vector<Grade> const &GradeLattice::values(Atom const &atom) const {
    static std::vector<Grade> const zero_only{Grade::zero()};
    auto it = per_atom.find(atom);
    return it == per_atom.end() ? zero_only : it->second;
}

GradeLattice grade_lattice(Program const &ground, LatticeOptions const &options) {
    auto compiled = detail::compile(ground.rules);
    detail::ValueSets values(compiled.atoms.size(), std::vector<Grade>{Grade::zero()});
    std::vector<Grade> global{Grade::zero(), Grade::one()};
    for (auto const &rule : ground.rules) {
        for (auto const &h : rule.head) { collect_annotation_constants(h.annotation, global); }
        for (auto const &lit : rule.body) {
            if (!lit.is_aggregate()) {
                collect_annotation_constants(lit.atom().annotation, global);
                continue;
            }
            auto const &agg = lit.aggregate();
            collect_annotation_constants(agg.annotation, global);
            for (auto const &el : agg.set.elements) {
                collect_annotation_constants(el.grade, global);
                for (auto const &c : el.conjunction) { collect_annotation_constants(c.annotation, global); }
            }
        }
    }
    auto check_cap = [&] {
        if (global.size() > options.cap) {
            throw Error(ErrorKind::LatticeOverflow, "grade lattice exceeds " + std::to_string(options.cap) +
                                                        " values; raise the lattice cap or simplify annotations");
        }
    };
    check_cap();

    GradeLattice out;
    unsigned new_value_sweeps = 0;
    constexpr std::size_t combo_cap = 100'000;
    for (;;) {
        bool changed = false;
        bool introduced = false;
        bool allow_new = new_value_sweeps < options.iter_cap;
        std::vector<std::pair<detail::AtomId, Grade>> derived;
        for (auto const &rule : compiled.rules) {
            derived.clear();
            detail::possible_bindings(rule, values, combo_cap, [&](detail::Binding const &binding) {
                Grade scratch;
                for (auto const &h : rule.head) {
                    Grade const &g = detail::eval(h.ann, binding, scratch);
                    if (!g.is_zero()) { derived.emplace_back(h.atom, g); }
                }
            });
            for (auto const &[atom, g] : derived) {
                if (!std::binary_search(global.begin(), global.end(), g)) {
                    if (!allow_new) {
                        out.converged = false;
                        continue;
                    }
                    detail::insert_sorted(global, g);
                    introduced = true;
                    check_cap();
                }
                auto &vs = values[atom];
                auto before = vs.size();
                detail::insert_sorted(vs, g);
                changed = changed || vs.size() != before;
            }
        }
        if (!changed) { break; }
        ++out.iterations;
        if (introduced) { ++new_value_sweeps; }
    }
    for (detail::AtomId id = 0; id < values.size(); ++id) {
        if (values[id].size() > 1) { out.per_atom.emplace(compiled.atoms.atom(id), std::move(values[id])); }
    }
    out.global = std::move(global);
    return out;
}

} // namespace fasolve
