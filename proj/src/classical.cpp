#include "fasolve/classical.hpp"
#include "fasolve/error.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace fasolve {

namespace {

bool is_one(Annotation const &ann) { return ann.is_constant() && ann.value().is_one(); }

void require_one(Annotation const &ann, SourceSpan const &span) {
    if (!is_one(ann)) {
        throw Error(ErrorKind::NonBooleanGrade,
                    span.to_string() + ": annotation " + ann.to_string() + " has no classical counterpart");
    }
}

std::string print_plain(AggregateAtom const &agg) {
    std::string out = std::string("#") + to_string(agg.fn);
    // "sum_f" -> "sum"
    out.resize(out.size() - 2);
    out += "{";
    for (std::size_t i = 0; i < agg.set.elements.size(); ++i) {
        auto const &el = agg.set.elements[i];
        out += i ? " ; " : " ";
        out += el.item.to_string() + " :";
        for (std::size_t j = 0; j < el.conjunction.size(); ++j) {
            out += j ? ", " : " ";
            out += el.conjunction[j].atom.to_string();
        }
    }
    out += agg.set.elements.empty() ? "} " : " } ";
    return out + to_string(agg.cmp) + " " + agg.guard.to_string();
}

} // namespace

ClassicalParseResult parse_classical(std::string_view text, std::string const &file) {
    auto parsed = parse_program(text, file, Dialect::Classical);
    return {ClassicalProgram{std::move(parsed.program.rules)}, std::move(parsed.errors)};
}

std::string print_classical(ClassicalProgram const &program) {
    std::string out;
    for (auto const &rule : program.rules) {
        for (std::size_t i = 0; i < rule.head.size(); ++i) {
            if (i) { out += " | "; }
            out += rule.head[i].atom.to_string();
        }
        for (std::size_t i = 0; i < rule.body.size(); ++i) {
            auto const &lit = rule.body[i];
            out += i ? ", " : " :- ";
            if (lit.negated) { out += "not "; }
            out += lit.is_aggregate() ? print_plain(lit.aggregate()) : lit.atom().atom.to_string();
        }
        out += ".\n";
    }
    return out;
}

Program embed(ClassicalProgram const &program) {
    Program out{program.rules};
    auto one = [](AnnotatedAtom &a) { a.annotation = Annotation::constant(Grade::one()); };
    for (auto &rule : out.rules) {
        for (auto &h : rule.head) { one(h); }
        for (auto &lit : rule.body) {
            if (!lit.is_aggregate()) {
                one(std::get<AnnotatedAtom>(lit.content));
                continue;
            }
            auto &agg = std::get<AggregateAtom>(lit.content);
            agg.annotation = Annotation::constant(Grade::one());
            for (auto &el : agg.set.elements) {
                el.grade = Annotation::constant(Grade::one());
                for (auto &c : el.conjunction) { one(c); }
            }
        }
    }
    return out;
}

ClassicalProgram erase_annotations(Program const &program) {
    for (auto const &rule : program.rules) {
        for (auto const &h : rule.head) { require_one(h.annotation, h.span); }
        for (auto const &lit : rule.body) {
            if (!lit.is_aggregate()) {
                require_one(lit.atom().annotation, lit.atom().span);
                continue;
            }
            auto const &agg = lit.aggregate();
            require_one(agg.annotation, agg.span);
            for (auto const &el : agg.set.elements) {
                require_one(el.grade, agg.span);
                for (auto const &c : el.conjunction) { require_one(c.annotation, c.span); }
            }
        }
    }
    return ClassicalProgram{program.rules};
}

ClassicalAnswerSet extract(Interpretation const &interp) {
    ClassicalAnswerSet out;
    for (auto const &[atom, grade] : interp.entries()) {
        if (!grade.is_one()) {
            throw Error(ErrorKind::NonBooleanGrade,
                        atom.to_string() + " has grade " + grade.to_string() + ", expected 0 or 1");
        }
        out.insert(atom);
    }
    return out;
}

std::string to_string(ClassicalAnswerSet const &answer_set) {
    std::vector<std::string> names;
    for (auto const &a : answer_set) { names.push_back(a.to_string()); }
    std::sort(names.begin(), names.end());
    if (names.empty()) { return "{ }"; }
    std::string out = "{ ";
    for (std::size_t i = 0; i < names.size(); ++i) { out += (i ? ", " : "") + names[i]; }
    return out + " }";
}

// ---------------------------------------------------------------------------
// Oracle: naive instantiation over the constants of the program and subset search.

namespace {

struct GElement {
    Term item;
    std::vector<int> conj;
    friend bool operator<(GElement const &a, GElement const &b) {
        if (auto c = a.item <=> b.item; c != 0) { return c < 0; }
        return a.conj < b.conj;
    }
};

struct GAggregate {
    AggregateFn fn;
    std::vector<GElement> elements;
    CmpOp cmp;
    Rational guard;
    bool negated;
};

struct GRule {
    std::vector<int> head, pos, neg;
    std::vector<GAggregate> aggs;
};

using Mask = std::vector<char>;

class Instantiator {
public:
    explicit Instantiator(ClassicalProgram const &program, std::size_t cap) : program_(program), cap_(cap) {
        std::set<Term> constants;
        std::function<void(Term const &)> visit = [&](Term const &t) {
            if (t.is_ground()) { constants.insert(t); }
            else if (t.is_function()) {
                for (auto const &a : t.args()) { visit(a); }
            }
        };
        auto visit_atom = [&](Atom const &a) {
            for (auto const &t : a.args) { visit(t); }
        };
        for (auto const &rule : program.rules) {
            for (auto const &h : rule.head) { visit_atom(h.atom); }
            for (auto const &lit : rule.body) {
                if (!lit.is_aggregate()) {
                    visit_atom(lit.atom().atom);
                    continue;
                }
                for (auto const &el : lit.aggregate().set.elements) {
                    visit(el.item);
                    for (auto const &c : el.conjunction) { visit_atom(c.atom); }
                }
            }
        }
        universe_.assign(constants.begin(), constants.end());
    }

    std::vector<GRule> run() {
        std::vector<GRule> out;
        for (auto const &rule : program_.rules) { instantiate(rule, out); }
        return out;
    }

    std::vector<Atom> const &atoms() const { return atoms_; }

private:
    int id(Atom const &a) {
        auto [it, inserted] = ids_.emplace(a, static_cast<int>(atoms_.size()));
        if (inserted) { atoms_.push_back(a); }
        return it->second;
    }

    // Calls f with every assignment of `vars` over the universe.
    template <class F>
    void assignments(std::vector<std::string> const &vars, Substitution sub, F &&f) {
        if (vars.empty()) {
            f(sub);
            return;
        }
        std::vector<std::size_t> idx(vars.size(), 0);
        if (universe_.empty()) { return; }
        for (;;) {
            for (std::size_t i = 0; i < vars.size(); ++i) { sub[vars[i]] = universe_[idx[i]]; }
            f(sub);
            std::size_t k = vars.size();
            while (k > 0 && ++idx[k - 1] == universe_.size()) { idx[--k] = 0; }
            if (k == 0) { return; }
        }
    }

    void instantiate(Rule const &rule, std::vector<GRule> &out) {
        std::map<std::string, unsigned> set_count;
        std::set<std::string> outside;
        for (auto const &h : rule.head) { h.atom.collect_variables(outside); }
        for (auto const &lit : rule.body) {
            if (!lit.is_aggregate()) {
                lit.atom().atom.collect_variables(outside);
                continue;
            }
            lit.aggregate().guard.collect_variables(outside);
            std::set<std::string> in_set;
            for (auto const &el : lit.aggregate().set.elements) {
                el.item.collect_variables(in_set);
                for (auto const &c : el.conjunction) { c.atom.collect_variables(in_set); }
            }
            for (auto const &v : in_set) { ++set_count[v]; }
        }
        std::set<std::string> global = outside;
        for (auto const &[v, n] : set_count) {
            if (n > 1) { global.insert(v); }
        }
        std::vector<std::string> vars(global.begin(), global.end());
        assignments(vars, {}, [&](Substitution const &sub) {
            if (++instances_ > cap_) {
                throw Error(ErrorKind::OracleSpaceOverflow, "classical oracle: too many rule instances");
            }
            GRule g;
            for (auto const &h : rule.head) { g.head.push_back(id(h.atom.substitute(sub))); }
            for (auto const &lit : rule.body) {
                if (!lit.is_aggregate()) {
                    int a = id(lit.atom().atom.substitute(sub));
                    (lit.negated ? g.neg : g.pos).push_back(a);
                    continue;
                }
                auto const &agg = lit.aggregate();
                Term guard = agg.guard.substitute(sub);
                if (!guard.is_number()) { return; }
                GAggregate ga{agg.fn, {}, agg.cmp, guard.number(), lit.negated};
                std::set<GElement> elements;
                for (auto const &el : agg.set.elements) {
                    std::set<std::string> local;
                    el.item.collect_variables(local);
                    for (auto const &c : el.conjunction) { c.atom.collect_variables(local); }
                    std::vector<std::string> lv;
                    for (auto const &v : local) {
                        if (!global.count(v)) { lv.push_back(v); }
                    }
                    assignments(lv, sub, [&](Substitution const &full) {
                        GElement ge{el.item.substitute(full), {}};
                        if (agg.fn != AggregateFn::Count && !ge.item.is_number()) { return; }
                        for (auto const &c : el.conjunction) { ge.conj.push_back(id(c.atom.substitute(full))); }
                        elements.insert(std::move(ge));
                    });
                }
                ga.elements.assign(elements.begin(), elements.end());
                g.aggs.push_back(std::move(ga));
            }
            out.push_back(std::move(g));
        });
    }

    ClassicalProgram const &program_;
    std::size_t cap_;
    std::size_t instances_ = 0;
    std::vector<Term> universe_;
    std::vector<Atom> atoms_;
    std::map<Atom, int> ids_;
};

// Value of the aggregate over the elements flagged in `on`; false when undefined.
bool aggregate_value(GAggregate const &agg, std::vector<char> const &on, Rational &value) {
    bool any = false;
    Rational acc = agg.fn == AggregateFn::Times ? Rational(1) : Rational(0);
    for (std::size_t i = 0; i < agg.elements.size(); ++i) {
        if (!on[i]) { continue; }
        auto const &item = agg.elements[i].item;
        switch (agg.fn) {
            case AggregateFn::Sum: acc += item.number(); break;
            case AggregateFn::Times: acc *= item.number(); break;
            case AggregateFn::Count: acc += 1; break;
            case AggregateFn::Min:
                if (!any || item.number() < acc) { acc = item.number(); }
                break;
            case AggregateFn::Max:
                if (!any || item.number() > acc) { acc = item.number(); }
                break;
        }
        any = true;
    }
    if (!any && (agg.fn == AggregateFn::Min || agg.fn == AggregateFn::Max)) { return false; }
    value = acc;
    return true;
}

bool aggregate_true(GAggregate const &agg, std::vector<char> const &on) {
    Rational v;
    bool holds = aggregate_value(agg, on, v) && compare_with(agg.cmp, v, agg.guard);
    return agg.negated ? !holds : holds;
}

bool body_true(GRule const &r, Mask const &m) {
    for (int a : r.pos) {
        if (!m[a]) { return false; }
    }
    for (int a : r.neg) {
        if (m[a]) { return false; }
    }
    std::vector<char> on;
    for (auto const &agg : r.aggs) {
        on.assign(agg.elements.size(), 0);
        for (std::size_t i = 0; i < agg.elements.size(); ++i) {
            on[i] = std::all_of(agg.elements[i].conj.begin(), agg.elements[i].conj.end(), [&](int a) { return m[a] != 0; });
        }
        if (!aggregate_true(agg, on)) { return false; }
    }
    return true;
}

bool head_true(GRule const &r, Mask const &m) {
    return std::any_of(r.head.begin(), r.head.end(), [&](int a) { return m[a] != 0; });
}

// Some subset of the elements whose conjunctions are possible satisfies the
// positive aggregate (assumed true past 16 such elements).
bool aggregate_possible(GAggregate const &agg, Mask const &possible) {
    if (agg.negated) { return true; }
    std::vector<std::size_t> cand;
    for (std::size_t i = 0; i < agg.elements.size(); ++i) {
        auto const &c = agg.elements[i].conj;
        if (std::all_of(c.begin(), c.end(), [&](int a) { return possible[a] != 0; })) { cand.push_back(i); }
    }
    if (cand.size() > 16) { return true; }
    std::vector<char> on(agg.elements.size(), 0);
    for (std::uint32_t s = 0; s < (1u << cand.size()); ++s) {
        for (std::size_t j = 0; j < cand.size(); ++j) { on[cand[j]] = (s >> j) & 1u; }
        if (aggregate_true(agg, on)) { return true; }
    }
    return false;
}

} // namespace

std::vector<ClassicalAnswerSet> classical_oracle(ClassicalProgram const &program, ClassicalOracleOptions const &options) {
    Instantiator inst(program, options.max_instances);
    auto rules = inst.run();
    auto const &atoms = inst.atoms();

    Mask possible(atoms.size(), 0);
    for (bool changed = true; changed;) {
        changed = false;
        for (auto const &r : rules) {
            if (!std::all_of(r.pos.begin(), r.pos.end(), [&](int a) { return possible[a] != 0; })) { continue; }
            if (!std::all_of(r.aggs.begin(), r.aggs.end(), [&](auto const &g) { return aggregate_possible(g, possible); })) {
                continue;
            }
            for (int h : r.head) {
                if (!possible[h]) {
                    possible[h] = 1;
                    changed = true;
                }
            }
        }
    }
    std::vector<int> free;
    for (std::size_t a = 0; a < atoms.size(); ++a) {
        if (possible[a]) { free.push_back(static_cast<int>(a)); }
    }
    if (free.size() > options.max_atoms) {
        throw Error(ErrorKind::OracleSpaceOverflow, "classical oracle: " + std::to_string(free.size()) +
                                                        " candidate atoms exceed the limit of " +
                                                        std::to_string(options.max_atoms));
    }
    std::vector<GRule> live;
    for (auto &r : rules) {
        if (std::all_of(r.pos.begin(), r.pos.end(), [&](int a) { return possible[a] != 0; })) { live.push_back(std::move(r)); }
    }

    std::vector<ClassicalAnswerSet> out;
    Mask m(atoms.size(), 0), n(atoms.size(), 0);
    std::uint64_t const total = std::uint64_t{1} << free.size();
    for (std::uint64_t s = 0; s < total; ++s) {
        for (std::size_t j = 0; j < free.size(); ++j) { m[free[j]] = (s >> j) & 1u; }
        std::vector<GRule const *> reduct;
        bool model = true;
        for (auto const &r : live) {
            if (!body_true(r, m)) { continue; }
            if (!head_true(r, m)) {
                model = false;
                break;
            }
            reduct.push_back(&r);
        }
        if (!model) { continue; }
        bool minimal = true;
        // proper subsets of s
        for (std::uint64_t t = (s - 1) & s; minimal && t != s; t = (t - 1) & s) {
            for (std::size_t j = 0; j < free.size(); ++j) { n[free[j]] = (t >> j) & 1u; }
            bool sub_model = std::all_of(reduct.begin(), reduct.end(),
                                         [&](GRule const *r) { return !body_true(*r, n) || head_true(*r, n); });
            if (sub_model) { minimal = false; }
            if (t == 0) { break; }
        }
        if (!minimal) { continue; }
        ClassicalAnswerSet as;
        for (int a : free) {
            if (m[a]) { as.insert(atoms[a]); }
        }
        out.push_back(std::move(as));
    }
    std::sort(out.begin(), out.end(),
              [](ClassicalAnswerSet const &a, ClassicalAnswerSet const &b) { return to_string(a) < to_string(b); });
    return out;
}

} // namespace fasolve
