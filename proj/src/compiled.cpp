#include "compiled.hpp"
#include "fasolve/error.hpp"

#include <algorithm>
#include <set>

namespace fasolve::detail {

AtomId AtomTable::intern(Atom const &atom) {
    auto [it, inserted] = index_.emplace(atom, static_cast<AtomId>(atoms_.size()));
    if (inserted) { atoms_.push_back(atom); }
    return it->second;
}

std::optional<AtomId> AtomTable::find(Atom const &atom) const {
    auto it = index_.find(atom);
    if (it == index_.end()) { return std::nullopt; }
    return it->second;
}

namespace {

struct SlotScope {
    std::map<std::string, std::uint32_t> const *outer = nullptr;
    std::map<std::string, std::uint32_t> local;
};

class RuleCompiler {
public:
    RuleCompiler(Rule const &rule, AtomTable &atoms)
    : rule_(rule), atoms_(atoms) { }

    CRule run() {
        collect_rule_vars();
        CRule out;
        std::vector<char> bound(rule_slots_.size(), 0);
        // binders first, in body order
        for (auto const &lit : rule_.body) {
            if (lit.is_aggregate() || lit.negated) { continue; }
            auto const &a = lit.atom();
            CAtomLit c = atom_lit(a, rule_slots_);
            if (a.annotation.is_variable() && !bound[c.ann.slot]) {
                c.binds = true;
                bound[c.ann.slot] = 1;
            }
            out.pos.push_back(std::move(c));
        }
        bound_ = bound;
        for (auto const &c : out.pos) {
            if (!c.binds) { require_bound(c.ann); }
        }
        for (auto const &h : rule_.head) {
            out.head.push_back(atom_lit(h, rule_slots_));
            require_bound(out.head.back().ann);
        }
        next_slot_ = static_cast<std::uint32_t>(rule_slots_.size());
        for (auto const &lit : rule_.body) {
            if (lit.is_aggregate()) {
                auto agg = aggregate(lit.aggregate());
                (lit.negated ? out.neg_aggs : out.pos_aggs).push_back(std::move(agg));
            }
            else if (lit.negated) {
                out.neg.push_back(atom_lit(lit.atom(), rule_slots_));
                require_bound(out.neg.back().ann);
            }
        }
        out.rule_slots = static_cast<std::uint32_t>(rule_slots_.size());
        out.slot_names.resize(rule_slots_.size());
        for (auto const &[name, slot] : rule_slots_) { out.slot_names[slot] = name; }
        out.slots = next_slot_;
        return out;
    }

private:
    void collect_rule_vars() {
        std::set<std::string> vars;
        for (auto const &h : rule_.head) { h.annotation.collect_variables(vars); }
        for (auto const &lit : rule_.body) {
            if (lit.is_aggregate()) { lit.aggregate().annotation.collect_variables(vars); }
            else { lit.atom().annotation.collect_variables(vars); }
        }
        for (auto const &v : vars) {
            rule_slots_.emplace(v, static_cast<std::uint32_t>(rule_slots_.size()));
        }
    }

    CAnn ann(Annotation const &a, std::map<std::string, std::uint32_t> const &slots) {
        CAnn out;
        switch (a.kind()) {
            case Annotation::Kind::Constant:
                out.value = a.value();
                break;
            case Annotation::Kind::Variable: {
                out.kind = CAnn::Kind::Slot;
                auto it = slots.find(a.name());
                if (it == slots.end()) { unbound(a.name()); }
                out.slot = it->second;
                break;
            }
            case Annotation::Kind::Function:
                out.kind = CAnn::Kind::Function;
                out.op = a.op();
                for (auto const &arg : a.args()) { out.args.push_back(ann(arg, slots)); }
                break;
        }
        return out;
    }

    CAtomLit atom_lit(AnnotatedAtom const &a, std::map<std::string, std::uint32_t> const &slots) {
        CAtomLit out;
        out.atom = atoms_.intern(a.atom);
        out.ann = ann(a.annotation, slots);
        return out;
    }

    void require_bound(CAnn const &a) const {
        if (a.kind == CAnn::Kind::Slot && (a.slot >= bound_.size() || !bound_[a.slot])) { unbound_slot(a.slot); }
        for (auto const &arg : a.args) { require_bound(arg); }
    }

    [[noreturn]] void unbound_slot(std::uint32_t slot) const {
        for (auto const &[name, s] : rule_slots_) {
            if (s == slot) { unbound(name); }
        }
        unbound("?");
    }

    [[noreturn]] void unbound(std::string const &name) const {
        throw Error(ErrorKind::UnboundAnnotationVariable,
                    rule_.span.to_string() + ": annotation variable " + name + " has no positive body binder");
    }

    CAggregate aggregate(AggregateAtom const &a) {
        CAggregate out;
        out.fn = a.fn;
        out.cmp = a.cmp;
        out.guard = a.guard;
        out.ann = ann(a.annotation, rule_slots_);
        require_bound(out.ann);
        for (auto const &el : a.set.elements) { out.pairs.push_back(pair(el)); }
        return out;
    }

    CPair pair(SetElement const &el) {
        CPair out;
        out.item = el.item;
        std::map<std::string, std::uint32_t> slots = rule_slots_;
        std::set<std::string> vars;
        el.grade.collect_variables(vars);
        for (auto const &c : el.conjunction) { c.annotation.collect_variables(vars); }
        for (auto const &v : vars) {
            if (!rule_slots_.count(v)) {
                slots.emplace(v, next_slot_);
                out.local_slots.push_back(next_slot_++);
            }
        }
        std::vector<char> saved = bound_;
        bound_.resize(next_slot_, 0);
        for (auto const &c : el.conjunction) {
            CAtomLit lit = atom_lit(c, slots);
            if (c.annotation.is_variable() && !bound_[lit.ann.slot]) {
                lit.binds = true;
                bound_[lit.ann.slot] = 1;
            }
            out.conj.push_back(std::move(lit));
        }
        for (auto const &c : out.conj) {
            if (!c.binds) { require_bound(c.ann); }
        }
        out.grade = ann(el.grade, slots);
        require_bound(out.grade);
        bound_ = std::move(saved);
        return out;
    }

    Rule const &rule_;
    AtomTable &atoms_;
    std::map<std::string, std::uint32_t> rule_slots_;
    std::vector<char> bound_;
    std::uint32_t next_slot_ = 0;
};

bool conj_holds(CPair const &pair, GradeView interp, Binding &binding) {
    for (auto s : pair.local_slots) { binding.bound[s] = 0; }
    for (auto const &c : pair.conj) {
        if (c.binds) { binding.bind(c.ann.slot, interp[c.atom]); }
    }
    Grade scratch;
    for (auto const &c : pair.conj) {
        if (!c.binds && !(eval(c.ann, binding, scratch) <= interp[c.atom])) { return false; }
    }
    return true;
}

[[noreturn]] void non_numeric(AggregateFn fn, Term const &item) {
    throw Error(ErrorKind::GuardTypeMismatch,
                std::string("aggregate ") + to_string(fn) + " over non-numeric item " + item.to_string());
}

AggResult empty_result(AggregateFn fn) {
    switch (fn) {
        case AggregateFn::Sum: return AggResult::of(0, Grade::one());
        case AggregateFn::Times: return AggResult::of(1, Grade::one());
        case AggregateFn::Count: return AggResult::of(0, Grade::one());
        default: return AggResult::bottom();
    }
}

void accumulate(AggregateFn fn, Rational &value, Rational const &x, bool first) {
    if (first) {
        value = fn == AggregateFn::Count ? Rational(1) : x;
        return;
    }
    switch (fn) {
        case AggregateFn::Sum: value += x; break;
        case AggregateFn::Times: value *= x; break;
        case AggregateFn::Min: if (x < value) { value = x; } break;
        case AggregateFn::Max: if (x > value) { value = x; } break;
        case AggregateFn::Count: value += 1; break;
    }
}

Rational const &item_value(AggregateFn fn, Term const &item) {
    static Rational const unit(1);
    if (fn == AggregateFn::Count) { return unit; }
    if (!item.is_number()) { non_numeric(fn, item); }
    return item.number();
}

// Some subset of the pairs in `possible` yields an aggregate value satisfying the guard.
bool some_subset_satisfies(CAggregate const &agg, std::vector<CPair const *> const &possible) {
    if (!agg.guard.is_number()) {
        throw Error(ErrorKind::GuardTypeMismatch, "aggregate guard " + agg.guard.to_string() + " is not numeric");
    }
    constexpr std::size_t max_exact = 12;
    if (possible.size() > max_exact) { return true; }
    std::uint32_t subsets = 1u << possible.size();
    Rational value;
    for (std::uint32_t mask = 0; mask < subsets; ++mask) {
        bool first = true;
        for (std::size_t i = 0; i < possible.size(); ++i) {
            if (mask & (1u << i)) {
                accumulate(agg.fn, value, item_value(agg.fn, possible[i]->item), first);
                first = false;
            }
        }
        if (first) {
            auto r = empty_result(agg.fn);
            if (r.defined && compare_with(agg.cmp, r.value, agg.guard.number())) { return true; }
        }
        else if (compare_with(agg.cmp, value, agg.guard.number())) {
            return true;
        }
    }
    return false;
}

bool pair_possible(CPair const &pair, ValueSets const &values, Binding &binding) {
    std::size_t combos = 1;
    for (auto const &c : pair.conj) {
        combos *= values[c.atom].size();
        if (combos > 4096) { return true; }
    }
    std::vector<Grade> interp_buf;
    std::vector<std::size_t> idx(pair.conj.size(), 0);
    // Only conjunct atoms are read; evaluate against a sparse view.
    AtomId max_atom = 0;
    for (auto const &c : pair.conj) { max_atom = std::max(max_atom, c.atom); }
    interp_buf.resize(pair.conj.empty() ? 0 : max_atom + 1);
    for (;;) {
        for (std::size_t i = 0; i < pair.conj.size(); ++i) {
            interp_buf[pair.conj[i].atom] = values[pair.conj[i].atom][idx[i]];
        }
        if (conj_holds(pair, interp_buf, binding)) {
            Grade scratch;
            if (!eval(pair.grade, binding, scratch).is_zero()) { return true; }
        }
        std::size_t i = 0;
        for (; i < idx.size(); ++i) {
            if (++idx[i] < values[pair.conj[i].atom].size()) { break; }
            idx[i] = 0;
        }
        if (i == idx.size()) { return false; }
    }
}

bool aggregate_possible(CAggregate const &agg, ValueSets const &values, Binding &binding) {
    std::vector<CPair const *> possible;
    for (auto const &pair : agg.pairs) {
        if (pair_possible(pair, values, binding)) { possible.push_back(&pair); }
    }
    return some_subset_satisfies(agg, possible);
}

} // namespace

CompiledProgram compile(std::span<Rule const> rules, AtomTable atoms) {
    CompiledProgram out;
    out.atoms = std::move(atoms);
    out.rules.reserve(rules.size());
    for (auto const &rule : rules) { out.rules.push_back(RuleCompiler(rule, out.atoms).run()); }
    return out;
}

Grade const &eval(CAnn const &ann, Binding const &binding, Grade &scratch) {
    switch (ann.kind) {
        case CAnn::Kind::Constant: return ann.value;
        case CAnn::Kind::Slot:
            if (!binding.bound[ann.slot]) {
                throw Error(ErrorKind::UnboundAnnotationVariable, "annotation variable is unbound at evaluation");
            }
            return binding.values[ann.slot];
        case CAnn::Kind::Function: {
            std::vector<Grade> args;
            args.reserve(ann.args.size());
            for (auto const &a : ann.args) {
                Grade tmp;
                args.push_back(eval(a, binding, tmp));
            }
            scratch = apply_builtin(ann.op, args);
            return scratch;
        }
    }
    return scratch;
}

AggResult eval_aggregate(CAggregate const &agg, GradeView interp, Binding &binding) {
    bool first = true;
    Rational value;
    Grade grade = Grade::one();
    Grade scratch;
    for (auto const &pair : agg.pairs) {
        if (!conj_holds(pair, interp, binding)) { continue; }
        Grade const &g = eval(pair.grade, binding, scratch);
        if (g.is_zero()) { continue; }
        if (g < grade) { grade = g; }
        accumulate(agg.fn, value, item_value(agg.fn, pair.item), first);
        first = false;
    }
    if (first) { return empty_result(agg.fn); }
    return AggResult::of(std::move(value), std::move(grade));
}

bool aggregate_holds(CAggregate const &agg, GradeView interp, Binding &binding, bool negated) {
    if (!agg.guard.is_number()) {
        throw Error(ErrorKind::GuardTypeMismatch, "aggregate guard " + agg.guard.to_string() + " is not numeric");
    }
    AggResult r = eval_aggregate(agg, interp, binding);
    Grade scratch;
    bool positive = r.defined && compare_with(agg.cmp, r.value, agg.guard.number()) &&
                    eval(agg.ann, binding, scratch) <= r.grade;
    return negated ? !positive : positive;
}

bool body_holds(CRule const &rule, GradeView interp, Binding &binding) {
    binding.reset(rule.slots);
    for (auto const &c : rule.pos) {
        if (c.binds) { binding.bind(c.ann.slot, interp[c.atom]); }
    }
    Grade scratch;
    for (auto const &c : rule.pos) {
        if (!c.binds && !(eval(c.ann, binding, scratch) <= interp[c.atom])) { return false; }
    }
    for (auto const &c : rule.neg) {
        if (eval(c.ann, binding, scratch) <= interp[c.atom]) { return false; }
    }
    for (auto const &a : rule.pos_aggs) {
        if (!aggregate_holds(a, interp, binding, false)) { return false; }
    }
    for (auto const &a : rule.neg_aggs) {
        if (!aggregate_holds(a, interp, binding, true)) { return false; }
    }
    return true;
}

int satisfied_head(CRule const &rule, GradeView interp, Binding const &binding) {
    Grade scratch;
    for (std::size_t i = 0; i < rule.head.size(); ++i) {
        auto const &h = rule.head[i];
        if (eval(h.ann, binding, scratch) <= interp[h.atom]) { return static_cast<int>(i); }
    }
    return -1;
}

void possible_bindings(CRule const &rule, ValueSets const &values, std::size_t combo_cap,
                       std::function<void(Binding const &)> const &visit) {
    std::vector<CAtomLit const *> binders;
    std::size_t combos = 1;
    for (auto const &c : rule.pos) {
        if (!c.binds) { continue; }
        binders.push_back(&c);
        combos *= values[c.atom].size();
        if (combos > combo_cap) {
            throw Error(ErrorKind::LatticeOverflow, "annotation binding combinations exceed " + std::to_string(combo_cap));
        }
    }
    Binding binding;
    binding.reset(rule.slots);
    std::vector<std::size_t> idx(binders.size(), 0);
    Grade scratch;
    for (;;) {
        for (std::size_t i = 0; i < binders.size(); ++i) {
            binding.bind(binders[i]->ann.slot, values[binders[i]->atom][idx[i]]);
        }
        bool ok = true;
        for (auto const &c : rule.pos) {
            if (!c.binds && !(eval(c.ann, binding, scratch) <= values[c.atom].back())) {
                ok = false;
                break;
            }
        }
        for (std::size_t i = 0; ok && i < rule.neg.size(); ++i) {
            auto const &c = rule.neg[i];
            if (eval(c.ann, binding, scratch) <= values[c.atom].front()) { ok = false; }
        }
        for (std::size_t i = 0; ok && i < rule.pos_aggs.size(); ++i) {
            if (!aggregate_possible(rule.pos_aggs[i], values, binding)) { ok = false; }
        }
        if (ok) { visit(binding); }
        std::size_t i = 0;
        for (; i < idx.size(); ++i) {
            if (++idx[i] < values[binders[i]->atom].size()) { break; }
            idx[i] = 0;
        }
        if (i == idx.size()) { return; }
    }
}

void insert_sorted(std::vector<Grade> &values, Grade const &g) {
    auto it = std::lower_bound(values.begin(), values.end(), g);
    if (it == values.end() || !(*it == g)) { values.insert(it, g); }
}

} // namespace fasolve::detail
