#pragma once

// Atom-indexed form of a ground program shared by the lattice builder and the solver.

#include "fasolve/aggregate.hpp"
#include "fasolve/model.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <vector>

namespace fasolve::detail {

using AtomId = std::uint32_t;

class AtomTable {
public:
    AtomId intern(Atom const &atom);
    std::optional<AtomId> find(Atom const &atom) const;
    Atom const &atom(AtomId id) const { return atoms_[id]; }
    std::size_t size() const noexcept { return atoms_.size(); }

private:
    std::vector<Atom> atoms_;
    std::map<Atom, AtomId> index_;
};

struct CAnn {
    enum class Kind : std::uint8_t { Constant, Slot, Function };
    Kind kind = Kind::Constant;
    Grade value;
    std::uint32_t slot = 0;
    BuiltinOp op = BuiltinOp::Min;
    std::vector<CAnn> args;
};

struct CAtomLit {
    AtomId atom = 0;
    CAnn ann;
    // First bare `a:V` occurrence in a positive position: V := I(a), no check needed.
    bool binds = false;
};

struct CPair {
    Term item;
    CAnn grade;
    std::vector<CAtomLit> conj;
    std::vector<std::uint32_t> local_slots;
};

struct CAggregate {
    AggregateFn fn = AggregateFn::Sum;
    std::vector<CPair> pairs;
    CmpOp cmp = CmpOp::Eq;
    Term guard;
    CAnn ann;
};

struct CRule {
    std::vector<CAtomLit> head;
    std::vector<CAtomLit> pos;
    std::vector<CAtomLit> neg;
    std::vector<CAggregate> pos_aggs;
    std::vector<CAggregate> neg_aggs;
    std::uint32_t slots = 0;
    std::uint32_t rule_slots = 0; // slots [0, rule_slots) are rule-level variables
    std::vector<std::string> slot_names; // names of the rule-level slots
};

struct CompiledProgram {
    AtomTable atoms;
    std::vector<CRule> rules;
};

// Throws Error(UnboundAnnotationVariable) for variables with no binder.
CompiledProgram compile(std::span<Rule const> rules, AtomTable atoms = {});

struct Binding {
    std::vector<Grade> values;
    std::vector<char> bound;

    void reset(std::uint32_t slots) {
        values.resize(slots);
        bound.assign(slots, 0);
    }
    void bind(std::uint32_t slot, Grade const &g) {
        values[slot] = g;
        bound[slot] = 1;
    }
};

// Grade interpretation indexed by AtomId.
using GradeView = std::span<Grade const>;

// Evaluates `ann`; returns a reference to a constant, a bound slot or `scratch`.
Grade const &eval(CAnn const &ann, Binding const &binding, Grade &scratch);

// Streams the aggregate over its pairs without materialising S_I.
AggResult eval_aggregate(CAggregate const &agg, GradeView interp, Binding &binding);
bool aggregate_holds(CAggregate const &agg, GradeView interp, Binding &binding, bool negated);

// Binds rule-level annotation variables and checks every body literal.
bool body_holds(CRule const &rule, GradeView interp, Binding &binding);
// Index of the first satisfied head disjunct under `binding`, or -1.
int satisfied_head(CRule const &rule, GradeView interp, Binding const &binding);

// Per-atom candidate grades, ascending and always containing 0.
using ValueSets = std::vector<std::vector<Grade>>;

// Calls `visit` with each rule-level binding drawn from `values` under which the
// body may be satisfiable by some interpretation over `values`. Over-approximates:
// negative literals are assumed satisfiable and positive aggregates are checked on
// item values only. Throws Error(LatticeOverflow) past `combo_cap` bindings.
void possible_bindings(CRule const &rule, ValueSets const &values, std::size_t combo_cap,
                       std::function<void(Binding const &)> const &visit);

void insert_sorted(std::vector<Grade> &values, Grade const &g);

} // namespace fasolve::detail
