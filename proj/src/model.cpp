#include "fasolve/model.hpp"
#include "fasolve/error.hpp"

#include <algorithm>
#include <array>

namespace fasolve {

char const *to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidGrade: return "InvalidGrade";
        case ErrorKind::UnboundAnnotationVariable: return "UnboundAnnotationVariable";
        case ErrorKind::ArityMismatch: return "ArityMismatch";
        case ErrorKind::UnsafeRule: return "UnsafeRule";
        case ErrorKind::UngroundGuard: return "UngroundGuard";
        case ErrorKind::GuardTypeMismatch: return "GuardTypeMismatch";
        case ErrorKind::FunctionDepthExceeded: return "FunctionDepthExceeded";
        case ErrorKind::GroundingOverflow: return "GroundingOverflow";
        case ErrorKind::LatticeOverflow: return "LatticeOverflow";
        case ErrorKind::CandidateSpaceOverflow: return "CandidateSpaceOverflow";
        case ErrorKind::OracleSpaceOverflow: return "OracleSpaceOverflow";
        case ErrorKind::NonBooleanGrade: return "NonBooleanGrade";
    }
    return "Error";
}

bool Error::is_overflow() const noexcept {
    switch (kind_) {
        case ErrorKind::GroundingOverflow:
        case ErrorKind::LatticeOverflow:
        case ErrorKind::CandidateSpaceOverflow:
        case ErrorKind::OracleSpaceOverflow: return true;
        default: return false;
    }
}

std::string SourceSpan::to_string() const {
    return (file.empty() ? std::string("<input>") : file) + ":" + std::to_string(line) + ":" + std::to_string(column);
}

// {{{ Term

Term Term::number(Rational value) {
    Term t;
    t.kind_ = Kind::Number;
    t.number_ = std::move(value);
    t.number_.canonicalize();
    return t;
}

Term Term::symbol(std::string name) {
    Term t;
    t.kind_ = Kind::Symbol;
    t.name_ = std::move(name);
    return t;
}

Term Term::variable(std::string name) {
    Term t;
    t.kind_ = Kind::Variable;
    t.name_ = std::move(name);
    return t;
}

Term Term::function(std::string name, std::vector<Term> args) {
    Term t;
    t.kind_ = Kind::Function;
    t.name_ = std::move(name);
    t.args_ = std::move(args);
    return t;
}

bool Term::is_ground() const {
    switch (kind_) {
        case Kind::Variable: return false;
        case Kind::Function: return std::all_of(args_.begin(), args_.end(), [](Term const &t) { return t.is_ground(); });
        default: return true;
    }
}

unsigned Term::depth() const {
    if (kind_ != Kind::Function) { return 0; }
    unsigned d = 0;
    for (auto const &a : args_) { d = std::max(d, a.depth()); }
    return d + 1;
}

void Term::collect_variables(std::set<std::string> &out) const {
    if (kind_ == Kind::Variable) { out.insert(name_); }
    for (auto const &a : args_) { a.collect_variables(out); }
}

Term Term::substitute(Substitution const &sub) const {
    switch (kind_) {
        case Kind::Variable: {
            auto it = sub.find(name_);
            return it == sub.end() ? *this : it->second;
        }
        case Kind::Function: {
            std::vector<Term> args;
            args.reserve(args_.size());
            for (auto const &a : args_) { args.push_back(a.substitute(sub)); }
            return function(name_, std::move(args));
        }
        default: return *this;
    }
}

std::string Term::to_string() const {
    switch (kind_) {
        case Kind::Number: return format_rational(number_);
        case Kind::Function: {
            std::string out = name_ + "(";
            for (std::size_t i = 0; i < args_.size(); ++i) {
                if (i) { out += ","; }
                out += args_[i].to_string();
            }
            return out + ")";
        }
        default: return name_;
    }
}

bool operator==(Term const &a, Term const &b) { return (a <=> b) == 0; }

std::strong_ordering operator<=>(Term const &a, Term const &b) {
    // numbers < symbols < function terms < variables
    if (a.kind_ != b.kind_) { return a.kind_ <=> b.kind_; }
    switch (a.kind_) {
        case Term::Kind::Number: return compare(a.number_, b.number_);
        case Term::Kind::Function: {
            if (auto c = a.name_ <=> b.name_; c != 0) { return c; }
            if (auto c = a.args_.size() <=> b.args_.size(); c != 0) { return c; }
            return std::lexicographical_compare_three_way(a.args_.begin(), a.args_.end(), b.args_.begin(), b.args_.end());
        }
        default: return a.name_ <=> b.name_;
    }
}

// }}}
// {{{ Annotation

namespace {

constexpr std::array<BuiltinInfo, 6> builtins{{
    {BuiltinOp::Min, "min", 2},
    {BuiltinOp::Max, "max", 2},
    {BuiltinOp::Prod, "prod", 2},
    {BuiltinOp::BSum, "bsum", 2},
    {BuiltinOp::Comp, "comp", 1},
    {BuiltinOp::Avg, "avg", 2},
}};

} // namespace

std::span<BuiltinInfo const> builtin_library() { return builtins; }

std::optional<BuiltinOp> find_builtin(std::string_view name) {
    for (auto const &b : builtins) {
        if (name == b.name) { return b.op; }
    }
    return std::nullopt;
}

BuiltinInfo const &builtin_info(BuiltinOp op) { return builtins[static_cast<std::size_t>(op)]; }

Grade apply_builtin(BuiltinOp op, std::span<Grade const> args) {
    auto const &info = builtin_info(op);
    if (args.size() != info.arity) {
        throw Error(ErrorKind::ArityMismatch, std::string("annotation function ") + info.name + " expects " +
                                                  std::to_string(info.arity) + " argument(s), got " +
                                                  std::to_string(args.size()));
    }
    switch (op) {
        case BuiltinOp::Min: return meet(args[0], args[1]);
        case BuiltinOp::Max: return join(args[0], args[1]);
        case BuiltinOp::Prod: return Grade{args[0].value() * args[1].value()};
        case BuiltinOp::BSum: {
            Rational s = args[0].value() + args[1].value();
            return s > 1 ? Grade::one() : Grade{s};
        }
        case BuiltinOp::Comp: return Grade{1 - args[0].value()};
        case BuiltinOp::Avg: return Grade{(args[0].value() + args[1].value()) / 2};
    }
    return Grade::zero();
}

Annotation Annotation::constant(Grade value) {
    Annotation a;
    a.value_ = std::move(value);
    return a;
}

Annotation Annotation::variable(std::string name) {
    Annotation a;
    a.kind_ = Kind::Variable;
    a.name_ = std::move(name);
    return a;
}

Annotation Annotation::function(BuiltinOp op, std::vector<Annotation> args) {
    auto const &info = builtin_info(op);
    if (args.size() != info.arity) {
        throw Error(ErrorKind::ArityMismatch, std::string("annotation function ") + info.name + " expects " +
                                                  std::to_string(info.arity) + " argument(s), got " +
                                                  std::to_string(args.size()));
    }
    Annotation a;
    a.kind_ = Kind::Function;
    a.op_ = op;
    a.args_ = std::move(args);
    return a;
}

bool Annotation::is_ground() const {
    switch (kind_) {
        case Kind::Constant: return true;
        case Kind::Variable: return false;
        case Kind::Function: return std::all_of(args_.begin(), args_.end(), [](auto const &a) { return a.is_ground(); });
    }
    return true;
}

void Annotation::collect_variables(std::set<std::string> &out) const {
    if (kind_ == Kind::Variable) { out.insert(name_); }
    for (auto const &a : args_) { a.collect_variables(out); }
}

std::string Annotation::to_string() const {
    switch (kind_) {
        case Kind::Constant: return value_.to_string();
        case Kind::Variable: return name_;
        case Kind::Function: {
            std::string out = std::string(builtin_info(op_).name) + "(";
            for (std::size_t i = 0; i < args_.size(); ++i) {
                if (i) { out += ","; }
                out += args_[i].to_string();
            }
            return out + ")";
        }
    }
    return {};
}

bool operator==(Annotation const &a, Annotation const &b) { return (a <=> b) == 0; }

std::strong_ordering operator<=>(Annotation const &a, Annotation const &b) {
    if (a.kind_ != b.kind_) { return a.kind_ <=> b.kind_; }
    switch (a.kind_) {
        case Annotation::Kind::Constant: return a.value_ <=> b.value_;
        case Annotation::Kind::Variable: return a.name_ <=> b.name_;
        case Annotation::Kind::Function: {
            if (auto c = a.op_ <=> b.op_; c != 0) { return c; }
            return std::lexicographical_compare_three_way(a.args_.begin(), a.args_.end(), b.args_.begin(), b.args_.end());
        }
    }
    return std::strong_ordering::equal;
}

Grade eval_annotation(Annotation const &ann, AnnotationBinding const &binding) {
    switch (ann.kind()) {
        case Annotation::Kind::Constant: return ann.value();
        case Annotation::Kind::Variable: {
            auto it = binding.find(ann.name());
            if (it == binding.end()) {
                throw Error(ErrorKind::UnboundAnnotationVariable, "annotation variable " + ann.name() + " is unbound");
            }
            return it->second;
        }
        case Annotation::Kind::Function: {
            std::vector<Grade> args;
            args.reserve(ann.args().size());
            for (auto const &a : ann.args()) { args.push_back(eval_annotation(a, binding)); }
            return apply_builtin(ann.op(), args);
        }
    }
    return Grade::zero();
}

// }}}
// {{{ Atoms, sets, rules

bool Atom::is_ground() const {
    return std::all_of(args.begin(), args.end(), [](Term const &t) { return t.is_ground(); });
}

Atom Atom::substitute(Substitution const &sub) const {
    Atom out{predicate, {}};
    out.args.reserve(args.size());
    for (auto const &a : args) { out.args.push_back(a.substitute(sub)); }
    return out;
}

void Atom::collect_variables(std::set<std::string> &out) const {
    for (auto const &a : args) { a.collect_variables(out); }
}

std::string Atom::to_string() const {
    if (args.empty()) { return predicate; }
    std::string out = predicate + "(";
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) { out += ","; }
        out += args[i].to_string();
    }
    return out + ")";
}

std::strong_ordering operator<=>(Atom const &a, Atom const &b) {
    if (auto c = a.predicate <=> b.predicate; c != 0) { return c; }
    if (auto c = a.args.size() <=> b.args.size(); c != 0) { return c; }
    return std::lexicographical_compare_three_way(a.args.begin(), a.args.end(), b.args.begin(), b.args.end());
}

std::string AnnotatedAtom::to_string() const { return atom.to_string() + " : " + annotation.to_string(); }

bool SetElement::is_ground() const {
    return item.is_ground() &&
           std::all_of(conjunction.begin(), conjunction.end(), [](auto const &a) { return a.atom.is_ground(); });
}

void SetElement::collect_object_variables(std::set<std::string> &out) const {
    item.collect_variables(out);
    for (auto const &a : conjunction) { a.atom.collect_variables(out); }
}

bool FuzzySet::is_ground() const {
    return std::all_of(elements.begin(), elements.end(), [](auto const &e) { return e.is_ground(); });
}

char const *to_string(AggregateFn fn) {
    switch (fn) {
        case AggregateFn::Sum: return "sum_f";
        case AggregateFn::Times: return "times_f";
        case AggregateFn::Min: return "min_f";
        case AggregateFn::Max: return "max_f";
        case AggregateFn::Count: return "count_f";
    }
    return "";
}

char const *to_string(CmpOp op) {
    switch (op) {
        case CmpOp::Eq: return "=";
        case CmpOp::Ne: return "!=";
        case CmpOp::Lt: return "<";
        case CmpOp::Gt: return ">";
        case CmpOp::Le: return "<=";
        case CmpOp::Ge: return ">=";
    }
    return "";
}

bool compare_with(CmpOp op, Rational const &lhs, Rational const &rhs) {
    int c = cmp(lhs, rhs);
    switch (op) {
        case CmpOp::Eq: return c == 0;
        case CmpOp::Ne: return c != 0;
        case CmpOp::Lt: return c < 0;
        case CmpOp::Gt: return c > 0;
        case CmpOp::Le: return c <= 0;
        case CmpOp::Ge: return c >= 0;
    }
    return false;
}

bool Rule::is_ground() const {
    for (auto const &h : head) {
        if (!h.atom.is_ground()) { return false; }
    }
    for (auto const &lit : body) {
        if (lit.is_aggregate()) {
            auto const &agg = lit.aggregate();
            if (!agg.guard.is_ground() || !agg.set.is_ground()) { return false; }
        }
        else if (!lit.atom().atom.is_ground()) {
            return false;
        }
    }
    return true;
}

bool Program::is_ground() const {
    return std::all_of(rules.begin(), rules.end(), [](Rule const &r) { return r.is_ground(); });
}

// }}}
// {{{ Interpretation

Interpretation::Interpretation(std::initializer_list<std::pair<Atom const, Grade>> init) {
    for (auto const &[atom, grade] : init) { set(atom, grade); }
}

Grade const &Interpretation::operator()(Atom const &atom) const {
    static Grade const zero;
    auto it = grades_.find(atom);
    return it == grades_.end() ? zero : it->second;
}

void Interpretation::set(Atom const &atom, Grade grade) {
    if (grade.is_zero()) { grades_.erase(atom); }
    else { grades_.insert_or_assign(atom, std::move(grade)); }
}

std::vector<std::pair<std::string, Grade>> Interpretation::sorted_entries() const {
    std::vector<std::pair<std::string, Grade>> out;
    out.reserve(grades_.size());
    for (auto const &[atom, grade] : grades_) { out.emplace_back(atom.to_string(), grade); }
    std::sort(out.begin(), out.end());
    return out;
}

std::string Interpretation::to_string() const {
    auto entries = sorted_entries();
    if (entries.empty()) { return "{ }"; }
    std::string out = "{ ";
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (i) { out += ", "; }
        out += entries[i].first + ":" + entries[i].second.to_string();
    }
    return out + " }";
}

bool interp_leq(Interpretation const &i1, Interpretation const &i2) {
    // atoms outside i1's support are 0 and trivially below i2
    for (auto const &[atom, grade] : i1.entries()) {
        if (grade > i2(atom)) { return false; }
    }
    return true;
}

bool interp_lt(Interpretation const &i1, Interpretation const &i2) { return interp_leq(i1, i2) && !(i1 == i2); }

bool interp_before(Interpretation const &i1, Interpretation const &i2) {
    return i1.sorted_entries() < i2.sorted_entries();
}

// }}}

} // namespace fasolve
