#include "fasolve/oracle.hpp"
#include "fasolve/error.hpp"
#include "fasolve/grounder.hpp"
#include "fasolve/parser.hpp"
#include "fasolve/solver.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <unordered_map>

namespace fasolve {

// ---------------------------------------------------------------------------
// Generation

namespace {

class Generator {
public:
    explicit Generator(GeneratorConfig const &cfg) : cfg_(cfg), rng_(cfg.seed) {
        unsigned nr = cfg.max_atoms / 2;
        for (unsigned i = 0; i + nr < cfg.max_atoms; ++i) { pool_.push_back(Atom{"p" + std::to_string(i), {}}); }
        for (unsigned i = 1; i <= nr; ++i) { pool_.push_back(Atom{"r", {Term::number(i)}}); }
        nr_ = nr;
    }

    Program fuzzy() {
        Program out;
        unsigned n = cfg_.max_rules ? pick(1, cfg_.max_rules) : 0;
        for (unsigned i = 0; i < n; ++i) { out.rules.push_back(rule(false)); }
        return out;
    }

    ClassicalProgram classical() {
        ClassicalProgram out;
        unsigned n = cfg_.max_rules ? pick(1, cfg_.max_rules) : 0;
        for (unsigned i = 0; i < n; ++i) { out.rules.push_back(rule(true)); }
        return out;
    }

private:
    unsigned pick(unsigned lo, unsigned hi) { return std::uniform_int_distribution<unsigned>(lo, hi)(rng_); }
    bool chance(double p) { return p > 0 && std::uniform_real_distribution<double>(0, 1)(rng_) < p; }
    Grade const &pool_grade() { return cfg_.grade_pool[pick(0, cfg_.grade_pool.size() - 1)]; }
    Atom const &pool_atom() { return pool_[pick(0, pool_.size() - 1)]; }

    Annotation leaf(std::vector<std::string> const &bound) {
        if (!bound.empty() && chance(0.5)) { return Annotation::variable(bound[pick(0, bound.size() - 1)]); }
        return Annotation::constant(pool_grade());
    }

    Annotation annotation(std::vector<std::string> const &bound) {
        if (chance(cfg_.function_probability)) {
            std::vector<BuiltinInfo> lib;
            for (auto const &b : builtin_library()) {
                if (cfg_.nonmonotone_functions || b.op != BuiltinOp::Comp) { lib.push_back(b); }
            }
            auto const &info = lib[pick(0, lib.size() - 1)];
            std::vector<Annotation> args;
            for (unsigned i = 0; i < info.arity; ++i) { args.push_back(leaf(bound)); }
            return Annotation::function(info.op, std::move(args));
        }
        if (!bound.empty() && chance(cfg_.variable_probability)) {
            return Annotation::variable(bound[pick(0, bound.size() - 1)]);
        }
        return Annotation::constant(pool_grade());
    }

    AggregateAtom aggregate(bool classical, std::vector<std::string> const &bound) {
        AggregateAtom agg;
        agg.fn = static_cast<AggregateFn>(pick(0, 4));
        SetElement el;
        std::string n = std::to_string(++aggregates_);
        el.item = Term::variable("X" + n);
        AnnotatedAtom conj{Atom{"r", {Term::variable("X" + n)}}, {}, {}};
        if (!classical) {
            if (chance(0.5)) {
                el.grade = Annotation::variable("W" + n);
                conj.annotation = Annotation::variable("W" + n);
            }
            else {
                el.grade = Annotation::constant(pool_grade());
                conj.annotation = Annotation::constant(pool_grade());
            }
        }
        el.conjunction.push_back(std::move(conj));
        agg.set.elements.push_back(std::move(el));
        agg.cmp = static_cast<CmpOp>(pick(0, 5));
        agg.guard = Term::number(pick(0, nr_ + 1));
        if (!classical) { agg.annotation = annotation(bound); }
        return agg;
    }

    Rule rule(bool classical) {
        Rule r;
        aggregates_ = 0;
        std::vector<std::string> bound;
        unsigned nb = pick(0, cfg_.max_body_lits);
        for (unsigned i = 0; i < nb; ++i) {
            Literal lit;
            if (nr_ > 0 && chance(cfg_.aggregate_probability)) {
                lit.negated = chance(cfg_.negation_probability);
                lit.content = aggregate(classical, bound);
            }
            else {
                AnnotatedAtom a{pool_atom(), {}, {}};
                lit.negated = chance(cfg_.negation_probability);
                if (!classical) {
                    if (!lit.negated && chance(cfg_.variable_probability)) {
                        bound.push_back("V" + std::to_string(bound.size() + 1));
                        a.annotation = Annotation::variable(bound.back());
                    }
                    else {
                        a.annotation = Annotation::constant(pool_grade());
                    }
                }
                lit.content = std::move(a);
            }
            r.body.push_back(std::move(lit));
        }
        unsigned nh = pick(1, std::max(1u, std::min<unsigned>(cfg_.max_disjuncts, pool_.size())));
        std::vector<Atom> heads;
        while (heads.size() < nh) {
            auto const &a = pool_atom();
            if (std::find(heads.begin(), heads.end(), a) == heads.end()) { heads.push_back(a); }
        }
        for (auto &a : heads) {
            r.head.push_back(AnnotatedAtom{std::move(a), classical ? Annotation{} : annotation(bound), {}});
        }
        if (chance(cfg_.object_variable_probability)) { lift_variable(r); }
        return r;
    }

    // r(i) in the head and r(j) in a positive body atom both become r(Y).
    void lift_variable(Rule &r) {
        auto is_r = [](Atom const &a) { return a.predicate == "r"; };
        auto h = std::find_if(r.head.begin(), r.head.end(), [&](auto const &x) { return is_r(x.atom); });
        auto b = std::find_if(r.body.begin(), r.body.end(),
                              [&](auto const &l) { return !l.negated && !l.is_aggregate() && is_r(l.atom().atom); });
        if (h == r.head.end() || b == r.body.end()) { return; }
        h->atom.args = {Term::variable("Y")};
        std::get<AnnotatedAtom>(b->content).atom.args = {Term::variable("Y")};
    }

    GeneratorConfig const &cfg_;
    std::mt19937_64 rng_;
    std::vector<Atom> pool_;
    unsigned nr_ = 0;
    unsigned aggregates_ = 0;
};

} // namespace

Program generate_program(GeneratorConfig const &cfg) { return Generator(cfg).fuzzy(); }

ClassicalProgram generate_classical_program(GeneratorConfig const &cfg) { return Generator(cfg).classical(); }

// ---------------------------------------------------------------------------
// Brute-force oracle. Works on the AST with name-keyed bindings.

namespace {

using Env = std::map<std::string, Grade>;
using Values = std::vector<Grade>;

Grade value_of(Annotation const &ann, Env const &env) {
    switch (ann.kind()) {
        case Annotation::Kind::Constant: return ann.value();
        case Annotation::Kind::Variable: {
            auto it = env.find(ann.name());
            if (it == env.end()) {
                throw Error(ErrorKind::UnboundAnnotationVariable, "oracle: unbound annotation variable " + ann.name());
            }
            return it->second;
        }
        case Annotation::Kind::Function: {
            std::vector<Grade> args;
            for (auto const &a : ann.args()) { args.push_back(value_of(a, env)); }
            return apply_builtin(ann.op(), args);
        }
    }
    return Grade::zero();
}

bool uses_comp(Annotation const &ann) {
    if (!ann.is_function()) { return false; }
    if (ann.op() == BuiltinOp::Comp) { return true; }
    return std::any_of(ann.args().begin(), ann.args().end(), uses_comp);
}

bool nonzero_constant(Annotation const &ann) { return ann.is_constant() && !ann.value().is_zero(); }

class Checker {
public:
    explicit Checker(Program const &program) : program_(program) {
        for (auto const &rule : program.rules) {
            for (auto const &h : rule.head) { intern(h); }
            for (auto const &lit : rule.body) {
                if (!lit.is_aggregate()) {
                    intern(lit.atom());
                    continue;
                }
                for (auto const &el : lit.aggregate().set.elements) {
                    for (auto const &c : el.conjunction) { intern(c); }
                }
            }
        }
    }

    std::vector<Atom> const &atoms() const { return atoms_; }
    // Occurrences are resolved by address; the program outlives the checker.
    int at(AnnotatedAtom const &a) const { return occurrence_.at(&a); }

    std::vector<int> rule_atoms(Rule const &rule) const {
        std::vector<int> out;
        for (auto const &h : rule.head) { out.push_back(at(h)); }
        for (auto const &lit : rule.body) {
            if (!lit.is_aggregate()) {
                out.push_back(at(lit.atom()));
                continue;
            }
            for (auto const &el : lit.aggregate().set.elements) {
                for (auto const &c : el.conjunction) { out.push_back(at(c)); }
            }
        }
        return out;
    }

    bool aggregate_holds(AggregateAtom const &agg, Values const &I, Env const &env) const {
        std::vector<std::pair<Term, Grade>> s;
        for (auto const &el : agg.set.elements) {
            Env local = env;
            for (auto const &c : el.conjunction) {
                if (c.annotation.is_variable() && !local.count(c.annotation.name())) {
                    local[c.annotation.name()] = I[at(c)];
                }
            }
            bool ok = std::all_of(el.conjunction.begin(), el.conjunction.end(),
                                  [&](auto const &c) { return value_of(c.annotation, local) <= I[at(c)]; });
            if (!ok) { continue; }
            Grade g = value_of(el.grade, local);
            if (!g.is_zero()) { s.emplace_back(el.item, g); }
        }
        Rational value = agg.fn == AggregateFn::Times ? 1 : 0;
        Grade low = Grade::one();
        for (std::size_t i = 0; i < s.size(); ++i) {
            auto const &[item, g] = s[i];
            if (g < low) { low = g; }
            switch (agg.fn) {
                case AggregateFn::Sum: value += item.number(); break;
                case AggregateFn::Times: value *= item.number(); break;
                case AggregateFn::Count: value += 1; break;
                case AggregateFn::Min:
                    if (i == 0 || item.number() < value) { value = item.number(); }
                    break;
                case AggregateFn::Max:
                    if (i == 0 || item.number() > value) { value = item.number(); }
                    break;
            }
        }
        if (s.empty() && (agg.fn == AggregateFn::Min || agg.fn == AggregateFn::Max)) { return false; }
        return compare_with(agg.cmp, value, agg.guard.number()) && value_of(agg.annotation, env) <= low;
    }

    std::optional<Env> body(Rule const &rule, Values const &I) const {
        Env env;
        for (auto const &lit : rule.body) {
            if (lit.negated || lit.is_aggregate()) { continue; }
            auto const &ann = lit.atom().annotation;
            if (ann.is_variable() && !env.count(ann.name())) { env[ann.name()] = I[at(lit.atom())]; }
        }
        for (auto const &lit : rule.body) {
            bool sat = lit.is_aggregate()
                           ? aggregate_holds(lit.aggregate(), I, env)
                           : value_of(lit.atom().annotation, env) <= I[at(lit.atom())];
            if (sat == lit.negated) { return std::nullopt; }
        }
        return env;
    }

    bool rule_holds(Rule const &rule, Values const &I) const {
        auto env = body(rule, I);
        if (!env) { return true; }
        return std::any_of(rule.head.begin(), rule.head.end(),
                           [&](auto const &h) { return value_of(h.annotation, *env) <= I[at(h)]; });
    }

    // Atoms some rule could raise above 0 (least fixpoint, negation assumed true).
    std::vector<char> possible() const {
        std::vector<char> poss(atoms_.size(), 0);
        auto atom_ok = [&](AnnotatedAtom const &a) { return !nonzero_constant(a.annotation) || poss[at(a)]; };
        auto agg_ok = [&](AggregateAtom const &agg) {
            std::vector<SetElement const *> cand;
            for (auto const &el : agg.set.elements) {
                if (!std::all_of(el.conjunction.begin(), el.conjunction.end(), atom_ok)) { continue; }
                // a grade read off an atom stuck at 0 drops the pair
                bool zero_grade = el.grade.is_variable() &&
                                  std::any_of(el.conjunction.begin(), el.conjunction.end(), [&](auto const &c) {
                                      return c.annotation.is_variable() && c.annotation.name() == el.grade.name() &&
                                             !poss[at(c)];
                                  });
                if (!zero_grade) { cand.push_back(&el); }
            }
            if (cand.size() > 16) { return true; }
            for (std::uint32_t s = 0; s < (1u << cand.size()); ++s) {
                Rational value = agg.fn == AggregateFn::Times ? 1 : 0;
                unsigned n = 0;
                for (std::size_t j = 0; j < cand.size(); ++j) {
                    if (!((s >> j) & 1u)) { continue; }
                    Rational const &x = cand[j]->item.is_number() ? cand[j]->item.number() : value;
                    switch (agg.fn) {
                        case AggregateFn::Sum: value += x; break;
                        case AggregateFn::Times: value *= x; break;
                        case AggregateFn::Count: value += 1; break;
                        case AggregateFn::Min: value = n == 0 || x < value ? x : value; break;
                        case AggregateFn::Max: value = n == 0 || x > value ? x : value; break;
                    }
                    ++n;
                }
                if (n == 0 && (agg.fn == AggregateFn::Min || agg.fn == AggregateFn::Max)) { continue; }
                if (compare_with(agg.cmp, value, agg.guard.number())) { return true; }
            }
            return false;
        };
        for (bool changed = true; changed;) {
            changed = false;
            for (auto const &rule : program_.rules) {
                bool ok = std::all_of(rule.body.begin(), rule.body.end(), [&](Literal const &lit) {
                    if (lit.negated) { return true; }
                    return lit.is_aggregate() ? agg_ok(lit.aggregate()) : atom_ok(lit.atom());
                });
                if (!ok) { continue; }
                // variables read off an atom stuck at 0
                std::set<std::string> seen, zero_vars;
                for (auto const &lit : rule.body) {
                    if (lit.negated || lit.is_aggregate() || !lit.atom().annotation.is_variable()) { continue; }
                    auto const &name = lit.atom().annotation.name();
                    if (seen.insert(name).second && !poss[at(lit.atom())]) { zero_vars.insert(name); }
                }
                for (auto const &h : rule.head) {
                    bool zero = (h.annotation.is_constant() && h.annotation.value().is_zero()) ||
                                (h.annotation.is_variable() && zero_vars.count(h.annotation.name()));
                    if (!zero && !poss[at(h)]) {
                        poss[at(h)] = 1;
                        changed = true;
                    }
                }
            }
        }
        return poss;
    }

private:
    void intern(AnnotatedAtom const &a) {
        auto [it, inserted] = index_.emplace(a.atom, static_cast<int>(atoms_.size()));
        if (inserted) { atoms_.push_back(a.atom); }
        occurrence_[&a] = it->second;
    }

    Program const &program_;
    std::vector<Atom> atoms_;
    std::map<Atom, int> index_;
    std::unordered_map<AnnotatedAtom const *, int> occurrence_;
};

// Depth-first assignment of the free atoms; each rule is checked as soon as all
// of its atoms are assigned.
class Search {
public:
    Search(Checker const &checker, std::vector<Rule const *> rules, std::vector<int> const &free, std::size_t n_atoms)
    : checker_(checker), rules_(std::move(rules)), free_(free), at_(free.size() + 1) {
        std::vector<int> position(n_atoms, -1);
        for (std::size_t k = 0; k < free.size(); ++k) { position[free[k]] = static_cast<int>(k); }
        for (auto const *r : rules_) {
            int last = -1;
            for (int a : checker.rule_atoms(*r)) { last = std::max(last, position[a]); }
            at_[last + 1].push_back(r);
        }
    }

    // Calls `emit` for each assignment with values from options[k]; stops when emit returns true.
    template <class Emit>
    bool run(Values &I, std::vector<std::vector<Grade>> const &options, Emit &&emit) {
        if (!check(0, I)) { return false; }
        return descend(0, I, options, emit);
    }

private:
    bool check(std::size_t level, Values const &I) const {
        return std::all_of(at_[level].begin(), at_[level].end(), [&](Rule const *r) { return checker_.rule_holds(*r, I); });
    }

    template <class Emit>
    bool descend(std::size_t k, Values &I, std::vector<std::vector<Grade>> const &options, Emit &emit) {
        if (k == free_.size()) { return emit(I); }
        for (auto const &v : options[k]) {
            I[free_[k]] = v;
            if (check(k + 1, I) && descend(k + 1, I, options, emit)) { return true; }
        }
        I[free_[k]] = Grade::zero();
        return false;
    }

    Checker const &checker_;
    std::vector<Rule const *> rules_;
    std::vector<int> const &free_;
    std::vector<std::vector<Rule const *>> at_;
};

} // namespace

bool oracle_is_model(Program const &ground, Interpretation const &interp) {
    Checker checker(ground);
    Values I;
    for (auto const &a : checker.atoms()) { I.push_back(interp(a)); }
    return std::all_of(ground.rules.begin(), ground.rules.end(), [&](Rule const &r) { return checker.rule_holds(r, I); });
}

std::vector<Interpretation> brute_force_answer_sets(Program const &ground, std::vector<Grade> grid,
                                                    OracleOptions const &options) {
    grid.push_back(Grade::zero());
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    Checker checker(ground);
    auto const &atoms = checker.atoms();
    bool comp = false;
    auto scan = [&](Annotation const &a) { comp = comp || uses_comp(a); };
    for (auto const &rule : ground.rules) {
        for (auto const &h : rule.head) { scan(h.annotation); }
        for (auto const &lit : rule.body) {
            if (!lit.is_aggregate()) {
                scan(lit.atom().annotation);
                continue;
            }
            scan(lit.aggregate().annotation);
            for (auto const &el : lit.aggregate().set.elements) {
                scan(el.grade);
                for (auto const &c : el.conjunction) { scan(c.annotation); }
            }
        }
    }
    std::vector<char> poss(atoms.size(), 1);
    if (options.prune && !comp) { poss = checker.possible(); }
    std::vector<int> free;
    for (std::size_t a = 0; a < atoms.size(); ++a) {
        if (poss[a]) { free.push_back(static_cast<int>(a)); }
    }
    double space = 1;
    for (std::size_t i = 0; i < free.size(); ++i) { space *= static_cast<double>(grid.size()); }
    if (space > static_cast<double>(options.max_candidates)) {
        throw Error(ErrorKind::OracleSpaceOverflow, "oracle: " + std::to_string(grid.size()) + "^" +
                                                        std::to_string(free.size()) + " interpretations exceed the cap");
    }

    std::vector<Rule const *> all;
    for (auto const &r : ground.rules) { all.push_back(&r); }
    Search models(checker, all, free, atoms.size());
    std::vector<std::vector<Grade>> full(free.size(), grid);
    Values I(atoms.size(), Grade::zero());
    std::vector<Interpretation> out;
    models.run(I, full, [&](Values const &model) {
        std::vector<Rule const *> reduct;
        for (auto const *r : all) {
            if (checker.body(*r, model)) { reduct.push_back(r); }
        }
        std::vector<std::vector<Grade>> below(free.size());
        for (std::size_t k = 0; k < free.size(); ++k) {
            // descending: a non-minimal model is usually beaten by lowering one atom one step
            for (auto it = grid.rbegin(); it != grid.rend(); ++it) {
                if (*it <= model[free[k]]) { below[k].push_back(*it); }
            }
        }
        Search smaller(checker, reduct, free, atoms.size());
        Values J(atoms.size(), Grade::zero());
        bool beaten = smaller.run(J, below, [&](Values const &j) { return j != model; });
        if (!beaten) {
            Interpretation interp;
            for (std::size_t a = 0; a < atoms.size(); ++a) { interp.set(atoms[a], model[a]); }
            out.push_back(std::move(interp));
        }
        return false;
    });
    std::sort(out.begin(), out.end(), interp_before);
    return out;
}

// ---------------------------------------------------------------------------
// Differential driver

char const *to_string(DiscrepancyPhase phase) {
    switch (phase) {
        case DiscrepancyPhase::Grounding: return "grounding";
        case DiscrepancyPhase::Evaluation: return "evaluation";
        case DiscrepancyPhase::Minimality: return "minimality";
    }
    return "?";
}

std::string to_fixture(Discrepancy const &d) {
    std::string out;
    out += "% seed: " + std::to_string(d.seed) + "\n";
    out += std::string("% phase: ") + to_string(d.phase) + "\n";
    out += "% expected: " + d.expected + "\n";
    out += "% actual: " + d.actual + "\n";
    if (!d.note.empty()) { out += "% note: " + d.note + "\n"; }
    return out + d.program;
}

std::filesystem::path write_fixture(Discrepancy const &d, std::filesystem::path const &dir) {
    std::filesystem::create_directories(dir);
    auto path = dir / ("seed-" + std::to_string(d.seed) + "-" + to_string(d.phase) + ".dflp");
    std::ofstream(path) << to_fixture(d);
    return path;
}

namespace {

std::string list_text(std::vector<Interpretation> const &sets) {
    std::string out = "[";
    for (std::size_t i = 0; i < sets.size(); ++i) { out += (i ? ", " : " ") + sets[i].to_string(); }
    return out + (sets.empty() ? "]" : " ]");
}

std::vector<Interpretation> lattice_solver(Program const &ground) {
    auto lattice = grade_lattice(ground);
    SolveOptions opts;
    opts.threads = 1;
    std::vector<Interpretation> out;
    for (auto &r : enumerate_answer_sets(ground, lattice, opts)) { out.push_back(std::move(r.interpretation)); }
    return out;
}

bool contains(std::vector<Interpretation> const &sets, Interpretation const &i) {
    return std::find(sets.begin(), sets.end(), i) != sets.end();
}

} // namespace

DifferentialReport differential_check(GeneratorConfig const &cfg, std::size_t trials, DifferentialOptions const &options) {
    DifferentialReport report;
    SolverFn solver = options.solver ? options.solver : SolverFn(lattice_solver);
    for (std::size_t t = 0; t < trials; ++t) {
        ++report.trials;
        GeneratorConfig c = cfg;
        c.seed = cfg.seed + t;
        Program program = generate_program(c);
        std::string text = print_program(program);
        auto record = [&](DiscrepancyPhase phase, std::string expected, std::string actual, std::string note) {
            Discrepancy d{text, c.seed, std::move(expected), std::move(actual), phase, std::move(note)};
            if (options.fixture_dir) { write_fixture(d, *options.fixture_dir); }
            report.discrepancies.push_back(std::move(d));
        };

        GroundProgram ground;
        GradeLattice lattice;
        std::vector<Interpretation> actual;
        try {
            ground = ground_program(program);
            lattice = grade_lattice(ground.program);
            actual = solver(ground.program);
        }
        catch (Error const &e) {
            if (e.is_overflow()) {
                ++report.skipped;
                continue;
            }
            record(DiscrepancyPhase::Grounding, "no error", "", e.what());
            continue;
        }
        report.answer_sets += actual.size();

        bool flagged = false;
        for (auto const &s : actual) {
            if (!satisfies_program(ground.program, s)) {
                record(DiscrepancyPhase::Evaluation, "every answer set is a model", list_text(actual),
                       s.to_string() + " is not a model");
                flagged = true;
                break;
            }
        }
        for (std::size_t i = 0; i < actual.size() && !flagged; ++i) {
            for (std::size_t j = 0; j < actual.size() && !flagged; ++j) {
                if (i != j && interp_leq(actual[i], actual[j])) {
                    record(DiscrepancyPhase::Minimality, "pairwise incomparable answer sets", list_text(actual),
                           actual[i].to_string() + " <= " + actual[j].to_string());
                    flagged = true;
                }
            }
        }
        if (flagged) { continue; }
        if (!lattice.converged) {
            ++report.unconverged;
            continue;
        }

        std::vector<Grade> grid = lattice.global;
        grid.insert(grid.end(), cfg.grade_pool.begin(), cfg.grade_pool.end());
        grid.push_back(Grade::zero());
        grid.push_back(Grade::one());
        std::sort(grid.begin(), grid.end());
        grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
        // one refinement step: midpoints
        for (std::size_t i = 1, n = grid.size(); i < n; ++i) {
            grid.push_back(Grade((grid[i - 1].value() + grid[i].value()) / 2));
        }
        std::vector<Interpretation> expected;
        try {
            expected = brute_force_answer_sets(ground.program, grid, options.oracle);
        }
        catch (Error const &e) {
            if (!e.is_overflow()) { throw; }
            ++report.skipped;
            continue;
        }
        ++report.compared;
        if (expected == actual) { continue; }
        DiscrepancyPhase phase = DiscrepancyPhase::Minimality;
        std::string note;
        for (auto const &s : actual) {
            if (!contains(expected, s)) {
                bool model = oracle_is_model(ground.program, s);
                if (!model) { phase = DiscrepancyPhase::Evaluation; }
                note = "solver-only " + s.to_string() + (model ? " (not minimal over the grid)" : " (not a model)");
                break;
            }
        }
        if (note.empty()) {
            for (auto const &s : expected) {
                if (!contains(actual, s)) {
                    bool model = satisfies_program(ground.program, s);
                    if (!model) { phase = DiscrepancyPhase::Evaluation; }
                    note = "oracle-only " + s.to_string();
                    break;
                }
            }
        }
        record(phase, list_text(expected), list_text(actual), note);
    }
    return report;
}

} // namespace fasolve
