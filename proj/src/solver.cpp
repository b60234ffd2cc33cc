#include "fasolve/solver.hpp"
#include "fasolve/error.hpp"

#include "compiled.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace fasolve {

using detail::AtomId;
using detail::Binding;
using detail::CompiledProgram;
using detail::CRule;

namespace {

std::vector<Grade> view_of(CompiledProgram const &cp, Interpretation const &interp) {
    std::vector<Grade> out;
    out.reserve(cp.atoms.size());
    for (AtomId id = 0; id < cp.atoms.size(); ++id) { out.push_back(interp(cp.atoms.atom(id))); }
    return out;
}

// Every rule holds and no fired head grade exceeds the grade of the atom it is satisfied through.
bool program_holds(CompiledProgram const &cp, std::span<CRule const> rules, detail::GradeView interp) {
    Binding binding;
    std::map<AtomId, Grade> fired_max;
    Grade scratch;
    for (auto const &rule : rules) {
        if (!detail::body_holds(rule, interp, binding)) { continue; }
        if (detail::satisfied_head(rule, interp, binding) < 0) { return false; }
        for (auto const &h : rule.head) {
            Grade const &mu = detail::eval(h.ann, binding, scratch);
            if (!(mu <= interp[h.atom])) { continue; }
            auto [it, inserted] = fired_max.emplace(h.atom, mu);
            if (!inserted && it->second < mu) { it->second = mu; }
        }
    }
    (void)cp;
    for (auto const &[atom, mu] : fired_max) {
        if (!(mu <= interp[atom])) { return false; }
    }
    return true;
}

// Global grades plus the midpoint of each consecutive pair: a witness often only
// needs to sit strictly below some threshold.
std::vector<Grade> witness_grades(std::vector<Grade> const &global) {
    std::vector<Grade> out = global;
    for (std::size_t i = 1; i < global.size(); ++i) {
        detail::insert_sorted(out, Grade((global[i - 1].value() + global[i].value()) / 2));
    }
    return out;
}

std::size_t saturating_mul(std::size_t a, std::size_t b) {
    if (a != 0 && b > std::numeric_limits<std::size_t>::max() / a) { return std::numeric_limits<std::size_t>::max(); }
    return a * b;
}

class Search {
public:
    Search(Program const &ground, GradeLattice const &lattice, SolveOptions const &options)
    : options_(options) {
        cp_ = detail::compile(ground.rules);
        values_.assign(cp_.atoms.size(), std::vector<Grade>{Grade::zero()});
        for (AtomId id = 0; id < cp_.atoms.size(); ++id) {
            auto const &vs = lattice.values(cp_.atoms.atom(id));
            for (auto const &g : vs) { detail::insert_sorted(values_[id], g); }
            if (values_[id].size() > 1) { free_.push_back(id); }
        }
        global_ = witness_grades(lattice.global);
        space_ = 1;
        for (auto id : free_) { space_ = saturating_mul(space_, values_[id].size()); }
        for (std::size_t i = 0; i < cp_.rules.size(); ++i) {
            if (relevant(cp_.rules[i])) { relevant_.push_back(i); }
            rule_atoms_.push_back(atoms_of(cp_.rules[i]));
        }
    }

    std::size_t space() const noexcept { return space_; }

    std::vector<AnswerSetReport> run() {
        if (space_ > options_.candidate_cap) {
            throw Error(ErrorKind::CandidateSpaceOverflow,
                        "candidate space has " + (space_ == std::numeric_limits<std::size_t>::max() ? std::string("more than 2^64")
                                                                                                   : std::to_string(space_)) +
                            " interpretations, above the cap of " + std::to_string(options_.candidate_cap) +
                            "; raise --candidate-cap or shrink the program");
        }
        unsigned threads = options_.threads ? options_.threads : default_thread_count();
        threads = static_cast<unsigned>(std::max<std::size_t>(1, std::min<std::size_t>(threads, space_)));
        std::vector<std::vector<std::vector<Grade>>> found(threads);
        std::vector<std::exception_ptr> errors(threads);
        auto work = [&](unsigned t) {
            try {
                std::size_t chunk = space_ / threads;
                std::size_t begin = t * chunk;
                std::size_t end = t + 1 == threads ? space_ : begin + chunk;
                scan(begin, end, found[t]);
            }
            catch (...) {
                errors[t] = std::current_exception();
            }
        };
        if (threads == 1) { work(0); }
        else {
            std::vector<std::thread> pool;
            for (unsigned t = 0; t < threads; ++t) { pool.emplace_back(work, t); }
            for (auto &th : pool) { th.join(); }
        }
        for (auto const &e : errors) {
            if (e) { std::rethrow_exception(e); }
        }
        std::vector<AnswerSetReport> out;
        for (auto &bucket : found) {
            for (auto &grades : bucket) {
                if (!program_holds(cp_, cp_.rules, grades)) {
                    throw std::logic_error("emitted answer set does not satisfy the program");
                }
                AnswerSetReport report;
                for (AtomId id = 0; id < grades.size(); ++id) { report.interpretation.set(cp_.atoms.atom(id), grades[id]); }
                report.minimality_witness_checked = options_.check_minimality;
                report.candidate_space_size = space_;
                out.push_back(std::move(report));
            }
        }
        std::sort(out.begin(), out.end(), [](AnswerSetReport const &a, AnswerSetReport const &b) {
            return interp_before(a.interpretation, b.interpretation);
        });
        if (options_.limit && out.size() > options_.limit) { out.resize(options_.limit); }
        return out;
    }

private:
    // Rules whose body no grid interpretation satisfies, or whose head always holds
    // through a zero-grade disjunct, never decide model membership.
    bool relevant(CRule const &rule) const {
        bool possible = false;
        bool always = true;
        detail::possible_bindings(rule, values_, 100'000, [&](Binding const &binding) {
            possible = true;
            Grade scratch;
            bool zero_head = false;
            for (auto const &h : rule.head) {
                if (detail::eval(h.ann, binding, scratch).is_zero()) { zero_head = true; }
            }
            always = always && zero_head;
        });
        return possible && !always;
    }

    void scan(std::size_t begin, std::size_t end, std::vector<std::vector<Grade>> &found) const {
        std::vector<Grade> interp(cp_.atoms.size());
        std::vector<std::size_t> reduct;
        Binding binding;
        for (std::size_t index = begin; index < end; ++index) {
            std::size_t rest = index;
            for (auto id : free_) {
                auto const &vs = values_[id];
                interp[id] = vs[rest % vs.size()];
                rest /= vs.size();
            }
            reduct.clear();
            bool model = true;
            for (auto i : relevant_) {
                auto const &rule = cp_.rules[i];
                if (!detail::body_holds(rule, interp, binding)) { continue; }
                reduct.push_back(i);
                // a satisfied disjunct has mu <= I(a), which also bounds the fired maximum
                if (detail::satisfied_head(rule, interp, binding) < 0) {
                    model = false;
                    break;
                }
            }
            if (!model) { continue; }
            if (options_.check_minimality && smaller_model_exists(interp, reduct)) { continue; }
            found.push_back(interp);
        }
    }

    // Depth-first over the candidates below `interp`, descending per atom; each reduct
    // rule is checked once its last varying atom is assigned.
    // Witness grades per atom: its own values and the refined global grades.
    bool smaller_model_exists(std::vector<Grade> const &interp, std::vector<std::size_t> const &reduct) const {
        Lowering search;
        std::vector<int> position(cp_.atoms.size(), -1);
        for (auto id : free_) {
            if (interp[id].is_zero()) { continue; }
            std::vector<Grade> opts;
            for (auto const *set : {&values_[id], &global_}) {
                for (auto const &g : *set) {
                    if (g <= interp[id]) { detail::insert_sorted(opts, g); }
                }
            }
            std::reverse(opts.begin(), opts.end());
            position[id] = static_cast<int>(search.vary.size());
            search.vary.push_back(id);
            search.options.push_back(std::move(opts));
        }
        if (search.vary.empty()) { return false; }
        search.checks.resize(search.vary.size() + 1);
        for (auto i : reduct) {
            int last = -1;
            for (auto id : rule_atoms_[i]) { last = std::max(last, position[id]); }
            search.checks[last + 1].push_back(i);
        }
        search.lower = interp;
        return holds_at(search, 0) && descend(search, 0, false);
    }

    struct Lowering {
        std::vector<AtomId> vary;
        std::vector<std::vector<Grade>> options;
        std::vector<std::vector<std::size_t>> checks; // by level
        std::vector<Grade> lower;
        Binding binding;
    };

    bool holds_at(Lowering &s, std::size_t level) const {
        for (auto i : s.checks[level]) {
            auto const &rule = cp_.rules[i];
            if (detail::body_holds(rule, s.lower, s.binding) && detail::satisfied_head(rule, s.lower, s.binding) < 0) {
                return false;
            }
        }
        return true;
    }

    bool descend(Lowering &s, std::size_t k, bool strict) const {
        if (k == s.vary.size()) { return strict; }
        auto const &opts = s.options[k];
        for (std::size_t j = 0; j < opts.size(); ++j) {
            s.lower[s.vary[k]] = opts[j];
            if (holds_at(s, k + 1) && descend(s, k + 1, strict || j > 0)) { return true; }
        }
        s.lower[s.vary[k]] = opts.front();
        return false;
    }

    static std::vector<AtomId> atoms_of(CRule const &rule) {
        std::vector<AtomId> out;
        auto add = [&](std::vector<detail::CAtomLit> const &lits) {
            for (auto const &l : lits) { out.push_back(l.atom); }
        };
        add(rule.head);
        add(rule.pos);
        add(rule.neg);
        for (auto const *aggs : {&rule.pos_aggs, &rule.neg_aggs}) {
            for (auto const &agg : *aggs) {
                for (auto const &pair : agg.pairs) { add(pair.conj); }
            }
        }
        return out;
    }

    SolveOptions options_;
    CompiledProgram cp_;
    detail::ValueSets values_;
    std::vector<Grade> global_;
    std::vector<AtomId> free_;
    std::vector<std::size_t> relevant_;
    std::vector<std::vector<AtomId>> rule_atoms_;
    std::size_t space_ = 1;
};

} // namespace

unsigned default_thread_count() {
    if (char const *env = std::getenv("FASOLVE_THREADS")) {
        char *end = nullptr;
        long n = std::strtol(env, &end, 10);
        if (end != env && n > 0) { return static_cast<unsigned>(n); }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

BodyResult satisfies_body(Rule const &rule, Interpretation const &interp) {
    auto cp = detail::compile(std::span<Rule const>(&rule, 1));
    auto view = view_of(cp, interp);
    Binding binding;
    BodyResult out;
    out.satisfied = detail::body_holds(cp.rules[0], view, binding);
    if (out.satisfied) {
        auto const &names = cp.rules[0].slot_names;
        for (std::size_t s = 0; s < names.size(); ++s) {
            if (binding.bound[s]) { out.binding.emplace(names[s], binding.values[s]); }
        }
    }
    return out;
}

bool satisfies_rule(Rule const &rule, Interpretation const &interp) {
    auto cp = detail::compile(std::span<Rule const>(&rule, 1));
    auto view = view_of(cp, interp);
    Binding binding;
    if (!detail::body_holds(cp.rules[0], view, binding)) { return true; }
    return detail::satisfied_head(cp.rules[0], view, binding) >= 0;
}

bool satisfies_program(Program const &program, Interpretation const &interp) {
    auto cp = detail::compile(program.rules);
    auto view = view_of(cp, interp);
    return program_holds(cp, cp.rules, view);
}

Reduct reduct(Program const &program, Interpretation const &interp) {
    auto cp = detail::compile(program.rules);
    auto view = view_of(cp, interp);
    Reduct out;
    Binding binding;
    for (std::size_t i = 0; i < cp.rules.size(); ++i) {
        if (detail::body_holds(cp.rules[i], view, binding)) {
            out.rules.push_back(program.rules[i]);
            out.source_indices.push_back(i);
        }
    }
    return out;
}

bool is_minimal_model(Reduct const &red, Interpretation const &interp, GradeLattice const &lattice) {
    detail::AtomTable table;
    for (auto const &[atom, grade] : interp.entries()) { table.intern(atom); }
    auto cp = detail::compile(red.rules, std::move(table));
    auto view = view_of(cp, interp);
    auto const witnesses = witness_grades(lattice.global);
    std::vector<AtomId> vary;
    std::vector<std::vector<Grade>> options;
    for (AtomId id = 0; id < cp.atoms.size(); ++id) {
        if (view[id].is_zero()) { continue; }
        std::vector<Grade> opts{Grade::zero()};
        detail::insert_sorted(opts, view[id]);
        for (auto const *set : {&lattice.values(cp.atoms.atom(id)), &witnesses}) {
            for (auto const &g : *set) {
                if (g <= view[id]) { detail::insert_sorted(opts, g); }
            }
        }
        std::reverse(opts.begin(), opts.end());
        vary.push_back(id);
        options.push_back(std::move(opts));
    }
    if (vary.empty()) { return true; }
    std::vector<Grade> lower = view;
    std::vector<std::size_t> idx(vary.size(), 0);
    for (;;) {
        std::size_t k = vary.size();
        while (k > 0) {
            --k;
            if (++idx[k] < options[k].size()) { break; }
            idx[k] = 0;
            if (k == 0) { return true; }
        }
        for (std::size_t i = 0; i < vary.size(); ++i) { lower[vary[i]] = options[i][idx[i]]; }
        if (program_holds(cp, cp.rules, lower)) { return false; }
    }
}

std::size_t candidate_space_size(Program const &ground, GradeLattice const &lattice) {
    auto cp = detail::compile(ground.rules);
    std::size_t n = 1;
    for (AtomId id = 0; id < cp.atoms.size(); ++id) {
        n = saturating_mul(n, lattice.values(cp.atoms.atom(id)).size());
    }
    return n;
}

std::vector<AnswerSetReport> enumerate_answer_sets(Program const &ground, GradeLattice const &lattice,
                                                   SolveOptions const &options) {
    return Search(ground, lattice, options).run();
}

} // namespace fasolve
