// fasolve: answer sets of disjunctive fuzzy logic programs with fuzzy aggregates.

#include "fasolve/classical.hpp"
#include "fasolve/error.hpp"
#include "fasolve/grounder.hpp"
#include "fasolve/oracle.hpp"
#include "fasolve/parser.hpp"
#include "fasolve/solver.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace fasolve;

enum Exit { Found = 0, None = 1, InputError = 2, CapOverflow = 3 };

struct Options {
    std::vector<std::string> inputs;
    std::string mode = "fuzzy";
    std::string format = "text";
    std::size_t max_answer_sets = 0;
    std::size_t lattice_cap = 10'000;
    unsigned iter_cap = 16;
    std::size_t candidate_cap = 10'000'000;
    unsigned func_depth = 0;
    bool dump_ground = false;
};

bool read_file(std::string const &path, std::string &out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) { return false; }
    std::ostringstream ss;
    ss << in.rdbuf();
    out = ss.str();
    return true;
}

int solve(Options const &opt) {
    bool classical = opt.mode == "classical";
    Program program;
    bool failed = false;
    for (auto const &path : opt.inputs) {
        std::string text;
        if (!read_file(path, text)) {
            std::cerr << path << ": cannot read file\n";
            return InputError;
        }
        std::vector<ParseError> errors;
        if (classical) {
            auto parsed = parse_classical(text, path);
            errors = std::move(parsed.errors);
            auto embedded = embed(parsed.program);
            program.rules.insert(program.rules.end(), embedded.rules.begin(), embedded.rules.end());
        }
        else {
            auto parsed = parse_program(text, path);
            errors = std::move(parsed.errors);
            program.rules.insert(program.rules.end(), parsed.program.rules.begin(), parsed.program.rules.end());
        }
        for (auto const &e : errors) { std::cerr << e.to_string() << "\n"; }
        failed = failed || !errors.empty();
    }
    if (failed) { return InputError; }

    GroundProgram ground = ground_program(program, {.max_depth = opt.func_depth});
    for (auto const &w : ground.warnings) { std::cerr << "warning: " << w << "\n"; }
    if (opt.dump_ground) {
        std::cout << print_program(ground.program);
        return Found;
    }

    GradeLattice lattice = grade_lattice(ground.program, {.cap = opt.lattice_cap, .iter_cap = opt.iter_cap});
    if (!lattice.converged) {
        std::cerr << "warning: grade lattice not closed after " << opt.iter_cap
                  << " sweeps; answer sets are relative to the truncated lattice\n";
    }
    SolveOptions so;
    so.limit = opt.max_answer_sets;
    so.candidate_cap = opt.candidate_cap;
    auto answers = enumerate_answer_sets(ground.program, lattice, so);

    if (opt.format == "json") {
        nlohmann::ordered_json doc;
        doc["answer_sets"] = nlohmann::ordered_json::array();
        for (auto const &a : answers) {
            nlohmann::ordered_json entry = nlohmann::ordered_json::object();
            for (auto const &[atom, grade] : a.interpretation.sorted_entries()) { entry[atom] = grade.to_string(); }
            doc["answer_sets"].push_back(std::move(entry));
        }
        doc["count"] = answers.size();
        std::size_t atoms = 0, values = 0;
        for (auto const &[atom, vs] : lattice.per_atom) {
            ++atoms;
            values += vs.size();
        }
        doc["ground_stats"] = {
            {"rules", ground.program.rules.size()},
            {"lattice_atoms", atoms},
            {"lattice_values", values},
            {"global_grades", lattice.global.size()},
            {"lattice_iterations", lattice.iterations},
            {"lattice_converged", lattice.converged},
            {"candidate_space", answers.empty() ? candidate_space_size(ground.program, lattice)
                                                : answers.front().candidate_space_size},
        };
        std::cout << doc.dump(2) << "\n";
    }
    else {
        for (auto const &a : answers) {
            std::cout << (classical ? to_string(extract(a.interpretation)) : a.interpretation.to_string()) << "\n";
        }
    }
    return answers.empty() ? None : Found;
}

int run_tests(std::size_t trials, std::uint64_t seed, std::string const &fixtures, bool monotone) {
    GeneratorConfig cfg;
    cfg.seed = seed;
    cfg.nonmonotone_functions = !monotone;
    DifferentialOptions opts;
    if (!fixtures.empty()) { opts.fixture_dir = fixtures; }
    auto report = differential_check(cfg, trials, opts);
    for (auto const &d : report.discrepancies) {
        std::cout << "seed " << d.seed << " [" << to_string(d.phase) << "] " << d.note << "\n";
    }
    std::cout << "trials " << report.trials << ", compared " << report.compared << ", skipped " << report.skipped
              << ", unconverged " << report.unconverged
              << ", answer sets " << report.answer_sets << ", discrepancies " << report.discrepancies.size() << "\n";
    return report.discrepancies.empty() ? 0 : 1;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Answer sets of disjunctive fuzzy logic programs with fuzzy aggregates"};
    app.require_subcommand(0, 1);
    Options opt;
    app.add_option("files", opt.inputs, "Program files, concatenated in order")->check(CLI::ExistingFile);
    app.add_option("--mode", opt.mode, "Input dialect")->check(CLI::IsMember({"fuzzy", "classical"}))->capture_default_str();
    app.add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
    app.add_option("--max-answer-sets", opt.max_answer_sets, "Stop after this many answer sets (0: all)");
    app.add_option("--lattice-cap", opt.lattice_cap, "Maximum number of distinct grades")->capture_default_str();
    app.add_option("--iter-cap", opt.iter_cap, "Maximum lattice sweeps introducing new grades")->capture_default_str();
    app.add_option("--candidate-cap", opt.candidate_cap, "Maximum candidate interpretations")->capture_default_str();
    app.add_option("--func-depth", opt.func_depth, "Function term nesting bound")->capture_default_str();
    app.add_flag("--dump-ground", opt.dump_ground, "Print the ground program and exit");

    std::size_t trials = 100;
    std::uint64_t seed = 1;
    std::string fixtures = "fixtures/discrepancies";
    auto *test = app.add_subcommand("test", "Differential check of the solver against the brute-force oracle");
    test->add_option("--trials", trials, "Number of generated programs")->capture_default_str();
    test->add_option("--seed", seed, "Seed of the first trial")->capture_default_str();
    test->add_option("--fixtures", fixtures, "Directory for discrepancy fixtures")->capture_default_str();
    bool no_fixtures = false;
    test->add_flag("--no-fixtures", no_fixtures, "Do not write discrepancy fixtures");
    bool monotone = false;
    test->add_flag("--monotone-only", monotone, "Generate no nonmonotone annotation functions (comp)");

    try {
        app.parse(argc, argv);
    }
    catch (CLI::ParseError const &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : InputError;
    }

    try {
        if (*test) { return run_tests(trials, seed, no_fixtures ? std::string{} : fixtures, monotone); }
        if (opt.inputs.empty()) {
            std::cerr << "no input files\n" << app.help();
            return InputError;
        }
        return solve(opt);
    }
    catch (Error const &e) {
        std::cerr << "error: " << to_string(e.kind()) << ": " << e.what() << "\n";
        return e.is_overflow() ? CapOverflow : InputError;
    }
    catch (std::exception const &e) {
        std::cerr << "error: " << e.what() << "\n";
        return InputError;
    }
}
