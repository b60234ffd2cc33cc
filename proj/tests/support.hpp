#pragma once

#include "fasolve/grounder.hpp"
#include "fasolve/model.hpp"
#include "fasolve/parser.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace fasolve::test {

inline Grade G(char const *text) { return Grade::parse(text); }

inline Program parse_ok(std::string const &text) {
    auto r = parse_program(text);
    if (!r.ok()) { throw std::runtime_error(r.errors.front().to_string()); }
    return r.program;
}

// "a(1,2)" -> Atom
inline Atom A(std::string const &text) { return parse_ok(text + ".").rules.at(0).head.at(0).atom; }

// "a(1,2):0.4. b:1." -> interpretation built from the fact heads
inline Interpretation I(std::string const &facts) {
    Interpretation out;
    if (facts.empty()) { return out; }
    for (auto const &rule : parse_ok(facts).rules) {
        for (auto const &h : rule.head) { out.set(h.atom, h.annotation.value()); }
    }
    return out;
}

inline std::string fixture_text(std::string const &name) {
    std::ifstream in(std::string(FASOLVE_FIXTURE_DIR) + "/" + name);
    if (!in) { throw std::runtime_error("missing fixture " + name); }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline Program ground_of(std::string const &text) { return ground_program(parse_ok(text)).program; }

inline std::string const dice_text = R"(
a(1,1):0.8 | a(1,2):0.4.
a(2,1):0.3 | a(2,2):0.9.
gamma :- not gamma, #min_f{ Y : U | a(X,Y) : U } <= 1 : 0.4.
)";

} // namespace fasolve::test
