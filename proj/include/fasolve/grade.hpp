#pragma once

#include <gmpxx.h>

#include <compare>
#include <ostream>
#include <string>
#include <string_view>

namespace fasolve {

// Exact arbitrary-precision rational. Used for grades, aggregate items and guards.
using Rational = mpq_class;

// Parses an integer, a decimal literal or a fraction p/q exactly ("0.55" is 11/20).
// Returns false on malformed input.
bool parse_rational(std::string_view text, Rational &out);

// Shortest exact decimal when the expansion terminates, otherwise "p/q".
std::string format_rational(Rational const &value);

std::strong_ordering compare(Rational const &a, Rational const &b);

// A truth degree in [0,1].
class Grade {
public:
    Grade() = default;
    // Throws Error(InvalidGrade) outside [0,1].
    explicit Grade(Rational value);

    static Grade zero() { return Grade{}; }
    static Grade one();
    // Throws Error(InvalidGrade) on malformed or out-of-range text.
    static Grade parse(std::string_view text);

    Rational const &value() const noexcept { return value_; }
    bool is_zero() const noexcept { return sgn(value_) == 0; }
    bool is_one() const noexcept { return cmp(value_, 1) == 0; }
    std::string to_string() const { return format_rational(value_); }

    friend bool operator==(Grade const &a, Grade const &b) { return cmp(a.value_, b.value_) == 0; }
    friend std::strong_ordering operator<=>(Grade const &a, Grade const &b) { return compare(a.value_, b.value_); }

private:
    Rational value_{0};
};

std::ostream &operator<<(std::ostream &out, Grade const &grade);

// Lattice operations on [0,1].
inline Grade const &join(Grade const &a, Grade const &b) { return a < b ? b : a; }
inline Grade const &meet(Grade const &a, Grade const &b) { return b < a ? b : a; }

} // namespace fasolve
