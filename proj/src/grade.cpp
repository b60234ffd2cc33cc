#include "fasolve/grade.hpp"
#include "fasolve/error.hpp"

#include <cctype>

namespace fasolve {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) { return false; }
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) { return false; }
    }
    return true;
}

} // namespace

bool parse_rational(std::string_view text, Rational &out) {
    bool negative = false;
    if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        auto num = text.substr(0, slash);
        auto den = text.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) { return false; }
        mpz_class n(std::string(num), 10);
        mpz_class d(std::string(den), 10);
        if (d == 0) { return false; }
        out = Rational(n, d);
        out.canonicalize();
    }
    else {
        auto dot = text.find('.');
        auto whole = text.substr(0, dot);
        std::string_view frac = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
        if (whole.empty() && frac.empty()) { return false; }
        if (!whole.empty() && !all_digits(whole)) { return false; }
        if (dot != std::string_view::npos && !all_digits(frac)) { return false; }
        std::string digits = std::string(whole) + std::string(frac);
        mpz_class n(digits.empty() ? std::string("0") : digits, 10);
        mpz_class d;
        mpz_ui_pow_ui(d.get_mpz_t(), 10, frac.size());
        out = Rational(n, d);
        out.canonicalize();
    }
    if (negative) { out = -out; }
    return true;
}

std::string format_rational(Rational const &value) {
    mpz_class den = value.get_den();
    unsigned twos = 0;
    unsigned fives = 0;
    while (mpz_divisible_ui_p(den.get_mpz_t(), 2)) { den /= 2; ++twos; }
    while (mpz_divisible_ui_p(den.get_mpz_t(), 5)) { den /= 5; ++fives; }
    if (den != 1) {
        return value.get_num().get_str() + "/" + value.get_den().get_str();
    }
    unsigned places = std::max(twos, fives);
    if (places == 0) { return value.get_num().get_str(); }
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, places);
    mpz_class scaled = value.get_num() * scale / value.get_den();
    std::string sign = scaled < 0 ? "-" : "";
    std::string digits = mpz_class(abs(scaled)).get_str();
    if (digits.size() <= places) { digits.insert(0, places - digits.size() + 1, '0'); }
    std::string out = sign + digits.substr(0, digits.size() - places) + "." + digits.substr(digits.size() - places);
    return out;
}

std::strong_ordering compare(Rational const &a, Rational const &b) {
    int c = cmp(a, b);
    if (c < 0) { return std::strong_ordering::less; }
    if (c > 0) { return std::strong_ordering::greater; }
    return std::strong_ordering::equal;
}

Grade::Grade(Rational value)
: value_(std::move(value)) {
    value_.canonicalize();
    if (sgn(value_) < 0 || cmp(value_, 1) > 0) {
        throw Error(ErrorKind::InvalidGrade, "grade " + format_rational(value_) + " outside [0,1]");
    }
}

Grade Grade::one() { return Grade{Rational(1)}; }

Grade Grade::parse(std::string_view text) {
    Rational value;
    if (!parse_rational(text, value)) {
        throw Error(ErrorKind::InvalidGrade, "malformed grade '" + std::string(text) + "'");
    }
    return Grade{std::move(value)};
}

std::ostream &operator<<(std::ostream &out, Grade const &grade) { return out << grade.to_string(); }

} // namespace fasolve
