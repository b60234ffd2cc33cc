#pragma once

#include <stdexcept>
#include <string>

namespace fasolve {

enum class ErrorKind {
    InvalidGrade,
    UnboundAnnotationVariable,
    ArityMismatch,
    UnsafeRule,
    UngroundGuard,
    GuardTypeMismatch,
    FunctionDepthExceeded,
    GroundingOverflow,
    LatticeOverflow,
    CandidateSpaceOverflow,
    OracleSpaceOverflow,
    NonBooleanGrade,
};

char const *to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string const &message)
    : std::runtime_error(message)
    , kind_(kind) { }

    ErrorKind kind() const noexcept { return kind_; }

    // true for the cap-overflow family (CLI exit code 3)
    bool is_overflow() const noexcept;

private:
    ErrorKind kind_;
};

} // namespace fasolve
