#pragma once

#include <stdexcept>
#include <string>

namespace gwtqft {

enum class ErrorCode {
    DivisionByZero,
    NonInteger,
    Degenerate,
    NotSymmetric,
    SizeLimit,
    DegenerateEffectiveMetric,
    NotOneDimensional,
    ConventionMismatch,
    Atypical,
    UnsupportedObject,
    NotGeneric,
    ShapeMismatch,
    HypothesisFailed,
    NonGenericClass,
    InternalMismatch,
    ProfileMismatch,
    NotScalar,
    NotAdmissible,
    PoleAtBeta,
    NonIntegerGram,
    ParseError,
    ValidationFailure,
};

const char* error_code_name(ErrorCode code);

/// Library error carrying a machine-readable code.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace gwtqft
