// errors.hpp
// Typed error codes and the exception carrying them across the library.

#pragma once

#include <stdexcept>
#include <string>

namespace copsig {

enum class ErrorCode {
    Ok = 0,
    InvalidArgument,
    MissingSymbol,
    MalformedRow,
    NonPositivePrice,
    DuplicateTimestamp,
    TooShort,
    InsufficientOverlap,
    DegenerateRegressor,
    DegenerateSample,
    TooFewSamples,
    NonConvergence,
    AllFitsFailed,
    ThetaOutOfDomain,
    BoundaryInput,
    OutOfRange,
    LengthMismatch,
    EpsilonOutOfRange,
    NumericFailure,
    Io,
};

inline const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::Ok: return "ok";
        case ErrorCode::InvalidArgument: return "invalid_argument";
        case ErrorCode::MissingSymbol: return "missing_symbol";
        case ErrorCode::MalformedRow: return "malformed_row";
        case ErrorCode::NonPositivePrice: return "non_positive_price";
        case ErrorCode::DuplicateTimestamp: return "duplicate_timestamp";
        case ErrorCode::TooShort: return "too_short";
        case ErrorCode::InsufficientOverlap: return "insufficient_overlap";
        case ErrorCode::DegenerateRegressor: return "degenerate_regressor";
        case ErrorCode::DegenerateSample: return "degenerate_sample";
        case ErrorCode::TooFewSamples: return "too_few_samples";
        case ErrorCode::NonConvergence: return "non_convergence";
        case ErrorCode::AllFitsFailed: return "all_fits_failed";
        case ErrorCode::ThetaOutOfDomain: return "theta_out_of_domain";
        case ErrorCode::BoundaryInput: return "boundary_input";
        case ErrorCode::OutOfRange: return "out_of_range";
        case ErrorCode::LengthMismatch: return "length_mismatch";
        case ErrorCode::EpsilonOutOfRange: return "epsilon_out_of_range";
        case ErrorCode::NumericFailure: return "numeric_failure";
        case ErrorCode::Io: return "io";
    }
    return "?";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

inline void require(bool condition, ErrorCode code, const std::string& message) {
    if (!condition) raise(code, message);
}

} // namespace copsig
