#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cwe {

enum class ErrorCode {
    NotPrime,
    NotPrimitive,
    CapExceeded,
    MixedPrimes,
    DegenerateQuadratic,
    BadExponent,
    ValueOutsideLemma,
    NotBilinear,
    NotRepresentable,
    NonIntegralComposition,
    BudgetExceeded,
    DegeneracyMismatch,
};

constexpr std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::NotPrimitive: return "NotPrimitive";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::MixedPrimes: return "MixedPrimes";
    case ErrorCode::DegenerateQuadratic: return "DegenerateQuadratic";
    case ErrorCode::BadExponent: return "BadExponent";
    case ErrorCode::ValueOutsideLemma: return "ValueOutsideLemma";
    case ErrorCode::NotBilinear: return "NotBilinear";
    case ErrorCode::NotRepresentable: return "NotRepresentable";
    case ErrorCode::NonIntegralComposition: return "NonIntegralComposition";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::DegeneracyMismatch: return "DegeneracyMismatch";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so that
/// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace cwe
