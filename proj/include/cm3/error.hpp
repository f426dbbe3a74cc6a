#pragma once

#include <stdexcept>
#include <string>

namespace cm3 {

enum class ErrorCode {
    // numeric kernel
    NonSquarefree,
    NoConvergence,
    NearSingular,
    Indeterminate,
    NotNearInteger,
    // bundle
    SchemaError,
    RankDeficientIdeal,
    NonSquarefreeField,
    NotTotallyImaginary,
    PermutationMismatch,
    NotClosedGroup,
    // polarization
    NotAlternating,
    NotPrincipal,
    AsymmetryTooLarge,
    NotPositiveDefinite,
    // characteristic algebra
    NotSymplectic,
    OddCharacteristic,
    ZeroCharacteristic,
    // theta engine
    AmbiguousMagnitude,
    // rosenhain
    DenominatorNearZero,
    DegenerateInvariants,
    // minpoly
    DependentRows,
    NoRelationFound,
    // fp-verify
    BadPrime,
    NonIntegralSymmetricFunction,
    NotWeilNumber,
    NotFound,
    // cli
    ConfigError,
};

const char* error_code_name(ErrorCode c);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& detail)
        : std::runtime_error(std::string(error_code_name(code)) +
                             (detail.empty() ? "" : ": " + detail)),
          code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

}  // namespace cm3
