#include "cm3/error.hpp"

namespace cm3 {

const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::NonSquarefree: return "NonSquarefree";
        case ErrorCode::NoConvergence: return "NoConvergence";
        case ErrorCode::NearSingular: return "NearSingular";
        case ErrorCode::Indeterminate: return "Indeterminate";
        case ErrorCode::NotNearInteger: return "NotNearInteger";
        case ErrorCode::SchemaError: return "SchemaError";
        case ErrorCode::RankDeficientIdeal: return "RankDeficientIdeal";
        case ErrorCode::NonSquarefreeField: return "NonSquarefreeField";
        case ErrorCode::NotTotallyImaginary: return "NotTotallyImaginary";
        case ErrorCode::PermutationMismatch: return "PermutationMismatch";
        case ErrorCode::NotClosedGroup: return "NotClosedGroup";
        case ErrorCode::NotAlternating: return "NotAlternating";
        case ErrorCode::NotPrincipal: return "NotPrincipal";
        case ErrorCode::AsymmetryTooLarge: return "AsymmetryTooLarge";
        case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
        case ErrorCode::NotSymplectic: return "NotSymplectic";
        case ErrorCode::OddCharacteristic: return "OddCharacteristic";
        case ErrorCode::ZeroCharacteristic: return "ZeroCharacteristic";
        case ErrorCode::AmbiguousMagnitude: return "AmbiguousMagnitude";
        case ErrorCode::DenominatorNearZero: return "DenominatorNearZero";
        case ErrorCode::DegenerateInvariants: return "DegenerateInvariants";
        case ErrorCode::DependentRows: return "DependentRows";
        case ErrorCode::NoRelationFound: return "NoRelationFound";
        case ErrorCode::BadPrime: return "BadPrime";
        case ErrorCode::NonIntegralSymmetricFunction:
            return "NonIntegralSymmetricFunction";
        case ErrorCode::NotWeilNumber: return "NotWeilNumber";
        case ErrorCode::NotFound: return "NotFound";
        case ErrorCode::ConfigError: return "ConfigError";
    }
    return "UnknownError";
}

}  // namespace cm3
