#include "laminar/error.hpp"

namespace laminar {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::NonSquare: return "NonSquare";
        case ErrorKind::NotSymmetric: return "NotSymmetric";
        case ErrorKind::NoConvergence: return "NoConvergence";
        case ErrorKind::Singular: return "Singular";
        case ErrorKind::InvalidConfig: return "InvalidConfig";
        case ErrorKind::ProfileInfeasible: return "ProfileInfeasible";
        case ErrorKind::NotSemiRegular: return "NotSemiRegular";
        case ErrorKind::NotConnected: return "NotConnected";
        case ErrorKind::NegativeEntry: return "NegativeEntry";
        case ErrorKind::NotInSpectrum: return "NotInSpectrum";
        case ErrorKind::NotBipartiteLayout: return "NotBipartiteLayout";
        case ErrorKind::NotEquitable: return "NotEquitable";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::EmptyConstructorList: return "EmptyConstructorList";
        case ErrorKind::BadExponent: return "BadExponent";
        case ErrorKind::SignClassViolation: return "SignClassViolation";
        case ErrorKind::SizeMismatch: return "SizeMismatch";
        case ErrorKind::InvalidWeights: return "InvalidWeights";
        case ErrorKind::StepSizeUnderflow: return "StepSizeUnderflow";
        case ErrorKind::NonFinite: return "NonFinite";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::EmptyData: return "EmptyData";
    }
    return "Unknown";
}

bool Error::is_config_error() const noexcept {
    switch (kind_) {
        case ErrorKind::InvalidConfig:
        case ErrorKind::ProfileInfeasible:
        case ErrorKind::InvalidWeights:
        case ErrorKind::BadExponent:
        case ErrorKind::ParseError:
            return true;
        default:
            return false;
    }
}

}  // namespace laminar
