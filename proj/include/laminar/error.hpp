#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace laminar {

enum class ErrorKind {
    NonSquare,
    NotSymmetric,
    NoConvergence,
    Singular,
    InvalidConfig,
    ProfileInfeasible,
    NotSemiRegular,
    NotConnected,
    NegativeEntry,
    NotInSpectrum,
    NotBipartiteLayout,
    NotEquitable,
    DimensionMismatch,
    EmptyConstructorList,
    BadExponent,
    SignClassViolation,
    SizeMismatch,
    InvalidWeights,
    StepSizeUnderflow,
    NonFinite,
    ParseError,
    EmptyData,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

    // config-class errors map to exit code 1, everything else to 2
    bool is_config_error() const noexcept;

private:
    ErrorKind kind_;
};

}  // namespace laminar
