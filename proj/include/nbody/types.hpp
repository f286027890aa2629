#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace nbody {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

enum class ErrorCode {
    DegenerateInput,
    AmbientMismatch,
    ContainsAmbient,
    UnknownMember,
    NonFinite,
    SingularMap,
    DomainError,
    PoleError,
    DegenerateSubspace,
    OnBlownCenter,
    DegenerateDirection,
    OnSingularSet,
    EmptyIntersection,
    StencilTooWide,
    InvalidEigenpair,
    ParseError,
};

const char* error_code_name(ErrorCode c);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

// Tolerances shared by the numerical-linear-algebra layer.
inline constexpr double kOrthoTol = 1e-12;  // orthonormality of constructed bases
inline constexpr double kRankTol = 1e-10;   // rank / containment decisions

}  // namespace nbody
