#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "nnls/types.hpp"

namespace nnls {

enum class ErrorKind {
    Domain,
    BranchPoint,
    BranchPointProximity,
    OdeToleranceFailure,
    DivisionByZeroSpectral,
    InconclusiveWinding,
    WindingOutOfRange,
    PoleOnContour,
    ToleranceNotMet,
    MissingNormingConstant,
    RegionMismatch,
    SingularStation,
    SolitonPole,
    BlowupDetected,
    CflViolation,
    Unavailable,
    Io,
    Config,
};

const char* to_string(ErrorKind k);

/// Process exit code for the CLI: 2 io/config, 3 region/precondition,
/// 4 blow-up, 5 numerical tolerance.
int exit_code(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Carries the best available estimate when a quadrature misses its target.
class ToleranceNotMet : public Error {
public:
    ToleranceNotMet(const std::string& msg, cplx estimate, double error_bound)
        : Error(ErrorKind::ToleranceNotMet, msg), estimate_(estimate), bound_(error_bound)
    {
    }
    cplx estimate() const noexcept { return estimate_; }
    double error_bound() const noexcept { return bound_; }

private:
    cplx estimate_;
    double bound_;
};

class BlowupDetected : public Error {
public:
    BlowupDetected(double t, double max_abs);
    double time() const noexcept { return t_; }
    double max_abs() const noexcept { return max_abs_; }

private:
    double t_;
    double max_abs_;
};

} // namespace nnls
