#include "nnls/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace nnls {

Amplitude::Amplitude(double a) : a_(a)
{
    if (!(a > 0.0) || !std::isfinite(a))
        throw Error(ErrorKind::Domain, "amplitude A must be positive and finite");
}

double Mat2::max_abs() const
{
    return std::max({std::abs(m11), std::abs(m12), std::abs(m21), std::abs(m22)});
}

const char* to_string(CutSide s)
{
    switch (s) {
    case CutSide::Above: return "above";
    case CutSide::Below: return "below";
    case CutSide::Off: return "off";
    }
    return "?";
}

const char* to_string(ErrorKind k)
{
    switch (k) {
    case ErrorKind::Domain: return "domain";
    case ErrorKind::BranchPoint: return "branch_point";
    case ErrorKind::BranchPointProximity: return "branch_point_proximity";
    case ErrorKind::OdeToleranceFailure: return "ode_tolerance_failure";
    case ErrorKind::DivisionByZeroSpectral: return "division_by_zero_spectral";
    case ErrorKind::InconclusiveWinding: return "inconclusive_winding";
    case ErrorKind::WindingOutOfRange: return "winding_out_of_range";
    case ErrorKind::PoleOnContour: return "pole_on_contour";
    case ErrorKind::ToleranceNotMet: return "tolerance_not_met";
    case ErrorKind::MissingNormingConstant: return "missing_norming_constant";
    case ErrorKind::RegionMismatch: return "region_mismatch";
    case ErrorKind::SingularStation: return "singular_station";
    case ErrorKind::SolitonPole: return "soliton_pole";
    case ErrorKind::BlowupDetected: return "blowup";
    case ErrorKind::CflViolation: return "cfl_violation";
    case ErrorKind::Unavailable: return "unavailable";
    case ErrorKind::Io: return "io";
    case ErrorKind::Config: return "config";
    }
    return "unknown";
}

int exit_code(ErrorKind k)
{
    switch (k) {
    case ErrorKind::Io:
    case ErrorKind::Config:
        return 2;
    case ErrorKind::BlowupDetected:
        return 4;
    case ErrorKind::OdeToleranceFailure:
    case ErrorKind::ToleranceNotMet:
    case ErrorKind::InconclusiveWinding:
        return 5;
    default:
        return 3;
    }
}

namespace {
std::string blowup_message(double t, double m)
{
    std::ostringstream os;
    os << "solution blew up at t=" << t << " (max|q|=" << m << ")";
    return os.str();
}
} // namespace

BlowupDetected::BlowupDetected(double t, double max_abs)
    : Error(ErrorKind::BlowupDetected, blowup_message(t, max_abs)), t_(t), max_abs_(max_abs)
{
}

} // namespace nnls
