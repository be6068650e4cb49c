#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nnls/types.hpp"

namespace nnls::spectral {

/// Pure step initial data: -A for x < R, +A for x > R.
struct StepProfile {
    Amplitude A;
    double R = 0.0;
};

/// Step-like initial data given by a sampler.
struct InitialData {
    std::function<cplx(double)> sampler;
    double decay_width = 0.0; ///< |q0 -+ A| < tail_tol beyond this |x|
    double tail_tol = 1e-12;
    std::vector<double> breakpoints; ///< jump locations, integrated piecewise
};

InitialData from_step(const StepProfile& p);
InitialData from_soliton(Amplitude A, double phi0);

/// Piecewise-linear interpolation of tabulated samples (x increasing),
/// extended by -A / +A outside the table. decay_width is estimated from the
/// table with the given tail tolerance.
InitialData from_table(const std::vector<double>& x, const std::vector<cplx>& q, Amplitude A,
                       double tail_tol = 1e-10);

enum class Source { ClosedFormStep, NumericJost, ReflectionlessSoliton };
const char* to_string(Source s);

/// Scattering data. a1 is defined on the closed upper half-plane off
/// [-A, A] (Above side on the cut), a2 on the closed lower half-plane
/// (Below side on the cut), b on the real axis.
struct SpectralData {
    using Fn = std::function<cplx(cplx, CutSide)>;

    Amplitude A;
    Source source;
    Fn a1_fn, a2_fn, b_fn;
    std::optional<cplx> a10;
    std::optional<cplx> gamma_plus;
    std::optional<cplx> gamma_minus;
    bool b_analytic = true; ///< b continues analytically into a band around the real axis

    cplx a1(cplx k, CutSide side = CutSide::Off) const { return a1_fn(k, side); }
    cplx a2(cplx k, CutSide side = CutSide::Off) const { return a2_fn(k, side); }
    cplx b(cplx k, CutSide side = CutSide::Off) const { return b_fn(k, side); }
};

SpectralData step_spectral(const StepProfile& p);
SpectralData soliton_spectral(Amplitude A, double phi0);

struct JostOptions {
    double L = 0.0;        ///< truncation; 0 selects decay_width + 30/A
    double ode_tol = 1e-11;
    long max_steps = 2'000'000;
};

/// Numerical scattering data from Jost solutions of the x-equation at t=0.
/// Real samples outside the cut are interpolated (piecewise cubic); every
/// other evaluation integrates on demand.
SpectralData jost_spectral(const InitialData& data, Amplitude A, const std::vector<cplx>& k_samples,
                           const JostOptions& opt = {});

/// Direct Jost evaluation at one k. Values not available for this k stay empty.
struct JostValues {
    std::optional<cplx> a1, a2, b;
    double det_defect = 0.0; ///< max |det Psi_j(0) - 1| over the integrated full matrices
};
JostValues jost_evaluate(const InitialData& data, Amplitude A, cplx k, CutSide side,
                         const JostOptions& opt = {});

/// Norming constants from the proportionality of Jost columns at k = 0.
struct NormingConstants {
    cplx gamma_plus, gamma_minus;
    double residual_plus, residual_minus; ///< relative misfit of the proportionality
};
NormingConstants jost_norming(const InitialData& data, Amplitude A, const JostOptions& opt = {});

struct Reflection {
    cplx r1, r2;
};

/// r1 = b/a1, r2 = conj(b(-conj k))/a2.
Reflection reflection(const SpectralData& sd, cplx k, CutSide side = CutSide::Off);

/// 1 + r1 r2 at real k outside the cut.
cplx jump_factor(const SpectralData& sd, double k);

/// Coefficient of the simple zero of a1+ at k = 0, from samples at
/// +-0.01A, +-0.02A, +-0.04A.
struct ZeroFit {
    cplx a10;
    cplx value_at_zero; ///< extrapolated a1+(0); zero for a simple zero
    double linear_residual; ///< max relative misfit of a1+ ~ a10 k over the samples
};
ZeroFit fit_a10(const SpectralData& sd);

struct ContourGrid {
    double radius = 50.0;   ///< outer radius in units of A
    double detour = 1e-2;   ///< height of the box around the cut in units of A
    int samples_per_segment = 400;
    int winding_samples = 4000;
};

struct AssumptionReport {
    int a1_winding = 0;
    double a1_winding_raw = 0.0;
    bool a1_zero_free = false;
    cplx a10{};
    cplx a10_zero_value{};
    double a10_linear_residual = 0.0;
    bool simple_zero_at_0 = false;
    bool re_a10_zero = false;
    double winding_max = 0.0;   ///< max |Delta(k)| over (-inf, -A)
    double winding_at_minus_A = 0.0;
    bool winding_in_range = false;
    bool zero_at_minus_A = false;
    double jump_at_minus_A = 0.0; ///< |1 + r1 r2| extrapolated to -A
    std::optional<cplx> gamma_plus;
    bool assumptions_hold() const
    {
        return a1_zero_free && simple_zero_at_0 && re_a10_zero && winding_in_range;
    }
    std::string to_json() const;
};

AssumptionReport check_assumptions(const SpectralData& sd, const ContourGrid& grid = {});

/// Value of 1 + r1 r2 at -A by cubic extrapolation from the left, with the
/// local derivative scale used for zero detection.
struct EndpointJump {
    cplx value;
    double scale;
    bool is_zero;
};
EndpointJump endpoint_jump(const SpectralData& sd);

} // namespace nnls::spectral
