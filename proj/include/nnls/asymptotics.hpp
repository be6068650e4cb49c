#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "nnls/phase.hpp"
#include "nnls/spectral.hpp"
#include "nnls/types.hpp"

namespace nnls::asym {

struct DeltaOptions {
    double tol = 1e-11;         ///< inner Cauchy-integral tolerance
    int winding_samples = 4000;
    bool waive_winding = false; ///< skip the |Delta| < pi check
};

/// delta(k, k1) = exp{(1/2 pi i) int_{-inf}^{k1} ln(1 + r1 r2)(s) / (s - k) ds}
/// with the continuous logarithm unwound from -inf. When k1 = -A and
/// 1 + r1 r2 vanishes there, the logarithmic part ln((s+A)/s) is integrated
/// in closed form through the dilogarithm and only the regular remainder
/// goes through quadrature.
class DeltaData {
public:
    double A = 0.0;
    double k1 = 0.0;
    std::optional<cplx> nu; ///< nu(k1); absent when 1 + r1 r2 vanishes at k1 = -A
    double Delta_k1 = 0.0;  ///< winding of the (regularized) jump factor at k1
    double winding_max = 0.0;
    bool zero_at_minus_A = false;

    /// ln delta(k) for k off (-inf, k1].
    cplx log_delta(cplx k) const;
    /// ln delta(-A + kappa): kappa carries k + A without cancellation.
    cplx log_delta_offset(cplx kappa) const;
    /// Boundary value from the given side at real zeta < k1.
    cplx log_delta_boundary(double zeta, CutSide side) const;
    cplx delta(cplx k) const { return std::exp(log_delta(k)); }
    /// Continuous logarithm of 1 + r1 r2 at s <= k1.
    cplx log_jump(double s) const;

    struct Impl;
    std::shared_ptr<const Impl> impl;
};

DeltaData delta_data(const spectral::SpectralData& sd, double k1, const DeltaOptions& opt = {});

/// F(k, k1) = exp{-(f(k)/pi) int_{-A}^{A} ln delta(z) / (sqrt(A^2 - z^2)(z - k)) dz}.
class FFunction {
public:
    explicit FFunction(DeltaData delta, double tol = 1e-9);

    /// ln F(k); on the open cut a side is required.
    cplx log_F(cplx k, CutSide side = CutSide::Off) const;
    cplx operator()(cplx k, CutSide side = CutSide::Off) const { return std::exp(log_F(k, side)); }
    /// F_inf = -(i/pi) int_0^pi ln delta(A cos t) dt, the limit F -> exp(i F_inf).
    cplx F_infinity() const;
    /// int_0^pi (ln delta(A cos t) - ln delta(0)) / (A cos t) dt.
    cplx regular_integral_at_zero() const;
    const DeltaData& delta() const { return delta_; }

private:
    cplx phi(double u) const; ///< ln delta(A cos t) with u = pi - t
    bool singular_end() const;
    std::vector<double> breakpoints(std::vector<double> extra) const;
    DeltaData delta_;
    double tol_;
};

/// F_inf(k1) in one call.
cplx F_infinity(const spectral::SpectralData& sd, double k1, double tol = 1e-9);

/// d(A) = gamma_+ F_+^2(0, -A) / (a10 delta^2(0, -A)).
cplx transition_dA(const spectral::SpectralData& sd, double tol = 1e-9);

struct AsymptoticParams {
    phase::RegionTag region = phase::RegionTag::Boundary;
    double k1 = 0.0;
    cplx F_inf{};
    std::optional<cplx> dA;
    double A = 0.0;
    std::optional<cplx> nu;
    /// 1/2 - |Im nu| in the modulated regions; absent for exponential error.
    std::optional<double> error_exponent;
};

/// k1(|xi|) + A without cancellation near |xi| = A/2.
double k1_plus_A(double xi_abs, double A);

/// Parameters for direction xi (modulated or central) at tolerance tol.
AsymptoticParams params_for_direction(const spectral::SpectralData& sd, double xi,
                                      double tol = 1e-9);
/// Parameters for the transition zone around x = 0.
AsymptoticParams params_for_transition(const spectral::SpectralData& sd, double tol = 1e-9);

/// Main terms. Each checks that p belongs to the region of the request.
cplx eval_modulated(const AsymptoticParams& p, double xi, double t);
cplx eval_central(const AsymptoticParams& p, double xi, double t);
cplx eval_transition(const AsymptoticParams& p, double x, double t);

cplx q_modulated(const spectral::SpectralData& sd, double xi, double t, double tol = 1e-9);
cplx q_central(const spectral::SpectralData& sd, double xi, double t, double tol = 1e-9);
cplx q_transition(const spectral::SpectralData& sd, double x, double t, double tol = 1e-9);

/// Exact one-soliton A e^{-2iA^2 t} tanh(Ax - i phi0/2 - i pi/4).
cplx q_soliton(Amplitude A, double phi0, double x, double t);
/// Same solution in the rational-exponential form.
cplx q_soliton_rational(Amplitude A, double phi0, double x, double t);

/// Whether the transition profile is continuous at x = 0.
bool transition_continuous_at_zero(const AsymptoticParams& p, double tol = 1e-8);

/// Caches parameters per direction and picks the evaluator from the region.
class AsymptoticModel {
public:
    AsymptoticModel(spectral::SpectralData sd, double tol = 1e-9);
    /// Main term at (x, t) from the self-similar regions (xi = x/4t).
    cplx by_direction(double x, double t) const;
    /// Main term at (x, t) from the transition profile.
    cplx transition(double x, double t) const;
    const AsymptoticParams& params(double xi) const;
    const AsymptoticParams& transition_params() const;
    const spectral::SpectralData& data() const { return sd_; }

private:
    struct Cache;
    spectral::SpectralData sd_;
    double tol_;
    std::shared_ptr<Cache> cache_;
};

} // namespace nnls::asym
