#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "nnls/types.hpp"

/// Singular-integral primitives: semi-infinite Cauchy integrals, Plemelj
/// boundary values, Chebyshev-weight integrals on (-A, A), and continuous
/// argument tracking along (-inf, k_end].
namespace nnls::quad {

enum class SingularityKind { Log, Power };

struct SingularPoint {
    double location;
    SingularityKind kind = SingularityKind::Log;
    double exponent = 0.0; ///< for Power: |g| ~ |x - location|^exponent
};

enum class TailKind { Algebraic, Exponential };

/// A complex integrand on a real interval together with the facts the
/// quadrature needs: a length scale, the tail law, and integrable
/// singularities that must sit on cell edges.
struct IntegrandSpec {
    std::function<cplx(double)> eval;
    double decay_estimate = 1.0; ///< length scale of the tail
    TailKind tail = TailKind::Algebraic;
    double tail_power = 2.0; ///< |g(x)| ~ |x|^{-tail_power} for Algebraic
    std::vector<SingularPoint> singular_points;
};

struct QuadResult {
    cplx value{};
    double error = 0.0;      ///< estimated absolute error, truncation included
    double truncation = 0.0; ///< bound on the discarded tail
    double cutoff = 0.0;     ///< T such that the tail beyond -T was dropped
    long evaluations = 0;
};

struct CauchyOptions {
    /// pole - upper, supplied exactly when the pole sits closer to the
    /// endpoint than double rounding of `pole` can resolve.
    std::optional<cplx> pole_minus_upper;
    /// distance below which the pole counts as near and the integrand is
    /// split as (g - g(x0)) + g(x0); defaults to decay_estimate / 2.
    std::optional<double> near_distance;
};

/// Distance below which a pole is rejected as lying on the contour.
inline constexpr double pole_guard = 1e-8;

/// Integral of g(z)/(z - pole) over (-inf, upper].
QuadResult cauchy_semiinfinite(const IntegrandSpec& g, double upper, cplx pole, double tol,
                               const CauchyOptions& opt = {});

/// Boundary value of the Cauchy integral at x0 < upper from the given side:
/// PV integral plus or minus i*pi*g(x0).
QuadResult cauchy_boundary_value(const IntegrandSpec& g, double upper, double x0, CutSide side,
                                 double tol);

/// Plain integral of g over (-inf, upper].
QuadResult integrate_semiinfinite(const IntegrandSpec& g, double upper, double tol);

/// Integral of g over [a, b] with adaptive Gauss-Kronrod, or tanh-sinh when
/// an endpoint carries an integrable singularity.
QuadResult integrate_interval(const std::function<cplx(double)>& g, double a, double b, double tol,
                              bool singular_ends = false);

/// Integral over t in [0, pi]. Smooth integrands use the midpoint rule
/// (Gauss-Chebyshev in zeta = A cos t) with doubling; singular endpoints or
/// interior breakpoints switch to tanh-sinh cells.
QuadResult chebyshev_angle_integral(const std::function<cplx(double)>& g, double tol,
                                    bool endpoint_singular = false,
                                    const std::vector<double>& breakpoints = {});

/// Same integral for g(t, pi - t), with the second argument exact near t = pi.
using AngleFn = std::function<cplx(double, double)>;
QuadResult chebyshev_angle_integral(const AngleFn& g, double tol, bool endpoint_singular = false,
                                    const std::vector<double>& breakpoints = {});

/// Integral of phi(z)/sqrt(A^2 - z^2) over (-A, A).
QuadResult chebyshev_cut_integral(const IntegrandSpec& phi, Amplitude A, double tol);

/// Sampled continuous argument of a path along (-inf, k_end].
struct WindingTable {
    std::vector<double> s;   ///< increasing abscissae, last entry is k_end
    std::vector<double> arg; ///< unwound argument, arg -> 0 at -inf
    double total = 0.0;      ///< arg at k_end
    double max_abs = 0.0;    ///< max |arg| over the samples
    double interpolate(double x) const;
};

/// Unwinds arg(path) from -inf (where path ~ 1) to k_end. Adjacent samples
/// whose argument jump exceeds pi/2 are refined; failure to resolve throws
/// InconclusiveWinding.
WindingTable winding_table(const std::function<cplx(double)>& path, double k_end, double scale,
                           int samples);

/// Total argument increment of gamma.eval along (-inf, k_end].
double winding(const IntegrandSpec& gamma, double k_end, int samples);

} // namespace nnls::quad
