#include <algorithm>
#include <cmath>

#include <gsl/gsl_sf_dilog.h>
#include <gsl/gsl_sf_result.h>

#include "nnls/asymptotics.hpp"
#include "nnls/branches.hpp"
#include "nnls/error.hpp"
#include "nnls/quadrature.hpp"

namespace nnls::asym {

struct DeltaData::Impl {
    explicit Impl(spectral::SpectralData s) : sd(std::move(s)) {}
    spectral::SpectralData sd;
    double A = 0.0;
    double k1 = 0.0;
    double k1pA = 0.0; ///< k1 + A
    bool at_minus_A = false;
    bool zero = false;
    double tol = 1e-11;
    double umin = 0.0; ///< half-width of the extrapolated window left of -A
    quad::WindingTable table;
    cplx L1{}, L2{}; ///< regular log at -A - umin and -A - 2 umin
    quad::IntegrandSpec spec;

    cplx ratio(double s) const
    {
        cplx v = spectral::jump_factor(sd, s);
        if (zero)
            v *= s / (s + A);
        return v;
    }

    cplx lreg_raw(double s) const
    {
        const cplx r = ratio(s);
        const double a = std::arg(r);
        const double n = std::round((table.interpolate(s) - a) / (2.0 * pi));
        return {std::log(std::abs(r)), a + 2.0 * pi * n};
    }

    cplx lreg(double s) const
    {
        if (at_minus_A && s > -A - umin) {
            const double u = -A - s;
            return L1 + (L1 - L2) * ((umin - u) / umin);
        }
        return lreg_raw(s);
    }

    // G_reg at pole -A + kappa; d = pole - k1.
    cplx g_reg(cplx kappa) const
    {
        const cplx d = kappa - k1pA;
        const double guard = 2.0 * quad::pole_guard;
        if (kappa.real() > k1pA && std::abs(d) < guard && std::abs(d) > 0.0) {
            // beyond the endpoint but inside the guard: the subtracted part is
            // continuous, the log part is exact
            const cplx d2 = d * (guard / std::abs(d));
            return g_reg_direct(k1pA + d2, d2) + lreg(k1) * std::log(std::abs(d) / guard);
        }
        return g_reg_direct(kappa, d);
    }

    cplx g_reg_direct(cplx kappa, cplx d) const
    {
        quad::CauchyOptions o;
        o.pole_minus_upper = d;
        try {
            return quad::cauchy_semiinfinite(spec, k1, cplx(-A) + kappa, tol, o).value;
        } catch (const ToleranceNotMet& e) {
            // tol is relative once ln delta grows large near the endpoint
            if (e.error_bound() <= tol * std::abs(e.estimate()))
                return e.estimate();
            throw;
        }
    }

    // pi^2/6 - Li2(k/(k+A)): integral of ln((s+A)/s)/(s-k) over (-inf, -A).
    cplx g_sing(cplx kappa) const
    {
        const cplx z = (kappa - A) / kappa;
        gsl_sf_result re, im;
        gsl_sf_complex_dilog_xy_e(z.real(), z.imag(), &re, &im);
        return pi * pi / 6.0 - cplx(re.val, im.val);
    }
};

DeltaData delta_data(const spectral::SpectralData& sd, double k1, const DeltaOptions& opt)
{
    const double A = sd.A;
    if (!(k1 <= -A * (1.0 - 1e-14)))
        throw Error(ErrorKind::Domain, "delta endpoint k1 must satisfy k1 <= -A");
    auto im = std::make_shared<DeltaData::Impl>(sd);
    im->A = A;
    im->at_minus_A = std::abs(k1 + A) <= 1e-14 * A;
    im->k1 = im->at_minus_A ? -A : k1;
    im->k1pA = im->at_minus_A ? 0.0 : k1 + A;
    im->tol = opt.tol;
    im->umin = 1e-6 * A;
    im->zero = im->at_minus_A && spectral::endpoint_jump(sd).is_zero;

    const double k_end = im->at_minus_A ? -A - im->umin : im->k1;
    im->table = quad::winding_table([&](double s) { return im->ratio(s); }, k_end, A,
                                    opt.winding_samples);
    if (im->at_minus_A) {
        im->L1 = im->lreg_raw(-A - im->umin);
        im->L2 = im->lreg_raw(-A - 2.0 * im->umin);
    }
    if (!opt.waive_winding && !im->at_minus_A && im->table.max_abs >= pi)
        throw Error(ErrorKind::WindingOutOfRange,
                    "argument of 1 + r1 r2 leaves (-pi, pi) on (-inf, k1]");

    im->spec.eval = [raw = im.get()](double s) { return raw->lreg(s); };
    im->spec.decay_estimate = A;
    im->spec.tail = quad::TailKind::Algebraic;
    im->spec.tail_power = 1.0;
    if (im->k1pA > -0.05 * A)
        im->spec.singular_points.push_back({im->k1, quad::SingularityKind::Power, 0.5});

    DeltaData d;
    d.A = A;
    d.k1 = im->k1;
    d.zero_at_minus_A = im->zero;
    d.winding_max = im->table.max_abs;
    const cplx Lk1 = im->lreg(im->k1);
    d.Delta_k1 = Lk1.imag();
    if (!im->zero)
        d.nu = -Lk1 / (2.0 * pi);
    d.impl = im;
    return d;
}

cplx DeltaData::log_delta_offset(cplx kappa) const
{
    const Impl& m = *impl;
    cplx G = m.g_reg(kappa);
    if (m.zero)
        G += m.g_sing(kappa);
    return G / (2.0 * pi * I);
}

cplx DeltaData::log_delta(cplx k) const { return log_delta_offset(k + A); }

cplx DeltaData::log_delta_boundary(double zeta, CutSide side) const
{
    const Impl& m = *impl;
    if (!(zeta < k1))
        throw Error(ErrorKind::Domain, "delta boundary value needs zeta < k1");
    cplx G = quad::cauchy_boundary_value(m.spec, k1, zeta, side, m.tol).value;
    if (m.zero) {
        const double x = zeta / (zeta + A);
        const double sgn = side == CutSide::Above ? 1.0 : -1.0;
        G += pi * pi / 6.0 - cplx(gsl_sf_dilog(x), sgn * pi * std::log(x));
    }
    return G / (2.0 * pi * I);
}

cplx DeltaData::log_jump(double s) const
{
    const Impl& m = *impl;
    if (s > k1)
        throw Error(ErrorKind::Domain, "log_jump is defined on (-inf, k1]");
    cplx L = m.lreg(s);
    if (m.zero)
        L += std::log((s + A) / s);
    return L;
}

FFunction::FFunction(DeltaData delta, double tol) : delta_(std::move(delta)), tol_(tol) {}

bool FFunction::singular_end() const
{
    return delta_.zero_at_minus_A || delta_.k1 + delta_.A > -0.05 * delta_.A;
}

std::vector<double> FFunction::breakpoints(std::vector<double> extra) const
{
    // k1 just left of -A: ln delta varies on the angular scale of k1 + A
    const double gap = -(delta_.k1 + delta_.A);
    if (gap > 0.0 && gap < 0.05 * delta_.A)
        extra.push_back(pi - 2.0 * std::asin(std::sqrt(gap / (2.0 * delta_.A))));
    return extra;
}

cplx FFunction::phi(double u) const
{
    const double s = std::sin(0.5 * u);
    const double kappa = 2.0 * delta_.A * s * s;
    // the quadrature weight below this offset is far under double resolution
    if (kappa < 1e-280 * delta_.A)
        return 0.0;
    return delta_.log_delta_offset(kappa);
}

cplx FFunction::log_F(cplx k, CutSide side) const
{
    const double A = delta_.A;
    const cplx f = branches::f(k, Amplitude(A), side);
    const double re = k.real();
    const double dist = std::abs(re) <= A ? std::abs(k.imag()) : std::abs(k - (re < 0 ? -A : A));
    // zeta - k with zeta = A cos t = -A + 2A sin^2(u/2)
    auto zeta_minus_k = [&](double u) {
        const double s = std::sin(0.5 * u);
        return 2.0 * A * s * s - A - k;
    };
    if (dist >= 0.5 * A) {
        const auto r = quad::chebyshev_angle_integral(
            [&](double, double u) { return phi(u) / zeta_minus_k(u); }, tol_, singular_end(),
            breakpoints({}));
        return -(f / pi) * r.value;
    }
    // near the cut: subtract ln delta(x0), whose Cauchy integral is -pi/f(k)
    const double x0 = std::clamp(re, -A * (1.0 - 1e-3), A * (1.0 - 1e-3));
    const cplx phi0 = delta_.log_delta_offset(x0 + A);
    const double t0 = std::acos(x0 / A);
    const quad::AngleFn g = [&](double, double u) -> cplx {
        const cplx den = zeta_minus_k(u);
        if (den == cplx{})
            return 0.0;
        return (phi(u) - phi0) / den;
    };
    try {
        return -(f / pi) * quad::chebyshev_angle_integral(g, tol_, singular_end(), breakpoints({t0})).value + phi0;
    } catch (const ToleranceNotMet& e) {
        // the integral grows like 1/|f| towards the endpoints; judge the error on ln F itself
        const cplx v = -(f / pi) * e.estimate() + phi0;
        if (std::abs(f) / pi * e.error_bound() <= tol_ * std::max(1.0, std::abs(v)))
            return v;
        throw;
    }
}

cplx FFunction::F_infinity() const
{
    const auto r = quad::chebyshev_angle_integral([&](double, double u) { return phi(u); }, tol_,
                                                  singular_end(), breakpoints({}));
    return -(I / pi) * r.value;
}

cplx FFunction::regular_integral_at_zero() const
{
    const double A = delta_.A;
    const cplx phi0 = delta_.log_delta_offset(A);
    return quad::chebyshev_angle_integral(
               [&](double t, double u) -> cplx {
                   const double z = A * std::cos(t);
                   if (z == 0.0)
                       return 0.0;
                   return (phi(u) - phi0) / z;
               },
               tol_, singular_end(), breakpoints({0.5 * pi}))
        .value;
}

cplx F_infinity(const spectral::SpectralData& sd, double k1, double tol)
{
    return FFunction(delta_data(sd, k1), tol).F_infinity();
}

cplx transition_dA(const spectral::SpectralData& sd, double tol)
{
    if (!sd.gamma_plus)
        throw Error(ErrorKind::MissingNormingConstant, "gamma_+ is not available for these data");
    if (!sd.a10)
        throw Error(ErrorKind::MissingNormingConstant, "a1 has no simple zero at k = 0 (a10 missing)");
    DeltaOptions o;
    o.waive_winding = true;
    const FFunction F(delta_data(sd, -double(sd.A), o), tol);
    const double A = sd.A;
    // F_+^2(0)/delta^2(0) = exp(-(2 f_+(0)/pi) C_reg(0)), f_+(0) = iA
    const cplx ratio = std::exp(-(2.0 * I * A / pi) * F.regular_integral_at_zero());
    return *sd.gamma_plus / *sd.a10 * ratio;
}

} // namespace nnls::asym
