#include <cmath>
#include <map>
#include <mutex>

#include "nnls/asymptotics.hpp"
#include "nnls/error.hpp"

namespace nnls::asym {

using phase::RegionTag;

namespace {

bool modulated(RegionTag r) { return r == RegionTag::ModulatedPlus || r == RegionTag::ModulatedMinus; }
bool central(RegionTag r) { return r == RegionTag::CentralPlus || r == RegionTag::CentralMinus; }

RegionTag region_of(double xi, double A)
{
    return phase::classify({xi, Amplitude(A)});
}

// +-A e^{-+2 Im F} e^{-2i(A^2 t - Re F)}
cplx plane_wave(double A, cplx Finf, double t, bool plus)
{
    const cplx phase = std::exp(-2.0 * I * (A * A * t - Finf.real()));
    return plus ? A * std::exp(-2.0 * Finf.imag()) * phase : -A * std::exp(2.0 * Finf.imag()) * phase;
}

} // namespace

double k1_plus_A(double xi_abs, double A)
{
    return A * (A - 2.0 * xi_abs) / (2.0 * A - xi_abs + std::sqrt(xi_abs * xi_abs + 2.0 * A * A));
}

AsymptoticParams params_for_direction(const spectral::SpectralData& sd, double xi, double tol)
{
    const double A = sd.A;
    AsymptoticParams p;
    p.A = A;
    p.region = region_of(xi, A);
    if (modulated(p.region)) {
        p.k1 = -A + k1_plus_A(std::abs(xi), A);
        const DeltaData d = delta_data(sd, p.k1);
        p.F_inf = FFunction(d, tol).F_infinity();
        p.nu = d.nu;
        p.error_exponent = 0.5 - std::abs(d.nu->imag());
        return p;
    }
    if (central(p.region)) {
        DeltaOptions o;
        o.waive_winding = true;
        p.k1 = -A;
        p.F_inf = FFunction(delta_data(sd, -A, o), tol).F_infinity();
        return p;
    }
    throw Error(ErrorKind::RegionMismatch, "direction lies on a region boundary (xi = 0 or |xi| = A/2)");
}

AsymptoticParams params_for_transition(const spectral::SpectralData& sd, double tol)
{
    const double A = sd.A;
    AsymptoticParams p;
    p.A = A;
    p.region = RegionTag::TransitionAxis;
    p.k1 = -A;
    DeltaOptions o;
    o.waive_winding = true;
    p.F_inf = FFunction(delta_data(sd, -A, o), tol).F_infinity();
    p.dA = transition_dA(sd, tol);
    return p;
}

cplx eval_modulated(const AsymptoticParams& p, double xi, double t)
{
    const RegionTag r = region_of(xi, p.A);
    if (!modulated(r) || !modulated(p.region))
        throw Error(ErrorKind::RegionMismatch, "q_modulated needs |xi| > A/2");
    const double k1 = -p.A + k1_plus_A(std::abs(xi), p.A);
    if (std::abs(k1 - p.k1) > 1e-12 * p.A)
        throw Error(ErrorKind::RegionMismatch, "parameters were computed for another direction");
    return plane_wave(p.A, p.F_inf, t, xi > 0);
}

cplx eval_central(const AsymptoticParams& p, double xi, double t)
{
    const RegionTag r = region_of(xi, p.A);
    if (!central(r) || !(central(p.region) || p.region == RegionTag::TransitionAxis))
        throw Error(ErrorKind::RegionMismatch, "q_central needs 0 < |xi| < A/2");
    return plane_wave(p.A, p.F_inf, t, xi > 0);
}

cplx eval_transition(const AsymptoticParams& p, double x, double t)
{
    if (p.region != RegionTag::TransitionAxis || !p.dA)
        throw Error(ErrorKind::RegionMismatch, "transition parameters are required");
    if (x == 0.0)
        throw Error(ErrorKind::RegionMismatch, "the transition profile excludes x = 0");
    const double A = p.A;
    const cplx d = *p.dA;
    if (x > 0) {
        const cplx e = I * d * std::exp(-2.0 * A * x);
        const cplx den = 2.0 * A + e;
        if (std::abs(den) < 1e-8)
            throw Error(ErrorKind::SingularStation, "x is the singular station x'");
        return plane_wave(A, p.F_inf, t, true) * (2.0 * A - e) / den;
    }
    // numerator and denominator multiplied by e^{2Ax} to stay bounded as x -> -inf
    const cplx e = I * std::conj(d) * std::exp(2.0 * A * x);
    const cplx den = 2.0 * A - e;
    if (std::abs(den) < 1e-8)
        throw Error(ErrorKind::SingularStation, "x is the singular station x''");
    return plane_wave(A, p.F_inf, t, false) * (2.0 * A + e) / den;
}

cplx q_modulated(const spectral::SpectralData& sd, double xi, double t, double tol)
{
    if (!modulated(region_of(xi, sd.A)))
        throw Error(ErrorKind::RegionMismatch, "q_modulated needs |xi| > A/2");
    return eval_modulated(params_for_direction(sd, xi, tol), xi, t);
}

cplx q_central(const spectral::SpectralData& sd, double xi, double t, double tol)
{
    if (!central(region_of(xi, sd.A)))
        throw Error(ErrorKind::RegionMismatch, "q_central needs 0 < |xi| < A/2");
    return eval_central(params_for_direction(sd, xi, tol), xi, t);
}

cplx q_transition(const spectral::SpectralData& sd, double x, double t, double tol)
{
    if (x == 0.0)
        throw Error(ErrorKind::RegionMismatch, "the transition profile excludes x = 0");
    return eval_transition(params_for_transition(sd, tol), x, t);
}

namespace {

void check_soliton_pole(double A, double phi0, double x)
{
    // 1 + i e^{-2Ax + i phi0} = 0 in a form that does not overflow for x < 0
    const double m = std::exp(-2.0 * A * std::abs(x));
    const cplx rot = I * std::exp(I * phi0);
    const cplx v = x >= 0 ? 1.0 + rot * m : m + rot;
    if (std::abs(v) < 1e-12)
        throw Error(ErrorKind::SolitonPole, "(x, phi0) is a pole of the one-soliton");
}

} // namespace

cplx q_soliton(Amplitude Aa, double phi0, double x, double t)
{
    const double A = Aa;
    check_soliton_pole(A, phi0, x);
    return A * std::exp(-2.0 * I * A * A * t) * std::tanh(cplx(A * x, -0.5 * phi0 - 0.25 * pi));
}

cplx q_soliton_rational(Amplitude Aa, double phi0, double x, double t)
{
    const double A = Aa;
    check_soliton_pole(A, phi0, x);
    const cplx rot = I * std::exp(I * phi0);
    const cplx carrier = A * std::exp(-2.0 * I * A * A * t);
    if (x >= 0) {
        const cplx e = rot * std::exp(-2.0 * A * x);
        return carrier * (1.0 - e) / (1.0 + e);
    }
    const double m = std::exp(2.0 * A * x);
    return carrier * (m - rot) / (m + rot);
}

bool transition_continuous_at_zero(const AsymptoticParams& p, double tol)
{
    if (!p.dA)
        throw Error(ErrorKind::RegionMismatch, "transition parameters are required");
    const double A = p.A;
    const cplx d = *p.dA;
    const bool first = std::abs(p.F_inf.imag()) < tol && std::abs(std::abs(d) - 2.0 * A) < tol * A &&
                       std::abs(d - 2.0 * I * A) > tol * A;
    const bool second = std::abs(d + 2.0 * I * A) < tol * A;
    return first || second;
}

struct AsymptoticModel::Cache {
    std::mutex mu;
    std::map<double, AsymptoticParams> modulated; ///< keyed by |xi|
    std::optional<AsymptoticParams> central;
    std::optional<AsymptoticParams> transition;
};

AsymptoticModel::AsymptoticModel(spectral::SpectralData sd, double tol)
    : sd_(std::move(sd)), tol_(tol), cache_(std::make_shared<Cache>())
{
}

const AsymptoticParams& AsymptoticModel::params(double xi) const
{
    const RegionTag r = region_of(xi, sd_.A);
    std::lock_guard<std::mutex> lock(cache_->mu);
    if (modulated(r)) {
        const double key = std::abs(xi);
        auto it = cache_->modulated.find(key);
        if (it == cache_->modulated.end())
            it = cache_->modulated.emplace(key, params_for_direction(sd_, key, tol_)).first;
        return it->second;
    }
    if (central(r)) {
        if (!cache_->central)
            cache_->central = params_for_direction(sd_, 0.25 * double(sd_.A), tol_);
        return *cache_->central;
    }
    throw Error(ErrorKind::RegionMismatch, "direction lies on a region boundary (xi = 0 or |xi| = A/2)");
}

const AsymptoticParams& AsymptoticModel::transition_params() const
{
    std::lock_guard<std::mutex> lock(cache_->mu);
    if (!cache_->transition)
        cache_->transition = params_for_transition(sd_, tol_);
    return *cache_->transition;
}

cplx AsymptoticModel::by_direction(double x, double t) const
{
    if (!(t > 0))
        throw Error(ErrorKind::Domain, "asymptotic evaluation needs t > 0");
    const double xi = x / (4.0 * t);
    const AsymptoticParams& p = params(xi);
    if (modulated(p.region)) {
        // parameters are stored for |xi|; the sign only selects the branch
        return plane_wave(p.A, p.F_inf, t, xi > 0);
    }
    return eval_central(p, xi, t);
}

cplx AsymptoticModel::transition(double x, double t) const
{
    return eval_transition(transition_params(), x, t);
}

} // namespace nnls::asym
