#include "nnls/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "nnls/branches.hpp"
#include "nnls/error.hpp"

namespace nnls::spectral {

namespace {

// Any branch of (k^2 + A^2)^{1/2}: the closed forms are even in h, so the
// vertical cut is irrelevant and k = 0 may take h = A.
cplx h_even(cplx k, double A)
{
    if (k == cplx{})
        return A;
    const cplx r = A / k;
    return k * std::sqrt(1.0 + r * r);
}

struct StepForms {
    cplx a1, a2, b;
};

StepForms step_forms(cplx k, CutSide side, double A, double R)
{
    const Amplitude Aa(A);
    const cplx f = branches::f(k, Aa, side);
    if (R == 0.0)
        return {k / f, k / f, -I * A / f};
    const cplx h = h_even(k, A);
    const cplx l1 = I * (f + h);
    const cplx l2 = I * (f - h);
    const double A2 = A * A;
    const cplx den = 2.0 * f * h;
    // shape shared by the two sign cases of R
    const cplx p = (std::exp(2.0 * l1 * R) * (A2 + I * k * l2) -
                    std::exp(2.0 * l2 * R) * (A2 + I * k * l1)) / den;
    const cplx m = (std::exp(-2.0 * l2 * R) * (A2 - I * k * l1) -
                    std::exp(-2.0 * l1 * R) * (A2 - I * k * l2)) / den;
    const cplx b = -I * A / den *
                   (std::exp(2.0 * I * h * R) * (h + k) + std::exp(-2.0 * I * h * R) * (h - k));
    return R > 0 ? StepForms{p, m, b} : StepForms{m, p, b};
}

} // namespace

const char* to_string(Source s)
{
    switch (s) {
    case Source::ClosedFormStep: return "closed_form_step";
    case Source::NumericJost: return "numeric_jost";
    case Source::ReflectionlessSoliton: return "reflectionless_soliton";
    }
    return "?";
}

InitialData from_step(const StepProfile& p)
{
    const double A = p.A, R = p.R;
    InitialData d;
    d.sampler = [A, R](double x) -> cplx {
        if (x > R)
            return A;
        if (x < R)
            return -A;
        return 0.0;
    };
    d.decay_width = std::abs(R);
    d.tail_tol = 0.0;
    d.breakpoints = {R};
    return d;
}

InitialData from_soliton(Amplitude Aa, double phi0)
{
    const double A = Aa;
    InitialData d;
    d.sampler = [A, phi0](double x) -> cplx {
        return A * std::tanh(cplx(A * x, -0.5 * phi0 - 0.25 * pi));
    };
    d.tail_tol = 1e-13;
    // |tanh(z) - sign| ~ 2 e^{-2A|x|}
    d.decay_width = std::log(2.0 / d.tail_tol) / (2.0 * A);
    return d;
}

InitialData from_table(const std::vector<double>& x, const std::vector<cplx>& q, Amplitude Aa,
                       double tail_tol)
{
    const double A = Aa;
    if (x.size() != q.size() || x.size() < 2)
        throw Error(ErrorKind::Config, "initial-data table needs matching x and q columns (>= 2 rows)");
    for (std::size_t i = 1; i < x.size(); ++i)
        if (!(x[i] > x[i - 1]))
            throw Error(ErrorKind::Config, "initial-data table must have strictly increasing x");
    InitialData d;
    auto xs = std::make_shared<std::vector<double>>(x);
    auto qs = std::make_shared<std::vector<cplx>>(q);
    d.sampler = [xs, qs, A](double t) -> cplx {
        const auto& X = *xs;
        if (t < X.front())
            return -A;
        if (t > X.back())
            return A;
        auto it = std::upper_bound(X.begin(), X.end(), t);
        if (it == X.end())
            return qs->back();
        const std::size_t i = static_cast<std::size_t>(it - X.begin());
        const double u = (t - X[i - 1]) / (X[i] - X[i - 1]);
        return (1.0 - u) * (*qs)[i - 1] + u * (*qs)[i];
    };
    double w = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double target = x[i] >= 0 ? A : -A;
        if (std::abs(q[i] - target) >= tail_tol)
            w = std::max(w, std::abs(x[i]));
    }
    d.decay_width = w;
    d.tail_tol = tail_tol;
    return d;
}

SpectralData step_spectral(const StepProfile& p)
{
    const double A = p.A, R = p.R;
    SpectralData sd{p.A, Source::ClosedFormStep, nullptr, nullptr, nullptr, {}, {}, {}, true};
    sd.a1_fn = [A, R](cplx k, CutSide s) { return step_forms(k, s, A, R).a1; };
    sd.a2_fn = [A, R](cplx k, CutSide s) { return step_forms(k, s, A, R).a2; };
    sd.b_fn = [A, R](cplx k, CutSide s) { return step_forms(k, s, A, R).b; };
    if (R == 0.0) {
        sd.a10 = -I / A;
    } else if (std::abs(std::sin(2.0 * A * R)) < 1e-14) {
        sd.a10 = fit_a10(sd).a10;
    }
    sd.gamma_plus = sd.b(0.0, CutSide::Above);
    sd.gamma_minus = -std::conj(sd.b(0.0, CutSide::Below));
    return sd;
}

SpectralData soliton_spectral(Amplitude Aa, double phi0)
{
    const double A = Aa;
    SpectralData sd{Aa, Source::ReflectionlessSoliton, nullptr, nullptr, nullptr, {}, {}, {}, true};
    sd.a1_fn = [A](cplx k, CutSide s) {
        const cplx kf = k + branches::f(k, Amplitude(A), s);
        return (kf - I * A) / (kf + I * A);
    };
    sd.a2_fn = [A](cplx k, CutSide s) {
        const cplx kf = k + branches::f(k, Amplitude(A), s);
        return (kf + I * A) / (kf - I * A);
    };
    sd.b_fn = [](cplx, CutSide) { return cplx{}; };
    sd.a10 = -I / (2.0 * A);
    sd.gamma_plus = -I * std::exp(I * phi0);
    sd.gamma_minus = sd.gamma_plus;
    return sd;
}

Reflection reflection(const SpectralData& sd, cplx k, CutSide side)
{
    const cplx a1 = sd.a1(k, side);
    const cplx a2 = sd.a2(k, side);
    if (std::abs(a1) < 1e-12 || std::abs(a2) < 1e-12)
        throw Error(ErrorKind::DivisionByZeroSpectral, "a1 or a2 vanishes at the evaluation point");
    const cplx b = sd.b(k, side);
    const cplx bm = sd.b(-std::conj(k), side);
    return {b / a1, std::conj(bm) / a2};
}

cplx jump_factor(const SpectralData& sd, double k)
{
    // For exact data the determinant relation gives 1 + r1 r2 = 1/(a1 a2)
    // without the cancellation of 1 + r1 r2 near k = -A.
    if (sd.source != Source::NumericJost)
        return 1.0 / (sd.a1(k) * sd.a2(k));
    const Reflection r = reflection(sd, k);
    return 1.0 + r.r1 * r.r2;
}

ZeroFit fit_a10(const SpectralData& sd)
{
    const double A = sd.A;
    const double hs[3] = {0.01 * A, 0.02 * A, 0.04 * A};
    cplx D[3], S[3];
    double num = 0.0;
    cplx cross{};
    std::vector<std::pair<double, cplx>> pts;
    for (int i = 0; i < 3; ++i) {
        const cplx ap = sd.a1(hs[i], CutSide::Above);
        const cplx am = sd.a1(-hs[i], CutSide::Above);
        D[i] = (ap - am) / (2.0 * hs[i]);
        S[i] = 0.5 * (ap + am);
        pts.emplace_back(hs[i], ap);
        pts.emplace_back(-hs[i], am);
        num += 2.0 * hs[i] * hs[i];
        cross += hs[i] * ap - hs[i] * am;
    }
    // Richardson on h, 2h, 4h: the quintic through the six samples
    auto richardson = [](const cplx* v) {
        const cplx r1 = (4.0 * v[0] - v[1]) / 3.0;
        const cplx r2 = (4.0 * v[1] - v[2]) / 3.0;
        return (16.0 * r1 - r2) / 15.0;
    };
    ZeroFit z;
    z.a10 = richardson(D);
    z.value_at_zero = richardson(S);
    const cplx c = cross / num;
    double worst = 0.0, scale = 0.0;
    for (const auto& [k, a] : pts) {
        worst = std::max(worst, std::abs(a - c * k));
        scale = std::max(scale, std::abs(a));
    }
    z.linear_residual = scale > 0 ? worst / scale : 0.0;
    return z;
}

EndpointJump endpoint_jump(const SpectralData& sd)
{
    const double A = sd.A;
    const double hstep = 1e-3 * A;
    cplx v[4];
    for (int i = 0; i < 4; ++i)
        v[i] = jump_factor(sd, -A - (i + 1) * hstep);
    EndpointJump e;
    e.value = 4.0 * v[0] - 6.0 * v[1] + 4.0 * v[2] - v[3];
    const double slope = std::abs(v[1] - v[0]) / hstep;
    e.scale = std::max({slope * A, std::abs(v[3]), 1e-300});
    e.is_zero = std::abs(e.value) < 1e-6 * e.scale;
    return e;
}

} // namespace nnls::spectral
