#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <memory>

#include <boost/numeric/odeint.hpp>

#include "nnls/branches.hpp"
#include "nnls/error.hpp"
#include "nnls/spectral.hpp"

namespace nnls::spectral {

namespace {

using State = std::array<cplx, 2>;

// Column equation v' = (U(x) - i k sigma3 + s i f) v with
// U = [[0, q(x)], [-conj(q(-x)), 0]].
struct ColumnSystem {
    const std::function<cplx(double)>* q;
    cplx k, f;
    double s;
    void operator()(const State& v, State& dv, double x) const
    {
        const cplx qx = (*q)(x);
        const cplx qm = std::conj((*q)(-x));
        const cplx shift = s * I * f;
        dv[0] = (-I * k + shift) * v[0] + qx * v[1];
        dv[1] = -qm * v[0] + (I * k + shift) * v[1];
    }
};

double resolved_L(const InitialData& d, double A, const JostOptions& opt)
{
    return opt.L > 0 ? opt.L : d.decay_width + 30.0 / A;
}

State integrate_column(const InitialData& d, cplx k, cplx f, double s, State v, double from,
                       double to, const JostOptions& opt)
{
    namespace ode = boost::numeric::odeint;
    ColumnSystem sys{&d.sampler, k, f, s};
    std::vector<double> stops{from, to};
    for (double b : d.breakpoints)
        for (double c : {b, -b})
            if ((c - from) * (c - to) < 0)
                stops.push_back(c);
    if (from < to)
        std::sort(stops.begin(), stops.end());
    else
        std::sort(stops.begin(), stops.end(), std::greater<>());
    stops.erase(std::unique(stops.begin(), stops.end()), stops.end());

    auto stepper = ode::make_controlled(opt.ode_tol, opt.ode_tol, ode::runge_kutta_dopri5<State>());
    long steps = 0;
    auto observer = [&](const State&, double) {
        if (++steps > opt.max_steps)
            throw Error(ErrorKind::OdeToleranceFailure, "Jost integration exceeded the step budget");
    };
    for (std::size_t i = 0; i + 1 < stops.size(); ++i) {
        const double a = stops[i], b = stops[i + 1];
        const double dx0 = (b - a) * 1e-3;
        try {
            ode::integrate_adaptive(stepper, sys, v, a, b, dx0, observer);
        } catch (const Error&) {
            throw;
        } catch (const std::exception& e) {
            throw Error(ErrorKind::OdeToleranceFailure, std::string("Jost integration failed: ") + e.what());
        }
    }
    for (const cplx& c : v)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            throw Error(ErrorKind::OdeToleranceFailure, "Jost integration produced non-finite values");
    return v;
}

void check_branch_proximity(cplx k, double A)
{
    const double guard = 10.0 * std::sqrt(std::numeric_limits<double>::epsilon());
    if (std::abs(k - A) < guard * A || std::abs(k + A) < guard * A)
        throw Error(ErrorKind::BranchPointProximity, "Jost sample too close to a branch point");
}

// Column j of Psi_1 (forward from -L) or Psi_2 (backward from +L) at x = 0.
State psi_column(const InitialData& d, double A, cplx k, CutSide side, int which, int col,
                 const JostOptions& opt)
{
    const Amplitude Aa(A);
    const cplx f = branches::f(k, Aa, side);
    const Mat2 E = branches::E(which, k, Aa, side);
    const auto c = E.column(col);
    const double L = resolved_L(d, A, opt);
    const double s = col == 1 ? 1.0 : -1.0;
    const double from = which == 1 ? -L : L;
    return integrate_column(d, k, f, s, {c[0], c[1]}, from, 0.0, opt);
}

cplx detv(const State& u, const State& v) { return u[0] * v[1] - u[1] * v[0]; }

// Piecewise cubic Hermite interpolation of complex samples with
// finite-difference slopes.
class HermiteTable {
public:
    HermiteTable(std::vector<double> x, std::vector<cplx> y) : x_(std::move(x)), y_(std::move(y))
    {
        const std::size_t n = x_.size();
        d_.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == 0)
                d_[i] = (y_[1] - y_[0]) / (x_[1] - x_[0]);
            else if (i + 1 == n)
                d_[i] = (y_[i] - y_[i - 1]) / (x_[i] - x_[i - 1]);
            else {
                const double h0 = x_[i] - x_[i - 1], h1 = x_[i + 1] - x_[i];
                d_[i] = (h0 * h0 * (y_[i + 1] - y_[i]) + h1 * h1 * (y_[i] - y_[i - 1])) /
                        (h0 * h1 * (h0 + h1));
            }
        }
    }
    bool covers(double t) const { return t >= x_.front() && t <= x_.back(); }
    cplx operator()(double t) const
    {
        auto it = std::upper_bound(x_.begin(), x_.end(), t);
        std::size_t i = static_cast<std::size_t>(it - x_.begin());
        i = std::clamp<std::size_t>(i, 1, x_.size() - 1);
        const double h = x_[i] - x_[i - 1];
        const double u = (t - x_[i - 1]) / h;
        const double h00 = (1 + 2 * u) * (1 - u) * (1 - u), h10 = u * (1 - u) * (1 - u);
        const double h01 = u * u * (3 - 2 * u), h11 = u * u * (u - 1);
        return h00 * y_[i - 1] + h10 * h * d_[i - 1] + h01 * y_[i] + h11 * h * d_[i];
    }

private:
    std::vector<double> x_;
    std::vector<cplx> y_, d_;
};

struct Piece {
    std::unique_ptr<HermiteTable> a1, a2, b;
};

struct JostStore {
    InitialData data;
    double A;
    JostOptions opt;
    Piece neg, pos; // k < -A and k > A
    std::map<double, JostValues> exact;
};

} // namespace

JostValues jost_evaluate(const InitialData& d, Amplitude Aa, cplx k, CutSide side,
                         const JostOptions& opt)
{
    const double A = Aa;
    check_branch_proximity(k, A);
    JostValues out;
    const bool real = k.imag() == 0.0;
    const bool on_cut = real && std::abs(k.real()) < A;
    if (on_cut && side == CutSide::Off)
        throw Error(ErrorKind::Domain, "Jost evaluation on the cut needs a side");

    if (real && !on_cut) {
        const State p11 = psi_column(d, A, k, side, 1, 1, opt);
        const State p12 = psi_column(d, A, k, side, 1, 2, opt);
        const State p21 = psi_column(d, A, k, side, 2, 1, opt);
        const State p22 = psi_column(d, A, k, side, 2, 2, opt);
        out.a1 = detv(p11, p22);
        out.a2 = detv(p21, p12);
        out.b = detv(p21, p11);
        out.det_defect = std::max(std::abs(detv(p11, p12) - 1.0), std::abs(detv(p21, p22) - 1.0));
        return out;
    }
    const bool upper = on_cut ? side == CutSide::Above : k.imag() > 0;
    if (upper) {
        const State p11 = psi_column(d, A, k, side, 1, 1, opt);
        const State p22 = psi_column(d, A, k, side, 2, 2, opt);
        out.a1 = detv(p11, p22);
    } else {
        const State p21 = psi_column(d, A, k, side, 2, 1, opt);
        const State p12 = psi_column(d, A, k, side, 1, 2, opt);
        out.a2 = detv(p21, p12);
    }
    return out;
}

NormingConstants jost_norming(const InitialData& d, Amplitude Aa, const JostOptions& opt)
{
    const double A = Aa;
    auto ratio = [](const State& num, const State& den, double& residual) {
        const cplx g = (std::conj(den[0]) * num[0] + std::conj(den[1]) * num[1]) /
                       (std::norm(den[0]) + std::norm(den[1]));
        const double nn = std::sqrt(std::norm(num[0]) + std::norm(num[1]));
        residual = std::sqrt(std::norm(num[0] - g * den[0]) + std::norm(num[1] - g * den[1])) / nn;
        return g;
    };
    NormingConstants n{};
    const State p11 = psi_column(d, A, 0.0, CutSide::Above, 1, 1, opt);
    const State p22 = psi_column(d, A, 0.0, CutSide::Above, 2, 2, opt);
    n.gamma_plus = ratio(p11, p22, n.residual_plus);
    const State p12 = psi_column(d, A, 0.0, CutSide::Below, 1, 2, opt);
    const State p21 = psi_column(d, A, 0.0, CutSide::Below, 2, 1, opt);
    n.gamma_minus = ratio(p12, p21, n.residual_minus);
    return n;
}

SpectralData jost_spectral(const InitialData& d, Amplitude Aa, const std::vector<cplx>& k_samples,
                           const JostOptions& opt)
{
    const double A = Aa;
    if (opt.L > 0 && opt.L < d.decay_width)
        throw Error(ErrorKind::Domain, "Jost truncation L is below the decay width");
    for (const cplx& k : k_samples)
        check_branch_proximity(k, A);

    auto store = std::make_shared<JostStore>();
    store->data = d;
    store->A = A;
    store->opt = opt;

    std::vector<std::pair<double, JostValues>> neg, pos;
    for (const cplx& k : k_samples) {
        if (k.imag() != 0.0 || std::abs(k.real()) <= A)
            continue;
        JostValues v = jost_evaluate(d, Aa, k, CutSide::Off, opt);
        store->exact[k.real()] = v;
        (k.real() < 0 ? neg : pos).emplace_back(k.real(), v);
    }
    auto build = [](std::vector<std::pair<double, JostValues>>& s, Piece& p) {
        std::sort(s.begin(), s.end(), [](auto& l, auto& r) { return l.first < r.first; });
        if (s.size() < 4)
            return;
        std::vector<double> x;
        std::vector<cplx> a1, a2, b;
        for (auto& [k, v] : s) {
            x.push_back(k);
            a1.push_back(*v.a1);
            a2.push_back(*v.a2);
            b.push_back(*v.b);
        }
        p.a1 = std::make_unique<HermiteTable>(x, a1);
        p.a2 = std::make_unique<HermiteTable>(x, a2);
        p.b = std::make_unique<HermiteTable>(x, b);
    };
    build(neg, store->neg);
    build(pos, store->pos);

    // 0: a1, 1: a2, 2: b
    auto lookup = [store](int which, cplx k, CutSide side) -> cplx {
        const double A = store->A;
        if (k.imag() == 0.0 && std::abs(k.real()) > A) {
            const double x = k.real();
            auto it = store->exact.find(x);
            if (it != store->exact.end()) {
                const JostValues& v = it->second;
                return which == 0 ? *v.a1 : which == 1 ? *v.a2 : *v.b;
            }
            const Piece& p = x < 0 ? store->neg : store->pos;
            const auto& tab = which == 0 ? p.a1 : which == 1 ? p.a2 : p.b;
            if (tab && tab->covers(x))
                return (*tab)(x);
        }
        const JostValues v = jost_evaluate(store->data, Amplitude(A), k, side, store->opt);
        const auto& r = which == 0 ? v.a1 : which == 1 ? v.a2 : v.b;
        if (!r)
            throw Error(ErrorKind::Unavailable,
                        which == 2 ? "b is only available on the real axis off the cut for sampled data"
                                   : "a1 needs Im k >= 0 and a2 needs Im k <= 0");
        return *r;
    };

    SpectralData sd{Aa, Source::NumericJost, nullptr, nullptr, nullptr, {}, {}, {}, false};
    sd.a1_fn = [lookup](cplx k, CutSide s) { return lookup(0, k, s); };
    sd.a2_fn = [lookup](cplx k, CutSide s) { return lookup(1, k, s); };
    sd.b_fn = [lookup](cplx k, CutSide s) { return lookup(2, k, s); };
    const NormingConstants n = jost_norming(d, Aa, opt);
    sd.gamma_plus = n.gamma_plus;
    sd.gamma_minus = n.gamma_minus;
    const ZeroFit z = fit_a10(sd);
    if (std::abs(z.value_at_zero) < 1e-6 * std::abs(z.a10) * A)
        sd.a10 = z.a10;
    return sd;
}

} // namespace nnls::spectral
