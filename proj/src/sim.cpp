#include "nnls/sim.hpp"

#include <algorithm>
#include <cmath>

#include "nnls/error.hpp"

namespace nnls::sim {

Grid::Grid(double L, int N) : L_(L), N_(N)
{
    if (!(L > 0.0) || !std::isfinite(L))
        throw Error(ErrorKind::Config, "grid half-width L must be positive");
    if (N < 4 || N % 2 != 0)
        throw Error(ErrorKind::Config, "grid interval count N must be even and at least 4");
}

int Grid::index_of(double x) const
{
    const long m = std::lround((x + L_) / dx());
    return static_cast<int>(std::clamp<long>(m, 0, N_));
}

namespace {

void jump_warning(const Field& f, double A, std::vector<std::string>* warnings)
{
    if (!warnings)
        return;
    double worst = 0.0;
    for (std::size_t m = 1; m < f.q.size(); ++m)
        worst = std::max(worst, std::abs(f.q[m] - f.q[m - 1]));
    if (worst > 0.5 * A)
        warnings->push_back("grid_too_coarse: max |dq| per cell is " + std::to_string(worst));
}

cplx boundary_value(double A, double t, bool right)
{
    const cplx w = A * std::exp(-2.0 * I * A * A * t);
    return right ? w : -w;
}

// dq/dt for the semi-discrete system. Boundary nodes follow the exact
// boundary data d/dt(+-A e^{-2iA^2 t}) = -2iA^2 (+-A e^{-2iA^2 t}).
void rhs(const std::vector<cplx>& q, std::vector<cplx>& out, double inv_dx2, double A)
{
    const std::size_t n = q.size();
    const std::size_t N = n - 1;
    const cplx w = -2.0 * I * A * A;
    out[0] = w * q[0];
    out[N] = w * q[N];
    for (std::size_t m = 1; m < N; ++m) {
        const cplx qxx = (q[m + 1] - 2.0 * q[m] + q[m - 1]) * inv_dx2;
        const cplx nl = 2.0 * q[m] * q[m] * std::conj(q[N - m]);
        out[m] = I * (qxx + nl);
    }
}

} // namespace

Field init_field(const spectral::InitialData& data, const Grid& g, Amplitude A,
                 std::vector<std::string>* warnings)
{
    if (data.decay_width >= g.L())
        throw Error(ErrorKind::Config, "initial data do not settle to +-A inside the grid");
    Field f;
    f.q.resize(g.size());
    for (int m = 0; m <= g.N(); ++m)
        f.q[m] = data.sampler(g.x(m));
    f.q.front() = boundary_value(A, 0.0, false);
    f.q.back() = boundary_value(A, 0.0, true);
    jump_warning(f, A, warnings);
    return f;
}

Field init_step(const spectral::StepProfile& p, const Grid& g, double mollifier_width,
                std::vector<std::string>* warnings)
{
    const double A = p.A;
    if (std::abs(p.R) >= g.L())
        throw Error(ErrorKind::Config, "step location lies outside the grid");
    Field f;
    f.q.resize(g.size());
    for (int m = 0; m <= g.N(); ++m) {
        const double x = g.x(m) - p.R;
        if (mollifier_width > 0.0)
            f.q[m] = A * std::tanh(x / mollifier_width);
        else
            f.q[m] = x > 0 ? A : (x < 0 ? -A : 0.0);
    }
    f.q.front() = -A;
    f.q.back() = A;
    jump_warning(f, A, warnings);
    return f;
}

Field init_soliton(Amplitude A, double phi0, const Grid& g)
{
    return init_field(spectral::from_soliton(A, phi0), g, A, nullptr);
}

void check_cfl(double dt, const Grid& g, double cfl_coeff)
{
    const double dx = g.dx();
    if (std::abs(dt) > cfl_coeff * dx * dx * (1.0 + 1e-12))
        throw Error(ErrorKind::CflViolation, "time step exceeds cfl_coeff * dx^2");
}

Field step(const Field& f, const Grid& g, double dt, Amplitude Aa)
{
    const double A = Aa;
    if (dt == 0.0)
        return f;
    const double inv = 1.0 / (g.dx() * g.dx());
    const std::size_t n = f.q.size();
    std::vector<cplx> k1(n), k2(n), k3(n), k4(n), tmp(n);
    rhs(f.q, k1, inv, A);
    for (std::size_t i = 0; i < n; ++i)
        tmp[i] = f.q[i] + 0.5 * dt * k1[i];
    rhs(tmp, k2, inv, A);
    for (std::size_t i = 0; i < n; ++i)
        tmp[i] = f.q[i] + 0.5 * dt * k2[i];
    rhs(tmp, k3, inv, A);
    for (std::size_t i = 0; i < n; ++i)
        tmp[i] = f.q[i] + dt * k3[i];
    rhs(tmp, k4, inv, A);
    Field out;
    out.t = f.t + dt;
    out.q.resize(n);
    const double c = dt / 6.0;
    for (std::size_t i = 0; i < n; ++i)
        out.q[i] = f.q[i] + c * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    out.q.front() = boundary_value(A, out.t, false);
    out.q.back() = boundary_value(A, out.t, true);
    return out;
}

Trajectory evolve(Field f, const Grid& g, const SimConfig& cfg, Amplitude Aa)
{
    const double A = Aa;
    if (!(cfg.dt > 0.0))
        throw Error(ErrorKind::Config, "dt must be positive");
    check_cfl(cfg.dt, g, cfg.cfl_coeff);
    std::vector<double> rec = cfg.record_times;
    std::sort(rec.begin(), rec.end());
    for (double r : rec)
        if (r < f.t - 1e-12 || r > cfg.t_end + 1e-12)
            throw Error(ErrorKind::Config, "record times must lie in [t0, t_end]");

    Trajectory tr;
    std::size_t next = 0;
    auto record_due = [&] {
        while (next < rec.size() && std::abs(rec[next] - f.t) <= 1e-9 * (1.0 + std::abs(f.t))) {
            Field s = f;
            s.t = rec[next];
            tr.snapshots.push_back(std::move(s));
            ++next;
        }
    };
    record_due();
    const double limit = cfg.blowup_factor * A;
    while (f.t < cfg.t_end - 1e-12 * (1.0 + cfg.t_end)) {
        double target = cfg.t_end;
        if (next < rec.size())
            target = std::min(target, rec[next]);
        const double h = std::min(cfg.dt, target - f.t);
        f = step(f, g, h, Aa);
        if (target - f.t <= 1e-12 * (1.0 + std::abs(target)))
            f.t = target;
        double mx = 0.0;
        for (const cplx& v : f.q)
            mx = std::max(mx, std::abs(v));
        if (!(mx <= limit))
            throw BlowupDetected(f.t, mx);
        record_due();
    }
    return tr;
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y)
{
    const std::size_t n = x.size();
    if (n < 2 || y.size() != n)
        throw Error(ErrorKind::Domain, "slope fit needs at least two points");
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    if (sxx == 0.0)
        throw Error(ErrorKind::Domain, "slope fit needs distinct abscissae");
    return sxy / sxx;
}

ErrorTable compare(const Trajectory& tr, const Grid& g,
                   const std::function<cplx(double, double)>& predictor, const Window& w)
{
    ErrorTable out;
    for (const Field& f : tr.snapshots) {
        double lo = w.lo, hi = w.hi;
        if (w.kind == Window::Kind::Xi) {
            if (!(f.t > 0))
                throw Error(ErrorKind::Domain, "a xi window needs t > 0");
            lo = 4.0 * f.t * w.lo;
            hi = 4.0 * f.t * w.hi;
        }
        ErrorRow row{f.t, 0.0, 0.0, 0};
        double sum = 0.0;
        for (int m = 0; m <= g.N(); ++m) {
            const double x = g.x(m);
            if (x < lo || x > hi)
                continue;
            const double e = std::abs(f.q[m] - predictor(x, f.t));
            row.sup_err = std::max(row.sup_err, e);
            sum += e * e;
            ++row.points;
        }
        if (row.points == 0)
            throw Error(ErrorKind::Domain, "comparison window contains no grid points");
        row.l2_err = std::sqrt(sum * g.dx());
        out.rows.push_back(row);
    }
    std::vector<double> lt, t, le;
    for (const ErrorRow& r : out.rows)
        if (r.t > 0 && r.sup_err > 0) {
            lt.push_back(std::log(r.t));
            t.push_back(r.t);
            le.push_back(std::log(r.sup_err));
        }
    if (lt.size() >= 2) {
        out.fitted_exponent = fit_slope(lt, le);
        out.fitted_rate = -fit_slope(t, le);
    }
    return out;
}

} // namespace nnls::sim
