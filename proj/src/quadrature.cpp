#include "nnls/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "nnls/error.hpp"

namespace nnls::quad {

namespace {

using Fn = std::function<cplx(double)>;

struct Cell {
    double a, b;
    cplx value;
    double error;
    bool operator<(const Cell& o) const { return error < o.error; }
};

// Non-finite samples only occur when a tanh-sinh abscissa rounds onto a
// singular endpoint; their weight is far below double resolution.
cplx finite_or_zero(cplx v)
{
    return std::isfinite(v.real()) && std::isfinite(v.imag()) ? v : cplx{};
}

Cell gk_cell(const Fn& g, double a, double b, long& evals)
{
    double err = 0.0;
    auto ff = [&](double x) { return finite_or_zero(g(x)); };
    const cplx v = boost::math::quadrature::gauss_kronrod<double, 21>::integrate(ff, a, b, 0, 0.0,
                                                                                 &err);
    evals += 21;
    return {a, b, v, err};
}

// Globally adaptive Gauss-Kronrod: split the worst cell until the summed
// error estimate is below tol.
QuadResult gk_adaptive(const Fn& g, double a, double b, double tol, int max_splits = 4000)
{
    QuadResult r;
    std::priority_queue<Cell> heap;
    heap.push(gk_cell(g, a, b, r.evaluations));
    cplx total = heap.top().value;
    double err = heap.top().error;
    int splits = 0;
    while (err > tol && splits < max_splits) {
        Cell c = heap.top();
        const double m = 0.5 * (c.a + c.b);
        if (!(m > c.a && m < c.b))
            break;
        heap.pop();
        Cell l = gk_cell(g, c.a, m, r.evaluations);
        Cell rr = gk_cell(g, m, c.b, r.evaluations);
        total += l.value + rr.value - c.value;
        err += l.error + rr.error - c.error;
        heap.push(l);
        heap.push(rr);
        ++splits;
    }
    // re-sum to avoid drift from incremental updates
    total = 0.0;
    err = 0.0;
    while (!heap.empty()) {
        total += heap.top().value;
        err += heap.top().error;
        heap.pop();
    }
    r.value = total;
    r.error = err;
    return r;
}

QuadResult tanh_sinh_cell(const Fn& g, double a, double b, double tol)
{
    static thread_local boost::math::quadrature::tanh_sinh<double> integrator(15);
    QuadResult r;
    double err = 0.0, l1 = 0.0;
    std::size_t levels = 0;
    // the stopping test is relative to the L1 norm; a constant of total mass
    // tol (integrated exactly) lets a vanishing integrand stop at the first level
    const double shift = tol / std::abs(b - a);
    auto ff = [&](double x) {
        ++r.evaluations;
        return finite_or_zero(g(x)) + shift;
    };
    const double rel = std::clamp(tol, 1e-15, 1e-6);
    r.value = integrator.integrate(ff, a, b, rel, &err, &l1, &levels) - shift * (b - a);
    r.error = err;
    // below ~1e-14 of the L1 norm the estimate is rounding noise
    const double floor = 1e-14 * l1;
    if (err > std::max(tol, floor)) {
        // tanh-sinh stalled; try a bounded adaptive Gauss-Kronrod pass
        QuadResult g2 = gk_adaptive(g, a, b, tol, 200);
        g2.evaluations += r.evaluations;
        if (g2.error < r.error)
            return g2;
        r.evaluations = g2.evaluations;
    }
    return r;
}

// Log((u - p)/(-T - p)) is the integral of 1/(z - p) over a straight segment
// off p; the ratio form is also immune to signed zeros in num and den.
cplx principal_log_ratio(cplx num, cplx den) { return std::log(num / den); }

struct Tail {
    double T;
    double bound;
};

// Smallest T (by doubling) whose analytic tail bound is below target.
// weight(x) is the extra kernel factor bound 1/|x - pole| (or 1).
Tail choose_cutoff(const IntegrandSpec& g, double upper, double pole_abs, bool cauchy,
                   double target, long& evals)
{
    const double ell = g.decay_estimate > 0 ? g.decay_estimate : 1.0;
    double T = std::max({4.0 * ell, 2.0 * std::abs(upper) + ell, 2.0 * pole_abs + ell});
    for (int it = 0; it < 200; ++it) {
        double M = 0.0;
        for (double fac : {1.0, 1.5, 2.0}) {
            const double m = std::abs(g.eval(-fac * T));
            ++evals;
            const double scale = g.tail == TailKind::Algebraic ? std::pow(fac, g.tail_power)
                                                                : std::exp((fac - 1.0) * T / ell);
            M = std::max(M, std::isfinite(m) ? m * scale : INFINITY);
        }
        double bound;
        if (g.tail == TailKind::Algebraic) {
            const double p = g.tail_power;
            if (cauchy)
                bound = M * T / (p * (T - pole_abs));
            else
                bound = p > 1.0 ? M * T / (p - 1.0) : INFINITY;
        } else {
            bound = M * ell / (cauchy ? (T - pole_abs) : 1.0);
        }
        if (bound < target)
            return {T, bound};
        T *= 2.0;
    }
    throw ToleranceNotMet("tail of semi-infinite integrand does not decay", cplx{}, INFINITY);
}

// Cell edges on [-T, upper]: geometric away from upper plus breakpoints.
std::vector<double> make_edges(double upper, double T, double ell, std::vector<double> extra)
{
    std::vector<double> e{upper};
    double step = ell;
    double x = upper - step;
    while (x > -T) {
        e.push_back(x);
        step *= 2.0;
        x = upper - step;
    }
    e.push_back(-T);
    for (double b : extra)
        if (b > -T && b < upper)
            e.push_back(b);
    std::sort(e.begin(), e.end());
    e.erase(std::unique(e.begin(), e.end(),
                        [](double p, double q) { return std::abs(p - q) <= 1e-14 * (1 + std::abs(p)); }),
            e.end());
    return e;
}

bool near_any(double x, const std::vector<double>& pts)
{
    for (double p : pts)
        if (std::abs(x - p) <= 1e-12 * (1.0 + std::abs(p)))
            return true;
    return false;
}

// Integrates h over the edges; cells touching a special point use tanh-sinh.
QuadResult integrate_cells(const Fn& h, const std::vector<double>& edges,
                           const std::vector<double>& special, double tol)
{
    QuadResult r;
    const double cell_tol = tol / static_cast<double>(edges.size());
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        const double a = edges[i], b = edges[i + 1];
        const bool singular = near_any(a, special) || near_any(b, special);
        QuadResult c = singular ? tanh_sinh_cell(h, a, b, cell_tol) : gk_adaptive(h, a, b, cell_tol);
        r.value += c.value;
        r.error += c.error;
        r.evaluations += c.evaluations;
    }
    return r;
}

void finish(QuadResult& r, double tol, const char* what)
{
    r.error += r.truncation;
    if (!(r.error <= tol) || !std::isfinite(r.value.real()) || !std::isfinite(r.value.imag()))
        throw ToleranceNotMet(std::string(what) + ": tolerance not met", r.value, r.error);
}

void check_tol(double tol)
{
    if (!(tol > 0.0))
        throw Error(ErrorKind::Domain, "quadrature tolerance must be positive");
}

std::vector<double> singular_locations(const IntegrandSpec& g)
{
    std::vector<double> v;
    for (const auto& s : g.singular_points)
        v.push_back(s.location);
    return v;
}

} // namespace

QuadResult integrate_interval(const Fn& g, double a, double b, double tol, bool singular_ends)
{
    check_tol(tol);
    if (a == b)
        return {};
    return singular_ends ? tanh_sinh_cell(g, a, b, tol) : gk_adaptive(g, a, b, tol);
}

QuadResult cauchy_semiinfinite(const IntegrandSpec& g, double upper, cplx pole, double tol,
                               const CauchyOptions& opt)
{
    check_tol(tol);
    const cplx p_minus_u = opt.pole_minus_upper ? *opt.pole_minus_upper : pole - upper;
    const double dist = pole.real() <= upper ? std::abs(pole.imag()) : std::abs(p_minus_u);
    if (dist < pole_guard)
        throw Error(ErrorKind::PoleOnContour, "Cauchy pole lies on the integration contour");

    QuadResult r;
    const Tail tail = choose_cutoff(g, upper, std::abs(pole), true, tol / 10.0, r.evaluations);
    const double T = tail.T;
    const double ell = g.decay_estimate > 0 ? g.decay_estimate : 1.0;
    const double near = opt.near_distance ? *opt.near_distance : 0.5 * ell;

    std::vector<double> special = singular_locations(g);
    const double x0 = std::clamp(pole.real(), -T, upper);
    // subtract g(x0) near the pole unless g is singular there
    cplx g0{};
    bool subtract = false;
    if (dist < near) {
        g0 = g.eval(x0);
        ++r.evaluations;
        subtract = std::isfinite(g0.real()) && std::isfinite(g0.imag());
    }
    cplx analytic{};
    if (subtract) {
        // integral of 1/(z - p) over [-T, upper]
        analytic = g0 * principal_log_ratio(-p_minus_u, cplx(-T) - pole);
        special.push_back(x0);
    }
    const Fn h = [&](double z) -> cplx {
        const cplx d = z - pole;
        if (d == cplx{})
            return 0.0;
        return subtract ? (g.eval(z) - g0) / d : g.eval(z) / d;
    };
    std::vector<double> extra = special;
    if (dist < near)
        extra.push_back(x0);
    QuadResult c = integrate_cells(h, make_edges(upper, T, ell, extra),
                                   special, 0.9 * tol);
    r.value = c.value + analytic;
    r.error = c.error;
    r.evaluations += c.evaluations;
    r.truncation = tail.bound;
    r.cutoff = T;
    finish(r, tol, "cauchy_semiinfinite");
    return r;
}

QuadResult cauchy_boundary_value(const IntegrandSpec& g, double upper, double x0, CutSide side,
                                 double tol)
{
    check_tol(tol);
    if (side == CutSide::Off)
        throw Error(ErrorKind::Domain, "boundary value needs a side");
    std::vector<double> special = singular_locations(g);
    if (!(x0 < upper) || near_any(x0, special))
        throw Error(ErrorKind::Domain, "boundary point must lie inside the contour, off singularities");

    QuadResult r;
    const Tail tail = choose_cutoff(g, upper, std::abs(x0), true, tol / 10.0, r.evaluations);
    const double T = tail.T;
    const double ell = g.decay_estimate > 0 ? g.decay_estimate : 1.0;
    const cplx g0 = g.eval(x0);
    ++r.evaluations;
    const Fn h = [&](double z) -> cplx {
        const double d = z - x0;
        if (d == 0.0)
            return 0.0;
        return (g.eval(z) - g0) / d;
    };
    special.push_back(x0);
    QuadResult c = integrate_cells(h, make_edges(upper, T, ell, special), special, 0.9 * tol);
    const double sgn = side == CutSide::Above ? 1.0 : -1.0;
    r.value = c.value + g0 * std::log((upper - x0) / (x0 + T)) + sgn * I * pi * g0;
    r.error = c.error;
    r.evaluations += c.evaluations;
    r.truncation = tail.bound;
    r.cutoff = T;
    finish(r, tol, "cauchy_boundary_value");
    return r;
}

QuadResult integrate_semiinfinite(const IntegrandSpec& g, double upper, double tol)
{
    check_tol(tol);
    QuadResult r;
    const Tail tail = choose_cutoff(g, upper, 0.0, false, tol / 10.0, r.evaluations);
    const double ell = g.decay_estimate > 0 ? g.decay_estimate : 1.0;
    const std::vector<double> special = singular_locations(g);
    QuadResult c = integrate_cells(g.eval, make_edges(upper, tail.T, ell, special), special,
                                   0.9 * tol);
    r.value = c.value;
    r.error = c.error;
    r.evaluations += c.evaluations;
    r.truncation = tail.bound;
    r.cutoff = tail.T;
    finish(r, tol, "integrate_semiinfinite");
    return r;
}

QuadResult chebyshev_angle_integral(const Fn& g, double tol, bool endpoint_singular,
                                    const std::vector<double>& breakpoints)
{
    return chebyshev_angle_integral([&](double t, double) { return g(t); }, tol, endpoint_singular,
                                    breakpoints);
}

QuadResult chebyshev_angle_integral(const AngleFn& g, double tol, bool endpoint_singular,
                                    const std::vector<double>& breakpoints)
{
    check_tol(tol);
    QuadResult r;
    if (!endpoint_singular && breakpoints.empty()) {
        auto midpoint = [&](int n) {
            cplx s{};
            for (int j = 0; j < n; ++j)
                s += g((j + 0.5) * pi / n, (n - j - 0.5) * pi / n);
            r.evaluations += n;
            return s * (pi / n);
        };
        int n = 16;
        cplx prev = midpoint(n);
        while (n < (1 << 20)) {
            n *= 2;
            const cplx cur = midpoint(n);
            const double change = std::abs(cur - prev);
            if (change < tol) {
                r.value = cur;
                r.error = change;
                return r;
            }
            prev = cur;
        }
        throw ToleranceNotMet("chebyshev integral: doubling did not converge", prev, INFINITY);
    }
    std::vector<double> edges{0.0, pi};
    for (double b : breakpoints)
        if (b > 0.0 && b < pi)
            edges.push_back(b);
    if (edges.size() == 2)
        edges.push_back(0.5 * pi);
    std::sort(edges.begin(), edges.end());
    const double cell_tol = 0.9 * tol / static_cast<double>(edges.size() - 1);
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        const double a = edges[i], b = edges[i + 1];
        QuadResult c;
        if (i + 2 == edges.size()) {
            // last cell in u = pi - t so that abscissae near t = pi keep full precision
            c = tanh_sinh_cell([&](double u) { return g(pi - u, u); }, 0.0, pi - a, cell_tol);
        } else {
            c = tanh_sinh_cell([&](double t) { return g(t, pi - t); }, a, b, cell_tol);
        }
        r.value += c.value;
        r.error += c.error;
        r.evaluations += c.evaluations;
    }
    finish(r, tol, "chebyshev_angle_integral");
    return r;
}

QuadResult chebyshev_cut_integral(const IntegrandSpec& phi, Amplitude Aa, double tol)
{
    const double A = Aa;
    std::vector<double> bps;
    bool endpoint = false;
    for (const auto& s : phi.singular_points) {
        if (std::abs(std::abs(s.location) - A) <= 1e-12 * A)
            endpoint = true;
        else if (std::abs(s.location) < A)
            bps.push_back(std::acos(s.location / A));
    }
    return chebyshev_angle_integral([&](double t) { return phi.eval(A * std::cos(t)); }, tol,
                                    endpoint, bps);
}

double WindingTable::interpolate(double x) const
{
    if (s.empty())
        return 0.0;
    if (x <= s.front())
        return arg.front();
    if (x >= s.back())
        return arg.back();
    const auto it = std::upper_bound(s.begin(), s.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - s.begin());
    const double u = (x - s[i - 1]) / (s[i] - s[i - 1]);
    return arg[i - 1] + u * (arg[i] - arg[i - 1]);
}

WindingTable winding_table(const Fn& path, double k_end, double scale, int samples)
{
    if (samples < 8)
        throw Error(ErrorKind::Domain, "winding needs at least 8 samples");
    if (!(scale > 0.0))
        throw Error(ErrorKind::Domain, "winding scale must be positive");
    auto s_of = [&](double u) { return k_end - scale * u / (1.0 - u); };
    auto val = [&](double u) {
        const cplx v = path(s_of(u));
        if (!(std::abs(v) > 0.0) || !std::isfinite(std::abs(v)))
            throw Error(ErrorKind::InconclusiveWinding, "path vanishes or is singular on the contour");
        return v;
    };
    // argument increment from u_a to u_b, refined until each hop is < pi/2
    auto increment = [&](double ua, cplx va, double ub, cplx vb) {
        double inc = std::arg(vb / va);
        if (std::abs(inc) < 0.5 * pi)
            return inc;
        for (int level = 1; level <= 12; ++level) {
            const int m = 1 << level;
            double sum = 0.0;
            bool ok = true;
            cplx prev = va;
            for (int i = 1; i <= m; ++i) {
                const double u = ua + (ub - ua) * i / m;
                const cplx cur = i == m ? vb : val(u);
                const double d = std::arg(cur / prev);
                if (std::abs(d) >= 0.5 * pi) {
                    ok = false;
                    break;
                }
                sum += d;
                prev = cur;
            }
            if (ok)
                return sum;
        }
        throw Error(ErrorKind::InconclusiveWinding,
                    "argument jump between adjacent samples exceeds pi/2 after refinement");
    };

    WindingTable tab;
    const int n = samples;
    std::vector<double> us(n);
    for (int j = 0; j < n; ++j)
        us[j] = static_cast<double>(n - 1 - j) / n; // far end first, u=0 (k_end) last
    cplx prev = val(us[0]);
    double a = std::arg(prev);
    tab.s.push_back(s_of(us[0]));
    tab.arg.push_back(a);
    tab.max_abs = std::abs(a);
    for (int j = 1; j < n; ++j) {
        const cplx cur = val(us[j]);
        a += increment(us[j - 1], prev, us[j], cur);
        tab.s.push_back(s_of(us[j]));
        tab.arg.push_back(a);
        tab.max_abs = std::max(tab.max_abs, std::abs(a));
        prev = cur;
    }
    tab.total = a;
    return tab;
}

double winding(const IntegrandSpec& gamma, double k_end, int samples)
{
    return winding_table(gamma.eval, k_end, gamma.decay_estimate, samples).total;
}

} // namespace nnls::quad
