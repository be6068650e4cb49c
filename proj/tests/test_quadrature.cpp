#include <doctest.h>

#include <cmath>
#include <random>

#include "nnls/error.hpp"
#include "nnls/quadrature.hpp"

using namespace nnls;
namespace q = nnls::quad;

namespace {

// Composite 4-point Gauss-Legendre on [a, b] with n cells.
template <class F>
double gauss4(F&& f, double a, double b, int n)
{
    static const double x[4] = {-0.8611363115940526, -0.3399810435848563, 0.3399810435848563,
                                0.8611363115940526};
    static const double w[4] = {0.3478548451374538, 0.6521451548625461, 0.6521451548625461,
                                0.3478548451374538};
    const double h = (b - a) / n;
    double s = 0.0;
    for (int c = 0; c < n; ++c) {
        const double mid = a + (c + 0.5) * h;
        for (int i = 0; i < 4; ++i)
            s += w[i] * f(mid + 0.5 * h * x[i]);
    }
    return 0.5 * h * s;
}

q::IntegrandSpec gaussian(double centre)
{
    q::IntegrandSpec g;
    g.eval = [centre](double z) { return cplx(std::exp(-(z - centre) * (z - centre))); };
    g.tail = q::TailKind::Exponential;
    g.decay_estimate = 1.0;
    return g;
}

} // namespace

TEST_SUITE("quadrature") {

TEST_CASE("zero integrand")
{
    q::IntegrandSpec g;
    g.eval = [](double) { return cplx(0.0); };
    CHECK(std::abs(q::cauchy_semiinfinite(g, -1.0, cplx(0.0, 0.0), 1e-10).value) == 0.0);
}

TEST_CASE("step log integrand against the dilogarithm value and a brute-force rule")
{
    // zeta = -1/v, then v = 1 - s^2 to soften the log end.
    const double oracle = gauss4(
        [](double s) {
            const double u = s * s, v = 1.0 - u;
            return -std::log(u * (2.0 - u)) / v * 2.0 * s;
        },
        0.0, 1.0, 250000);
    CHECK(oracle == doctest::Approx(pi * pi / 12.0).epsilon(1e-10));

    q::IntegrandSpec g;
    g.eval = [](double z) { return cplx(std::log1p(-1.0 / (z * z))); };
    g.tail_power = 2.0;
    g.singular_points = {{-1.0, q::SingularityKind::Log}};
    const q::QuadResult r = q::cauchy_semiinfinite(g, -1.0, cplx(0.0, 0.0), 1e-12);
    CHECK(std::abs(r.value - oracle) < 1e-9);
    CHECK(std::abs(r.value.imag()) < 1e-12);
    // ln delta = value / (2 pi i) = -i pi / 24
    CHECK(std::abs(r.value / (2.0 * pi * I) - cplx(0.0, -pi / 24.0)) < 1e-9);
}

TEST_CASE("off-axis pole against a fine trapezoid")
{
    const q::IntegrandSpec g = gaussian(-2.0);
    const cplx pole(0.5, 1.0);
    const int n = 400000;
    const double lo = -14.0, hi = 0.0, h = (hi - lo) / n;
    cplx trap = 0.5 * (g.eval(lo) / (lo - pole) + g.eval(hi) / (hi - pole));
    for (int i = 1; i < n; ++i) {
        const double z = lo + i * h;
        trap += g.eval(z) / (z - pole);
    }
    trap *= h;
    const q::QuadResult r = q::cauchy_semiinfinite(g, 0.0, pole, 1e-10);
    CHECK(std::abs(r.value - trap) < 1e-8);
}

TEST_CASE("linearity in the integrand")
{
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int n = 0; n < 5; ++n) {
        const cplx a(u(rng), u(rng)), b(u(rng), u(rng));
        const q::IntegrandSpec g1 = gaussian(-1.5), g2 = gaussian(-3.0);
        q::IntegrandSpec sum = g1;
        sum.eval = [=](double z) { return a * g1.eval(z) + b * g2.eval(z); };
        const cplx pole(u(rng), 0.5 + std::abs(u(rng)));
        const cplx lhs = q::cauchy_semiinfinite(sum, 0.0, pole, 1e-12).value;
        const cplx rhs = a * q::cauchy_semiinfinite(g1, 0.0, pole, 1e-12).value +
                         b * q::cauchy_semiinfinite(g2, 0.0, pole, 1e-12).value;
        CHECK(std::abs(lhs - rhs) < 1e-10);
    }
}

TEST_CASE("halving the tolerance stays within the error estimate")
{
    q::IntegrandSpec g;
    g.eval = [](double z) { return cplx(1.0 / (1.0 + z * z), std::sin(z) / (1.0 + z * z * z * z)); };
    g.tail_power = 2.0;
    const cplx pole(-0.7, 0.2);
    const q::QuadResult coarse = q::cauchy_semiinfinite(g, -0.5, pole, 1e-8);
    const q::QuadResult fine = q::cauchy_semiinfinite(g, -0.5, pole, 5e-9);
    CHECK(std::abs(coarse.value - fine.value) <= coarse.error + fine.error + 1e-15);
    CHECK(coarse.error <= 1e-8);
}

TEST_CASE("pole on the contour is refused")
{
    const q::IntegrandSpec g = gaussian(-2.0);
    try {
        q::cauchy_semiinfinite(g, 0.0, cplx(-1.0, 0.0), 1e-10);
        FAIL("expected PoleOnContour");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::PoleOnContour);
    }
    CHECK_THROWS_AS(q::cauchy_semiinfinite(g, 0.0, cplx(-1.0, 1e-9), 1e-10), Error);
}

TEST_CASE("boundary values match the epsilon limits")
{
    const q::IntegrandSpec g = gaussian(-1.0);
    const double x0 = -0.8;
    for (CutSide side : {CutSide::Above, CutSide::Below}) {
        const cplx bv = q::cauchy_boundary_value(g, 0.0, x0, side, 1e-11).value;
        const double s = side == CutSide::Above ? 1.0 : -1.0;
        double last = 0.0;
        for (double eps : {1e-3, 1e-4, 1e-5}) {
            const cplx v = q::cauchy_semiinfinite(g, 0.0, cplx(x0, s * eps), 1e-11).value;
            last = std::abs(v - bv);
        }
        CHECK(last < 1e-4);
        // jump between the two sides is 2 pi i g(x0)
        if (side == CutSide::Above) {
            const cplx below = q::cauchy_boundary_value(g, 0.0, x0, CutSide::Below, 1e-11).value;
            CHECK(std::abs(bv - below - 2.0 * pi * I * g.eval(x0)) < 1e-10);
        }
    }
}

TEST_CASE("interval integrals with endpoint singularities")
{
    const auto r = q::integrate_interval([](double x) { return cplx(1.0 / std::sqrt(x)); }, 0.0, 1.0,
                                         1e-12, true);
    CHECK(std::abs(r.value - 2.0) < 1e-10);
    const auto lg = q::integrate_interval([](double x) { return cplx(std::log(x)); }, 0.0, 1.0, 1e-12, true);
    CHECK(std::abs(lg.value + 1.0) < 1e-10);
    q::IntegrandSpec e;
    e.eval = [](double x) { return cplx(std::exp(x)); };
    e.tail = q::TailKind::Exponential;
    CHECK(std::abs(q::integrate_semiinfinite(e, 0.0, 1e-12).value - 1.0) < 1e-10);
}

TEST_CASE("Chebyshev weight integrals")
{
    for (double A : {0.5, 1.0, 2.0}) {
        const Amplitude a(A);
        for (int n = 0; n < 6; ++n) {
            q::IntegrandSpec phi;
            phi.eval = [n, A](double z) { return cplx(std::cos(n * std::acos(std::clamp(z / A, -1.0, 1.0)))); };
            const cplx v = q::chebyshev_cut_integral(phi, a, 1e-13).value;
            CHECK(std::abs(v - (n == 0 ? pi : 0.0)) < 1e-12);
        }
    }
    q::IntegrandSpec z2;
    z2.eval = [](double z) { return cplx(z * z); };
    CHECK(std::abs(q::chebyshev_cut_integral(z2, Amplitude(1.0), 1e-13).value - pi / 2.0) < 1e-12);
    q::IntegrandSpec odd;
    odd.eval = [](double z) { return cplx(z); };
    CHECK(std::abs(q::chebyshev_cut_integral(odd, Amplitude(1.0), 1e-13).value) < 1e-13);
    // log-singular endpoint: int_0^pi ln(1 + cos t) dt = -pi ln 2
    // 1 + cos t = 2 sin^2(u/2) with u = pi - t
    const q::AngleFn g = [](double, double u) { return cplx(std::log(2.0 * std::pow(std::sin(0.5 * u), 2))); };
    const auto lg = q::chebyshev_angle_integral(g, 1e-11, true);
    CHECK(std::abs(lg.value + pi * std::log(2.0)) < 1e-9);
}

TEST_CASE("winding numbers")
{
    q::IntegrandSpec pos;
    pos.eval = [](double z) { return cplx(1.0 + 1.0 / (1.0 + z * z)); };
    CHECK(std::abs(q::winding(pos, 0.0, 2000)) < 1e-14);

    q::IntegrandSpec rot;
    rot.eval = [](double z) { return std::exp(I * (pi / 3.0) * std::exp(z)); };
    rot.tail = q::TailKind::Exponential;
    CHECK(std::abs(q::winding(rot, 0.0, 2000) - pi / 3.0) < 1e-6);

    // a full turn is tracked continuously
    q::IntegrandSpec turn;
    turn.eval = [](double z) { return std::exp(I * 2.5 * pi * std::exp(z)); };
    turn.tail = q::TailKind::Exponential;
    CHECK(std::abs(q::winding(turn, 0.0, 2000) - 2.5 * pi) < 1e-6);

    q::IntegrandSpec step;
    step.eval = [](double z) { return cplx(1.0 - 1.0 / (z * z)); };
    CHECK(std::abs(q::winding(step, -1.0 - 1e-3, 4000)) < 1e-12);

    q::IntegrandSpec flip;
    flip.eval = [](double z) { return cplx(z < -1.0 ? 1.0 : -1.0); };
    try {
        q::winding(flip, 0.0, 500);
        FAIL("expected InconclusiveWinding");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::InconclusiveWinding);
    }
}

}
