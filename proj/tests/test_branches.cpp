#include <doctest.h>

#include <cmath>
#include <random>

#include "nnls/branches.hpp"
#include "nnls/error.hpp"

using namespace nnls;
namespace br = nnls::branches;

namespace {

const Amplitude A1(1.0);

bool near(cplx a, cplx b, double tol) { return std::abs(a - b) <= tol; }

} // namespace

TEST_SUITE("branches") {

TEST_CASE("f hand values and normalization")
{
    CHECK(near(br::f(2.0, A1), std::sqrt(3.0), 1e-14));
    CHECK(near(br::f(0.0, A1, CutSide::Above), I, 1e-15));
    CHECK(near(br::f(0.0, A1, CutSide::Below), -I, 1e-15));
    CHECK(near(br::f(-2.0, A1), -std::sqrt(3.0), 1e-14));
    for (cplx k : {cplx(1e6, 0), cplx(0, 1e6), cplx(-1e6, 1), cplx(-7e5, -7e5)})
        CHECK(std::abs(br::f(k, A1) - k) / std::abs(k) < 1e-6);
}

TEST_CASE("w hand values and normalization")
{
    CHECK(near(br::w(2.0, A1), std::pow(3.0, -0.25), 1e-14));
    CHECK(std::abs(br::w(cplx(1e6, 0), A1) - 1.0) < 1e-5);
    CHECK(std::abs(br::w(cplx(0, -1e6), A1) - 1.0) < 1e-5);
    const cplx wp = br::w(0.3, A1, CutSide::Above);
    CHECK(near(wp, std::exp(I * pi / 4.0) * std::pow(0.7 / 1.3, 0.25), 1e-14));
    // w^4 = (k - A)/(k + A) on both sides
    for (CutSide s : {CutSide::Above, CutSide::Below})
        CHECK(near(std::pow(br::w(0.3, A1, s), 4), (0.3 - 1.0) / (0.3 + 1.0), 1e-13));
}

TEST_CASE("h on the real axis and at infinity")
{
    CHECK(near(br::h(1.0, A1), std::sqrt(2.0), 1e-14));
    CHECK(near(br::h(-1.0, A1), -std::sqrt(2.0), 1e-14));
    CHECK(std::abs(br::h(1e6, A1) - 1e6) / 1e6 < 1e-6);
    CHECK_THROWS_AS(br::h(cplx(0, 0.5), A1), Error);
    CHECK_THROWS_AS(br::h(cplx(0, 1.0), A1), Error);
}

TEST_CASE("lambda identities")
{
    CHECK(near(br::lambda(1, 2.0, A1), I * (std::sqrt(3.0) + std::sqrt(5.0)), 1e-14));
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-4.0, 4.0);
    for (int n = 0; n < 50; ++n) {
        const cplx k(u(rng), u(rng));
        if (std::abs(k.real()) < 0.05 || std::abs(k.imag()) < 0.05)
            continue;
        const cplx l1 = br::lambda(1, k, A1), l2 = br::lambda(2, k, A1);
        CHECK(near(l1 + l2, 2.0 * I * br::f(k, A1), 1e-12));
        CHECK(near(l1 * l2, 2.0, 1e-11));
    }
    CHECK_THROWS_AS(br::lambda(3, 2.0, A1), Error);
}

TEST_CASE("branch points and cut without side are errors")
{
    CHECK_THROWS_AS(br::f(1.0, A1), Error);
    CHECK_THROWS_AS(br::w(-1.0, A1, CutSide::Above), Error);
    try {
        br::f(0.5, A1);
        FAIL("expected a domain error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Domain);
    }
    CHECK_THROWS_AS(Amplitude(0.0), Error);
    CHECK_THROWS_AS(Amplitude(-1.0), Error);
}

TEST_CASE("boundary values are the epsilon limits")
{
    for (double A : {0.5, 1.0, 2.0}) {
        const Amplitude a(A);
        for (double x : {-0.9 * A, -0.3 * A, 0.0, 0.45 * A, 0.8 * A}) {
            double last_f = 0, last_w = 0;
            for (double eps : {1e-4, 1e-6, 1e-8}) {
                last_f = std::max(std::abs(br::f(cplx(x, eps), a) - br::f(x, a, CutSide::Above)),
                                  std::abs(br::f(cplx(x, -eps), a) - br::f(x, a, CutSide::Below)));
                last_w = std::max(std::abs(br::w(cplx(x, eps), a) - br::w(x, a, CutSide::Above)),
                                  std::abs(br::w(cplx(x, -eps), a) - br::w(x, a, CutSide::Below)));
            }
            CHECK(last_f < 1e-6);
            CHECK(last_w < 1e-6);
        }
    }
}

TEST_CASE("asymptotic normalization along eight rays")
{
    for (int r = 0; r < 8; ++r) {
        const cplx dir = std::polar(1.0, pi / 8.0 + r * pi / 4.0);
        double worst = 0.0;
        for (double R : {1e2, 1e3, 1e4, 1e5}) {
            const cplx k = R * dir;
            worst = std::max({worst, std::abs(br::f(k, A1) - k) * R, std::abs(br::w(k, A1) - 1.0) * R,
                              std::abs(br::h(k, A1) - k) * R});
        }
        CHECK(worst < 2.0);
    }
}

TEST_CASE("det E is one off the cut and E tends to identity")
{
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    int tested = 0;
    while (tested < 100) {
        const cplx k(u(rng), u(rng));
        if (std::abs(k.imag()) < 1e-3 && std::abs(k.real()) <= 1.0)
            continue;
        for (int j : {1, 2})
            CHECK(std::abs(br::E(j, k, A1).det() - 1.0) < 1e-12);
        ++tested;
    }
    CHECK((br::E(1, cplx(1e7, 3e6), A1) - Mat2::identity()).max_abs() < 1e-6);
    CHECK((br::E(2, cplx(-2e7, -1e7), A1) - Mat2::identity()).max_abs() < 1e-6);
}

TEST_CASE("jump of E across the cut")
{
    for (int n = 0; n < 50; ++n) {
        const double k = -0.98 + 1.96 * n / 49.0;
        for (int j : {1, 2}) {
            const Mat2 plus = br::E(j, k, A1, CutSide::Above);
            const Mat2 minus = br::E(j, k, A1, CutSide::Below);
            const double s = j == 1 ? 1.0 : -1.0;
            CHECK((plus - minus * sigma2() * (s * I)).max_abs() < 1e-12);
        }
    }
}

}
