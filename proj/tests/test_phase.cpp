#include <doctest.h>

#include <cmath>
#include <sstream>

#include "nnls/branches.hpp"
#include "nnls/phase.hpp"

using namespace nnls;
namespace ph = nnls::phase;

TEST_SUITE("phase") {

TEST_CASE("theta on the cut")
{
    const Amplitude A(1.0);
    for (double xi : {0.2, 0.75, -0.3}) {
        const ph::Direction d{xi, A};
        for (int n = 1; n < 50; ++n) {
            const double k = -1.0 + 2.0 * n / 50.0;
            const cplx tp = ph::theta(k, d, CutSide::Above);
            const cplx tm = ph::theta(k, d, CutSide::Below);
            CHECK(std::abs(tp + tm) < 1e-12);
            CHECK(std::abs(tp.imag() - 2.0 * (2.0 * xi + k) * std::sqrt(1.0 - k * k)) < 1e-12);
            CHECK(std::abs(tp.real()) < 1e-14);
        }
        CHECK(std::abs(ph::theta(0.0, d, CutSide::Above) - 4.0 * xi * I) < 1e-14);
    }
}

TEST_CASE("theta grows like 2k^2 + 4 xi k")
{
    const ph::Direction d{0.4, Amplitude(1.3)};
    for (double R : {1e2, 1e4, 1e6})
        for (cplx dir : {cplx(1, 0), cplx(0, 1), cplx(-1, 1) / std::sqrt(2.0)}) {
            const cplx k = R * dir;
            CHECK(std::abs(ph::theta(k, d) - (2.0 * k * k + 4.0 * d.xi * k)) < 5.0);
        }
}

TEST_CASE("critical points")
{
    const Amplitude A(1.0);
    auto [k1h, k2h] = ph::critical_points({0.5, A});
    CHECK(k1h == doctest::Approx(-1.0).epsilon(1e-15));
    (void)k2h;
    auto [k1, k2] = ph::critical_points({1.0, A});
    CHECK(k1 == doctest::Approx(-(1.0 + std::sqrt(3.0)) / 2.0).epsilon(1e-14));
    auto [z1, z2] = ph::critical_points({0.0, A});
    CHECK(z1 == doctest::Approx(-1.0 / std::sqrt(2.0)).epsilon(1e-14));
    CHECK(z2 == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
    // d theta/dk vanishes at both points
    for (double xi : {0.7, 1.0, 3.0}) {
        const ph::Direction d{xi, A};
        auto [a, b] = ph::critical_points(d);
        CHECK(a < -1.0);
        CHECK(b > 0.0);
        const double h = 1e-5;
        const double scale = std::abs(ph::theta(a, d)) / std::abs(a);
        CHECK(std::abs((ph::theta(a + h, d) - ph::theta(a - h, d)) / (2 * h)) < 1e-8 * scale);
        // k2 may sit on the cut: differentiate the Above boundary value
        const CutSide s = b < 1.0 ? CutSide::Above : CutSide::Off;
        CHECK(std::abs((ph::theta(b + h, d, s) - ph::theta(b - h, d, s)) / (2 * h)) < 1e-7);
    }
}

TEST_CASE("region classification")
{
    const Amplitude A(1.0);
    CHECK(ph::classify({0.6, A}) == ph::RegionTag::ModulatedPlus);
    CHECK(ph::classify({-0.6, A}) == ph::RegionTag::ModulatedMinus);
    CHECK(ph::classify({0.2, A}) == ph::RegionTag::CentralPlus);
    CHECK(ph::classify({-0.2, A}) == ph::RegionTag::CentralMinus);
    CHECK(ph::classify({0.5, A}) == ph::RegionTag::Boundary);
    CHECK(ph::classify({-0.5, A}) == ph::RegionTag::Boundary);
    CHECK(ph::classify({0.0, A}) == ph::RegionTag::Boundary);
    for (double xi : {0.1, 0.45, 0.51, 2.0, 0.5})
        CHECK(ph::classify({-xi, A}) == ph::mirror(ph::classify({xi, A})));
}

TEST_CASE("signature tables")
{
    const Amplitude A(1.0);
    SUBCASE("modulated direction: one sign change on the axis outside the cut, at k1")
    {
        const ph::Direction d{1.0, A};
        ph::SignatureGrid g = ph::default_signature_grid(d);
        CHECK(g.n_re == 401);
        CHECK(g.re_lo == doctest::Approx(-4.0));
        CHECK(g.im_hi == doctest::Approx(2.0));
        const ph::SignatureTable t = ph::signature_table(d, g);
        // row just above the axis
        const int row = g.n_im / 2 + 1;
        CHECK(t.im[row] > 0.0);
        std::vector<double> changes;
        for (int i = 1; i < g.n_re; ++i)
            if (t.at(i, row) != t.at(i - 1, row) && std::abs(t.re[i]) > 1.0 && std::abs(t.re[i - 1]) > 1.0)
                changes.push_back(0.5 * (t.re[i] + t.re[i - 1]));
        REQUIRE(changes.size() == 1);
        const double k1 = ph::critical_points(d).first;
        CHECK(std::abs(changes[0] - k1) < 0.05);
    }
    SUBCASE("central direction: zero of Im theta on the cut at -2 xi")
    {
        const ph::Direction d{0.2, A};
        ph::SignatureGrid g{-1.0, 1.0, -0.01, 0.01, 2001, 2};
        const ph::SignatureTable t = ph::signature_table(d, g);
        const int row = 1;
        CHECK(t.im[row] > 0.0);
        double crossing = 0.0;
        for (int i = 1; i < g.n_re; ++i)
            if (t.at(i, row) != t.at(i - 1, row))
                crossing = 0.5 * (t.re[i] + t.re[i - 1]);
        CHECK(std::abs(crossing + 0.4) < 2e-3);
    }
    SUBCASE("xi = 0: sign flips under k -> -conj(k)")
    {
        const ph::Direction d{0.0, A};
        ph::SignatureGrid g = ph::default_signature_grid(d);
        g.n_re = 101;
        g.n_im = 100;
        const ph::SignatureTable t = ph::signature_table(d, g);
        int checked = 0;
        for (int j = 0; j < g.n_im; ++j)
            for (int i = 0; i < g.n_re; ++i) {
                const int mi = g.n_re - 1 - i;
                if (t.at(i, j) == 0)
                    continue;
                CHECK(t.at(mi, j) == -t.at(i, j));
                ++checked;
            }
        CHECK(checked > 5000);
    }
    SUBCASE("csv export")
    {
        ph::SignatureGrid g{-1.0, 1.0, -1.0, 1.0, 3, 2};
        const std::string csv = ph::signature_table({0.3, A}, g).to_csv();
        std::istringstream in(csv);
        std::string header;
        std::getline(in, header);
        CHECK(header == "k_re,k_im,sign");
        int lines = 0;
        for (std::string l; std::getline(in, l);)
            ++lines;
        CHECK(lines == 6);
    }
}

}
