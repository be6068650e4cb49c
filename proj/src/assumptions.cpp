#include <cmath>
#include <vector>

#include <json.hpp>

#include "nnls/error.hpp"
#include "nnls/quadrature.hpp"
#include "nnls/spectral.hpp"

namespace nnls::spectral {

namespace {

// Argument increment of a1 along a straight segment, with the pi/2 guard.
double segment_increment(const SpectralData& sd, cplx from, cplx to, int n, double& min_abs)
{
    auto val = [&](cplx k) {
        const cplx v = sd.a1(k);
        min_abs = std::min(min_abs, std::abs(v));
        return v;
    };
    double total = 0.0;
    cplx prev = val(from);
    for (int i = 1; i <= n; ++i) {
        const cplx k = from + (to - from) * (static_cast<double>(i) / n);
        const cplx cur = val(k);
        double d = std::arg(cur / prev);
        if (std::abs(d) >= 0.5 * pi) {
            // refine this hop
            const cplx k0 = from + (to - from) * (static_cast<double>(i - 1) / n);
            bool ok = false;
            for (int level = 1; level <= 10 && !ok; ++level) {
                const int m = 1 << level;
                double sum = 0.0;
                cplx p = prev;
                ok = true;
                for (int j = 1; j <= m; ++j) {
                    const cplx c = j == m ? cur : val(k0 + (k - k0) * (static_cast<double>(j) / m));
                    const double dd = std::arg(c / p);
                    if (std::abs(dd) >= 0.5 * pi) {
                        ok = false;
                        break;
                    }
                    sum += dd;
                    p = c;
                }
                if (ok)
                    d = sum;
            }
            if (!ok)
                throw Error(ErrorKind::InconclusiveWinding, "a1 argument jumps by more than pi/2 between samples");
        }
        total += d;
        prev = cur;
    }
    return total;
}

double arc_increment(const SpectralData& sd, double K, int n, double& min_abs)
{
    double total = 0.0;
    cplx prev = sd.a1(K);
    for (int i = 1; i <= n; ++i) {
        const double th = pi * i / n;
        const cplx k = i == n ? cplx(-K) : std::polar(K, th);
        const cplx cur = sd.a1(k);
        min_abs = std::min(min_abs, std::abs(cur));
        const double d = std::arg(cur / prev);
        if (std::abs(d) >= 0.5 * pi)
            throw Error(ErrorKind::InconclusiveWinding, "a1 argument jumps on the outer arc");
        total += d;
        prev = cur;
    }
    return total;
}

} // namespace

AssumptionReport check_assumptions(const SpectralData& sd, const ContourGrid& grid)
{
    const double A = sd.A;
    AssumptionReport rep;

    // (A1): argument principle on the boundary of {|k| < K, Im k > 0} minus a box over the cut
    const double K = grid.radius * A;
    const double rho = grid.detour * A;
    const int n = grid.samples_per_segment;
    double min_abs = INFINITY;
    double inc = 0.0;
    const cplx p0(-K, 0), p1(-A - rho, 0), p2(-A - rho, rho), p3(A + rho, rho), p4(A + rho, 0),
        p5(K, 0);
    inc += segment_increment(sd, p0, p1, n, min_abs);
    inc += segment_increment(sd, p1, p2, n / 4 + 8, min_abs);
    inc += segment_increment(sd, p2, p3, n, min_abs);
    inc += segment_increment(sd, p3, p4, n / 4 + 8, min_abs);
    inc += segment_increment(sd, p4, p5, n, min_abs);
    inc += arc_increment(sd, K, 2 * n, min_abs);
    rep.a1_winding_raw = inc / (2.0 * pi);
    rep.a1_winding = static_cast<int>(std::lround(rep.a1_winding_raw));
    rep.a1_zero_free = rep.a1_winding == 0 && min_abs > 1e-6;

    // (A2): simple zero of a1+ at 0
    const ZeroFit z = fit_a10(sd);
    rep.a10 = z.a10;
    rep.a10_zero_value = z.value_at_zero;
    rep.a10_linear_residual = z.linear_residual;
    rep.simple_zero_at_0 = std::abs(z.a10) * A > 1e-6 && std::abs(z.value_at_zero) < 1e-6 * std::abs(z.a10) * A;
    rep.re_a10_zero = std::abs(z.a10.real()) < 1e-6 * std::abs(z.a10);

    // winding of 1 + r1 r2 along (-inf, -A)
    const EndpointJump ej = endpoint_jump(sd);
    rep.zero_at_minus_A = ej.is_zero;
    rep.jump_at_minus_A = std::abs(ej.value);
    const double k_end = -A * (1.0 + 1e-6);
    const quad::WindingTable tab = quad::winding_table(
        [&](double s) { return jump_factor(sd, s); }, k_end, A, grid.winding_samples);
    rep.winding_max = tab.max_abs;
    rep.winding_at_minus_A = tab.total;
    rep.winding_in_range = tab.max_abs < pi;
    rep.gamma_plus = sd.gamma_plus;
    return rep;
}

std::string AssumptionReport::to_json() const
{
    auto c = [](cplx v) { return nlohmann::json{{"re", v.real()}, {"im", v.imag()}}; };
    nlohmann::json j;
    j["a1_winding"] = a1_winding;
    j["a1_winding_raw"] = a1_winding_raw;
    j["a1_zero_free"] = a1_zero_free;
    j["a10"] = c(a10);
    j["a10_zero_value"] = c(a10_zero_value);
    j["a10_linear_residual"] = a10_linear_residual;
    j["simple_zero_at_0"] = simple_zero_at_0;
    j["re_a10_zero"] = re_a10_zero;
    j["winding_max"] = winding_max;
    j["winding_at_minus_A"] = winding_at_minus_A;
    j["winding_in_range"] = winding_in_range;
    j["zero_at_minus_A"] = zero_at_minus_A;
    j["jump_at_minus_A"] = jump_at_minus_A;
    j["gamma_plus"] = gamma_plus ? c(*gamma_plus) : nlohmann::json();
    j["assumptions_hold"] = assumptions_hold();
    return j.dump(2);
}

} // namespace nnls::spectral
