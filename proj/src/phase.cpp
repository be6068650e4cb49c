#include "nnls/phase.hpp"

#include <cmath>
#include <sstream>

#include "nnls/branches.hpp"
#include "nnls/error.hpp"

namespace nnls::phase {

const char* to_string(RegionTag r)
{
    switch (r) {
    case RegionTag::ModulatedPlus: return "modulated_plus";
    case RegionTag::ModulatedMinus: return "modulated_minus";
    case RegionTag::CentralPlus: return "central_plus";
    case RegionTag::CentralMinus: return "central_minus";
    case RegionTag::TransitionAxis: return "transition_axis";
    case RegionTag::Boundary: return "boundary";
    }
    return "?";
}

RegionTag mirror(RegionTag r)
{
    switch (r) {
    case RegionTag::ModulatedPlus: return RegionTag::ModulatedMinus;
    case RegionTag::ModulatedMinus: return RegionTag::ModulatedPlus;
    case RegionTag::CentralPlus: return RegionTag::CentralMinus;
    case RegionTag::CentralMinus: return RegionTag::CentralPlus;
    default: return r;
    }
}

cplx theta(cplx k, const Direction& d, CutSide side)
{
    const cplx f = branches::f(k, d.A, side);
    return (4.0 * d.xi + 2.0 * k) * f;
}

std::pair<double, double> critical_points(const Direction& d)
{
    if (d.xi < 0.0)
        throw Error(ErrorKind::Domain, "critical_points expects xi >= 0");
    const double A = d.A;
    const double s = std::sqrt(d.xi * d.xi + 2.0 * A * A);
    return {-(d.xi + s) / 2.0, -(d.xi - s) / 2.0};
}

RegionTag classify(const Direction& d)
{
    const double a = std::abs(d.xi);
    const double half = 0.5 * d.A;
    if (a == 0.0 || a == half)
        return RegionTag::Boundary;
    if (a > half)
        return d.xi > 0 ? RegionTag::ModulatedPlus : RegionTag::ModulatedMinus;
    return d.xi > 0 ? RegionTag::CentralPlus : RegionTag::CentralMinus;
}

SignatureGrid default_signature_grid(const Direction& d)
{
    const double A = d.A;
    const double w = 2.0 * A + 2.0 * std::abs(d.xi);
    return {-w, w, -2.0 * A, 2.0 * A, 401, 401};
}

SignatureTable signature_table(const Direction& d, const SignatureGrid& g)
{
    if (g.n_re < 1 || g.n_im < 1 || !(g.re_hi > g.re_lo) || !(g.im_hi > g.im_lo))
        throw Error(ErrorKind::Domain, "signature grid must be a non-empty rectangle");
    SignatureTable t;
    t.grid = g;
    const double dre = (g.re_hi - g.re_lo) / g.n_re;
    const double dim = (g.im_hi - g.im_lo) / g.n_im;
    for (int i = 0; i < g.n_re; ++i)
        t.re.push_back(g.re_lo + (i + 0.5) * dre);
    for (int j = 0; j < g.n_im; ++j) {
        double y = g.im_lo + (j + 0.5) * dim;
        if (y == 0.0)
            y = 0.5 * dim; // keep rows off the real axis
        t.im.push_back(y);
    }
    t.sign.reserve(static_cast<std::size_t>(g.n_re) * g.n_im);
    for (int j = 0; j < g.n_im; ++j)
        for (int i = 0; i < g.n_re; ++i) {
            const cplx k(t.re[i], t.im[j]);
            const double v = theta(k, d).imag();
            const double tiny = 1e-14 * (1.0 + std::abs(theta(k, d)));
            t.sign.push_back(v > tiny ? 1 : (v < -tiny ? -1 : 0));
        }
    return t;
}

std::string SignatureTable::to_csv() const
{
    std::ostringstream os;
    os.precision(17);
    os << "k_re,k_im,sign\n";
    for (int j = 0; j < grid.n_im; ++j)
        for (int i = 0; i < grid.n_re; ++i)
            os << re[i] << ',' << im[j] << ',' << at(i, j) << '\n';
    return os.str();
}

} // namespace nnls::phase
