#include "nnls/branches.hpp"

#include <cmath>
#include <string>

#include "nnls/error.hpp"

namespace nnls::branches {

namespace {

// Real k exactly at +-A, or an Off request on the open cut.
void check_real_axis(double x, double A, CutSide side, const char* fn)
{
    if (std::abs(x) == A)
        throw Error(ErrorKind::BranchPoint, std::string(fn) + ": k is a branch point +-A");
    if (std::abs(x) < A && side == CutSide::Off)
        throw Error(ErrorKind::Domain, std::string(fn) + ": k on the cut (-A,A) needs a side");
}

} // namespace

bool on_real_cut(cplx k, double A)
{
    return k.imag() == 0.0 && std::abs(k.real()) < A;
}

cplx f(cplx k, Amplitude Aa, CutSide side)
{
    const double A = Aa;
    if (k.imag() == 0.0) {
        const double x = k.real();
        check_real_axis(x, A, side, "f");
        if (std::abs(x) < A) {
            const double s = std::sqrt((A - x) * (A + x));
            return side == CutSide::Above ? cplx(0.0, s) : cplx(0.0, -s);
        }
        const double s = std::sqrt((std::abs(x) - A) * (std::abs(x) + A));
        return x > 0 ? s : -s;
    }
    return std::sqrt(k - A) * std::sqrt(k + A);
}

cplx w(cplx k, Amplitude Aa, CutSide side)
{
    const double A = Aa;
    if (k.imag() == 0.0) {
        const double x = k.real();
        check_real_axis(x, A, side, "w");
        if (std::abs(x) < A) {
            const double r = std::sqrt(std::sqrt((A - x) / (A + x)));
            const double phase = side == CutSide::Above ? pi / 4 : -pi / 4;
            return std::polar(r, phase);
        }
        return std::sqrt(std::sqrt((x - A) / (x + A)));
    }
    return std::sqrt(std::sqrt((k - A) / (k + A)));
}

cplx h(cplx k, Amplitude Aa)
{
    const double A = Aa;
    if (k.real() == 0.0 && std::abs(k.imag()) <= A) {
        if (std::abs(k.imag()) == A)
            throw Error(ErrorKind::BranchPoint, "h: k is a branch point +-iA");
        throw Error(ErrorKind::Domain, "h: k on the cut [-iA, iA]");
    }
    if (k.imag() == 0.0) {
        const double x = k.real();
        const double s = std::hypot(x, A);
        return x > 0 ? s : -s;
    }
    return k * std::sqrt(1.0 + (A / k) * (A / k));
}

cplx lambda(int j, cplx k, Amplitude A, CutSide side)
{
    if (j != 1 && j != 2)
        throw Error(ErrorKind::Domain, "lambda: index must be 1 or 2");
    const cplx fk = f(k, A, side);
    const cplx hk = h(k, A);
    return j == 1 ? I * (fk + hk) : I * (fk - hk);
}

Mat2 E(int j, cplx k, Amplitude A, CutSide side)
{
    if (j != 1 && j != 2)
        throw Error(ErrorKind::Domain, "E: index must be 1 or 2");
    const cplx wk = w(k, A, side);
    const cplx d = 0.5 * (wk + 1.0 / wk);
    const cplx o = 0.5 * I * (wk - 1.0 / wk);
    // (-1)^j in the upper-right slot
    const double s = j == 1 ? -1.0 : 1.0;
    return {d, s * o, -s * o, d};
}

} // namespace nnls::branches
