#pragma once

#include <array>
#include <complex>
#include <numbers>

namespace nnls {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr cplx I{0.0, 1.0};

/// Which nontangential limit onto a branch cut is requested.
enum class CutSide { Above, Below, Off };

/// Background amplitude A > 0.
class Amplitude {
public:
    explicit Amplitude(double a);
    double value() const noexcept { return a_; }
    operator double() const noexcept { return a_; }

private:
    double a_;
};

/// Dense 2x2 complex matrix, row-major.
struct Mat2 {
    cplx m11{}, m12{}, m21{}, m22{};

    static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
    cplx det() const { return m11 * m22 - m12 * m21; }
    std::array<cplx, 2> column(int j) const
    {
        return j == 1 ? std::array<cplx, 2>{m11, m21} : std::array<cplx, 2>{m12, m22};
    }
    Mat2 operator*(const Mat2& o) const
    {
        return {m11 * o.m11 + m12 * o.m21, m11 * o.m12 + m12 * o.m22,
                m21 * o.m11 + m22 * o.m21, m21 * o.m12 + m22 * o.m22};
    }
    Mat2 operator*(cplx s) const { return {m11 * s, m12 * s, m21 * s, m22 * s}; }
    Mat2 operator-(const Mat2& o) const
    {
        return {m11 - o.m11, m12 - o.m12, m21 - o.m21, m22 - o.m22};
    }
    double max_abs() const;
};

/// Pauli matrices.
inline Mat2 sigma2() { return {0.0, -I, I, 0.0}; }
inline Mat2 sigma3() { return {1.0, 0.0, 0.0, -1.0}; }

inline cplx det2(const std::array<cplx, 2>& u, const std::array<cplx, 2>& v)
{
    return u[0] * v[1] - u[1] * v[0];
}

const char* to_string(CutSide s);

} // namespace nnls
