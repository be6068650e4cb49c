#pragma once

#include <string>
#include <utility>
#include <vector>

#include "nnls/types.hpp"

namespace nnls::phase {

/// Space-time direction xi = x/(4t).
struct Direction {
    double xi;
    Amplitude A;
};

enum class RegionTag {
    ModulatedPlus,
    ModulatedMinus,
    CentralPlus,
    CentralMinus,
    TransitionAxis,
    Boundary
};

const char* to_string(RegionTag r);
RegionTag mirror(RegionTag r);

/// theta(k, xi) = 4 xi f(k) + 2 k f(k).
cplx theta(cplx k, const Direction& d, CutSide side = CutSide::Off);

/// Zeros of d theta/dk: k1 = -(xi + sqrt(xi^2 + 2A^2))/2, k2 = -(xi - sqrt(...))/2. Needs xi >= 0.
std::pair<double, double> critical_points(const Direction& d);

RegionTag classify(const Direction& d);

struct SignatureGrid {
    double re_lo, re_hi, im_lo, im_hi;
    int n_re = 401, n_im = 401;
};

/// 401 x 401 over [-2A-2|xi|, 2A+2|xi|] x [-2A, 2A].
SignatureGrid default_signature_grid(const Direction& d);

/// Sign of Im theta on cell centres (the rows never touch Im k = 0).
struct SignatureTable {
    SignatureGrid grid;
    std::vector<double> re, im; ///< sample coordinates
    std::vector<int> sign;      ///< row-major, index = i_im * n_re + i_re
    int at(int i_re, int i_im) const { return sign[static_cast<std::size_t>(i_im) * grid.n_re + i_re]; }
    std::string to_csv() const;
};

SignatureTable signature_table(const Direction& d, const SignatureGrid& grid);

} // namespace nnls::phase
