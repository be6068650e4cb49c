#pragma once

#include "nnls/types.hpp"

/// Branch-cut special functions of the spectral parameter.
///
/// f and w have their cut on [-A, A]; h has its cut on [-iA, iA]. All are
/// normalized at infinity (f ~ k, w ~ 1, h ~ k). A point on a cut needs an
/// explicit CutSide; evaluating exactly at a branch point throws.
namespace nnls::branches {

/// True when k lies on the open segment (-A, A).
bool on_real_cut(cplx k, double A);

/// (k^2 - A^2)^{1/2}; on the cut f_+ = i sqrt(A^2 - k^2), f_- = -f_+.
cplx f(cplx k, Amplitude A, CutSide side = CutSide::Off);

/// ((k - A)/(k + A))^{1/4}; on the cut w_+ = e^{i pi/4} ((A-k)/(A+k))^{1/4}, w_- = e^{-i pi/4} (...).
cplx w(cplx k, Amplitude A, CutSide side = CutSide::Off);

/// (k^2 + A^2)^{1/2}, cut on [-iA, iA]. Real k gives sign(k) sqrt(k^2 + A^2).
cplx h(cplx k, Amplitude A);

/// lambda_1 = i(f + h), lambda_2 = i(f - h).
cplx lambda(int j, cplx k, Amplitude A, CutSide side = CutSide::Off);

/// E_j(k); det E_j = 1.
Mat2 E(int j, cplx k, Amplitude A, CutSide side = CutSide::Off);

} // namespace nnls::branches
