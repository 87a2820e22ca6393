#pragma once

#include <complex>

namespace zetaline::native {

using cplx = std::complex<double>;

// ζ(s) in double precision by Euler-Maclaurin. s ≠ 1, Re s > −1.
cplx zeta(cplx s);

// out[j] = ζ(σ + i(t0 + j h)) for j = 0..count−1 with t0 ≥ 0, h > 0. The
// Dirichlet terms are advanced by a per-n phase recurrence, so one block
// costs about count · N complex multiply-adds with N ≈ 1.1 t_max/(2π).
void zeta_line_block(double sigma, double t0, double h, int count, cplx* out);

// Cutoff used for a given height.
long em_cutoff(double abs_s);

}  // namespace zetaline::native
