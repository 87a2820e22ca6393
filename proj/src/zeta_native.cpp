#include "zetaline/zeta_native.hpp"

#include <cmath>
#include <vector>

#include "zetaline/error.hpp"
#include "zetaline/zeta.hpp"

namespace zetaline::native {

namespace {

constexpr double kTwoPi = 6.283185307179586;

// Adds the N^{1−s}/(s−1) + N^{−s}/2 + Bernoulli tail to `sum`, given xN = N^{−s}.
// Returns false if the correction terms start growing before converging.
bool add_em_tail(cplx s, long N, cplx xN, cplx& sum) {
  const std::vector<double>& ratio = bernoulli_term_ratios();
  double Nd = static_cast<double>(N);
  cplx total = sum + xN * Nd / (s - 1.0) + 0.5 * xN;
  cplx P = s * xN / Nd;
  double coef = ratio[0];
  double inv_NN = 1.0 / (Nd * Nd);
  double prev = HUGE_VAL;
  for (std::size_t j = 1; j < ratio.size(); ++j) {
    if (j > 1) {
      double m = static_cast<double>(2 * j);
      P *= (s + (m - 3.0)) * (s + (m - 2.0)) * inv_NN;
      coef *= ratio[j - 1];
    }
    cplx T = coef * P;
    total += T;
    double ta = std::abs(T);
    if (j >= 2 && ta <= 1e-17 * std::abs(total)) {
      sum = total;
      return true;
    }
    if (j > 2 && ta > prev) return false;
    prev = ta;
  }
  return false;
}

cplx zeta_with_cutoff(cplx s, long N) {
  for (int attempt = 0; attempt < 8; ++attempt) {
    cplx sum = 0.0;
    for (long n = 1; n < N; ++n) sum += std::exp(-s * std::log(static_cast<double>(n)));
    cplx xN = std::exp(-s * std::log(static_cast<double>(N)));
    if (add_em_tail(s, N, xN, sum)) return sum;
    N *= 2;
  }
  fail(ErrorCode::kNonConvergence, "native Euler-Maclaurin did not converge");
}

}  // namespace

long em_cutoff(double abs_s) { return static_cast<long>(1.1 * abs_s / kTwoPi) + 20; }

cplx zeta(cplx s) {
  if (s == cplx(1.0, 0.0)) fail(ErrorCode::kPole, "zeta has a pole at s = 1");
  if (s.imag() < 0) return std::conj(zeta(std::conj(s)));
  return zeta_with_cutoff(s, em_cutoff(std::abs(s)));
}

void zeta_line_block(double sigma, double t0, double h, int count, cplx* out) {
  if (count <= 0) return;
  double tmax = t0 + h * (count - 1);
  long N = em_cutoff(std::abs(cplx(sigma, tmax)));
  std::vector<double> cr(N + 1), ci(N + 1), sr(N + 1), si(N + 1);
  for (long n = 1; n <= N; ++n) {
    double ln = std::log(static_cast<double>(n));
    double amp = std::exp(-sigma * ln);
    cr[n] = amp * std::cos(t0 * ln);
    ci[n] = -amp * std::sin(t0 * ln);
    sr[n] = std::cos(h * ln);
    si[n] = -std::sin(h * ln);
  }
  double* __restrict pcr = cr.data();
  double* __restrict pci = ci.data();
  const double* __restrict psr = sr.data();
  const double* __restrict psi = si.data();
  for (int j = 0; j < count; ++j) {
    double acc_r = 0.0, acc_i = 0.0;
#pragma omp simd reduction(+ : acc_r, acc_i)
    for (long n = 1; n < N; ++n) {
      double a = pcr[n], b = pci[n];
      acc_r += a;
      acc_i += b;
      pcr[n] = a * psr[n] - b * psi[n];
      pci[n] = a * psi[n] + b * psr[n];
    }
    cplx xN(pcr[N], pci[N]);
    double a = pcr[N], b = pci[N];
    pcr[N] = a * psr[N] - b * psi[N];
    pci[N] = a * psi[N] + b * psr[N];
    cplx s(sigma, t0 + h * j);
    cplx sum(acc_r, acc_i);
    if (!add_em_tail(s, N, xN, sum)) sum = zeta_with_cutoff(s, 2 * N);
    out[j] = sum;
  }
}

}  // namespace zetaline::native
