#pragma once

// Independent reference routines used only by tests.

#include <cmath>

#include "zetaline/hpnum.hpp"

namespace oracle {

using zetaline::HComplex;
using zetaline::HReal;

// Σ_{n<N} n^{-2} + tail 1/N + 1/(2N^2) + 1/(6N^3).
inline HReal zeta2_direct(long N) {
  HReal s;
  for (long n = N - 1; n >= 1; --n) {
    HReal nn(n);
    s += HReal(1) / (nn * nn);
  }
  HReal Nr(N);
  return s + HReal(1) / Nr + HReal(1) / (2 * Nr * Nr) + HReal(1) / (6 * Nr * Nr * Nr);
}

// Borwein's accelerated alternating series for η(s), then ζ = η/(1 − 2^{1−s}).
inline HComplex zeta_via_eta(const HComplex& s, int digits) {
  double im = std::abs(s.im.to_double());
  int n = static_cast<int>(1.31 * digits + 1.4 * im) + 10;
  std::vector<HReal> d(n + 1);
  HReal term = HReal(1) / HReal(n);  // (n+i−1)! 4^i / ((n−i)! (2i)!) at i = 0 is 1/n
  HReal acc = term;
  d[0] = acc * n;
  for (int i = 1; i <= n; ++i) {
    term = term * HReal(n + i - 1) * HReal(n - i + 1) * 4 / (HReal(2 * i - 1) * HReal(2 * i));
    acc += term;
    d[i] = acc * n;
  }
  HComplex sum;
  for (int k = 0; k < n; ++k) {
    HComplex t = zetaline::pow(HReal(k + 1), -s) * (d[k] - d[n]);
    if (k % 2) sum -= t;
    else sum += t;
  }
  HComplex eta = -(sum / d[n]);
  HComplex denom = HComplex(1) - zetaline::pow(HReal(2), HComplex(1) - s);
  return eta / denom;
}

inline HReal zeta_via_eta(const HReal& s, int digits) { return zeta_via_eta(HComplex(s), digits).re; }

}  // namespace oracle
