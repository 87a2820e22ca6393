#include <doctest.h>

#include <chrono>
#include <vector>

#include "zetaline/zeta.hpp"
#include "zetaline/zeta_native.hpp"

using namespace zetaline;
using cplx = std::complex<double>;

namespace {

cplx reference(double sigma, double t) {
  PrecisionCtx ctx(30);
  PrecisionGuard g(ctx);
  return zeta_em(HComplex{HReal(sigma), HReal(t)}, ctx).to_complex();
}

}  // namespace

TEST_CASE("native point values against the multiprecision evaluator") {
  for (double sigma : {0.5, 0.75, 0.9, 1.5, 2.0})
    for (double t : {0.0, 0.3, 7.9, 14.134725, 100.0, 5000.0, 99999.5}) {
      cplx ref = reference(sigma, t);
      // Phase rounding of t·log n grows linearly with height.
      double tol = (1e-12 + 2e-15 * t) * std::max(1.0, std::abs(ref));
      cplx z = native::zeta({sigma, t});
      CHECK(std::abs(z - ref) < tol);
      cplx zm = native::zeta({sigma, -t});
      CHECK(std::abs(zm - std::conj(ref)) < tol);
    }
  CHECK(std::abs(native::zeta(-0.5) - reference(-0.5, 0)) < 1e-12);
  CHECK_THROWS_AS(native::zeta(1.0), NumericError);
}

TEST_CASE("line block matches point evaluation") {
  for (double t0 : {8.0, 2000.0, 90000.0}) {
    std::vector<cplx> out(1025);
    native::zeta_line_block(0.5, t0, 1.0 / 16, 1025, out.data());
    for (int j : {0, 1, 511, 1024}) {
      double t = t0 + j / 16.0;
      CHECK(std::abs(out[j] - native::zeta({0.5, t})) < 1e-10);
    }
    CHECK(std::abs(out[1024] - reference(0.5, t0 + 64)) < 1e-10);
  }
}

TEST_CASE("line block throughput" * doctest::skip()) {
  auto start = std::chrono::steady_clock::now();
  std::vector<cplx> out(1025);
  double checksum = 0;
  for (double t0 = 8; t0 < 100000; t0 += 64) {
    native::zeta_line_block(0.5, t0, 1.0 / 16, 1025, out.data());
    checksum += std::abs(out[7]);
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  MESSAGE("T = 1e5 at h = 1/16: " << secs << " s, checksum " << checksum);
}
