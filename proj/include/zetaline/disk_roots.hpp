#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zetaline/coeffs.hpp"
#include "zetaline/hpnum.hpp"

namespace zetaline {

// Zeros of f_N(z) = −1 + Σ_{n=0}^N ℓ_n z^{n+1}. Since −1 + z h(z) = z ζ(1/(1+z)),
// f_N approximates a function whose disk zeros are the zeros of ζ with Re s > 1/2.
struct RootReport {
  int N = 0;
  std::vector<HComplex> roots_in_disk;  // |z| < 1, sorted by modulus
  std::optional<HReal> min_modulus;
  std::vector<std::pair<HReal, int>> winding_counts;
  HReal residual_max;  // max |f_N(r)| over all N + 1 roots
  bool polished = true;  // false when the Aberth iteration hit its cap
  int iterations = 0;
  std::vector<HComplex> all_roots;
};

// Companion-matrix eigenvalues in double, then Aberth–Ehrlich at ctx precision.
// Winding counts are added for each radius in `radii`.
RootReport roots_fN(int N, const CoeffTable& coeffs, const PrecisionCtx& ctx, const std::vector<double>& radii = {});

// Argument-principle count of zeros of f_N inside |z| = radius. Nodes double
// until every phase step is below π/2. Fails with circle-too-close when a
// root sits within 10 node spacings of the circle.
int winding_count(int N, const HReal& radius, int nodes, const CoeffTable& coeffs);

// sqrt(Σ_{n>N} ℓ_n²)·r^{N+2}/sqrt(1 − r) against min_{|z|=r} |f_N|. When the
// minimum is larger, f and f_N have the same number of zeros inside the circle.
struct TailCertificate {
  HReal bound;
  HReal min_abs_fN;
  bool certified = false;  // false means inconclusive, not failure
};
TailCertificate tail_radius_certificate(int N, const HReal& radius, const CoeffTable& coeffs, const PrecisionCtx& ctx);

std::string to_json(const RootReport& r);
std::string to_csv(const RootReport& r);  // Re z, Im z, |z| for roots in the disk

}  // namespace zetaline
