#pragma once

#include <string>
#include <vector>

#include "zetaline/coeffs.hpp"
#include "zetaline/hpnum.hpp"

namespace zetaline {

// e_n(t) = ((1/2 − it)/(1/2 + it))^n = exp(−2in·atan(2t))
HComplex basis_e(long n, const HReal& t, const PrecisionCtx& ctx);

// s = 1/(1 + z) and its inverse z = (1 − s)/s.
HComplex cayley(const HComplex& z);
HComplex cayley_inv(const HComplex& s);

enum class HRoute { kSeries, kClosedForm };
const char* route_name(HRoute r);

struct SeriesOptions {
  double delta = 0.05;       // closed form is used when |z| > 1 − delta
  bool force_series = false;
};

struct HValue {
  HComplex value;
  HRoute route = HRoute::kSeries;
  int terms = 0;      // highest index summed
  HReal tail_bound;   // Cauchy-Schwarz bound on the omitted terms plus coefficient errors
};

// h(z) = Σ_{n≥0} ℓ_n z^n = 1/z + ζ(1/(1 + z)). The series is cut once the
// tail bound sqrt(Σ_{n>N} ℓ_n²)·|z|^{N+1}/sqrt(1 − |z|²) drops below tol, with
// Σ_{n>N} ℓ_n² taken from the Parseval ceiling minus the computed partial sum.
HValue eval_h(const HComplex& z, const CoeffTable& coeffs, const HReal& tol, const PrecisionCtx& ctx,
              const SeriesOptions& opt = {});

// ζ(s) = s/(s − 1) + h((1 − s)/s) for Re s > 1/2. `regular` carries
// ζ(s) − s/(s − 1), which stays finite at s = 1.
struct SeriesZeta {
  HComplex value;     // unset when at_pole
  HValue regular;
  bool at_pole = false;
};
SeriesZeta zeta_via_series(const HComplex& s, const CoeffTable& coeffs, const HReal& tol, const PrecisionCtx& ctx,
                           const SeriesOptions& opt = {});

// f_N(z) = −1 + Σ_{n=0}^N ℓ_n z^{n+1}, Horner order.
HComplex partial_sum_fN(int N, const HComplex& z, const CoeffTable& coeffs);

// Z_N on the critical line: γ0 − 1/(1/2 − it) + Σ_{n=1}^N ℓ_n e_n(t).
HComplex boundary_partial_sum(int N, const HReal& t, const CoeffTable& coeffs, const PrecisionCtx& ctx);

// φ(s) = ∫_1^∞ {x} x^{−s−1} dx = (s/(s − 1) − ζ(s))/s
HComplex phi(const HComplex& s, const PrecisionCtx& ctx);

// Direct integral over [1, X] (X integer) panel by panel, plus the mean-value
// tail X^{−s}/(2s); tail_bound = |s + 1| X^{−σ−1}/(8(σ + 1)).
struct PhiDirect {
  HComplex value;
  HReal tail_bound;
};
PhiDirect phi_direct(const HComplex& s, long X, const PrecisionCtx& ctx);

struct CsCheck {
  HReal lhs;  // |ζ(s) − s/(s − 1)|
  HReal rhs;  // sqrt((log 2π − γ0 − 1)/(2σ − 1))·|s|
  bool holds = false;
};
CsCheck cs_bound_check(const HComplex& s, const PrecisionCtx& ctx);

// Li_α(z) = Σ_{n≥1} z^n/n^α for |z| < 1.
struct PolylogValue {
  HComplex value;
  long terms = 0;
  HReal tail_bound;
};
PolylogValue polylog(const HReal& alpha, const HComplex& z, const HReal& tol, const PrecisionCtx& ctx);

// |ζ(σ + it)| divided by Li_{1/2}(sqrt(1 − (2σ − 1)/|s|²)) along a t grid.
// A diagnostic for the o(·) envelope; no threshold applies.
struct EnvelopeRow {
  double t;
  double zeta_abs;
  double envelope;
  double ratio;
};
std::vector<EnvelopeRow> envelope_ratios(double sigma, const std::vector<double>& ts, const PrecisionCtx& ctx);

// CSV rows t, Re ζ, Im ζ, Re Z_N, Im Z_N, |error| on the critical line.
std::string boundary_csv(int N, const std::vector<double>& ts, const CoeffTable& coeffs, const PrecisionCtx& ctx);

}  // namespace zetaline
