#pragma once

#include <string>
#include <vector>

#include <gmpxx.h>

#include "zetaline/hpnum.hpp"
#include "zetaline/zeta.hpp"

namespace zetaline {

// critical: ℓ_n, coefficients of ζ(1/2 + it) in the basis e_n.
// line:     ℓ_n(σ0) = ⟨ζ(σ0 + i·), e_n⟩ for σ0 > 1/2, σ0 ≠ 1.
// power:    ℓ_{n,k}, coefficients of ζ^k(1/2 + it).
enum class Family { kCritical, kLine, kPower };
enum class Provenance { kFormula, kQuadrature };

const char* family_name(Family f);

struct CoeffTable {
  Family family = Family::kCritical;
  HReal sigma0;  // line family only
  int k = 1;     // power family only
  int n_min = 0;
  int n_max = 0;
  std::vector<HReal> values;     // index n − n_min
  std::vector<HReal> abs_error;  // propagated from the input table
  int digits = 0;                // digits the values are advertised to
  int source_digits = 0;         // precision of the Stieltjes/Laurent input
  Provenance provenance = Provenance::kFormula;

  // Throws kInsufficientTable outside [n_min, n_max], except that the power
  // family returns 0 below −k and the line family with σ0 > 1 returns 0 for n < 0.
  HReal at(int n) const;
};

// Digits lost to cancellation in the binomial sums up to index n_max.
int coeff_reserve_digits(int n_max);

// ℓ_n for n = −1..n_max. Values are advertised to ctx.digits − reserve;
// kInsufficientPrecision if that is below 15.
CoeffTable ell(int n_max, const StieltjesTable& gammas, const PrecisionCtx& ctx);

// ℓ_n(σ0) for n_min..n_max. The derivatives ζ^(k)(σ0 + 1/2)/k! come from a
// radius-3 contour around σ0 + 1/2 of the entire part of ζ; the pole part is
// summed in closed form.
CoeffTable ell_sigma(const HReal& sigma0, int n_min, int n_max, const PrecisionCtx& ctx);

// ℓ_{n,k} for n_min..n_max from λ_{m,k}.
CoeffTable ell_power(int k, int n_min, int n_max, const LaurentTable& lambdas, const PrecisionCtx& ctx);

// b_n = Σ_k C(n,k) (−1)^{n−k} a_k
template <class T>
std::vector<T> binom_transform(const std::vector<T>& a) {
  std::vector<T> b(a.size());
  for (std::size_t n = 0; n < a.size(); ++n) {
    std::vector<mpz_class> row = binom_row(n);
    T acc = T(0);
    for (std::size_t k = 0; k <= n; ++k) {
      T term = a[k] * T(row[k]);
      if ((n - k) % 2) acc -= term;
      else acc += term;
    }
    b[n] = acc;
  }
  return b;
}

// a_n = Σ_k C(n,k) b_k
template <class T>
std::vector<T> binom_inverse(const std::vector<T>& b) {
  std::vector<T> a(b.size());
  for (std::size_t n = 0; n < b.size(); ++n) {
    std::vector<mpz_class> row = binom_row(n);
    T acc = T(0);
    for (std::size_t k = 0; k <= n; ++k) acc += b[k] * T(row[k]);
    a[n] = acc;
  }
  return a;
}

// γ_n/n! = Σ_{k=1}^n C(n−1,k−1) ℓ_k for n = 1..table.n_max (index n − 1).
std::vector<HReal> stieltjes_over_factorial_from_ell(const CoeffTable& critical);

struct DecayDiagnostics {
  HReal alpha_fit;  // |ℓ_n| ≈ C n^{−alpha} over the top half of indices
  std::vector<HReal> abs_partial_sums;  // Σ_{0≤m≤n} |ℓ_m|, index n
  std::vector<HReal> sq_partial_sums;   // Σ_{0≤m≤n} ℓ_m², index n
};

DecayDiagnostics decay_diagnostics(const CoeffTable& table);

// log(2π) − γ0 − 1
HReal parseval_ceiling(const PrecisionCtx& ctx);

// JSON {schema_version, family, sigma0?, k?, digits, source_digits, provenance, values:[{n, value}]}
std::string to_json(const CoeffTable& table);
CoeffTable coeff_table_from_json(const std::string& text, const PrecisionCtx& ctx);
// "n,value" rows with a header
std::string to_csv(const CoeffTable& table);

}  // namespace zetaline
