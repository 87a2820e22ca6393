#pragma once

#include <string>
#include <vector>

#include "zetaline/hpnum.hpp"

namespace zetaline {

// B_0, B_2, ..., B_{2(count-1)} as exact rationals. Cached, grows on demand.
std::vector<mpq_class> bernoulli_even(int count);

// B_{2j}/(2j)! for j = 1..count as doubles, stored as successive ratios so
// that deep terms do not underflow: ratio[0] = B_2/2!, ratio[j] = term_{j+1}/term_j.
const std::vector<double>& bernoulli_term_ratios();

HComplex zeta_em(const HComplex& s, const PrecisionCtx& ctx);

// Euler-Maclaurin with an explicit cutoff N; the number of correction terms
// still adapts to the context. Used for self-consistency checks.
HComplex zeta_em_cutoff(const HComplex& s, long N, const PrecisionCtx& ctx);

// ζ(s) − 1/(s−1), regular at s = 1. Valid for Re s > −3.
HComplex zeta_entire_part(const HComplex& s, const PrecisionCtx& ctx);

// Taylor coefficients a_0..a_K of ζ(s) − 1/(s−1) about s0, by the M-node
// trapezoid rule on |s − s0| = r. `err` (optional) receives per-coefficient
// estimates from the M/2-node subset plus the rounding floor.
std::vector<HComplex> entire_taylor(const HComplex& s0, const HReal& r, int M, int K,
                                    const PrecisionCtx& ctx, std::vector<HReal>* err = nullptr);

// Same, with the node count doubled from max(64, 4K) until the subset estimate
// reaches ctx.digits. Requires Re s0 − r > −3.
std::vector<HComplex> entire_taylor_auto(const HComplex& s0, const HReal& r, int K, const PrecisionCtx& ctx,
                                         std::vector<HReal>* err = nullptr);

HComplex zeta_derivative(const HComplex& s0, int k, const PrecisionCtx& ctx, double radius = 0.0);

enum class StieltjesMethod { kContour, kLimitAccel };
const char* method_name(StieltjesMethod m);

struct StieltjesTable {
  int k_max = 0;
  int digits = 0;
  StieltjesMethod method = StieltjesMethod::kContour;
  std::vector<HReal> gammas;
  std::vector<HReal> abs_error;

  // γ_k/k! with the sign convention of the Laurent series, (−1)^k γ_k/k!.
  HReal laurent_coeff(int k) const;
};

StieltjesTable stieltjes(int k_max, const PrecisionCtx& ctx,
                         StieltjesMethod method = StieltjesMethod::kContour);

// Limit definition γ_k = lim (Σ_{m≤N} log^k m / m − log^{k+1} N/(k+1)) with
// the Euler-Maclaurin tail removed at cutoff N.
StieltjesTable stieltjes_limit(int k_max, const PrecisionCtx& ctx, long N = 0);

// |γ_k|/k! ≤ 4/(k π^k)
bool berndt_holds(const StieltjesTable& table, int k);

struct LaurentTable {
  int k = 1;
  int m_max = 0;
  int digits = 0;
  std::vector<HReal> lambdas;  // λ_{0,k} .. λ_{m_max,k}
};

LaurentTable laurent_power_coeffs(int k, int m_max, const PrecisionCtx& ctx);

}  // namespace zetaline
