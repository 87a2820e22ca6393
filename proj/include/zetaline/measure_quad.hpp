#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "zetaline/coeffs.hpp"
#include "zetaline/hpnum.hpp"

namespace zetaline {

using cplx = std::complex<double>;

// est_error is the last refinement correction; trunc_bound covers |t| > T and
// is never folded into est_error.
struct QuadratureResult {
  HComplex value;
  HReal est_error;
  HReal trunc_bound;
  long nodes_used = 0;
  int theta_panels = 0;
};

// t = tan(θ/2)/2 turns dμ into dθ/(2π).
double theta_of_t(double t);
double t_of_theta(double theta);

// Romberg on θ ∈ [−θ_T, θ_T] with θ_T = 2 atan(2T). The caller owns the
// cutoff policy and passes the matching tail bound.
struct MuOptions {
  double T = 1e10;
  double tail_bound = 0.0;
  int min_level = 8;  // 2^8 θ intervals before the estimate is trusted
  int max_level = 22;
};
QuadratureResult integrate_mu(const std::function<cplx(double)>& f, double tol, const MuOptions& opt = {});

// Integrands built from ζ(σ_j + it) on a few vertical lines. kernel receives
// z[j] = ζ(sigmas[j] + it) and writes `outputs` values. density is taken
// with respect to dt; when empty the Cauchy density 1/(2π(1/4 + t²)) is used.
//
// Smooth integrands: a partition of unity w(t) splits ℝ into a central part
// |t| ≲ 32 (trapezoid in θ, doubled until it settles) and a far part
// 16 ≤ |t| ≤ T (uniform t grid, ζ sampled in blocks and cached).
// With singular_points (t > 0, mirrored) the range up to just past the last
// point is split into θ panels at those points and integrated by tanh-sinh,
// then the uniform grid takes over.
struct LineIntegrand {
  std::vector<double> sigmas;
  int outputs = 1;
  std::function<void(double t, const cplx* z, cplx* out)> kernel;
  std::function<double(double t)> density;
  std::vector<double> singular_points;
};

struct LineOptions {
  double T = 1e5;
  double h = 0.125;
  double tol = 1e-11;  // central and panel refinement target
};

// trunc_bound is left at zero; callers attach the bound that fits the integrand.
std::vector<QuadratureResult> integrate_line(const LineIntegrand& f, const LineOptions& opt = {});

void clear_line_cache();
std::size_t line_cache_samples();

// Heuristic tail sizes for |t| > T, from the mean-square law
// ∫_0^T |ζ(1/2+it)|² dt ~ T log(T/2π) + (2γ0 − 1)T.
double tail_mean_square(double T);  // ∫_{|t|>T} |ζ(1/2+it)|² dμ
double tail_linear(double T);       // Cauchy-Schwarz with μ(|t| > T)
double tail_log(double T);          // log-type integrands

// ⟨ζ(σ0 + i·)^k, e_n⟩ for n_min ≤ n ≤ n_max. ζ^k − 1 is integrated and the
// exact ⟨1, e_n⟩ = δ_{n0} added back.
std::vector<QuadratureResult> coefficient_quadrature(double sigma0, int k, int n_min, int n_max,
                                                     const LineOptions& opt = {});

struct IdentityReport {
  std::string name;
  QuadratureResult quad;
  HReal target;
  HReal abs_err;
};
std::string to_json(const IdentityReport& r);

// ∫ |ζ(1/2+it)|² dμ against log 2π − γ0.
IdentityReport coffey_identity(const LineOptions& opt = {});
// ∫ |ζ(s) − s/(s−1)|² dμ on Re s = 1/2 against log 2π − γ0 − 1.
IdentityReport hnorm_identity(const LineOptions& opt = {});
// ∫ ζ(a+it) ζ(b+it) dμ; target left unset.
QuadratureResult cross_quadrature(double a, double b, const LineOptions& opt = {});

// ℓ0(a)ℓ0(b) + F(a,b) + F(b,a) with
// F(a,b) = −(a − 1/2)^{−2} Σ_{n≥1} ℓ_n(b) ((a − 1/2)/(3/2 − a))^{n+1},
// F(1/2, b) = −ℓ_1(b) as the a → 1/2 limit. ta and tb hold the coefficients
// on Re s = a and Re s = b (critical family at 1/2).
struct CrossMoment {
  HReal value;
  HReal tail_bound;
  int terms = 0;
};
// Fails with slow-convergence when the tables end before the geometric tail
// drops below tol.
CrossMoment cross_moment_closed_form(const HReal& a, const HReal& b, const CoeffTable& ta, const CoeffTable& tb,
                                     const HReal& tol, const PrecisionCtx& ctx);

// Closed form for ∫ ζ(σ+it) ζ(1/2+it) dμ with the −ℓ_1(σ) term dropped:
// (γ0−1)ζ(σ+1/2) − ζ(3/2−σ)/((σ−1/2)(3/2−σ)) − (σ−1/2)^{−2}.
HReal cross_half_without_l1(const HReal& sigma, const PrecisionCtx& ctx);
// The same integral with the F(1/2, σ) = −ℓ_1(σ) term kept:
// (γ0−1)ζ(σ+1/2) + ζ'(σ+1/2) − ζ(3/2−σ)/((σ−1/2)(3/2−σ)).
HReal cross_half_closed_form(const HReal& sigma, const PrecisionCtx& ctx);

// ∫ log|ζ(s) − s/(s−1)| dμ on Re s = 1/2.
QuadratureResult log_integral_disk(const LineOptions& opt = {});

// ∫ log|ζ(1/2+it)| dμ with tanh-sinh panels ending at every listed ordinate.
struct BsyReport {
  QuadratureResult quad;
  int ordinates_used = 0;
  int sign_changes = 0;      // Hardy Z sign changes up to the last listed ordinate
  bool uncovered_zero = false;  // a sign change with no listed ordinate; it is located and added as a panel end
  double min_ratio = 1.0;    // min |(1−ρ)/ρ| over listed zeros
};
BsyReport bsy_integral(double T_cutoff, const std::vector<double>& ordinates, const LineOptions& opt = {});

// ∫_0^∞ |φ(1/2+it)|² dt.
QuadratureResult phi_l2_halfline(const LineOptions& opt = {});

// Q(u) = exp(∫ (e_1(t) + z_u)/(e_1(t) − z_u) log|h(e_1(t))| dμ), z_u = (1−u)/u,
// plus log|Q(u)| through the Poisson kernel (2 Re u − 1)/(2π|1/2 + it − u|²).
struct OuterValue {
  HComplex q;
  QuadratureResult herglotz;
  QuadratureResult poisson;
};
OuterValue outer_function(const HComplex& u, const LineOptions& opt = {});

// Hardy Z(t) = e^{iθ(t)} ζ(1/2+it), θ from the Stirling series (t ≥ 1).
double hardy_z(double t);
// Sign changes of Z on [a, b] sampled with the given step.
int hardy_sign_changes(double a, double b, double step);

std::vector<double> load_zero_ordinates(const std::string& path);
std::string default_zero_file();

}  // namespace zetaline
