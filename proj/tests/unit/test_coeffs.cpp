#include <doctest.h>

#include <random>

#include "zetaline/coeffs.hpp"
#include "zetaline/error.hpp"

using namespace zetaline;

namespace {

// Reference values frozen from mpmath at 60 digits.
const char* kGamma1 = "-0.0728158454836767248605863758749013191377363383";
const char* kEll2 = "0.0679706638872405656183211828572950544582";
const char* kEll3 = "-0.06278317655408718206502931541589655906438";
const char* kEll1At075 = "-0.07033499712075775716651732479670637315303";
const char* kEll5At075 = "-0.04891716933855252422946173144710498665097";
const char* kEll3At2 = "0.002820978777199397287593269666731713130637";

HReal P(const char* s) { return HReal::parse(s); }

struct Tables {
  PrecisionCtx ctx{80};
  StieltjesTable gam = stieltjes(60, ctx);
  CoeffTable crit = ell(60, gam, ctx);
};

const Tables& tables() {
  static const Tables t;
  return t;
}

}  // namespace

TEST_CASE("ell: leading coefficients") {
  const auto& t = tables();
  PrecisionGuard g(t.ctx);
  CHECK(t.crit.at(-1) == -1);
  CHECK(abs(t.crit.at(0) - (const_euler() - 1)) < 1e-70);
  CHECK(abs(t.crit.at(1) - P(kGamma1)) < 1e-45);
  CHECK(abs(t.crit.at(2) - P(kEll2)) < 1e-39);
  CHECK(abs(t.crit.at(3) - P(kEll3)) < 1e-39);
  CHECK(t.crit.digits == 80 - 9);
  CHECK_THROWS_AS(t.crit.at(61), NumericError);
}

TEST_CASE("ell: reserve rule survives recomputation at +20 digits") {
  const auto& t = tables();
  PrecisionCtx wide(100);
  StieltjesTable g2 = stieltjes(60, wide);
  CoeffTable c2 = ell(60, g2, wide);
  PrecisionGuard g(wide);
  HReal tol = pow(HReal(10), -static_cast<long>(t.crit.digits));
  for (int n = -1; n <= 60; ++n) {
    CHECK(abs(t.crit.at(n) - c2.at(n)) < tol);
    CHECK(abs(t.crit.at(n) - c2.at(n)) <= t.crit.abs_error[n + 1] + tol);
  }
  try {
    ell(400, stieltjes(400, PrecisionCtx(60)), PrecisionCtx(60));
    FAIL("expected insufficient precision");
  } catch (const NumericError& e) {
    CHECK(e.code() == ErrorCode::kInsufficientPrecision);
  }
  CHECK_THROWS_AS(ell(61, t.gam, t.ctx), NumericError);
}

TEST_CASE("binomial transform pair") {
  std::vector<mpq_class> ones(12, mpq_class(1));
  auto b = binom_transform(ones);
  CHECK(b[0] == 1);
  for (std::size_t n = 1; n < b.size(); ++n) CHECK(b[n] == 0);
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> num(-1000, 1000), den(1, 97);
  for (int len : {20, 50}) {
    std::vector<mpq_class> a(len);
    for (auto& x : a) {
      x = mpq_class(num(rng), den(rng));
      x.canonicalize();
    }
    CHECK(binom_inverse(binom_transform(a)) == a);
    CHECK(binom_transform(binom_inverse(a)) == a);
  }
}

TEST_CASE("Stieltjes constants recovered from ell") {
  const auto& t = tables();
  PrecisionGuard g(t.ctx);
  auto rec = stieltjes_over_factorial_from_ell(t.crit);
  for (int n = 1; n <= 30; ++n) {
    HReal direct = t.gam.gammas[n] / factorial(n);
    CHECK(abs(rec[n - 1] - direct) < pow(HReal(10), -60));
  }
  // ℓ_n = (1/n) 𝔅(k γ_k/k!)_n
  std::vector<HReal> a(31);
  for (int k = 0; k <= 30; ++k) a[k] = HReal(k) * t.gam.gammas[k] / factorial(k);
  auto b = binom_transform(a);
  for (int n = 1; n <= 30; ++n) CHECK(abs(b[n] / n - t.crit.at(n)) < pow(HReal(10), -60));
}

TEST_CASE("ell_sigma values") {
  PrecisionCtx ctx(40);
  PrecisionGuard g(ctx);
  CoeffTable l = ell_sigma(HReal(0.75), -10, 12, ctx);
  CHECK(abs(l.at(-1) + HReal(16) / 9) < 1e-38);
  CHECK(abs(l.at(1) - P(kEll1At075)) < 1e-36);
  CHECK(abs(l.at(5) - P(kEll5At075)) < 1e-36);
  // n = 0 closed form: ζ(5/4) − 1/(σ0 − 1/2) − 1/(3/2 − σ0)
  HReal z125 = zeta_em(HComplex(HReal(1.25)), ctx).re;
  CHECK(abs(l.at(0) - (z125 - 4 - HReal(4) / 3)) < 1e-36);
  // Independent route: small-radius contour derivatives ζ^(k)(5/4).
  for (int n = 1; n <= 6; ++n) {
    HReal acc;
    for (int k = 1; k <= n; ++k) {
      HReal dk = zeta_derivative(HComplex(HReal(1.25)), k, ctx).re / factorial(k);
      HReal pole = HReal(k % 2 ? -1 : 1) / pow(HReal(0.25), static_cast<long>(k + 1));
      acc += HReal(binom_exact(n - 1, k - 1)) * (dk - pole);
    }
    if (n % 2) acc = -acc;
    CHECK(abs(acc - l.at(n)) < 1e-30);
  }
  CoeffTable l2 = ell_sigma(HReal(2), -3, 5, ctx);
  CHECK(l2.at(-1) == 0);
  CHECK(l2.at(-7) == 0);
  CHECK(abs(l2.at(0) - zeta_em(HComplex(HReal(2.5)), ctx).re) < 1e-37);
  CHECK(abs(l2.at(3) - P(kEll3At2)) < 1e-36);
  CHECK_THROWS_AS(ell_sigma(HReal(1), 0, 3, ctx), NumericError);
  CHECK_THROWS_AS(ell_sigma(HReal(0.5), 0, 3, ctx), NumericError);
}

TEST_CASE("ell_sigma tends to ell as sigma0 -> 1/2") {
  const auto& t = tables();
  PrecisionCtx ctx(40);
  PrecisionGuard g(ctx);
  HReal eps = pow(HReal(10), -12);
  CoeffTable l = ell_sigma(HReal(0.5) + eps, -1, 20, ctx);
  for (int n = -1; n <= 20; ++n) CHECK(abs(l.at(n) - t.crit.at(n)) < 1e-8);
}

TEST_CASE("negative-index coefficients telescope") {
  PrecisionCtx ctx(40);
  PrecisionGuard g(ctx);
  for (double s0 : {0.6, 0.75, 0.9}) {
    HReal sigma0(s0);
    CoeffTable l = ell_sigma(sigma0, -400, -1, ctx);
    for (double tt : {0.0, 1.0, 10.0}) {
      HReal t(tt);
      HComplex ratio = HComplex(HReal(0.5), -t) / HComplex(HReal(0.5), t);
      HComplex ratio_inv = inv(ratio);
      HComplex acc, e(1);
      for (int n = -1; n >= -400; --n) {
        e *= ratio_inv;
        acc += e * l.at(n);
      }
      HComplex expect = inv(HComplex(sigma0 - 1, t)) - HComplex(inv(HComplex(sigma0 - HReal(1.5))));
      // |ρ|^{-400} decides the truncation: (0.1/0.9)^400 at σ0 = 0.6.
      CHECK(abs(acc - expect).to_double() < 1e-30);
    }
  }
}

TEST_CASE("power coefficients") {
  PrecisionCtx ctx(50);
  LaurentTable lam1 = laurent_power_coeffs(1, 31, ctx);
  CoeffTable p1 = ell_power(1, -3, 30, lam1, ctx);
  StieltjesTable gam = stieltjes(30, ctx);
  CoeffTable crit = ell(30, gam, ctx);
  PrecisionGuard g(ctx);
  for (int n = -1; n <= 30; ++n) CHECK(abs(p1.at(n) - crit.at(n)) < pow(HReal(10), -40));
  CHECK(p1.at(-2) == 0);
  CHECK(p1.at(-50) == 0);
  LaurentTable lam2 = laurent_power_coeffs(2, 12, ctx);
  CoeffTable p2 = ell_power(2, -2, 10, lam2, ctx);
  CHECK(abs(p2.at(-2) - 1) < 1e-45);
  CHECK(p2.at(-3) == 0);
  CHECK_THROWS_AS(ell_power(2, -2, 11, lam2, ctx), NumericError);
}

TEST_CASE("decay diagnostics and Parseval ceiling") {
  const auto& t = tables();
  DecayDiagnostics d = decay_diagnostics(t.crit);
  PrecisionGuard g(t.ctx);
  HReal ceiling = parseval_ceiling(t.ctx);
  CHECK(abs(ceiling - P("0.2606614015")) < 1e-10);
  for (std::size_t n = 1; n < d.sq_partial_sums.size(); ++n) {
    CHECK(d.sq_partial_sums[n] >= d.sq_partial_sums[n - 1]);
    CHECK(d.abs_partial_sums[n] > d.abs_partial_sums[n - 1]);
    CHECK(d.sq_partial_sums[n] <= ceiling + 1e-9);
  }
  MESSAGE("alpha_fit over n in [30, 60]: " << d.alpha_fit.to_double());
}

TEST_CASE("JSON and CSV export") {
  PrecisionCtx ctx(40);
  CoeffTable l = ell_sigma(HReal(0.75), -2, 4, ctx);
  std::string js = to_json(l);
  CoeffTable back = coeff_table_from_json(js, ctx);
  CHECK(back.family == Family::kLine);
  CHECK(back.n_min == -2);
  CHECK(back.n_max == 4);
  PrecisionGuard g(ctx);
  for (int n = -2; n <= 4; ++n) CHECK(abs(back.at(n) - l.at(n)) < 1e-38);
  CHECK(to_json(back) == js);
  std::string csv = to_csv(l);
  CHECK(csv.rfind("n,value\n-2,", 0) == 0);
}
