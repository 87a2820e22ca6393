#include <doctest.h>

#include "oracles.hpp"
#include "zetaline/zeta.hpp"

using namespace zetaline;

namespace {

HComplex C(const char* re, const char* im) { return {HReal::parse(re), HReal::parse(im)}; }

double dist(const HComplex& a, const HComplex& b) { return abs(a - b).to_double(); }

}  // namespace

TEST_CASE("Bernoulli numbers") {
  auto b = bernoulli_even(8);
  CHECK(b[0] == 1);
  CHECK(b[1] == mpq_class(1, 6));
  CHECK(b[2] == mpq_class(-1, 30));
  CHECK(b[3] == mpq_class(1, 42));
  CHECK(b[6] == mpq_class(691, 2730) * -1);
  CHECK(b[7] == mpq_class(7, 6));
  // Cross-check against the classical recurrence Σ_{k<m} binom(m+1,k) B_k = −(m+1) B_m.
  auto big = bernoulli_even(40);
  std::vector<mpq_class> all(80);
  all[0] = 1;
  all[1] = mpq_class(-1, 2);
  for (int j = 1; j < 40; ++j) all[2 * j] = big[j];
  for (int m = 2; m < 79; ++m) {
    mpq_class s = 0;
    for (int k = 0; k <= m; ++k) s += mpq_class(binom_exact(m + 1, k)) * all[k];
    REQUIRE(s == 0);
  }
  const auto& ratios = bernoulli_term_ratios();
  CHECK(ratios[0] == doctest::Approx(1.0 / 12));
  CHECK(ratios[1] == doctest::Approx((-1.0 / 720) / (1.0 / 12)));
}

TEST_CASE("zeta_em at s=2 against pi^2/6 and a direct series") {
  PrecisionCtx ctx(50);
  PrecisionGuard g(ctx);
  HComplex z = zeta_em(HComplex(2), ctx);
  HReal pi2_6 = sqr(const_pi()) / 6;
  CHECK(abs(z.re - pi2_6) < pow(HReal(10), -47));
  CHECK(z.im.is_zero());
  // Direct partial sum with integral tail 1/N and midpoint correction, N = 10^6.
  PrecisionGuard g2(PrecisionCtx(30));
  HReal direct = oracle::zeta2_direct(1000000);
  CHECK(abs(direct - pi2_6) < 1e-17);
}

TEST_CASE("zeta_em at s=1/2 against the accelerated eta series") {
  PrecisionCtx ctx(50);
  PrecisionGuard g(ctx);
  HComplex z = zeta_em(HComplex(HReal(0.5)), ctx);
  HReal eta = oracle::zeta_via_eta(HReal(0.5), 50);
  CHECK(abs(z.re - eta) < pow(HReal(10), -47));
  CHECK(abs(z.re + HReal::parse("1.4603545088095868128894991525152980125")) < 1e-36);
}

TEST_CASE("zeta_em complex values") {
  PrecisionCtx ctx(40);
  PrecisionGuard g(ctx);
  // Frozen reference values (mpmath, 60 digits).
  struct Row {
    double sr, si;
    const char* re;
    const char* im;
  } rows[] = {
      {0.5, 14, "0.0222411426099935892462131992039686263867862432", "-0.10325812326645005790236309555257383450754903"},
      {0.75, 100, "2.00299199525539582513625053216671793285392515", "-0.054392071190092586923199272857808071503604225"},
      {2, 3, "0.798021985146275720622294500724812686025220082", "-0.113744308052938500215913365857315075570137806"},
      {-0.5, 2, "0.228094971716526329804961136618229631997186955", "-0.144529171733713596419890337626853461442898164"},
      {1.5, 1000, "0.955544581303411489751444068942429000370054613", "-0.0961324176515955106703090119091343554109762923"},
  };
  for (const auto& r : rows) {
    HComplex z = zeta_em(HComplex(HReal(r.sr), HReal(r.si)), ctx);
    CHECK(dist(z, C(r.re, r.im)) < 1e-37);
  }
  // Eta-series oracle also covers complex s.
  HComplex s(HReal(0.5), HReal(14));
  CHECK(dist(zeta_em(s, ctx), oracle::zeta_via_eta(s, 40)) < 1e-36);
}

TEST_CASE("zeta_em errors") {
  PrecisionCtx ctx(30);
  try {
    zeta_em(HComplex(1), ctx);
    FAIL("expected pole error");
  } catch (const NumericError& e) {
    CHECK(e.code() == ErrorCode::kPole);
  }
  try {
    zeta_em(HComplex(-1), ctx);
    FAIL("expected region error");
  } catch (const NumericError& e) {
    CHECK(e.code() == ErrorCode::kRegion);
  }
  CHECK_THROWS_AS(zeta_em(HComplex(HReal(2), HReal(2e6)), ctx), NumericError);
}

TEST_CASE("zeta_em cutoff doubling self-consistency") {
  PrecisionCtx ctx(30);
  PrecisionGuard g(ctx);
  for (double sigma : {0.5, 0.75, 2.0})
    for (double t : {0.0, 14.1, 100.0}) {
      HComplex s{HReal(sigma), HReal(t)};
      HComplex a = zeta_em_cutoff(s, 40, ctx);
      HComplex b = zeta_em_cutoff(s, 80, ctx);
      CHECK(dist(a, b) < 1e-26);
      CHECK(dist(a, zeta_em(s, ctx)) < 1e-26);
    }
}

TEST_CASE("entire part is regular through s = 1") {
  PrecisionCtx ctx(40);
  PrecisionGuard g(ctx);
  HComplex at1 = zeta_entire_part(HComplex(1), ctx);
  CHECK(abs(at1.re - const_euler()) < 1e-38);
  HComplex s(HReal(1) + HReal(1e-12), HReal(0));
  HComplex near = zeta_entire_part(s, ctx);
  HComplex via = zeta_em(s, ctx) - inv(s - HReal(1));
  CHECK(dist(near, via) < 1e-25);
  HComplex far{HReal(3), HReal(1)};
  CHECK(dist(zeta_entire_part(far, ctx), zeta_em(far, ctx) - inv(far - HReal(1))) < 1e-38);
}

TEST_CASE("zeta_derivative") {
  PrecisionCtx ctx(40);
  PrecisionGuard g(ctx);
  HComplex d1 = zeta_derivative(HComplex(2), 1, ctx);
  CHECK(abs(d1.re - HReal::parse("-0.937548254315843753702574094567864977897860289")) < 1e-35);
  // Finite-difference oracle at widened precision.
  {
    PrecisionCtx wide(100);
    PrecisionGuard gw(wide);
    HReal h = pow(HReal(10), -25);
    HComplex fd = (zeta_em(HComplex(HReal(2) + h), wide) - zeta_em(HComplex(HReal(2) - h), wide)) / (2 * h);
    CHECK(abs(fd.re - d1.re) < 1e-36);
  }
  CHECK(dist(zeta_derivative(HComplex(2), 0, ctx), zeta_em(HComplex(2), ctx)) == 0.0);
  HComplex a = zeta_derivative(HComplex(HReal(1.25)), 2, ctx, 0.1);
  HComplex b = zeta_derivative(HComplex(HReal(1.25)), 2, ctx, 0.2);
  CHECK(abs(a - b) / abs(a) < pow(HReal(10), -ctx.digits + 6));
  CHECK(abs(a.re - HReal::parse("127.989866745379144112568630801103689577998867")) < 1e-34);
  try {
    zeta_derivative(HComplex(HReal(1.2)), 1, ctx, 0.5);
    FAIL("expected contour error");
  } catch (const NumericError& e) {
    CHECK(e.code() == ErrorCode::kContourHitsPole);
  }
}

TEST_CASE("Stieltjes constants: contour, limit oracle, Berndt bound") {
  PrecisionCtx ctx(50);
  StieltjesTable c = stieltjes(20, ctx);
  PrecisionGuard g(ctx);
  CHECK(c.gammas[0] > 0.57);
  CHECK(c.gammas[0] < 0.58);
  CHECK(abs(c.gammas[0] - const_euler()) < pow(HReal(10), -48));
  CHECK(abs(c.gammas[1] - HReal::parse("-0.0728158454836767248605863758749013191377363383")) < 1e-44);
  CHECK(abs(c.gammas[20] - HReal::parse("0.000466343561511559449400594824433550525113143474")) < 1e-44);
  StieltjesTable l = stieltjes_limit(20, ctx);
  for (int k = 0; k <= 20; ++k) CHECK(abs(c.gammas[k] - l.gammas[k]) < pow(HReal(10), -(ctx.digits - 8)));
  for (int k = 1; k <= 20; ++k) CHECK(berndt_holds(c, k));
  CHECK(stieltjes(3, ctx, StieltjesMethod::kLimitAccel).method == StieltjesMethod::kLimitAccel);
  CHECK_THROWS_AS(stieltjes(401, ctx), NumericError);
}

TEST_CASE("Stieltjes limit definition at N = 1e5") {
  PrecisionCtx ctx(30);
  StieltjesTable l = stieltjes_limit(1, ctx, 100000);
  PrecisionGuard g(ctx);
  CHECK(abs(l.gammas[0] - const_euler()) < 1e-28);
  CHECK(abs(l.gammas[1] - HReal::parse("-0.0728158454836767248605863758749013191377363383")) < 1e-28);
}

TEST_CASE("Berndt bound to k = 100") {
  PrecisionCtx ctx(50);
  StieltjesTable c = stieltjes(100, ctx);
  for (int k = 1; k <= 100; ++k) CHECK(berndt_holds(c, k));
  PrecisionGuard g(ctx);
  // γ_50 is resolved at this precision; γ_100 is not, and its error bar says so.
  CHECK(abs(c.gammas[50] - HReal::parse("126.823602651322716596725253649")) < c.abs_error[50] + 1e-20);
  CHECK(c.abs_error[100] > 1.0);
}

TEST_CASE("Laurent coefficients of (s-1)^k zeta^k") {
  PrecisionCtx ctx(50);
  LaurentTable t1 = laurent_power_coeffs(1, 30, ctx);
  StieltjesTable st = stieltjes(30, ctx);
  PrecisionGuard g(ctx);
  CHECK(abs(t1.lambdas[0] - 1) < 1e-45);
  CHECK(abs(t1.lambdas[1] - st.gammas[0]) < 1e-45);
  CHECK(abs(t1.lambdas[2] + 2 * st.gammas[1]) < 1e-45);
  for (int m = 1; m <= 30; ++m) {
    HReal lhs = t1.lambdas[m] / factorial(m);
    HReal rhs = st.laurent_coeff(m - 1);
    CHECK(abs(lhs - rhs) < pow(HReal(10), -(ctx.digits - 10)));
  }
  for (int k : {2, 3}) {
    LaurentTable tk = laurent_power_coeffs(k, 10, ctx);
    CHECK(abs(tk.lambdas[0] - 1) < 1e-45);
    // λ_{1,k} = k γ0 from (1 + γ0 (s−1) + …)^k
    CHECK(abs(tk.lambdas[1] - k * st.gammas[0]) < 1e-45);
  }
}
