#include <doctest.h>

#include <cmath>

#include "zetaline/error.hpp"
#include "zetaline/measure_quad.hpp"
#include "zetaline/zeta.hpp"

using namespace zetaline;

namespace {

struct Tables {
  PrecisionCtx ctx{60};
  StieltjesTable gam = stieltjes(40, ctx);
  CoeffTable crit = ell(40, gam, ctx);
  CoeffTable l75 = ell_sigma(HReal(0.75), -30, 60, ctx);
};

const Tables& tables() {
  static const Tables t;
  return t;
}

LineOptions at(double T) {
  LineOptions o;
  o.T = T;
  return o;
}

cplx e_n(long n, double t) { return std::polar(1.0, -2.0 * static_cast<double>(n) * std::atan(2.0 * t)); }

}  // namespace

TEST_CASE("theta substitution and probability") {
  for (double t : {-3.0, 0.0, 0.25, 17.0, 400.0}) CHECK(t_of_theta(theta_of_t(t)) == doctest::Approx(t).epsilon(1e-12));
  // Near θ = ±π the map loses about t·ulp relative accuracy.
  for (double t : {-1e6, 1e8}) CHECK(t_of_theta(theta_of_t(t)) == doctest::Approx(t).epsilon(1e-6));
  MuOptions o;
  o.T = 1e10;
  o.tail_bound = 2.0 / M_PI * std::atan(1.0 / (2.0 * o.T));
  QuadratureResult one = integrate_mu([](double) { return cplx(1.0); }, 1e-13, o);
  CHECK(std::abs(one.value.to_complex() - 1.0) < 1e-10);
  CHECK(one.est_error >= 0);
  CHECK(one.trunc_bound.to_double() < 1e-10);
}

TEST_CASE("basis orthonormality under mu") {
  MuOptions o;
  o.T = 1e10;
  o.tail_bound = 2.0 / M_PI * std::atan(1.0 / (2.0 * o.T));
  double worst = 0;
  for (int n = -10; n <= 10; ++n)
    for (int m = -10; m <= 10; ++m) {
      QuadratureResult r = integrate_mu([&](double t) { return e_n(n, t) * std::conj(e_n(m, t)); }, 1e-12, o);
      double expect = n == m ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(r.value.to_complex() - expect));
    }
  CHECK(worst < 1e-9);
}

TEST_CASE("integrate_mu reports tolerance failures") {
  MuOptions o;
  o.T = 1e6;
  o.max_level = 6;
  // (1/4 + t²) cancels the density, so the θ integrand blows up at the cutoff.
  CHECK_THROWS_AS(integrate_mu([](double t) { return cplx(std::sqrt(0.25 + t * t)); }, 1e-14, o), NumericError);
  CHECK_THROWS_AS(integrate_mu([](double) { return cplx(1.0); }, 1e-10, MuOptions{-1.0}), NumericError);
}

TEST_CASE("Coffey and Parseval identities") {
  for (double T : {1e4, 2e4}) {
    IdentityReport c = coffey_identity(at(T));
    IdentityReport h = hnorm_identity(at(T));
    MESSAGE("T = " << T << ": coffey err " << c.abs_err.to_double() << ", hnorm err " << h.abs_err.to_double()
                   << ", tail estimate " << c.quad.trunc_bound.to_double());
    CHECK(c.abs_err <= c.quad.trunc_bound + c.quad.est_error);
    CHECK(h.abs_err <= h.quad.trunc_bound + h.quad.est_error);
    // The excluded tail is positive, so truncation undershoots.
    CHECK(c.quad.value.re < c.target);
    CHECK(abs(c.quad.value.im).to_double() < 1e-12);
    CHECK(abs(h.quad.value.im).to_double() < 1e-12);
    CHECK(c.quad.trunc_bound >= 0);
    CHECK(c.abs_err.to_double() < 1e-3);
  }
  const auto& tb = tables();
  IdentityReport h = hnorm_identity(at(1e4));
  PrecisionGuard g(tb.ctx);
  HReal sq;
  for (int n = 0; n <= 40; ++n) {
    sq += sqr(tb.crit.at(n));
    CHECK(sq <= h.target);
  }
  CHECK(to_json(h).find("\"name\":\"hnorm\"") != std::string::npos);
}

TEST_CASE("Coefficient quadrature on the critical line") {
  const auto& tb = tables();
  auto res = coefficient_quadrature(0.5, 1, -3, 30, at(1e4));
  for (int n = -3; n <= 30; ++n) {
    double ref = n < -1 ? 0.0 : tb.crit.at(n).to_double();
    cplx v = res[n + 3].value.to_complex();
    CHECK(std::abs(v.real() - ref) < 1e-8);
    CHECK(std::abs(v.imag()) < 1e-12);
  }
}

TEST_CASE("Coefficient quadrature on Re s = 0.75 with negative indices") {
  const auto& tb = tables();
  auto res = coefficient_quadrature(0.75, 1, -10, 30, at(1e4));
  for (int n = -10; n <= 30; ++n) CHECK(std::abs(res[n + 10].value.to_complex() - tb.l75.at(n).to_double()) < 1e-8);
}

TEST_CASE("Coefficients of zeta squared") {
  PrecisionCtx ctx(50);
  LaurentTable lam = laurent_power_coeffs(2, 14, ctx);
  CoeffTable p2 = ell_power(2, -2, 12, lam, ctx);
  auto res = coefficient_quadrature(0.5, 2, -4, 10, at(1e4));
  for (int n = -4; n <= 10; ++n) {
    double ref = n < -2 ? 0.0 : p2.at(n).to_double();
    CHECK(std::abs(res[n + 4].value.to_complex() - ref) < 1e-6);
  }
}

TEST_CASE("Cross moments: series route") {
  const auto& tb = tables();
  PrecisionGuard g(tb.ctx);
  HReal tol = pow(HReal(10), -15);
  HReal half(0.5), a(0.75);
  CrossMoment s55 = cross_moment_closed_form(half, half, tb.crit, tb.crit, tol, tb.ctx);
  // Both F terms reduce to −ℓ_1 = −γ_1.
  CHECK(abs(s55.value - (sqr(tb.crit.at(0)) - 2 * tb.gam.gammas[1])) < 1e-50);
  CrossMoment s75 = cross_moment_closed_form(a, half, tb.l75, tb.crit, tol, tb.ctx);
  CHECK(abs(s75.value - cross_half_closed_form(a, tb.ctx)) < 1e-14);
  // Dropping the −ℓ_1 term shifts the closed form by exactly ℓ_1(0.75).
  CHECK(abs(cross_half_without_l1(a, tb.ctx) - s75.value - tb.l75.at(1)) < 1e-14);
  CHECK(s75.tail_bound < tol);
  CHECK_THROWS_AS(cross_moment_closed_form(half, a, tb.l75, tb.crit, tol, tb.ctx), NumericError);
  CHECK_THROWS_AS(cross_moment_closed_form(HReal(1), half, tb.l75, tb.crit, tol, tb.ctx), NumericError);
  CoeffTable short95 = ell_sigma(HReal(0.95), -5, 10, tb.ctx);
  CHECK_THROWS_AS(cross_moment_closed_form(HReal(0.95), HReal(0.95), short95, short95, tol, tb.ctx), NumericError);
}

TEST_CASE("Cross moments: quadrature route") {
  const auto& tb = tables();
  PrecisionGuard g(tb.ctx);
  HReal tol = pow(HReal(10), -15);
  QuadratureResult q55 = cross_quadrature(0.5, 0.5, at(1e4));
  CHECK(std::abs(q55.value.re.to_double() -
                 cross_moment_closed_form(HReal(0.5), HReal(0.5), tb.crit, tb.crit, tol, tb.ctx).value.to_double()) <
        1e-6);
  QuadratureResult q77 = cross_quadrature(0.75, 0.75, at(1e4));
  CrossMoment s77 = cross_moment_closed_form(HReal(0.75), HReal(0.75), tb.l75, tb.l75, tol, tb.ctx);
  CHECK(std::abs(q77.value.re.to_double() - s77.value.to_double()) < 1e-4);
  QuadratureResult q75 = cross_quadrature(0.75, 0.5, at(1e4));
  CHECK(std::abs(q75.value.re.to_double() - cross_half_closed_form(HReal(0.75), tb.ctx).to_double()) < 1e-6);
  CHECK(std::abs(q75.value.im.to_double()) < 1e-12);
}

TEST_CASE("Log integral over the boundary and the outer function") {
  QuadratureResult ld = log_integral_disk(at(1e4));
  double lower = std::log(1 - 0.57721566490153286) - 1e-3;
  double upper = 0.5 * std::log(0.2606614015) + 1e-3;
  MESSAGE("log integral " << ld.value.re.to_double() << ", Blaschke excess "
                          << ld.value.re.to_double() - std::log(1 - 0.57721566490153286));
  CHECK(ld.value.re.to_double() >= lower);
  CHECK(ld.value.re.to_double() <= upper);
  CHECK(std::abs(ld.value.im.to_double()) < 1e-12);
  OuterValue q1 = outer_function(HComplex(1), at(1e4));
  CHECK(std::abs(q1.herglotz.value.re.to_double() - ld.value.re.to_double()) < 1e-9);
  CHECK(std::abs(q1.q.im.to_double()) < 1e-9);
  for (HComplex u : {HComplex(2), HComplex{HReal(0.6), HReal(3)}, HComplex{HReal(0.8), HReal(-1)}}) {
    OuterValue q = outer_function(u, at(1e4));
    CHECK(std::abs(q.herglotz.value.re.to_double() - q.poisson.value.re.to_double()) < 1e-8);
  }
  OuterValue q2 = outer_function(HComplex(2), at(1e4));
  MESSAGE("|Q(2)| = " << abs(q2.q).to_double() << ", |zeta(2) - 2| = 0.3550659");
  // |h| = |B||Q| with |B| → 1 at the boundary.
  PrecisionCtx c20(20);
  std::vector<double> ratios;
  for (double x : {0.7, 0.55, 0.51}) {
    HComplex u{HReal(x), HReal(5)};
    double hq = abs(zeta_em(u, c20) - u / (u - HReal(1))).to_double();
    double qa = abs(outer_function(u, at(1e4)).q).to_double();
    ratios.push_back(hq / qa);
  }
  MESSAGE("|h|/|Q| at Re u = 0.7, 0.55, 0.51 (t = 5): " << ratios[0] << " " << ratios[1] << " " << ratios[2]);
  CHECK(std::abs(ratios[2] - 1) < std::abs(ratios[0] - 1));
  CHECK_THROWS_AS(outer_function(HComplex(HReal(0.5)), at(1e4)), NumericError);
}

TEST_CASE("log|zeta| on the critical line against mu") {
  auto zeros = load_zero_ordinates(default_zero_file());
  REQUIRE(zeros.size() == 100);
  CHECK(zeros[0] == doctest::Approx(14.134725141734693).epsilon(1e-15));
  BsyReport b = bsy_integral(1e4, zeros, at(1e4));
  MESSAGE("bsy value " << b.quad.value.re.to_double() << " est " << b.quad.est_error.to_double());
  CHECK(std::abs(b.quad.value.re.to_double()) <= 1e-2);
  CHECK(std::abs(b.quad.value.im.to_double()) < 1e-12);
  CHECK(b.ordinates_used == 100);
  CHECK_FALSE(b.uncovered_zero);
  CHECK(b.min_ratio == doctest::Approx(1.0).epsilon(1e-12));
  // Dropping an ordinate leaves a sign change uncovered.
  std::vector<double> gap(zeros.begin(), zeros.end());
  gap.erase(gap.begin() + 10);
  BsyReport bg = bsy_integral(1e4, gap, at(1e4));
  CHECK(bg.uncovered_zero);
  CHECK(bg.ordinates_used == 99);
  CHECK(std::abs(bg.quad.value.re.to_double() - b.quad.value.re.to_double()) < 1e-8);
  CHECK(hardy_sign_changes(5.0, 50.0, 0.01) == 10);
}

TEST_CASE("phi in L2 on the half line") {
  QuadratureResult p = phi_l2_halfline(at(1e4));
  double target = M_PI * 0.26066140152962;
  CHECK(std::abs(p.value.re.to_double() - target) <= p.trunc_bound.to_double() + p.est_error.to_double());
  QuadratureResult p2 = phi_l2_halfline(at(2e4));
  CHECK(p2.value.re.to_double() - p.value.re.to_double() < p.trunc_bound.to_double());
  CHECK(p2.value.re > p.value.re);
}

TEST_CASE("refinement and cache behaviour") {
  std::vector<double> vals, ests;
  for (double h : {0.25, 0.125, 0.0625}) {
    LineOptions o = at(2000);
    o.h = h;
    IdentityReport c = coffey_identity(o);
    vals.push_back(c.quad.value.re.to_double());
    ests.push_back(c.quad.est_error.to_double());
  }
  CHECK(std::abs(vals[2] - vals[1]) < ests[1]);
  clear_line_cache();
  double first = coffey_identity(at(1e4)).quad.value.re.to_double();
  std::size_t before = line_cache_samples();
  coffey_identity(at(2e4));
  CHECK(line_cache_samples() > before);
  CHECK(coffey_identity(at(1e4)).quad.value.re.to_double() == first);
  CHECK_THROWS_AS(coffey_identity(at(50)), NumericError);
}
