#include <doctest.h>

#include <random>

#include "zetaline/ergodic.hpp"
#include "zetaline/error.hpp"
#include "zetaline/parallel.hpp"
#include "zetaline/series.hpp"

using namespace zetaline;

namespace {

const CoeffTable& table() {
  static const CoeffTable t = [] {
    PrecisionCtx c(50);
    return ell(8, stieltjes(12, c), c);
  }();
  return t;
}

}  // namespace

TEST_CASE("Boole map values and oddness") {
  CHECK(boole_step(0.5) == 0.0);
  CHECK(boole_step(-0.5) == 0.0);
  CHECK(boole_step(0.0) == 0.0);
  CHECK(boole_step(1.0) == 0.375);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 10000; ++i) {
    double x = sample_mu(rng);
    CHECK(boole_step(-x) == -boole_step(x));
  }
}

TEST_CASE("observable matches the high-precision basis") {
  PrecisionCtx c(30);
  for (long m : {-5L, -1L, 0L, 1L, 3L})
    for (double t : {-7.5, -0.2, 0.0, 0.5, 13.0}) {
      cplx v = Observable::e(m)(t);
      cplx ref = basis_e(m, HReal(t), c).to_complex();
      CHECK(std::abs(v - ref) < 1e-14);
    }
  CHECK(parse_observable("em:-5").terms[0].first == -5);
  CHECK(parse_observable("one").terms[0].first == 0);
  CHECK_THROWS_AS(parse_observable("em:x"), NumericError);
  CHECK_THROWS_AS(parse_observable("f:1"), NumericError);
}

TEST_CASE("predictions assembled from the table") {
  PrecisionCtx c(50);
  PrecisionGuard g(c);
  const auto& t = table();
  CHECK(ergodic_prediction(Observable::e(-5), t).re == t.at(5));
  CHECK(ergodic_prediction(Observable::e(1), t).re == HReal(-1));
  CHECK(abs(ergodic_prediction(Observable::e(0), t).re - (const_euler() - 1)) < HReal(1e-45));
  CHECK(ergodic_prediction(Observable::e(2), t).re.is_zero());
  Observable mix{{{-1, cplx(2.0, 0.0)}, {0, cplx(0.0, 1.0)}}};
  HComplex p = ergodic_prediction(mix, t);
  CHECK(abs(p.re - 2 * t.at(1)) < HReal(1e-45));
  CHECK(abs(p.im - t.at(0)) < HReal(1e-45));
}

TEST_CASE("invariance of mu under the Boole map") {
  InvarianceResult one = invariance_check(Observable::e(0), 1000, 1);
  CHECK(one.pushforward_mean == cplx(1.0, 0.0));
  CHECK(one.direct_mean == cplx(1.0, 0.0));
  for (long m : {1L, 2L, -3L}) {
    InvarianceResult r = invariance_check(Observable::e(m), 1000000, 11 + m);
    CHECK(r.within(3.0));
    CHECK(std::abs(r.direct_mean) < 5e-3);
    CHECK(std::abs(r.pushforward_mean) < 5e-3);
  }
}

TEST_CASE("orbit distribution approaches the Cauchy law") {
  double d = ks_distance(0.3, 1000000);
  MESSAGE("KS distance " << d);
  CHECK(d < 0.01);
}

TEST_CASE("reflected orbit gives conjugate averages") {
  std::vector<Observable> gs{Observable::e(-1), Observable::e(2)};
  ErgodicOptions o;
  o.iterations = 20000;
  auto a = birkhoff_average(gs, 0.731, 1, table(), o);
  auto b = birkhoff_average(gs, -0.731, 1, table(), o);
  for (std::size_t k = 0; k < gs.size(); ++k)
    for (std::size_t i = 0; i < a[k].estimates.size(); ++i)
      CHECK(std::abs(b[k].estimates[i].second - std::conj(a[k].estimates[i].second)) < 1e-12);
}

TEST_CASE("Birkhoff medians track the coefficients") {
  std::vector<Observable> gs{Observable::e(0), Observable::e(-1), Observable::e(-5), Observable::e(1)};
  ErgodicOptions o;
  o.iterations = 50000;
  auto runs = birkhoff_seeds(gs, 8, table(), o);
  for (std::size_t k = 0; k < gs.size(); ++k) {
    cplx med = median_estimate(runs, k);
    cplx pred = runs[0][k].prediction.to_complex();
    MESSAGE(gs[k].describe() << ": median " << med << " prediction " << pred);
    CHECK(std::abs(med - pred) < 0.05);
  }
  // Seeds are independent of the worker count.
  set_worker_count(1);
  auto again = birkhoff_seeds(gs, 2, table(), o);
  set_worker_count(0);
  CHECK(again[1][2].final_estimate() == runs[1][2].final_estimate());
}

TEST_CASE("orbit guards and report layout") {
  ErgodicOptions o;
  o.iterations = 5000;
  o.checkpoints = {10, 100, 100, 9999999};
  auto r = birkhoff_average({Observable::e(0)}, 0.5, 4, table(), o)[0];
  CHECK(r.reseeds >= 1);  // T(1/2) = 0 is a fixed point
  REQUIRE(r.estimates.size() == 3);
  CHECK(r.estimates[0].first == 10);
  CHECK(r.estimates[2].first == 5000);
  CHECK(r.precision == "native double");
  o.t_cap = 1.0;
  auto capped = birkhoff_average({Observable::e(0)}, 0.2, 4, table(), o)[0];
  CHECK(capped.skipped > 0);
  CHECK(capped.skipped < capped.iterations);
  std::string csv = to_csv(r);
  CHECK(csv.rfind("checkpoint_N,estimate_re,estimate_im,prediction_re,prediction_im\n", 0) == 0);
  CHECK(to_json(r).find("\"precision\": \"native double\"") != std::string::npos);
  CHECK_THROWS_AS(birkhoff_average({Observable::e(0)}, 0.2, 4, table(), ErgodicOptions{0, {}, 1e8}), NumericError);
}
