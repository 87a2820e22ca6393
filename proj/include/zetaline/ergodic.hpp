#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "zetaline/coeffs.hpp"
#include "zetaline/hpnum.hpp"

// Orbits of the Boole map run in native double. The orbit is chaotic, so only
// its distribution matters and extra digits buy nothing; reports say so.
namespace zetaline {

using cplx = std::complex<double>;

// g = Σ a_m e_m with finitely many terms.
struct Observable {
  std::vector<std::pair<long, cplx>> terms;

  static Observable e(long m);
  cplx operator()(double t) const;
  std::string describe() const;  // e.g. "e_-5" or "0.5*e_1+1*e_2"
};

// Parses "em:INDEX" (also "e:INDEX" and "one").
Observable parse_observable(const std::string& text);

// Tx = (x − 1/(4x))/2, T0 = 0.
double boole_step(double x);

// Draw from μ: Cauchy with scale 1/2.
double sample_mu(std::mt19937_64& rng);

struct InvarianceResult {
  cplx pushforward_mean;  // mean of f∘T
  cplx direct_mean;       // mean of f
  double se_re = 0, se_im = 0;  // standard errors of the paired difference
  long samples = 0;

  // |difference| ≤ k·SE in both components.
  bool within(double k = 3.0) const;
};
InvarianceResult invariance_check(const Observable& f, long samples, std::uint64_t seed);

struct ErgodicOptions {
  long iterations = 200000;
  std::vector<long> checkpoints;  // empty: 10³, 10⁴, 10⁵ below iterations, then iterations
  double t_cap = 1e8;             // |Tⁿx| above this is skipped and counted
};

struct ErgodicRun {
  std::uint64_t seed = 0;
  double x0 = 0;
  long iterations = 0;
  Observable observable;
  std::vector<std::pair<long, cplx>> estimates;  // (checkpoint, running mean)
  HComplex prediction;
  long skipped = 0;  // iterates beyond t_cap
  long reseeds = 0;  // orbit hit 0 or overflowed and was restarted
  std::string precision = "native double";

  cplx final_estimate() const { return estimates.back().second; }
};

// Σ_{m ≥ −1} ℓ_m a_{−m}, from the table alone.
HComplex ergodic_prediction(const Observable& g, const CoeffTable& table);

// One orbit from x0, averaging ζ(1/2 + iTⁿx)·g(Tⁿx) for every g at once.
// `seed` drives reseeding only.
std::vector<ErgodicRun> birkhoff_average(const std::vector<Observable>& gs, double x0, std::uint64_t seed,
                                         const CoeffTable& table, const ErgodicOptions& opt = {});

// Seeds 1..seeds, x0 drawn from μ per seed, run in parallel.
// result[seed index][observable index].
std::vector<std::vector<ErgodicRun>> birkhoff_seeds(const std::vector<Observable>& gs, int seeds,
                                                    const CoeffTable& table, const ErgodicOptions& opt = {});

// Componentwise median of the final estimates of observable `index`.
cplx median_estimate(const std::vector<std::vector<ErgodicRun>>& runs, std::size_t index);

// sup |F_n − F| between the orbit's empirical CDF and 1/2 + atan(2x)/π.
double ks_distance(double x0, long iterations);

std::string to_json(const ErgodicRun& r);
std::string to_csv(const ErgodicRun& r);

}  // namespace zetaline
