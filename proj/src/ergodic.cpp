#include "zetaline/ergodic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "zetaline/error.hpp"
#include "zetaline/parallel.hpp"
#include "zetaline/zeta_native.hpp"

namespace zetaline {

namespace {

std::string dstr(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::vector<long> checkpoints_for(const ErgodicOptions& opt) {
  std::vector<long> c;
  if (opt.checkpoints.empty()) {
    for (long p = 1000; p < opt.iterations; p *= 10) c.push_back(p);
    c.push_back(opt.iterations);
  } else {
    for (long p : opt.checkpoints)
      if (p > 0 && p <= opt.iterations) c.push_back(p);
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    if (c.empty() || c.back() != opt.iterations) c.push_back(opt.iterations);
  }
  return c;
}

}  // namespace

Observable Observable::e(long m) { return Observable{{{m, cplx(1.0, 0.0)}}}; }

cplx Observable::operator()(double t) const {
  double th = std::atan(2 * t);
  cplx v;
  for (const auto& [m, a] : terms) v += a * std::polar(1.0, -2.0 * static_cast<double>(m) * th);
  return v;
}

std::string Observable::describe() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const auto& [m, a] = terms[i];
    if (i) os << "+";
    if (a != cplx(1.0, 0.0)) {
      if (a.imag() == 0) os << dstr(a.real()) << "*";
      else os << "(" << dstr(a.real()) << "," << dstr(a.imag()) << ")*";
    }
    os << "e_" << m;
  }
  return os.str();
}

Observable parse_observable(const std::string& text) {
  if (text == "one") return Observable::e(0);
  auto colon = text.find(':');
  std::string head = text.substr(0, colon);
  if (colon == std::string::npos || (head != "em" && head != "e"))
    fail(ErrorCode::kUsage, "observable must look like em:INDEX");
  try {
    std::size_t used = 0;
    long m = std::stol(text.substr(colon + 1), &used);
    if (used != text.size() - colon - 1) throw std::invalid_argument(text);
    return Observable::e(m);
  } catch (const std::logic_error&) {
    fail(ErrorCode::kUsage, "bad observable index in '" + text + "'");
  }
}

double boole_step(double x) {
  if (x == 0) return 0;
  return (x - 1 / (4 * x)) / 2;
}

double sample_mu(std::mt19937_64& rng) {
  std::cauchy_distribution<double> d(0.0, 0.5);
  return d(rng);
}

bool InvarianceResult::within(double k) const {
  cplx d = pushforward_mean - direct_mean;
  return std::abs(d.real()) <= k * se_re && std::abs(d.imag()) <= k * se_im;
}

InvarianceResult invariance_check(const Observable& f, long samples, std::uint64_t seed) {
  if (samples < 2) fail(ErrorCode::kUsage, "invariance check needs at least 2 samples");
  std::mt19937_64 rng(seed);
  InvarianceResult r;
  r.samples = samples;
  cplx sum_t, sum_d;
  double sq_re = 0, sq_im = 0;
  cplx sum_diff;
  for (long i = 0; i < samples; ++i) {
    double x = sample_mu(rng);
    cplx ft = f(boole_step(x)), fd = f(x);
    sum_t += ft;
    sum_d += fd;
    cplx d = ft - fd;
    sum_diff += d;
    sq_re += d.real() * d.real();
    sq_im += d.imag() * d.imag();
  }
  double n = static_cast<double>(samples);
  r.pushforward_mean = sum_t / n;
  r.direct_mean = sum_d / n;
  cplx md = sum_diff / n;
  r.se_re = std::sqrt(std::max(sq_re / n - md.real() * md.real(), 0.0) / (n - 1));
  r.se_im = std::sqrt(std::max(sq_im / n - md.imag() * md.imag(), 0.0) / (n - 1));
  return r;
}

HComplex ergodic_prediction(const Observable& g, const CoeffTable& table) {
  if (table.family != Family::kCritical) fail(ErrorCode::kUsage, "ergodic prediction needs the critical family");
  HComplex p;
  for (const auto& [j, a] : g.terms) {
    long m = -j;
    if (m < -1) continue;  // ℓ_m = 0 there
    p += HComplex(a) * HComplex(table.at(static_cast<int>(m)));
  }
  return p;
}

std::vector<ErgodicRun> birkhoff_average(const std::vector<Observable>& gs, double x0, std::uint64_t seed,
                                         const CoeffTable& table, const ErgodicOptions& opt) {
  if (opt.iterations <= 0) fail(ErrorCode::kUsage, "iterations must be positive");
  if (!std::isfinite(x0)) fail(ErrorCode::kDomain, "x0 must be finite");
  std::vector<long> cps = checkpoints_for(opt);
  std::vector<ErgodicRun> runs(gs.size());
  for (std::size_t k = 0; k < gs.size(); ++k) {
    runs[k].seed = seed;
    runs[k].x0 = x0;
    runs[k].iterations = opt.iterations;
    runs[k].observable = gs[k];
    runs[k].prediction = ergodic_prediction(gs[k], table);
  }
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<cplx> sums(gs.size());
  long used = 0, skipped = 0, reseeds = 0;
  std::size_t next = 0;
  double x = x0;
  for (long n = 1; n <= opt.iterations; ++n) {
    x = boole_step(x);
    // 0 is fixed and tiny |x| overflows on the next step; restart from μ.
    while (x == 0 || !std::isfinite(x) || std::abs(x) < 1e-290) {
      x = sample_mu(rng);
      ++reseeds;
    }
    if (std::abs(x) > opt.t_cap) {
      ++skipped;
    } else {
      cplx z = native::zeta(cplx(0.5, x));
      for (std::size_t k = 0; k < gs.size(); ++k) sums[k] += z * gs[k](x);
      ++used;
    }
    if (n == cps[next]) {
      for (std::size_t k = 0; k < gs.size(); ++k)
        runs[k].estimates.emplace_back(n, used ? sums[k] / static_cast<double>(used) : cplx());
      ++next;
    }
  }
  for (auto& r : runs) {
    r.skipped = skipped;
    r.reseeds = reseeds;
  }
  return runs;
}

std::vector<std::vector<ErgodicRun>> birkhoff_seeds(const std::vector<Observable>& gs, int seeds,
                                                    const CoeffTable& table, const ErgodicOptions& opt) {
  if (seeds <= 0) fail(ErrorCode::kUsage, "seed count must be positive");
  std::vector<std::vector<ErgodicRun>> out(seeds);
  parallel_for(static_cast<std::size_t>(seeds), [&](std::size_t i) {
    std::uint64_t seed = i + 1;
    std::mt19937_64 rng(seed);
    out[i] = birkhoff_average(gs, sample_mu(rng), seed, table, opt);
  });
  return out;
}

cplx median_estimate(const std::vector<std::vector<ErgodicRun>>& runs, std::size_t index) {
  if (runs.empty()) fail(ErrorCode::kUsage, "no runs");
  std::vector<double> re, im;
  for (const auto& r : runs) {
    re.push_back(r.at(index).final_estimate().real());
    im.push_back(r.at(index).final_estimate().imag());
  }
  auto med = [](std::vector<double>& v) {
    std::sort(v.begin(), v.end());
    std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
  };
  return {med(re), med(im)};
}

double ks_distance(double x0, long iterations) {
  if (iterations <= 0) fail(ErrorCode::kUsage, "iterations must be positive");
  std::vector<double> xs;
  xs.reserve(iterations);
  std::mt19937_64 rng(0x5eed);
  double x = x0;
  for (long n = 0; n < iterations; ++n) {
    x = boole_step(x);
    while (x == 0 || !std::isfinite(x) || std::abs(x) < 1e-290) x = sample_mu(rng);
    xs.push_back(x);
  }
  std::sort(xs.begin(), xs.end());
  double n = static_cast<double>(iterations), d = 0;
  for (long i = 0; i < iterations; ++i) {
    double F = 0.5 + std::atan(2 * xs[i]) / M_PI;
    d = std::max({d, std::abs((i + 1) / n - F), std::abs(F - i / n)});
  }
  return d;
}

std::string to_json(const ErgodicRun& r) {
  nlohmann::ordered_json j;
  j["schema_version"] = 1;
  j["seed"] = r.seed;
  j["x0"] = dstr(r.x0);
  j["iterations"] = r.iterations;
  j["observable"] = r.observable.describe();
  nlohmann::ordered_json est = nlohmann::ordered_json::array();
  for (const auto& [n, v] : r.estimates) est.push_back({{"checkpoint", n}, {"re", dstr(v.real())}, {"im", dstr(v.imag())}});
  j["estimates"] = est;
  j["prediction"] = {to_decimal(r.prediction.re, 20), to_decimal(r.prediction.im, 20)};
  j["skipped"] = r.skipped;
  j["reseeds"] = r.reseeds;
  j["precision"] = r.precision;
  return j.dump(2);
}

std::string to_csv(const ErgodicRun& r) {
  std::ostringstream os;
  os << "checkpoint_N,estimate_re,estimate_im,prediction_re,prediction_im\n";
  std::string pr = to_decimal(r.prediction.re, 20), pi = to_decimal(r.prediction.im, 20);
  for (const auto& [n, v] : r.estimates) os << n << "," << dstr(v.real()) << "," << dstr(v.imag()) << "," << pr << "," << pi << "\n";
  return os.str();
}

}  // namespace zetaline
