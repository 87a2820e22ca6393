#include "zetaline/measure_quad.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "zetaline/error.hpp"
#include "zetaline/parallel.hpp"
#include "zetaline/zeta.hpp"
#include "zetaline/zeta_native.hpp"

namespace zetaline {

namespace {

constexpr double kEuler = 0.57721566490153286061;
constexpr double kFarStart = 16.0;    // first node of the uniform grid
constexpr double kCentralEnd = 34.0;  // 1 − w is below 1e-25 here
constexpr double kBlend = 24.0;
constexpr double kBlendWidth = 4.0 / 3.0;
constexpr int kBlock = 1024;

double far_weight(double t) { return 0.5 * std::erfc(-(std::abs(t) - kBlend) / kBlendWidth); }
double central_weight(double t) { return 0.5 * std::erfc((std::abs(t) - kBlend) / kBlendWidth); }

double cauchy_density(double t) { return 1.0 / (2.0 * M_PI * (0.25 + t * t)); }

// ---- cached uniform-grid samples ------------------------------------------

using BlockKey = std::tuple<double, double, long>;

struct LineCache {
  std::mutex mu;
  std::map<BlockKey, std::shared_ptr<const std::vector<cplx>>> blocks;
};

LineCache& cache() {
  static LineCache c;
  return c;
}

// Samples ζ(σ + i(kFarStart + j h)) for j in [0, count).
std::vector<std::shared_ptr<const std::vector<cplx>>> far_blocks(double sigma, double h, long count) {
  long nblocks = (count + kBlock - 1) / kBlock;
  std::vector<std::shared_ptr<const std::vector<cplx>>> out(nblocks);
  std::vector<long> missing;
  {
    std::lock_guard<std::mutex> lock(cache().mu);
    for (long b = 0; b < nblocks; ++b) {
      auto it = cache().blocks.find({sigma, h, b});
      if (it != cache().blocks.end()) out[b] = it->second;
      else missing.push_back(b);
    }
  }
  parallel_for(missing.size(), [&](std::size_t i) {
    long b = missing[i];
    auto v = std::make_shared<std::vector<cplx>>(kBlock);
    native::zeta_line_block(sigma, kFarStart + static_cast<double>(b) * kBlock * h, h, kBlock, v->data());
    out[b] = v;
  });
  std::lock_guard<std::mutex> lock(cache().mu);
  for (long b : missing) cache().blocks[{sigma, h, b}] = out[b];
  return out;
}

// ---- tanh-sinh on one panel -------------------------------------------------

// ∫_a^b g(x) dx where g may have integrable endpoint singularities. g gets the
// node and its distances to both ends so it can avoid cancellation.
template <class G>
void tanh_sinh(double a, double b, int outputs, double tol, G&& g, std::vector<cplx>& result, double& est,
               long& nodes) {
  const double half = 0.5 * (b - a);
  std::vector<cplx> prev(outputs), cur(outputs), sum(outputs), val(outputs);
  auto add = [&](double u, double scale) {
    double sh = std::sinh(u), ch = std::cosh(u);
    double q = std::exp(-M_PI * std::abs(sh));  // e^{−π|sinh u|}
    // 1 − |x| = 2q/(1 + q), x = tanh(π/2 sinh u)
    double one_minus = 2.0 * q / (1.0 + q);
    double w = M_PI * ch * 2.0 * q / ((1.0 + q) * (1.0 + q));  // π/2 ch / cosh²(π/2 sh)
    if (w * half < 1e-30 || one_minus * half < 1e-300) return false;
    double d = half * one_minus;  // distance to the nearer end
    double x = sh >= 0 ? b - d : a + d;
    g(x, val.data());
    for (int k = 0; k < outputs; ++k) sum[k] += scale * w * half * val[k];
    ++nodes;
    return true;
  };
  double step = 1.0;
  add(0.0, 1.0);
  for (int j = 1;; ++j) {
    bool p = add(j * step, 1.0), m = add(-j * step, 1.0);
    if (!p && !m) break;
  }
  for (int k = 0; k < outputs; ++k) cur[k] = sum[k] * step;
  for (int level = 1; level <= 10; ++level) {
    prev = cur;
    step *= 0.5;
    std::fill(sum.begin(), sum.end(), cplx{});
    for (int j = 1;; j += 2) {
      bool p = add(j * step, 1.0), m = add(-j * step, 1.0);
      if (!p && !m) break;
    }
    double diff = 0;
    for (int k = 0; k < outputs; ++k) {
      cur[k] = 0.5 * prev[k] + sum[k] * step;
      diff = std::max(diff, std::abs(cur[k] - prev[k]));
    }
    if (level >= 3 && diff < tol) {
      est += diff;
      for (int k = 0; k < outputs; ++k) result[k] += cur[k];
      return;
    }
  }
  fail(ErrorCode::kSingularityIsolation, "tanh-sinh panel did not settle");
}

HReal hr(double x) { return HReal(x); }

}  // namespace

double theta_of_t(double t) { return 2.0 * std::atan(2.0 * t); }
double t_of_theta(double theta) { return 0.5 * std::tan(0.5 * theta); }

QuadratureResult integrate_mu(const std::function<cplx(double)>& f, double tol, const MuOptions& opt) {
  if (!(opt.T > 0)) fail(ErrorCode::kUsage, "integrate_mu needs T > 0");
  const double tb = theta_of_t(opt.T);
  std::vector<std::vector<cplx>> R;
  long nodes = 2;
  cplx trap = (tb) * (f(-opt.T) + f(opt.T));  // level 0: one interval of width 2θ_T
  R.push_back({trap});
  double est = 0;
  for (int k = 1; k <= opt.max_level; ++k) {
    long n_new = 1L << (k - 1);
    double width = 2.0 * tb / static_cast<double>(1L << k);
    cplx acc;
    for (long j = 0; j < n_new; ++j) acc += f(t_of_theta(-tb + (2 * j + 1) * width));
    nodes += n_new;
    std::vector<cplx> row(k + 1);
    row[0] = 0.5 * R[k - 1][0] + width * acc;
    double p4 = 1;
    for (int m = 1; m <= k; ++m) {
      p4 *= 4;
      row[m] = row[m - 1] + (row[m - 1] - R[k - 1][m - 1]) / (p4 - 1);
    }
    est = std::abs(row[k] - R[k - 1][k - 1]) / (2 * M_PI);
    R.push_back(row);
    if (k >= opt.min_level && est < tol) {
      QuadratureResult out;
      out.value = HComplex(row[k] / (2 * M_PI));
      out.est_error = hr(est);
      out.trunc_bound = hr(opt.tail_bound);
      out.nodes_used = nodes;
      out.theta_panels = 1 << k;
      return out;
    }
  }
  fail(ErrorCode::kToleranceNotMet, "Romberg refinement did not reach tol");
}

std::vector<QuadratureResult> integrate_line(const LineIntegrand& f, const LineOptions& opt) {
  const int nout = f.outputs;
  const int ns = static_cast<int>(f.sigmas.size());
  if (nout < 1 || ns < 1 || !f.kernel) fail(ErrorCode::kUsage, "line integrand needs sigmas, outputs and a kernel");
  if (!(opt.h > 0) || opt.T < 2 * kCentralEnd) fail(ErrorCode::kUsage, "line quadrature needs h > 0 and T >= 68");
  for (double s : f.sigmas)
    if (s == 1.0) fail(ErrorCode::kPole, "line Re s = 1 passes through the pole");
  auto density = f.density ? f.density : std::function<double(double)>(cauchy_density);

  std::vector<cplx> total(nout), zp(ns), zm(ns), op(nout), om(nout);
  double est_total = 0;
  long nodes = 0;
  int panels = 0;

  // Both signs of t at once; ζ(σ − it) = conj ζ(σ + it).
  auto eval_pair = [&](double t, const cplx* z, double scale, cplx* acc) {
    for (int j = 0; j < ns; ++j) {
      zp[j] = z[j];
      zm[j] = std::conj(z[j]);
    }
    f.kernel(t, zp.data(), op.data());
    double dp = density(t) * scale;
    if (t == 0.0) {
      for (int k = 0; k < nout; ++k) acc[k] += dp * op[k];
      return;
    }
    f.kernel(-t, zm.data(), om.data());
    double dm = density(-t) * scale;
    for (int k = 0; k < nout; ++k) acc[k] += dp * op[k] + dm * om[k];
  };
  auto zeta_at = [&](double t, cplx* z) {
    for (int j = 0; j < ns; ++j) z[j] = native::zeta(cplx(f.sigmas[j], t));
  };

  const long J = [&] {
    long j = static_cast<long>(std::ceil((opt.T - kFarStart) / opt.h));
    return j + (j & 1);
  }();
  long j_start = 0;
  std::vector<cplx> zbuf(ns);

  if (f.singular_points.empty()) {
    // Central part on θ ∈ [0, θ_c], mirrored, with the 1 − w window.
    const double tc = theta_of_t(kCentralEnd);
    std::vector<cplx> prev(nout), cur(nout), acc(nout);
    long M = 64;
    for (long i = 0; i <= M; ++i) {
      double th = tc * static_cast<double>(i) / static_cast<double>(M);
      double t = t_of_theta(th);
      zeta_at(t, zbuf.data());
      double wgt = (i == M ? 0.5 : 1.0) * (0.25 + t * t) * central_weight(t);
      eval_pair(t, zbuf.data(), wgt, acc.data());
      ++nodes;
    }
    for (int k = 0; k < nout; ++k) cur[k] = acc[k] * (tc / static_cast<double>(M));
    // i = 0 counts once since eval_pair skips the mirror at t = 0; the
    // trapezoid over [−θ_c, θ_c] then needs no end correction.
    bool done = false;
    for (int level = 0; level < 14; ++level) {
      prev = cur;
      M *= 2;
      std::fill(acc.begin(), acc.end(), cplx{});
      for (long i = 1; i < M; i += 2) {
        double t = t_of_theta(tc * static_cast<double>(i) / static_cast<double>(M));
        zeta_at(t, zbuf.data());
        eval_pair(t, zbuf.data(), (0.25 + t * t) * central_weight(t), acc.data());
        ++nodes;
      }
      double diff = 0;
      for (int k = 0; k < nout; ++k) {
        cur[k] = 0.5 * prev[k] + acc[k] * (tc / static_cast<double>(M));
        diff = std::max(diff, std::abs(cur[k] - prev[k]));
      }
      if (level >= 2 && diff < opt.tol) {
        est_total += diff;
        done = true;
        break;
      }
    }
    if (!done) fail(ErrorCode::kToleranceNotMet, "central θ trapezoid did not settle");
    for (int k = 0; k < nout; ++k) total[k] += cur[k];
    ++panels;
  } else {
    std::vector<double> pts = f.singular_points;
    std::sort(pts.begin(), pts.end());
    if (pts.front() <= 0) fail(ErrorCode::kUsage, "singular points must be positive");
    j_start = static_cast<long>(std::ceil((pts.back() + 1.0 - kFarStart) / opt.h));
    j_start = std::max(j_start, static_cast<long>(std::ceil((kCentralEnd - kFarStart) / opt.h)));
    if (j_start >= J) fail(ErrorCode::kUsage, "T must lie beyond the last singular point");
    double t_end = kFarStart + static_cast<double>(j_start) * opt.h;
    std::vector<double> edges{0.0};
    for (double p : pts) edges.push_back(theta_of_t(p));
    edges.push_back(theta_of_t(t_end));
    std::vector<cplx> part(nout);
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
      tanh_sinh(edges[i], edges[i + 1], nout, opt.tol,
                [&](double th, cplx* out) {
                  double t = t_of_theta(th);
                  zeta_at(t, zbuf.data());
                  std::fill(out, out + nout, cplx{});
                  eval_pair(t, zbuf.data(), 0.25 + t * t, out);
                },
                part, est_total, nodes);
      ++panels;
    }
    for (int k = 0; k < nout; ++k) total[k] += part[k];
  }

  // Uniform grid j_start..J; w(t) = 1 to double precision past 34, so the
  // singular branch starts it without a window.
  auto blocks = far_blocks(f.sigmas[0], opt.h, J + 1);
  std::vector<std::vector<std::shared_ptr<const std::vector<cplx>>>> all(ns);
  all[0] = blocks;
  for (int j = 1; j < ns; ++j) all[j] = far_blocks(f.sigmas[j], opt.h, J + 1);
  std::vector<cplx> sum_h(nout), sum_2h(nout), one(nout);
  for (long j = j_start; j <= J; ++j) {
    double t = kFarStart + static_cast<double>(j) * opt.h;
    for (int s = 0; s < ns; ++s) zbuf[s] = (*all[s][j / kBlock])[j % kBlock];
    double end = (j == j_start || j == J) ? 0.5 : 1.0;
    double win = f.singular_points.empty() ? far_weight(t) : 1.0;
    std::fill(one.begin(), one.end(), cplx{});
    eval_pair(t, zbuf.data(), win, one.data());
    for (int k = 0; k < nout; ++k) sum_h[k] += end * one[k];
    if (((j - j_start) & 1) == 0)
      for (int k = 0; k < nout; ++k) sum_2h[k] += end * one[k];
    ++nodes;
  }
  std::vector<QuadratureResult> out(nout);
  double far_est = 0;
  for (int k = 0; k < nout; ++k) {
    cplx fh = sum_h[k] * opt.h, f2h = sum_2h[k] * (2 * opt.h);
    total[k] += fh;
    far_est = std::abs(fh - f2h);
    out[k].value = HComplex(total[k]);
    out[k].est_error = hr(est_total + far_est);
    out[k].nodes_used = nodes;
    out[k].theta_panels = panels + 1;
  }
  return out;
}

void clear_line_cache() {
  std::lock_guard<std::mutex> lock(cache().mu);
  cache().blocks.clear();
}

std::size_t line_cache_samples() {
  std::lock_guard<std::mutex> lock(cache().mu);
  return cache().blocks.size() * kBlock;
}

// Main-term tail (log(T/2π) + 2γ0 + 1)/(πT) plus 1/(πT) for the error term
// of the mean-square law.
double tail_mean_square(double T) { return (std::log(T / (2 * M_PI)) + 2 * kEuler + 2) / (M_PI * T); }

double tail_linear(double T) {
  double mu_tail = 2.0 / M_PI * std::atan(1.0 / (2.0 * T));
  return std::sqrt(mu_tail * tail_mean_square(T));
}

double tail_log(double T) {
  // Mean square of log|ζ| grows like (1/2) log log t.
  double mu_tail = 2.0 / M_PI * std::atan(1.0 / (2.0 * T));
  double ms = 1.0 + 0.5 * std::log(std::log(T));
  return std::sqrt(mu_tail * mu_tail * ms);
}

std::vector<QuadratureResult> coefficient_quadrature(double sigma0, int k, int n_min, int n_max,
                                                     const LineOptions& opt) {
  if (k < 1 || n_min > n_max) fail(ErrorCode::kUsage, "coefficient quadrature needs k >= 1 and n_min <= n_max");
  if (sigma0 < 0.5) fail(ErrorCode::kDomain, "line must satisfy Re s >= 1/2");
  const int nout = n_max - n_min + 1;
  LineIntegrand f;
  f.sigmas = {sigma0};
  f.outputs = nout;
  f.kernel = [=](double t, const cplx* z, cplx* out) {
    cplx zk = 1;
    for (int i = 0; i < k; ++i) zk *= z[0];
    zk -= 1.0;
    // conj e_n(t) = ((1/2 + it)/(1/2 − it))^n
    cplx r = cplx(0.5, t) / cplx(0.5, -t);
    cplx base = std::pow(r, n_min);
    for (int i = 0; i < nout; ++i) {
      out[i] = zk * base;
      base *= r;
    }
  };
  auto res = integrate_line(f, opt);
  double tb = k == 1 ? tail_linear(opt.T) : std::sqrt(2.0 / M_PI * std::atan(1.0 / (2.0 * opt.T))) *
                                                std::sqrt(std::pow(std::log(opt.T / (2 * M_PI)), 4) /
                                                          (2 * M_PI * M_PI * M_PI * opt.T));
  for (int i = 0; i < nout; ++i) {
    if (n_min + i == 0) res[i].value += HComplex(1);
    res[i].trunc_bound = hr(tb);
  }
  return res;
}

std::string to_json(const IdentityReport& r) {
  nlohmann::ordered_json j;
  j["name"] = r.name;
  j["value"] = to_decimal(r.quad.value.re, 17);
  if (!r.quad.value.im.is_zero()) j["value_imag"] = to_decimal(r.quad.value.im, 17);
  j["target"] = to_decimal(r.target, 17);
  j["abs_err"] = to_decimal(r.abs_err, 6);
  j["est_error"] = to_decimal(r.quad.est_error, 6);
  j["trunc_bound"] = to_decimal(r.quad.trunc_bound, 6);
  j["trunc_bound_kind"] = "heuristic mean-square tail";
  j["nodes"] = r.quad.nodes_used;
  return j.dump();
}

IdentityReport coffey_identity(const LineOptions& opt) {
  LineIntegrand f;
  f.sigmas = {0.5};
  f.kernel = [](double, const cplx* z, cplx* out) { out[0] = std::norm(z[0]); };
  IdentityReport r;
  r.name = "coffey";
  r.quad = integrate_line(f, opt)[0];
  r.quad.trunc_bound = hr(tail_mean_square(opt.T));
  PrecisionGuard g(PrecisionCtx(30));
  r.target = log(2 * const_pi()) - const_euler();
  r.abs_err = abs(r.quad.value.re - r.target);
  return r;
}

IdentityReport hnorm_identity(const LineOptions& opt) {
  LineIntegrand f;
  f.sigmas = {0.5};
  f.kernel = [](double t, const cplx* z, cplx* out) {
    cplx s(0.5, t);
    out[0] = std::norm(z[0] - s / (s - 1.0));
  };
  IdentityReport r;
  r.name = "hnorm";
  r.quad = integrate_line(f, opt)[0];
  r.quad.trunc_bound = hr(tail_mean_square(opt.T));
  PrecisionGuard g(PrecisionCtx(30));
  r.target = log(2 * const_pi()) - const_euler() - 1;
  r.abs_err = abs(r.quad.value.re - r.target);
  return r;
}

QuadratureResult cross_quadrature(double a, double b, const LineOptions& opt) {
  LineIntegrand f;
  f.sigmas = {a, b};
  f.kernel = [](double, const cplx* z, cplx* out) { out[0] = z[0] * z[1] - 1.0; };
  QuadratureResult r = integrate_line(f, opt)[0];
  r.value += HComplex(1);
  r.trunc_bound = hr(tail_mean_square(opt.T));
  return r;
}

CrossMoment cross_moment_closed_form(const HReal& a, const HReal& b, const CoeffTable& ta, const CoeffTable& tb,
                                     const HReal& tol, const PrecisionCtx& ctx) {
  PrecisionGuard g(ctx);
  const HReal half(0.5);
  auto check = [&](const HReal& x, const CoeffTable& t) {
    if (x < half || x >= HReal(1)) fail(ErrorCode::kDomain, "cross moments need a, b in [1/2, 1)");
    bool crit = t.family == Family::kCritical;
    if (crit != (x == half)) fail(ErrorCode::kUsage, "coefficient table does not match the line");
    if (!crit && abs(t.sigma0 - x) > pow(HReal(10), -static_cast<long>(ctx.digits) + 5))
      fail(ErrorCode::kUsage, "coefficient table does not match the line");
  };
  check(a, ta);
  check(b, tb);
  CrossMoment out;
  // F(x, y) with coefficients of y.
  auto F = [&](const HReal& x, const CoeffTable& ty) {
    if (x == half) return HReal(-ty.at(1));
    HReal d = x - half;
    HReal r = d / (HReal(1.5) - x);
    HReal acc, rn = r;
    HReal bound_coeff;
    for (int n = 1; n <= ty.n_max; ++n) {
      rn *= r;
      acc += ty.at(n) * rn;
      bound_coeff = max(bound_coeff, abs(ty.at(n)));
      // |ℓ_m(y)| ≤ 2 max_{k≤n} |ℓ_k(y)| is assumed for the tail.
      HReal tail = 2 * bound_coeff * rn * r / ((HReal(1) - r) * sqr(d));
      if (n >= 2 && tail < tol) {
        out.tail_bound += tail;
        out.terms = std::max(out.terms, n);
        return HReal(-acc / sqr(d));
      }
    }
    fail(ErrorCode::kSlowConvergence, "coefficient table ends before the geometric tail of F reaches tol");
  };
  out.value = ta.at(0) * tb.at(0) + F(a, tb) + F(b, ta);
  return out;
}

HReal cross_half_without_l1(const HReal& sigma, const PrecisionCtx& ctx) {
  PrecisionGuard g(ctx);
  HReal d = sigma - HReal(0.5), e = HReal(1.5) - sigma;
  if (d <= 0 || sigma >= 1) fail(ErrorCode::kDomain, "closed form needs sigma in (1/2, 1)");
  HReal z1 = zeta_em(HComplex(sigma + HReal(0.5)), ctx).re;
  HReal z2 = zeta_em(HComplex(e), ctx).re;
  return (const_euler() - 1) * z1 - z2 / (d * e) - HReal(1) / sqr(d);
}

HReal cross_half_closed_form(const HReal& sigma, const PrecisionCtx& ctx) {
  PrecisionGuard g(ctx);
  HReal d = sigma - HReal(0.5), e = HReal(1.5) - sigma;
  if (d <= 0 || sigma >= 1) fail(ErrorCode::kDomain, "closed form needs sigma in (1/2, 1)");
  HReal z1 = zeta_em(HComplex(sigma + HReal(0.5)), ctx).re;
  HReal dz = zeta_derivative(HComplex(sigma + HReal(0.5)), 1, ctx).re;
  HReal z2 = zeta_em(HComplex(e), ctx).re;
  return (const_euler() - 1) * z1 + dz - z2 / (d * e);
}

QuadratureResult log_integral_disk(const LineOptions& opt) {
  LineIntegrand f;
  f.sigmas = {0.5};
  f.kernel = [](double t, const cplx* z, cplx* out) {
    cplx s(0.5, t);
    out[0] = std::log(std::max(std::abs(z[0] - s / (s - 1.0)), 1e-300));
  };
  QuadratureResult r = integrate_line(f, opt)[0];
  r.trunc_bound = hr(tail_log(opt.T));
  return r;
}

BsyReport bsy_integral(double T_cutoff, const std::vector<double>& ordinates, const LineOptions& opt) {
  if (ordinates.empty()) fail(ErrorCode::kUsage, "bsy integral needs zero ordinates");
  BsyReport rep;
  LineOptions o = opt;
  o.T = T_cutoff;
  std::vector<double> pts;
  for (double g : ordinates)
    if (g > 0 && g + 1.0 < T_cutoff) pts.push_back(g);
  std::sort(pts.begin(), pts.end());
  rep.ordinates_used = static_cast<int>(pts.size());
  // Sign changes of Z with no listed ordinate in the bracket are located by
  // bisection and added as panel ends.
  const double step = 0.01;
  const double top = pts.back() + 0.5;
  std::vector<double> found;
  double a = 5.0, za = hardy_z(a);
  std::size_t next = 0;
  while (a < top) {
    double b = std::min(top, a + step), zb = hardy_z(b);
    if ((za < 0) != (zb < 0)) {
      ++rep.sign_changes;
      while (next < pts.size() && pts[next] < a) ++next;
      bool listed = next < pts.size() && pts[next] <= b;
      if (!listed) {
        double lo = a, hi = b, zlo = za;
        for (int it = 0; it < 60; ++it) {
          double mid = 0.5 * (lo + hi), zm = hardy_z(mid);
          if ((zm < 0) == (zlo < 0)) {
            lo = mid;
            zlo = zm;
          } else {
            hi = mid;
          }
        }
        found.push_back(0.5 * (lo + hi));
      }
    }
    a = b;
    za = zb;
  }
  rep.uncovered_zero = !found.empty();
  std::vector<double> ends = pts;
  ends.insert(ends.end(), found.begin(), found.end());
  std::sort(ends.begin(), ends.end());
  LineIntegrand f;
  f.sigmas = {0.5};
  f.singular_points = ends;
  f.kernel = [](double, const cplx* z, cplx* out) { out[0] = std::log(std::max(std::abs(z[0]), 1e-300)); };
  rep.quad = integrate_line(f, o)[0];
  rep.quad.trunc_bound = hr(tail_log(T_cutoff));
  for (double g : pts) {
    cplx rho(0.5, g);
    rep.min_ratio = std::min(rep.min_ratio, std::abs((1.0 - rho) / rho));
  }
  return rep;
}

QuadratureResult phi_l2_halfline(const LineOptions& opt) {
  LineIntegrand f;
  f.sigmas = {0.5};
  f.density = [](double) { return 0.5; };  // half of ∫_ℝ
  f.kernel = [](double t, const cplx* z, cplx* out) {
    cplx s(0.5, t);
    out[0] = std::norm((s / (s - 1.0) - z[0]) / s);
  };
  QuadratureResult r = integrate_line(f, opt)[0];
  r.trunc_bound = hr(M_PI * tail_mean_square(opt.T));
  return r;
}

OuterValue outer_function(const HComplex& u, const LineOptions& opt) {
  cplx uu = u.to_complex();
  if (!(uu.real() > 0.5)) fail(ErrorCode::kDomain, "outer function needs Re u > 1/2");
  cplx zu = (1.0 - uu) / uu;
  LineIntegrand f;
  f.sigmas = {0.5};
  f.outputs = 2;
  f.kernel = [zu, uu](double t, const cplx* z, cplx* out) {
    cplx s(0.5, t);
    double lg = std::log(std::max(std::abs(z[0] - s / (s - 1.0)), 1e-300));
    cplx e1 = cplx(0.5, -t) / s;
    out[0] = (e1 + zu) / (e1 - zu) * lg;
    // Poisson form in the s variable: (2 Re u − 1)/|s − u|² relative to dt/(2π).
    out[1] = lg * (2 * uu.real() - 1) * (0.25 + t * t) / std::norm(s - uu);
  };
  auto res = integrate_line(f, opt);
  OuterValue v;
  v.herglotz = res[0];
  v.poisson = res[1];
  double tb = tail_log(opt.T) * std::max(1.0, (1 + std::abs(zu)) / (1 - std::abs(zu)));
  v.herglotz.trunc_bound = hr(tb);
  v.poisson.trunc_bound = hr(tb);
  v.q = HComplex(std::exp(res[0].value.to_complex()));
  return v;
}

double hardy_z(double t) {
  double th = 0.5 * t * std::log(t / (2 * M_PI)) - 0.5 * t - M_PI / 8 + 1 / (48 * t) + 7 / (5760 * t * t * t) +
              31 / (80640 * std::pow(t, 5));
  return (std::polar(1.0, th) * native::zeta(cplx(0.5, t))).real();
}

int hardy_sign_changes(double a, double b, double step) {
  int count = 0;
  double prev = hardy_z(a);
  long n = static_cast<long>(std::ceil((b - a) / step));
  for (long i = 1; i <= n; ++i) {
    double cur = hardy_z(std::min(b, a + static_cast<double>(i) * step));
    if ((cur < 0) != (prev < 0)) ++count;
    prev = cur;
  }
  return count;
}

std::vector<double> load_zero_ordinates(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIo, "cannot open zero ordinate file " + path);
  std::vector<double> out;
  std::string line;
  while (std::getline(in, line)) {
    auto pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos || line[pos] == '#') continue;
    try {
      out.push_back(std::stod(line.substr(pos)));
    } catch (const std::exception&) {
      fail(ErrorCode::kIo, "bad ordinate line in " + path + ": " + line);
    }
  }
  if (out.empty()) fail(ErrorCode::kIo, "no ordinates in " + path);
  return out;
}

std::string default_zero_file() { return std::string(ZETALINE_DATA_DIR) + "/zeta_zeros_100.txt"; }

}  // namespace zetaline
