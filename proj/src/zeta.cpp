#include "zetaline/zeta.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <mutex>

#include "zetaline/parallel.hpp"

namespace zetaline {

namespace {

std::mutex g_bern_mu;
std::vector<mpq_class> g_bern;  // B_0, B_2, ...

// Tangent-number recurrence (exact integers), B_{2k} = (−1)^{k−1} 2k T_k / (4^k (4^k − 1)).
std::vector<mpq_class> compute_bernoulli_even(int count) {
  std::vector<mpq_class> out(count);
  out[0] = 1;
  int n = count - 1;
  if (n <= 0) return out;
  std::vector<mpz_class> T(n + 1);
  T[1] = 1;
  for (int k = 2; k <= n; ++k) T[k] = (k - 1) * T[k - 1];
  for (int k = 2; k <= n; ++k)
    for (int j = k; j <= n; ++j) T[j] = (j - k) * T[j - 1] + (j - k + 2) * T[j];
  for (int k = 1; k <= n; ++k) {
    mpz_class four_k = mpz_class(1) << (2 * k);
    mpq_class b(mpz_class(2 * k) * T[k], four_k * (four_k - 1));
    b.canonicalize();
    out[k] = (k % 2 == 1) ? b : mpq_class(-b);
  }
  return out;
}

// B_{2j}/(2j)! at the working precision, j = 0..count-1.
struct BernTermCache {
  mpfr_prec_t bits = 0;
  std::vector<HReal> terms;
};
thread_local BernTermCache t_bern_terms;

// Caches hold values at a precision at or somewhat above the working one;
// arithmetic with them still rounds to the working precision.
bool cache_stale(mpfr_prec_t have) { return have < working_bits() || have > working_bits() + 128; }

const std::vector<HReal>& bern_terms(int count) {
  BernTermCache& c = t_bern_terms;
  bool stale = cache_stale(c.bits);
  if (stale || static_cast<int>(c.terms.size()) < count) {
    int want = std::max(count, 64);
    if (!stale) want = std::max(want, static_cast<int>(c.terms.size()) * 2);
    mpfr_prec_t bits = stale ? working_bits() + 64 : c.bits;
    std::vector<mpq_class> b = bernoulli_even(want);
    PrecisionGuard g(bits);
    c.terms.clear();
    c.terms.reserve(want);
    for (int j = 0; j < want; ++j) c.terms.push_back(HReal(b[j]) / factorial(2 * j));
    c.bits = bits;
  }
  return c.terms;
}

struct LogCache {
  mpfr_prec_t bits = 0;
  std::vector<HReal> logs;  // logs[n] = log n
};
thread_local LogCache t_logs;

const std::vector<HReal>& log_table(long N) {
  LogCache& c = t_logs;
  if (cache_stale(c.bits)) {
    c.logs.clear();
    c.bits = working_bits() + 64;
  }
  if (static_cast<long>(c.logs.size()) <= N) {
    PrecisionGuard g(c.bits);
    long start = static_cast<long>(c.logs.size());
    c.logs.reserve(N + 1);
    for (long n = start; n <= N; ++n) c.logs.push_back(n <= 1 ? HReal(0) : log(HReal(n)));
  }
  return c.logs;
}

double approx_abs(const HComplex& s) { return std::abs(s.to_complex()); }

// (e^w − 1)/w, including w = 0.
HComplex exprel(const HComplex& w) {
  if (approx_abs(w) > 0.5) return (exp(w) - HComplex(1)) / w;
  HComplex term(1), sum(1);
  HReal tol = ldexp(HReal(1), -static_cast<long>(working_bits()) - 4);
  for (int k = 2; k < 100000; ++k) {
    term = term * w / k;
    sum += term;
    if (abs(term) < tol) break;
  }
  return sum;
}

enum class EmMode { kZeta, kEntire };

// One Euler-Maclaurin pass at the current working precision. Returns false if
// the correction terms stop decreasing before reaching the tolerance.
bool em_pass(const HComplex& s, long N, EmMode mode, long target_bits, HComplex& out) {
  const auto& logs = log_table(N);
  HReal sigma = s.re, t = s.im;
  HComplex sum;
  for (long n = 1; n < N; ++n) {
    if (n == 1) {
      sum += HComplex(1);
      continue;
    }
    sum += polar(exp(-sigma * logs[n]), -t * logs[n]);
  }
  HComplex xN = polar(exp(-sigma * logs[N]), -t * logs[N]);  // N^{-s}
  HComplex tail;
  HComplex s_minus_1 = s - HReal(1);
  if (mode == EmMode::kZeta) {
    tail = xN * HReal(N) / s_minus_1;
  } else {
    // (N^{1−s} − 1)/(s − 1) = −log N · E((1 − s) log N)
    HComplex w = -(s_minus_1 * logs[N]);
    tail = -(exprel(w) * logs[N]);
  }
  HComplex total = sum + tail + xN / 2;
  HReal scale = abs(total) + HReal(1);
  HReal tol = ldexp(scale, -target_bits - 8);
  HReal NN = sqr(HReal(N));
  HComplex P = s * xN / HReal(N);
  int jmax = static_cast<int>(std::min<double>(4000.0, 3.0 * N + 50));
  const auto* terms = &bern_terms(64);
  HReal prev_abs;
  for (int j = 1; j <= jmax; ++j) {
    if (j >= static_cast<int>(terms->size())) terms = &bern_terms(j + 64);
    if (j > 1) {
      HComplex a = s + HReal(2 * j - 3);
      HComplex b = s + HReal(2 * j - 2);
      P = P * (a * b) / NN;
    }
    HComplex T = P * (*terms)[j];
    total += T;
    HReal ta = abs(T);
    if (ta < tol && j >= 2) {
      out = total;
      return true;
    }
    if (j > 2 && ta > prev_abs) return false;
    prev_abs = ta;
  }
  return false;
}

HComplex em_eval(const HComplex& s, EmMode mode, long forced_N) {
  long target_bits = working_bits();
  double digits = target_bits / 3.3219;
  double sabs = approx_abs(s);
  double sigma = s.re.to_double();
  long N = forced_N > 0 ? forced_N
                        : static_cast<long>(std::ceil(0.5 * digits + 1.2 * sabs / (2 * M_PI))) + 5;
  N = std::max(N, 10L);
  for (int attempt = 0; attempt < 12; ++attempt) {
    double guard = 24 + std::log2(static_cast<double>(N)) +
                   std::max(0.0, 1.0 - sigma) * std::log2(static_cast<double>(N)) +
                   std::log2(1.0 + std::abs(s.im.to_double()) * std::log(static_cast<double>(N)));
    HComplex out;
    bool ok;
    {
      PrecisionGuard g(static_cast<mpfr_prec_t>(target_bits + std::ceil(guard)));
      ok = em_pass(s, N, mode, target_bits, out);
    }
    if (ok) return {out.re.rounded(target_bits), out.im.rounded(target_bits)};
    if (forced_N > 0)
      fail(ErrorCode::kNonConvergence, "Euler-Maclaurin corrections diverge at the forced cutoff");
    N *= 2;
  }
  fail(ErrorCode::kNonConvergence, "Euler-Maclaurin cutoff search failed");
}

void check_zeta_region(const HComplex& s) {
  if (s.re == 1 && s.im.is_zero()) fail(ErrorCode::kPole, "zeta has a pole at s = 1");
  if (s.re <= -1) fail(ErrorCode::kRegion, "zeta_em requires Re s > -1");
  if (abs(s.im) > 1e6) fail(ErrorCode::kRegion, "zeta_em requires |Im s| <= 1e6");
}

HComplex entire_unchecked(const HComplex& s) {
  HComplex d = s - HReal(1);
  if (approx_abs(d) < 1.0) return em_eval(s, EmMode::kEntire, 0);
  return em_eval(s, EmMode::kZeta, 0) - inv(d);
}

// Values of the entire part at s0 + r e^{2πij/M}. With a real center only
// j = 0..M/2 are evaluated; the rest follow by conjugation.
std::vector<HComplex> entire_nodes(const HComplex& s0, const HReal& r, int M, bool real_center) {
  int count = real_center ? M / 2 + 1 : M;
  std::vector<HComplex> vals(count);
  HReal two_pi = 2 * const_pi();
  parallel_for(count, [&](std::size_t j) {
    HComplex node = s0 + polar(r, two_pi * static_cast<long>(j) / M);
    vals[j] = entire_unchecked(node);
  });
  return vals;
}

// a_k = (1/(M r^k)) Σ_j v_j ω^{−jk}, using every `stride`-th node.
std::vector<HComplex> trapezoid_coeffs(const std::vector<HComplex>& vals, int M, bool real_center,
                                       const HReal& r, int K, int stride) {
  int Ms = M / stride;
  HReal two_pi = 2 * const_pi();
  std::vector<HReal> cs(Ms), sn(Ms);
  for (int j = 0; j < Ms; ++j) sin_cos(two_pi * j / Ms, sn[j], cs[j]);
  auto value = [&](int j) -> HComplex {
    int jj = j * stride;
    if (!real_center || jj <= M / 2) return vals[jj];
    return conj(vals[M - jj]);
  };
  std::vector<HComplex> a(K + 1);
  parallel_for(K + 1, [&](std::size_t kk) {
    int k = static_cast<int>(kk);
    HComplex acc;
    if (real_center) {
      // Σ_j v_j ω^{−jk} is real: v_0 + (−1)^k v_{M/2} + 2 Σ_{0<j<M/2} Re(v_j ω^{−jk})
      HReal re = value(0).re;
      if (Ms % 2 == 0) re += (k % 2 ? -value(Ms / 2).re : value(Ms / 2).re);
      HReal inner;
      for (int j = 1; j < (Ms + 1) / 2; ++j) {
        int idx = static_cast<int>((static_cast<long>(j) * k) % Ms);
        const HComplex& v = value(j);
        inner += v.re * cs[idx] + v.im * sn[idx];
      }
      acc = HComplex(re + 2 * inner);
    } else {
      for (int j = 0; j < Ms; ++j) {
        int idx = static_cast<int>((static_cast<long>(j) * k) % Ms);
        const HComplex v = value(j);
        acc += HComplex(v.re * cs[idx] + v.im * sn[idx], v.im * cs[idx] - v.re * sn[idx]);
      }
    }
    a[k] = acc / (pow(r, static_cast<long>(k)) * Ms);
  });
  return a;
}

struct ContourResult {
  std::vector<HComplex> a;
  std::vector<HReal> err;
  int M = 0;
};

// Taylor coefficients of f about s0 from nodes on |s − s0| = r. Starting at
// M0 nodes, M doubles until the M/2-subset estimate reaches target_digits
// relative to the largest node value. f receives the offset s − s0.
ContourResult adaptive_contour(const std::function<HComplex(const HComplex&)>& f, const HComplex& s0,
                               const HReal& r, int K, int M0, int target_digits) {
  bool real_center = s0.im.is_zero();
  HReal two_pi = 2 * const_pi();
  HReal floor_rel = pow(HReal(10), -static_cast<long>(working_bits() / 3.3219));
  HReal target = pow(HReal(10), -static_cast<long>(target_digits));
  for (int M = M0;; M *= 2) {
    int count = real_center ? M / 2 + 1 : M;
    std::vector<HComplex> vals(count);
    parallel_for(count, [&](std::size_t j) { vals[j] = f(polar(r, two_pi * static_cast<long>(j) / M)); });
    ContourResult res;
    res.M = M;
    res.a = trapezoid_coeffs(vals, M, real_center, r, K, 1);
    std::vector<HComplex> half = trapezoid_coeffs(vals, M, real_center, r, K, 2);
    HReal vmax;
    for (const auto& v : vals) vmax = max(vmax, abs(v));
    HReal worst;
    HReal rk(1);
    res.err.resize(K + 1);
    for (int k = 0; k <= K; ++k) {
      HReal diff = abs(res.a[k] - half[k]);
      res.err[k] = diff + vmax * floor_rel / rk;
      worst = max(worst, diff * rk);
      rk *= r;
    }
    if (worst <= vmax * target) return res;
    if (M >= (1 << 15)) fail(ErrorCode::kNonConvergence, "contour node count limit reached");
  }
}

}  // namespace

std::vector<mpq_class> bernoulli_even(int count) {
  std::lock_guard<std::mutex> lk(g_bern_mu);
  if (static_cast<int>(g_bern.size()) < count) g_bern = compute_bernoulli_even(count);
  return std::vector<mpq_class>(g_bern.begin(), g_bern.begin() + count);
}

const std::vector<double>& bernoulli_term_ratios() {
  static const std::vector<double> ratios = [] {
    constexpr int kCount = 1500;
    PrecisionGuard g(PrecisionCtx(40));
    std::vector<mpq_class> b = bernoulli_even(kCount + 1);
    std::vector<double> r(kCount);
    HReal prev;
    for (int j = 1; j <= kCount; ++j) {
      HReal term = HReal(b[j]) / factorial(2 * j);
      r[j - 1] = j == 1 ? term.to_double() : (term / prev).to_double();
      prev = term;
    }
    return r;
  }();
  return ratios;
}

HComplex zeta_em(const HComplex& s, const PrecisionCtx& ctx) {
  check_zeta_region(s);
  PrecisionGuard g(ctx);
  return em_eval(s, EmMode::kZeta, 0);
}

HComplex zeta_em_cutoff(const HComplex& s, long N, const PrecisionCtx& ctx) {
  check_zeta_region(s);
  if (N < 2) fail(ErrorCode::kUsage, "cutoff must be >= 2");
  PrecisionGuard g(ctx);
  return em_eval(s, EmMode::kZeta, N);
}

HComplex zeta_entire_part(const HComplex& s, const PrecisionCtx& ctx) {
  if (s.re <= -3) fail(ErrorCode::kRegion, "entire part evaluated only for Re s > -3");
  PrecisionGuard g(ctx);
  return entire_unchecked(s);
}

std::vector<HComplex> entire_taylor(const HComplex& s0, const HReal& r, int M, int K,
                                    const PrecisionCtx& ctx, std::vector<HReal>* err) {
  if (M < 4 || M % 2) fail(ErrorCode::kUsage, "node count must be even and >= 4");
  PrecisionGuard g(ctx);
  bool real_center = s0.im.is_zero();
  std::vector<HComplex> vals = entire_nodes(s0, r, M, real_center);
  std::vector<HComplex> a = trapezoid_coeffs(vals, M, real_center, r, K, 1);
  if (err) {
    std::vector<HComplex> half = trapezoid_coeffs(vals, M, real_center, r, K, 2);
    HReal vmax;
    for (const auto& v : vals) vmax = max(vmax, abs(v));
    HReal floor_rel = pow(HReal(10), -static_cast<long>(ctx.digits));
    err->assign(K + 1, HReal());
    HReal rk(1);
    for (int k = 0; k <= K; ++k) {
      (*err)[k] = abs(a[k] - half[k]) + vmax * floor_rel / rk;
      rk *= r;
    }
  }
  return a;
}

std::vector<HComplex> entire_taylor_auto(const HComplex& s0, const HReal& r, int K, const PrecisionCtx& ctx,
                                         std::vector<HReal>* err) {
  if ((s0.re - r).to_double() <= -3) fail(ErrorCode::kRegion, "contour leaves Re s > -3");
  PrecisionGuard g(ctx);
  ContourResult res = adaptive_contour([&](const HComplex& w) { return entire_unchecked(s0 + w); }, s0, r, K,
                                       std::max(64, 4 * K), ctx.digits);
  if (err) *err = std::move(res.err);
  return std::move(res.a);
}

HComplex zeta_derivative(const HComplex& s0, int k, const PrecisionCtx& ctx, double radius) {
  if (k < 0) fail(ErrorCode::kUsage, "derivative order must be >= 0");
  if (k == 0) return zeta_em(s0, ctx);
  check_zeta_region(s0);
  PrecisionGuard g0(ctx);
  HComplex d = s0 - HReal(1);
  double dist = approx_abs(d);
  double re = s0.re.to_double();
  double r = radius > 0 ? radius : std::min({0.5, dist / 2, (re + 1) / 2});
  if (dist <= r) fail(ErrorCode::kContourHitsPole, "contour disk contains s = 1");
  if (re - r <= -1) fail(ErrorCode::kRegion, "contour disk leaves Re s > -1");
  int guard = static_cast<int>(std::ceil(k * std::log10(std::max(1.0, dist / r)))) + 12;
  PrecisionCtx wctx = ctx.widened(guard);
  HReal fact = factorial(static_cast<unsigned long>(k));
  HComplex prev;
  HReal tol = pow(HReal(10), -(ctx.digits + 2));
  for (int M = std::max(32, 4 * k + 16); M <= 1 << 16; M *= 2) {
    std::vector<HComplex> a;
    {
      PrecisionGuard gw(wctx);
      a = entire_taylor(s0, HReal(r), M, k, wctx);
    }
    // Pole part: d^k/ds^k (s − 1)^{-1} = (−1)^k k! (s − 1)^{−k−1}
    HComplex pole = inv(pow(d, static_cast<long>(k + 1))) * fact;
    if (k % 2) pole = -pole;
    HComplex val = a[k] * fact + pole;
    if (M > std::max(32, 4 * k + 16) && abs(val - prev) <= tol * (abs(val) + 1))
      return {val.re.rounded(ctx.bits()), val.im.rounded(ctx.bits())};
    prev = val;
  }
  fail(ErrorCode::kNonConvergence, "contour derivative did not settle");
}

const char* method_name(StieltjesMethod m) {
  return m == StieltjesMethod::kContour ? "contour" : "limit-accel";
}

HReal StieltjesTable::laurent_coeff(int k) const {
  HReal c = gammas.at(k) / factorial(static_cast<unsigned long>(k));
  return k % 2 ? -c : c;
}

StieltjesTable stieltjes(int k_max, const PrecisionCtx& ctx, StieltjesMethod method) {
  if (k_max < 0 || k_max > 400) fail(ErrorCode::kUsage, "k_max must be in [0, 400]");
  if (method == StieltjesMethod::kLimitAccel) return stieltjes_limit(k_max, ctx);
  PrecisionCtx wctx = ctx.widened(static_cast<int>(std::ceil(0.05 * k_max)) + 10);
  int M = std::max(64, 4 * k_max);
  std::vector<HReal> err;
  std::vector<HComplex> a;
  {
    PrecisionGuard g(wctx);
    HComplex one(1);
    ContourResult res = adaptive_contour(
        [&](const HComplex& w) { return entire_unchecked(one + w); }, one, HReal(3), k_max, M, ctx.digits + 2);
    a = std::move(res.a);
    err = std::move(res.err);
  }
  PrecisionGuard g(ctx);
  StieltjesTable tab;
  tab.k_max = k_max;
  tab.digits = ctx.digits;
  tab.method = StieltjesMethod::kContour;
  for (int k = 0; k <= k_max; ++k) {
    HReal fact;
    HReal gk;
    {
      PrecisionGuard gw(wctx);
      fact = factorial(static_cast<unsigned long>(k));
      gk = a[k].re * fact;
      if (k % 2) gk = -gk;
    }
    HReal e = err[k] * fact + abs(gk) * pow(HReal(10), -static_cast<long>(ctx.digits));
    tab.gammas.push_back(gk.rounded(ctx.bits()));
    tab.abs_error.push_back(e);
  }
  return tab;
}

StieltjesTable stieltjes_limit(int k_max, const PrecisionCtx& ctx, long N) {
  if (k_max < 0) fail(ErrorCode::kUsage, "k_max must be >= 0");
  if (N <= 0) N = std::max<long>(100, ctx.digits);
  double logN = std::log(static_cast<double>(N));
  int guard = static_cast<int>(std::ceil(k_max * std::log10(std::max(1.0, logN)))) + 15;
  PrecisionCtx wctx = ctx.widened(guard);
  StieltjesTable tab;
  tab.k_max = k_max;
  tab.digits = ctx.digits;
  tab.method = StieltjesMethod::kLimitAccel;
  std::vector<HReal> gam(k_max + 1);
  std::vector<HReal> errs(k_max + 1);
  {
    PrecisionGuard g(wctx);
    // Σ_{m≤N} log^k m / m for all k at once.
    std::vector<HReal> sums(k_max + 1);
    for (long m = 1; m <= N; ++m) {
      HReal L = log(HReal(m));
      HReal p = HReal(1) / HReal(m);
      for (int k = 0; k <= k_max; ++k) {
        sums[k] += p;
        p *= L;
      }
    }
    HReal L = log(HReal(N));
    HReal Nr(N);
    HReal tol = pow(HReal(10), -(wctx.digits - 2));
    parallel_for(k_max + 1, [&](std::size_t kk) {
      int k = static_cast<int>(kk);
      HReal Lk = pow(L, static_cast<long>(k));
      HReal g = sums[k] - Lk * L / (k + 1) - Lk / Nr / 2;
      // f^{(r)}(x) = x^{−1−r} Σ_i a_i log^i x, starting from a = e_k.
      std::vector<HReal> a(k + 1);
      a[k] = 1;
      std::vector<HReal> Lpow(k + 1);
      Lpow[0] = 1;
      for (int i = 1; i <= k; ++i) Lpow[i] = Lpow[i - 1] * L;
      auto step = [&](int r) {
        for (int i = 0; i <= k; ++i) {
          HReal v = a[i] * (-1 - r);
          if (i + 1 <= k) v += a[i + 1] * (i + 1);
          a[i] = v;
        }
      };
      HReal xpow = HReal(1) / Nr;  // N^{−1−r}
      int r = 0;
      HReal last;
      int j = 1;
      for (; j < 2000; ++j) {
        while (r < 2 * j - 1) {
          step(r);
          ++r;
          xpow /= Nr;
        }
        HReal poly;
        for (int i = 0; i <= k; ++i) poly += a[i] * Lpow[i];
        HReal term = bern_terms(j + 1)[j] * xpow * poly;
        g -= term;
        last = abs(term);
        if (j >= 2 && last < tol * (abs(g) + 1)) break;
      }
      if (j >= 2000) fail(ErrorCode::kNonConvergence, "limit tail did not converge");
      gam[k] = g;
      errs[k] = last;
    });
  }
  PrecisionGuard g(ctx);
  for (int k = 0; k <= k_max; ++k) {
    tab.gammas.push_back(gam[k].rounded(ctx.bits()));
    tab.abs_error.push_back(errs[k] + abs(gam[k]) * pow(HReal(10), -static_cast<long>(ctx.digits)));
  }
  return tab;
}

bool berndt_holds(const StieltjesTable& table, int k) {
  if (k < 1 || k > table.k_max) fail(ErrorCode::kUsage, "Berndt bound index out of range");
  PrecisionGuard g(PrecisionCtx(std::max(table.digits, kMinDigits)));
  HReal fact = factorial(static_cast<unsigned long>(k));
  HReal lhs = (abs(table.gammas[k]) + table.abs_error[k]) / fact;
  HReal rhs = HReal(4) / (HReal(k) * pow(const_pi(), static_cast<long>(k)));
  return lhs <= rhs;
}

LaurentTable laurent_power_coeffs(int k, int m_max, const PrecisionCtx& ctx) {
  if (k < 1) fail(ErrorCode::kUsage, "power k must be >= 1");
  if (m_max < 0 || m_max > 800) fail(ErrorCode::kUsage, "m_max must be in [0, 800]");
  int guard = static_cast<int>(std::ceil(0.05 * m_max + 0.7 * k)) + 10;
  PrecisionCtx wctx = ctx.widened(guard);
  LaurentTable tab;
  tab.k = k;
  tab.m_max = m_max;
  tab.digits = ctx.digits;
  std::vector<HComplex> a;
  {
    PrecisionGuard g(wctx);
    HComplex one(1);
    // (s − 1)ζ(s) = 1 + (s − 1) g(s), raised to the k-th power.
    auto f = [&](const HComplex& w) {
      return pow(HComplex(1) + w * entire_unchecked(one + w), static_cast<long>(k));
    };
    a = adaptive_contour(f, one, HReal(3), m_max, std::max(64, 4 * m_max), ctx.digits + 2).a;
    for (int m = 0; m <= m_max; ++m) a[m].re = a[m].re * factorial(static_cast<unsigned long>(m));
  }
  PrecisionGuard g(ctx);
  for (int m = 0; m <= m_max; ++m) tab.lambdas.push_back(a[m].re.rounded(ctx.bits()));
  return tab;
}

}  // namespace zetaline
