#include "zetaline/series.hpp"

#include <cmath>
#include <complex>
#include <iomanip>
#include <sstream>

#include "zetaline/error.hpp"
#include "zetaline/zeta.hpp"

namespace zetaline {

namespace {

// ζ(s) − s/(s − 1) = g(s) − 1 with g the entire part, finite at s = 1.
HComplex zeta_minus_polar(const HComplex& s, const PrecisionCtx& ctx) {
  return zeta_entire_part(s, ctx) - HReal(1);
}

}  // namespace

HComplex basis_e(long n, const HReal& t, const PrecisionCtx& ctx) {
  if (n == 0) return HComplex(1);
  int extra = static_cast<int>(std::log10(static_cast<double>(std::labs(n)) + 1.0)) + 5;
  PrecisionCtx wctx = ctx.widened(extra);
  HComplex r;
  {
    PrecisionGuard g(wctx);
    HReal phase = -2 * HReal(n) * atan(2 * t);
    HReal sn, cs;
    sin_cos(phase, sn, cs);
    r = HComplex(cs, sn);
  }
  PrecisionGuard g(ctx);
  return {r.re.rounded(ctx.bits()), r.im.rounded(ctx.bits())};
}

HComplex cayley(const HComplex& z) {
  HComplex d = HComplex(1) + z;
  if (d.re.is_zero() && d.im.is_zero()) fail(ErrorCode::kPole, "Cayley map has a pole at z = -1");
  return inv(d);
}

HComplex cayley_inv(const HComplex& s) {
  if (s.re.is_zero() && s.im.is_zero()) fail(ErrorCode::kPole, "inverse Cayley map has a pole at s = 0");
  return (HComplex(1) - s) / s;
}

const char* route_name(HRoute r) { return r == HRoute::kSeries ? "series" : "closed-form"; }

HValue eval_h(const HComplex& z, const CoeffTable& coeffs, const HReal& tol, const PrecisionCtx& ctx,
              const SeriesOptions& opt) {
  if (coeffs.family != Family::kCritical) fail(ErrorCode::kUsage, "h needs the critical coefficient family");
  PrecisionGuard g(ctx);
  HReal r = abs(z);
  HValue out;
  if (!opt.force_series && r > HReal(1 - opt.delta)) {
    if (r > 1) fail(ErrorCode::kDomain, "h is evaluated on the closed unit disk only");
    out.route = HRoute::kClosedForm;
    out.value = zeta_minus_polar(cayley(z), ctx);
    return out;
  }
  if (r >= 1) fail(ErrorCode::kTailBoundUnreachable, "series for h diverges or stalls on |z| >= 1");
  HReal ceiling = parseval_ceiling(ctx);
  HReal slack = pow(HReal(10), -static_cast<long>(coeffs.digits));
  HReal scale = HReal(1) / sqrt(HReal(1) - sqr(r));
  HComplex acc, zn(1);
  HReal sq, coeff_err, rn(1);
  for (int n = 0; n <= coeffs.n_max; ++n) {
    HReal l = coeffs.at(n);
    acc += zn * l;
    sq += sqr(l);
    if (!coeffs.abs_error.empty()) coeff_err += coeffs.abs_error[n - coeffs.n_min] * rn;
    zn *= z;
    rn *= r;
    HReal tail2 = max(ceiling - sq, HReal(0)) + slack;
    HReal bound = sqrt(tail2) * rn * scale + coeff_err;
    if (bound < tol || r.is_zero()) {
      out.value = acc;
      out.terms = n;
      out.tail_bound = bound;
      return out;
    }
  }
  fail(ErrorCode::kTailBoundUnreachable,
       "coefficient table ends at n = " + std::to_string(coeffs.n_max) + " before the tail bound reaches tol at |z| = " +
           std::to_string(r.to_double()));
}

SeriesZeta zeta_via_series(const HComplex& s, const CoeffTable& coeffs, const HReal& tol, const PrecisionCtx& ctx,
                           const SeriesOptions& opt) {
  PrecisionGuard g(ctx);
  if (s.re <= HReal(0.5)) fail(ErrorCode::kDomain, "series representation needs Re s > 1/2");
  SeriesZeta out;
  HComplex z = cayley_inv(s);
  out.regular = eval_h(z, coeffs, tol, ctx, opt);
  if (s.re == HReal(1) && s.im.is_zero()) {
    out.at_pole = true;
    return out;
  }
  out.value = s / (s - HReal(1)) + out.regular.value;
  return out;
}

HComplex partial_sum_fN(int N, const HComplex& z, const CoeffTable& coeffs) {
  if (N < 0 || N > coeffs.n_max) fail(ErrorCode::kInsufficientTable, "f_N needs 0 <= N <= n_max");
  HComplex acc;
  for (int n = N; n >= 0; --n) acc = acc * z + coeffs.at(n);
  return acc * z - HReal(1);
}

HComplex boundary_partial_sum(int N, const HReal& t, const CoeffTable& coeffs, const PrecisionCtx& ctx) {
  if (N < 0 || N > coeffs.n_max) fail(ErrorCode::kInsufficientTable, "Z_N needs 0 <= N <= n_max");
  PrecisionGuard g(ctx);
  HComplex ratio = HComplex(HReal(0.5), -t) / HComplex(HReal(0.5), t);
  HComplex acc = HComplex(coeffs.at(0) + 1) - inv(HComplex(HReal(0.5), -t));
  HComplex e(1);
  for (int n = 1; n <= N; ++n) {
    e *= ratio;
    acc += e * coeffs.at(n);
  }
  return acc;
}

HComplex phi(const HComplex& s, const PrecisionCtx& ctx) {
  PrecisionGuard g(ctx);
  if (s.re <= 0) fail(ErrorCode::kDomain, "phi integral converges for Re s > 0 only");
  return -(zeta_minus_polar(s, ctx) / s);
}

PhiDirect phi_direct(const HComplex& s, long X, const PrecisionCtx& ctx) {
  if (X < 2) fail(ErrorCode::kUsage, "phi_direct needs X >= 2");
  PrecisionGuard g(ctx);
  if (s.re <= 0) fail(ErrorCode::kDomain, "phi integral converges for Re s > 0 only");
  // On [n, n+1] the integrand is (x − n) x^{−s−1}; integrating exactly and
  // summing by parts leaves ∫_1^X x^{−s} dx − (Σ_{n≤X} n^{−s} − X^{1−s})/s.
  HComplex Hx;
  for (long n = X; n >= 1; --n) Hx += pow(HReal(n), -s);
  HReal Xr(X);
  HComplex X1s = pow(Xr, HComplex(1) - s);
  HComplex first;
  bool s_is_one = s.re == HReal(1) && s.im.is_zero();
  if (s_is_one) first = HComplex(log(Xr));
  else first = (X1s - HReal(1)) / (HComplex(1) - s);
  HComplex body = first - (Hx - X1s) / s;
  PhiDirect out;
  out.value = body + pow(Xr, -s) / (2 * s);
  HReal sig = s.re;
  out.tail_bound = abs(s + HReal(1)) * pow(Xr, -(sig + 1)) / (8 * (sig + 1));
  return out;
}

CsCheck cs_bound_check(const HComplex& s, const PrecisionCtx& ctx) {
  PrecisionGuard g(ctx);
  if (s.re <= HReal(0.5)) fail(ErrorCode::kDomain, "bound needs Re s > 1/2");
  CsCheck c;
  c.lhs = abs(zeta_minus_polar(s, ctx));
  c.rhs = sqrt(parseval_ceiling(ctx) / (2 * s.re - 1)) * abs(s);
  c.holds = c.lhs <= c.rhs;
  return c;
}

PolylogValue polylog(const HReal& alpha, const HComplex& z, const HReal& tol, const PrecisionCtx& ctx) {
  PrecisionGuard g(ctx);
  if (alpha < 0) fail(ErrorCode::kDomain, "polylog tail bound needs alpha >= 0");
  HReal r = abs(z);
  if (r >= 1) fail(ErrorCode::kTailBoundUnreachable, "polylog series needs |z| < 1");
  PolylogValue out;
  if (r.is_zero()) return out;
  constexpr long kMaxTerms = 10000000;
  HReal inv_one_minus_r = HReal(1) / (HReal(1) - r);
  HComplex zn(1);
  HReal rn(1);
  for (long n = 1; n <= kMaxTerms; ++n) {
    zn *= z;
    rn *= r;
    out.value += zn * exp(-alpha * log(HReal(n)));
    HReal bound = rn * r * inv_one_minus_r * exp(-alpha * log(HReal(n + 1)));
    if (bound < tol) {
      out.terms = n;
      out.tail_bound = bound;
      return out;
    }
  }
  fail(ErrorCode::kTailBoundUnreachable, "polylog needs more than 1e7 terms at this |z|");
}

std::vector<EnvelopeRow> envelope_ratios(double sigma, const std::vector<double>& ts, const PrecisionCtx& ctx) {
  double zeta_half, zeta_mhalf;
  {
    PrecisionCtx c20(20);
    zeta_half = zeta_em(HComplex(HReal(0.5)), c20).re.to_double();
    zeta_mhalf = zeta_em(HComplex(HReal(-0.5)), c20).re.to_double();
  }
  // Li_{1/2}(e^{−m}) = sqrt(π/m) + ζ(1/2) − ζ(−1/2) m + O(m²) for small m.
  auto li_half = [&](double r) {
    double m = -std::log(r);
    if (m < 0.01) return std::sqrt(M_PI / m) + zeta_half - zeta_mhalf * m;
    double acc = 0, rn = 1;
    for (long n = 1;; ++n) {
      rn *= r;
      double term = rn / std::sqrt(static_cast<double>(n));
      acc += term;
      if (term < 1e-17 * acc) break;
    }
    return acc;
  };
  std::vector<EnvelopeRow> rows;
  for (double t : ts) {
    HComplex s{HReal(sigma), HReal(t)};
    double za = abs(zeta_em(s, ctx)).to_double();
    double s2 = sigma * sigma + t * t;
    double env = li_half(std::sqrt(1 - (2 * sigma - 1) / s2));
    rows.push_back({t, za, env, za / env});
  }
  return rows;
}

std::string boundary_csv(int N, const std::vector<double>& ts, const CoeffTable& coeffs, const PrecisionCtx& ctx) {
  std::ostringstream os;
  os << "t,re_zeta,im_zeta,re_ZN,im_ZN,abs_error\n";
  os << std::setprecision(17);
  for (double t : ts) {
    std::complex<double> z = zeta_em(HComplex{HReal(0.5), HReal(t)}, ctx).to_complex();
    std::complex<double> zn = boundary_partial_sum(N, HReal(t), coeffs, ctx).to_complex();
    os << t << "," << z.real() << "," << z.imag() << "," << zn.real() << "," << zn.imag() << "," << std::abs(z - zn)
       << "\n";
  }
  return os.str();
}

}  // namespace zetaline
