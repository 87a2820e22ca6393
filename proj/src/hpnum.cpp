#include "zetaline/hpnum.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <memory>

namespace zetaline {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUsage: return "usage";
    case ErrorCode::kDomain: return "domain";
    case ErrorCode::kPole: return "pole";
    case ErrorCode::kRegion: return "region";
    case ErrorCode::kPrecisionCeiling: return "precision-ceiling";
    case ErrorCode::kInsufficientPrecision: return "insufficient-precision";
    case ErrorCode::kInsufficientTable: return "insufficient-table";
    case ErrorCode::kToleranceNotMet: return "tolerance-not-met";
    case ErrorCode::kTailBoundUnreachable: return "tail-bound-unreachable";
    case ErrorCode::kSlowConvergence: return "slow-convergence";
    case ErrorCode::kNonConvergence: return "non-convergence";
    case ErrorCode::kContourHitsPole: return "contour-hits-pole";
    case ErrorCode::kCircleTooClose: return "circle-too-close-to-root";
    case ErrorCode::kSingularityIsolation: return "singularity-isolation";
    case ErrorCode::kIo: return "io";
  }
  return "unknown";
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUsage:
    case ErrorCode::kDomain:
    case ErrorCode::kPole:
    case ErrorCode::kRegion:
    case ErrorCode::kIo:
      return 2;
    default:
      return 3;
  }
}

void fail(ErrorCode code, const std::string& what) {
  throw NumericError(code, std::string(error_name(code)) + ": " + what);
}

namespace {

std::atomic<int> g_ceiling_digits{5000};
thread_local mpfr_prec_t t_working_bits = digits_to_bits(50);

constexpr mpfr_prec_t kGuardBits = 24;

// mpfr_get_str/mpfr_free_str owner.
struct MpfrStr {
  char* p = nullptr;
  ~MpfrStr() {
    if (p) mpfr_free_str(p);
  }
};

}  // namespace

int precision_ceiling_digits() { return g_ceiling_digits.load(); }
void set_precision_ceiling_digits(int digits) { g_ceiling_digits.store(digits); }

mpfr_prec_t digits_to_bits(int digits) {
  return static_cast<mpfr_prec_t>(std::ceil(digits * 3.321928094887362)) + 8;
}

PrecisionCtx::PrecisionCtx(int d) : digits(d) {
  if (d < kMinDigits) fail(ErrorCode::kUsage, "digits must be >= 15, got " + std::to_string(d));
  if (d > precision_ceiling_digits())
    fail(ErrorCode::kPrecisionCeiling,
         "requested " + std::to_string(d) + " digits exceeds ceiling " +
             std::to_string(precision_ceiling_digits()));
}

mpfr_prec_t working_bits() { return t_working_bits; }

PrecisionGuard::PrecisionGuard(const PrecisionCtx& ctx) : saved_(t_working_bits) {
  t_working_bits = ctx.bits();
}
PrecisionGuard::PrecisionGuard(mpfr_prec_t bits) : saved_(t_working_bits) {
  t_working_bits = bits;
}
PrecisionGuard::~PrecisionGuard() { t_working_bits = saved_; }

// ---- HReal ----

HReal HReal::parse(std::string_view text) {
  HReal r;
  std::string s(text);
  if (s.empty() || mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0)
    fail(ErrorCode::kUsage, "not a decimal number: '" + s + "'");
  return r;
}

HReal HReal::rounded(mpfr_prec_t bits) const {
  PrecisionGuard g(bits);
  HReal r;
  mpfr_set(r.v_, v_, MPFR_RNDN);
  return r;
}

HReal HReal::operator-() const {
  HReal r;
  mpfr_neg(r.raw(), v_, MPFR_RNDN);
  return r;
}

HReal& HReal::operator+=(const HReal& o) { return *this = *this + o; }
HReal& HReal::operator-=(const HReal& o) { return *this = *this - o; }
HReal& HReal::operator*=(const HReal& o) { return *this = *this * o; }
HReal& HReal::operator/=(const HReal& o) { return *this = *this / o; }

#define ZL_BINOP(op, fn)                                  \
  HReal operator op(const HReal& a, const HReal& b) {     \
    HReal r;                                              \
    fn(r.raw(), a.raw(), b.raw(), MPFR_RNDN);             \
    return r;                                             \
  }
ZL_BINOP(+, mpfr_add)
ZL_BINOP(-, mpfr_sub)
ZL_BINOP(*, mpfr_mul)
ZL_BINOP(/, mpfr_div)
#undef ZL_BINOP

HReal operator*(const HReal& a, const mpz_class& b) {
  HReal r;
  mpfr_mul_z(r.raw(), a.raw(), b.get_mpz_t(), MPFR_RNDN);
  return r;
}

namespace detail {
HReal add_si(const HReal& a, long b) { HReal r; mpfr_add_si(r.raw(), a.raw(), b, MPFR_RNDN); return r; }
HReal mul_si(const HReal& a, long b) { HReal r; mpfr_mul_si(r.raw(), a.raw(), b, MPFR_RNDN); return r; }
HReal div_si(const HReal& a, long b) { HReal r; mpfr_div_si(r.raw(), a.raw(), b, MPFR_RNDN); return r; }
HReal si_div(long a, const HReal& b) { HReal r; mpfr_si_div(r.raw(), a, b.raw(), MPFR_RNDN); return r; }
HReal add_d(const HReal& a, double b) { HReal r; mpfr_add_d(r.raw(), a.raw(), b, MPFR_RNDN); return r; }
HReal mul_d(const HReal& a, double b) { HReal r; mpfr_mul_d(r.raw(), a.raw(), b, MPFR_RNDN); return r; }
HReal div_d(const HReal& a, double b) { HReal r; mpfr_div_d(r.raw(), a.raw(), b, MPFR_RNDN); return r; }
HReal d_div(double a, const HReal& b) { HReal r; mpfr_d_div(r.raw(), a, b.raw(), MPFR_RNDN); return r; }
}  // namespace detail

#define ZL_UNARY(name, fn)                 \
  HReal name(const HReal& x) {             \
    HReal r;                               \
    fn(r.raw(), x.raw(), MPFR_RNDN);       \
    return r;                              \
  }
ZL_UNARY(abs, mpfr_abs)
ZL_UNARY(sqr, mpfr_sqr)
ZL_UNARY(exp, mpfr_exp)
ZL_UNARY(expm1, mpfr_expm1)
ZL_UNARY(sin, mpfr_sin)
ZL_UNARY(cos, mpfr_cos)
ZL_UNARY(atan, mpfr_atan)
#undef ZL_UNARY

HReal sqrt(const HReal& x) {
  if (x.sign() < 0) fail(ErrorCode::kDomain, "sqrt of negative real");
  HReal r;
  mpfr_sqrt(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

HReal log(const HReal& x) {
  if (x.is_zero()) fail(ErrorCode::kDomain, "log(0)");
  if (x.sign() < 0) fail(ErrorCode::kDomain, "log of negative real");
  HReal r;
  mpfr_log(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

HReal log1p(const HReal& x) {
  if (x <= -1) fail(ErrorCode::kDomain, "log1p argument <= -1");
  HReal r;
  mpfr_log1p(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

void sin_cos(const HReal& x, HReal& s, HReal& c) {
  HReal ss, cc;
  mpfr_sin_cos(ss.raw(), cc.raw(), x.raw(), MPFR_RNDN);
  s = std::move(ss);
  c = std::move(cc);
}

HReal atan2(const HReal& y, const HReal& x) {
  HReal r;
  mpfr_atan2(r.raw(), y.raw(), x.raw(), MPFR_RNDN);
  return r;
}

HReal hypot(const HReal& x, const HReal& y) {
  HReal r;
  mpfr_hypot(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
  return r;
}

HReal pow(const HReal& x, const HReal& y) {
  if (x.is_zero() && y.sign() <= 0) fail(ErrorCode::kDomain, "0 to a non-positive power");
  HReal r;
  mpfr_pow(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
  return r;
}

HReal pow(const HReal& x, long n) {
  HReal r;
  mpfr_pow_si(r.raw(), x.raw(), n, MPFR_RNDN);
  return r;
}

HReal floor(const HReal& x) {
  HReal r;
  mpfr_floor(r.raw(), x.raw());
  return r;
}

HReal ldexp(const HReal& x, long e) {
  HReal r;
  mpfr_mul_2si(r.raw(), x.raw(), e, MPFR_RNDN);
  return r;
}

HReal max(const HReal& a, const HReal& b) { return a < b ? b : a; }
HReal min(const HReal& a, const HReal& b) { return b < a ? b : a; }

HReal factorial(unsigned long n) {
  HReal r;
  mpfr_fac_ui(r.raw(), n, MPFR_RNDN);
  return r;
}

HReal const_pi() {
  HReal r;
  mpfr_const_pi(r.raw(), MPFR_RNDN);
  return r;
}

HReal const_euler() {
  HReal r;
  mpfr_const_euler(r.raw(), MPFR_RNDN);
  return r;
}

// ---- HComplex ----

HComplex& HComplex::operator+=(const HComplex& o) { return *this = *this + o; }
HComplex& HComplex::operator-=(const HComplex& o) { return *this = *this - o; }
HComplex& HComplex::operator*=(const HComplex& o) { return *this = *this * o; }
HComplex& HComplex::operator/=(const HComplex& o) { return *this = *this / o; }
HComplex& HComplex::operator*=(const HReal& o) { return *this = *this * o; }

HComplex operator+(const HComplex& a, const HComplex& b) { return {a.re + b.re, a.im + b.im}; }
HComplex operator-(const HComplex& a, const HComplex& b) { return {a.re - b.re, a.im - b.im}; }
HComplex operator*(const HComplex& a, const HComplex& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
HComplex operator/(const HComplex& a, const HComplex& b) {
  HReal d = sqr(b.re) + sqr(b.im);
  if (d.is_zero()) fail(ErrorCode::kDomain, "complex division by zero");
  return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}
HComplex operator*(const HComplex& a, const HReal& b) { return {a.re * b, a.im * b}; }
HComplex operator*(const HReal& b, const HComplex& a) { return {a.re * b, a.im * b}; }
HComplex operator/(const HComplex& a, const HReal& b) { return {a.re / b, a.im / b}; }
HComplex operator+(const HComplex& a, const HReal& b) { return {a.re + b, a.im}; }
HComplex operator-(const HComplex& a, const HReal& b) { return {a.re - b, a.im}; }
HComplex operator*(const HComplex& a, const mpz_class& b) { return {a.re * b, a.im * b}; }

HComplex conj(const HComplex& z) { return {z.re, -z.im}; }
HReal norm(const HComplex& z) { return sqr(z.re) + sqr(z.im); }
HReal abs(const HComplex& z) { return hypot(z.re, z.im); }
HReal arg(const HComplex& z) { return atan2(z.im, z.re); }

HComplex polar(const HReal& r, const HReal& theta) {
  HReal s, c;
  sin_cos(theta, s, c);
  return {r * c, r * s};
}

HComplex exp(const HComplex& z) { return polar(exp(z.re), z.im); }

HComplex log(const HComplex& z) {
  if (z.re.is_zero() && z.im.is_zero()) fail(ErrorCode::kDomain, "log(0)");
  return {log(abs(z)), arg(z)};
}

HComplex sqrt(const HComplex& z) {
  if (z.re.is_zero() && z.im.is_zero()) return HComplex();
  // Principal branch, cut on the negative real axis.
  HReal m = abs(z);
  HReal a = sqrt((m + abs(z.re)) / 2);
  if (z.re.sign() >= 0) return {a, z.im / (2 * a)};
  HReal b = z.im.sign() < 0 ? -a : a;
  return {abs(z.im) / (2 * a), b};
}

HComplex sin(const HComplex& z) {
  HReal s, c;
  sin_cos(z.re, s, c);
  HReal sh, ch;
  mpfr_sinh_cosh(sh.raw(), ch.raw(), z.im.raw(), MPFR_RNDN);
  return {s * ch, c * sh};
}

HComplex cos(const HComplex& z) {
  HReal s, c;
  sin_cos(z.re, s, c);
  HReal sh, ch;
  mpfr_sinh_cosh(sh.raw(), ch.raw(), z.im.raw(), MPFR_RNDN);
  return {c * ch, -(s * sh)};
}

HComplex atan(const HComplex& z) {
  // atan z = (i/2) (log(1 - iz) - log(1 + iz))
  HComplex iz{-z.im, z.re};
  HComplex d = log(1 - iz) - log(1 + iz);
  return {-d.im / 2, d.re / 2};
}

HComplex inv(const HComplex& z) { return HComplex(1) / z; }

HComplex pow(const HComplex& z, const HComplex& w) {
  if (z.re.is_zero() && z.im.is_zero()) {
    if (w.re.sign() > 0) return HComplex();
    fail(ErrorCode::kDomain, "0 to a power with non-positive real part");
  }
  return exp(w * log(z));
}

HComplex pow(const HComplex& z, long n) {
  if (n < 0) return inv(pow(z, -n));
  HComplex r(1), b = z;
  while (n > 0) {
    if (n & 1) r = r * b;
    n >>= 1;
    if (n) b = b * b;
  }
  return r;
}

HComplex pow(const HReal& b, const HComplex& w) {
  if (b.sign() <= 0) fail(ErrorCode::kDomain, "real base must be positive");
  HReal lb = log(b);
  return polar(exp(w.re * lb), w.im * lb);
}

// ---- context-checked entry points ----

Elem parse_elem(std::string_view name) {
  if (name == "exp") return Elem::kExp;
  if (name == "log") return Elem::kLog;
  if (name == "atan") return Elem::kAtan;
  if (name == "sin") return Elem::kSin;
  if (name == "cos") return Elem::kCos;
  if (name == "sqrt") return Elem::kSqrt;
  if (name == "pow") return Elem::kPow;
  fail(ErrorCode::kUsage, "unknown elementary function '" + std::string(name) + "'");
}

namespace {

mpfr_prec_t checked_inner_bits(const PrecisionCtx& ctx) {
  mpfr_prec_t inner = ctx.bits() + kGuardBits;
  if (inner > digits_to_bits(precision_ceiling_digits()) + kGuardBits)
    fail(ErrorCode::kPrecisionCeiling, "working precision above ceiling");
  return inner;
}

}  // namespace

HReal elem(Elem fn, const HReal& x, const PrecisionCtx& ctx) {
  HReal r;
  {
    PrecisionGuard g(checked_inner_bits(ctx));
    switch (fn) {
      case Elem::kExp: r = exp(x); break;
      case Elem::kLog: r = log(x); break;
      case Elem::kAtan: r = atan(x); break;
      case Elem::kSin: r = sin(x); break;
      case Elem::kCos: r = cos(x); break;
      case Elem::kSqrt: r = sqrt(x); break;
      case Elem::kPow: fail(ErrorCode::kUsage, "pow needs an exponent");
    }
  }
  return r.rounded(ctx.bits());
}

HReal elem(Elem fn, const HReal& x, const HReal& y, const PrecisionCtx& ctx) {
  if (fn != Elem::kPow) return elem(fn, x, ctx);
  HReal r;
  {
    PrecisionGuard g(checked_inner_bits(ctx));
    r = pow(x, y);
  }
  return r.rounded(ctx.bits());
}

HComplex elem(Elem fn, const HComplex& x, const PrecisionCtx& ctx) {
  HComplex r;
  {
    PrecisionGuard g(checked_inner_bits(ctx));
    switch (fn) {
      case Elem::kExp: r = exp(x); break;
      case Elem::kLog: r = log(x); break;
      case Elem::kAtan: r = atan(x); break;
      case Elem::kSin: r = sin(x); break;
      case Elem::kCos: r = cos(x); break;
      case Elem::kSqrt: r = sqrt(x); break;
      case Elem::kPow: fail(ErrorCode::kUsage, "pow needs an exponent");
    }
  }
  return {r.re.rounded(ctx.bits()), r.im.rounded(ctx.bits())};
}

HComplex elem(Elem fn, const HComplex& x, const HComplex& y, const PrecisionCtx& ctx) {
  if (fn != Elem::kPow) return elem(fn, x, ctx);
  HComplex r;
  {
    PrecisionGuard g(checked_inner_bits(ctx));
    r = pow(x, y);
  }
  return {r.re.rounded(ctx.bits()), r.im.rounded(ctx.bits())};
}

mpz_class binom_exact(unsigned long n, unsigned long k) {
  mpz_class r;
  if (k > n) return r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

std::vector<mpz_class> binom_row(unsigned long n) {
  std::vector<mpz_class> row(n + 1);
  row[0] = 1;
  for (unsigned long k = 1; k <= n; ++k) row[k] = row[k - 1] * (n - k + 1) / k;
  return row;
}

std::string to_decimal(const HReal& x, int digits) {
  if (mpfr_nan_p(x.raw())) return "nan";
  if (mpfr_inf_p(x.raw())) return x.sign() < 0 ? "-inf" : "inf";
  std::string out;
  if (x.is_zero()) {
    out = "0";
    if (digits > 1) out += "." + std::string(digits - 1, '0');
    return out + "e+00";
  }
  mpfr_exp_t e = 0;
  MpfrStr s;
  s.p = mpfr_get_str(nullptr, &e, 10, static_cast<size_t>(digits), x.raw(), MPFR_RNDN);
  std::string m(s.p);
  if (m[0] == '-') {
    out = "-";
    m.erase(0, 1);
  }
  out += m[0];
  if (m.size() > 1) out += "." + m.substr(1);
  long e10 = static_cast<long>(e) - 1;
  out += e10 < 0 ? "e-" : "e+";
  std::string es = std::to_string(e10 < 0 ? -e10 : e10);
  if (es.size() < 2) es = "0" + es;
  return out + es;
}

HReal from_decimal(std::string_view text, const PrecisionCtx& ctx) {
  PrecisionGuard g(ctx);
  return HReal::parse(text);
}

}  // namespace zetaline
