#pragma once

#include <mpfr.h>
#include <gmpxx.h>

#include <climits>
#include <complex>
#include <concepts>
#include <string>
#include <string_view>
#include <vector>

#include "zetaline/error.hpp"

namespace zetaline {

constexpr int kMinDigits = 15;

// Upper bound on any working precision, in decimal digits. Widening past it
// raises kPrecisionCeiling.
int precision_ceiling_digits();
void set_precision_ceiling_digits(int digits);

mpfr_prec_t digits_to_bits(int digits);

struct PrecisionCtx {
  int digits = 50;

  PrecisionCtx() = default;
  explicit PrecisionCtx(int d);

  mpfr_prec_t bits() const { return digits_to_bits(digits); }
  PrecisionCtx widened(int extra) const { return PrecisionCtx(digits + extra); }
};

// Results of HReal arithmetic are rounded to the calling thread's working
// precision. Every worker thread installs its own guard.
mpfr_prec_t working_bits();

class PrecisionGuard {
 public:
  explicit PrecisionGuard(const PrecisionCtx& ctx);
  explicit PrecisionGuard(mpfr_prec_t bits);
  ~PrecisionGuard();
  PrecisionGuard(const PrecisionGuard&) = delete;
  PrecisionGuard& operator=(const PrecisionGuard&) = delete;

 private:
  mpfr_prec_t saved_;
};

class HReal {
 public:
  HReal() { mpfr_init2(v_, working_bits()); mpfr_set_zero(v_, 1); }
  HReal(int x) { mpfr_init2(v_, working_bits()); mpfr_set_si(v_, x, MPFR_RNDN); }
  HReal(long x) { mpfr_init2(v_, working_bits()); mpfr_set_si(v_, x, MPFR_RNDN); }
  HReal(long long x) { mpfr_init2(v_, working_bits()); mpfr_set_si(v_, static_cast<long>(x), MPFR_RNDN); }
  HReal(unsigned long x) { mpfr_init2(v_, working_bits()); mpfr_set_ui(v_, x, MPFR_RNDN); }
  HReal(double x) { mpfr_init2(v_, working_bits()); mpfr_set_d(v_, x, MPFR_RNDN); }
  explicit HReal(const mpz_class& z) { mpfr_init2(v_, working_bits()); mpfr_set_z(v_, z.get_mpz_t(), MPFR_RNDN); }
  explicit HReal(const mpq_class& q) { mpfr_init2(v_, working_bits()); mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN); }

  HReal(const HReal& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  HReal(HReal&& o) noexcept {
    *v_ = *o.v_;
    o.v_->_mpfr_d = nullptr;
  }
  HReal& operator=(const HReal& o) {
    if (this == &o) return *this;
    if (!live()) mpfr_init2(v_, mpfr_get_prec(o.v_));
    else mpfr_set_prec(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
    return *this;
  }
  HReal& operator=(HReal&& o) noexcept {
    std::swap(*v_, *o.v_);
    return *this;
  }
  ~HReal() {
    if (live()) mpfr_clear(v_);
  }

  // Parses a decimal string at the working precision.
  static HReal parse(std::string_view text);

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }
  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
  HReal rounded(mpfr_prec_t bits) const;

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  long exponent2() const { return is_zero() ? LONG_MIN : mpfr_get_exp(v_); }

  HReal operator-() const;
  HReal& operator+=(const HReal& o);
  HReal& operator-=(const HReal& o);
  HReal& operator*=(const HReal& o);
  HReal& operator/=(const HReal& o);

 private:
  bool live() const { return v_->_mpfr_d != nullptr; }
  mpfr_t v_;
};

HReal operator+(const HReal& a, const HReal& b);
HReal operator-(const HReal& a, const HReal& b);
HReal operator*(const HReal& a, const HReal& b);
HReal operator/(const HReal& a, const HReal& b);
HReal operator*(const HReal& a, const mpz_class& b);

namespace detail {
HReal add_si(const HReal& a, long b);
HReal mul_si(const HReal& a, long b);
HReal div_si(const HReal& a, long b);
HReal si_div(long a, const HReal& b);
HReal add_d(const HReal& a, double b);
HReal mul_d(const HReal& a, double b);
HReal div_d(const HReal& a, double b);
HReal d_div(double a, const HReal& b);
}  // namespace detail

template <std::integral I> HReal operator+(const HReal& a, I b) { return detail::add_si(a, static_cast<long>(b)); }
template <std::integral I> HReal operator+(I b, const HReal& a) { return detail::add_si(a, static_cast<long>(b)); }
template <std::integral I> HReal operator-(const HReal& a, I b) { return detail::add_si(a, -static_cast<long>(b)); }
template <std::integral I> HReal operator-(I b, const HReal& a) { return detail::add_si(-a, static_cast<long>(b)); }
template <std::integral I> HReal operator*(const HReal& a, I b) { return detail::mul_si(a, static_cast<long>(b)); }
template <std::integral I> HReal operator*(I b, const HReal& a) { return detail::mul_si(a, static_cast<long>(b)); }
template <std::integral I> HReal operator/(const HReal& a, I b) { return detail::div_si(a, static_cast<long>(b)); }
template <std::integral I> HReal operator/(I a, const HReal& b) { return detail::si_div(static_cast<long>(a), b); }
template <std::floating_point F> HReal operator+(const HReal& a, F b) { return detail::add_d(a, static_cast<double>(b)); }
template <std::floating_point F> HReal operator+(F b, const HReal& a) { return detail::add_d(a, static_cast<double>(b)); }
template <std::floating_point F> HReal operator-(const HReal& a, F b) { return detail::add_d(a, -static_cast<double>(b)); }
template <std::floating_point F> HReal operator-(F b, const HReal& a) { return detail::add_d(-a, static_cast<double>(b)); }
template <std::floating_point F> HReal operator*(const HReal& a, F b) { return detail::mul_d(a, static_cast<double>(b)); }
template <std::floating_point F> HReal operator*(F b, const HReal& a) { return detail::mul_d(a, static_cast<double>(b)); }
template <std::floating_point F> HReal operator/(const HReal& a, F b) { return detail::div_d(a, static_cast<double>(b)); }
template <std::floating_point F> HReal operator/(F a, const HReal& b) { return detail::d_div(static_cast<double>(a), b); }

inline int compare(const HReal& a, const HReal& b) { return mpfr_cmp(a.raw(), b.raw()); }
inline int compare(const HReal& a, long b) { return mpfr_cmp_si(a.raw(), b); }
inline int compare(const HReal& a, double b) { return mpfr_cmp_d(a.raw(), b); }

inline bool operator==(const HReal& a, const HReal& b) { return mpfr_equal_p(a.raw(), b.raw()) != 0; }
inline bool operator<(const HReal& a, const HReal& b) { return mpfr_less_p(a.raw(), b.raw()) != 0; }
inline bool operator<=(const HReal& a, const HReal& b) { return mpfr_lessequal_p(a.raw(), b.raw()) != 0; }
inline bool operator>(const HReal& a, const HReal& b) { return mpfr_greater_p(a.raw(), b.raw()) != 0; }
inline bool operator>=(const HReal& a, const HReal& b) { return mpfr_greaterequal_p(a.raw(), b.raw()) != 0; }

template <typename T>
  requires std::is_arithmetic_v<T>
int compare_scalar(const HReal& a, T b) {
  if constexpr (std::is_floating_point_v<T>) return compare(a, static_cast<double>(b));
  else return compare(a, static_cast<long>(b));
}
template <typename T> requires std::is_arithmetic_v<T> bool operator==(const HReal& a, T b) { return compare_scalar(a, b) == 0; }
template <typename T> requires std::is_arithmetic_v<T> bool operator<(const HReal& a, T b) { return compare_scalar(a, b) < 0; }
template <typename T> requires std::is_arithmetic_v<T> bool operator<=(const HReal& a, T b) { return compare_scalar(a, b) <= 0; }
template <typename T> requires std::is_arithmetic_v<T> bool operator>(const HReal& a, T b) { return compare_scalar(a, b) > 0; }
template <typename T> requires std::is_arithmetic_v<T> bool operator>=(const HReal& a, T b) { return compare_scalar(a, b) >= 0; }

HReal abs(const HReal& x);
HReal sqr(const HReal& x);
HReal sqrt(const HReal& x);
HReal exp(const HReal& x);
HReal expm1(const HReal& x);
HReal log(const HReal& x);
HReal log1p(const HReal& x);
HReal sin(const HReal& x);
HReal cos(const HReal& x);
void sin_cos(const HReal& x, HReal& s, HReal& c);
HReal atan(const HReal& x);
HReal atan2(const HReal& y, const HReal& x);
HReal hypot(const HReal& x, const HReal& y);
HReal pow(const HReal& x, const HReal& y);
HReal pow(const HReal& x, long n);
HReal floor(const HReal& x);
HReal ldexp(const HReal& x, long e);
HReal max(const HReal& a, const HReal& b);
HReal min(const HReal& a, const HReal& b);
HReal factorial(unsigned long n);
HReal const_pi();
HReal const_euler();

struct HComplex {
  HReal re;
  HReal im;

  HComplex() = default;
  HComplex(HReal r) : re(std::move(r)), im(0) {}
  HComplex(HReal r, HReal i) : re(std::move(r)), im(std::move(i)) {}
  HComplex(int r) : re(r), im(0) {}
  HComplex(double r) : re(r), im(0) {}
  HComplex(std::complex<double> z) : re(z.real()), im(z.imag()) {}

  std::complex<double> to_complex() const { return {re.to_double(), im.to_double()}; }
  HComplex operator-() const { return {-re, -im}; }
  HComplex& operator+=(const HComplex& o);
  HComplex& operator-=(const HComplex& o);
  HComplex& operator*=(const HComplex& o);
  HComplex& operator/=(const HComplex& o);
  HComplex& operator*=(const HReal& o);
};

HComplex operator+(const HComplex& a, const HComplex& b);
HComplex operator-(const HComplex& a, const HComplex& b);
HComplex operator*(const HComplex& a, const HComplex& b);
HComplex operator/(const HComplex& a, const HComplex& b);
HComplex operator*(const HComplex& a, const HReal& b);
HComplex operator*(const HReal& b, const HComplex& a);
HComplex operator/(const HComplex& a, const HReal& b);
HComplex operator+(const HComplex& a, const HReal& b);
HComplex operator-(const HComplex& a, const HReal& b);
HComplex operator*(const HComplex& a, const mpz_class& b);
template <std::integral I> HComplex operator*(const HComplex& a, I b) { return {a.re * b, a.im * b}; }
template <std::integral I> HComplex operator*(I b, const HComplex& a) { return {a.re * b, a.im * b}; }
template <std::integral I> HComplex operator/(const HComplex& a, I b) { return {a.re / b, a.im / b}; }
template <std::floating_point F> HComplex operator*(const HComplex& a, F b) { return {a.re * b, a.im * b}; }
template <typename T> requires std::is_arithmetic_v<T> HComplex operator+(const HComplex& a, T b) { return {a.re + b, a.im}; }
template <typename T> requires std::is_arithmetic_v<T> HComplex operator+(T b, const HComplex& a) { return {a.re + b, a.im}; }
template <typename T> requires std::is_arithmetic_v<T> HComplex operator-(const HComplex& a, T b) { return {a.re - b, a.im}; }
template <typename T> requires std::is_arithmetic_v<T> HComplex operator-(T b, const HComplex& a) { return {b - a.re, -a.im}; }
template <std::floating_point F> HComplex operator/(const HComplex& a, F b) { return {a.re / b, a.im / b}; }

HComplex conj(const HComplex& z);
HReal norm(const HComplex& z);
HReal abs(const HComplex& z);
HReal arg(const HComplex& z);
HComplex polar(const HReal& r, const HReal& theta);
HComplex exp(const HComplex& z);
HComplex log(const HComplex& z);
HComplex sqrt(const HComplex& z);
HComplex sin(const HComplex& z);
HComplex cos(const HComplex& z);
HComplex atan(const HComplex& z);
HComplex pow(const HComplex& z, const HComplex& w);
HComplex pow(const HComplex& z, long n);
// b^w for real b > 0.
HComplex pow(const HReal& b, const HComplex& w);
HComplex inv(const HComplex& z);

enum class Elem { kExp, kLog, kAtan, kSin, kCos, kSqrt, kPow };
Elem parse_elem(std::string_view name);

// Context-checked entry points: evaluated with guard bits and rounded to
// ctx precision. kPow takes the exponent as the second argument.
HReal elem(Elem fn, const HReal& x, const PrecisionCtx& ctx);
HReal elem(Elem fn, const HReal& x, const HReal& y, const PrecisionCtx& ctx);
HComplex elem(Elem fn, const HComplex& x, const PrecisionCtx& ctx);
HComplex elem(Elem fn, const HComplex& x, const HComplex& y, const PrecisionCtx& ctx);

mpz_class binom_exact(unsigned long n, unsigned long k);
// Row n of Pascal's triangle, binom(n, 0..n).
std::vector<mpz_class> binom_row(unsigned long n);

// "±d.ddd…e±xx" with exactly `digits` significant digits.
std::string to_decimal(const HReal& x, int digits);
HReal from_decimal(std::string_view text, const PrecisionCtx& ctx);

}  // namespace zetaline
