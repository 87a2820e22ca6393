#include "zetaline/disk_roots.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <json.hpp>

#include "zetaline/error.hpp"

namespace zetaline {

namespace {

constexpr int kDegreeCap = 400;

void check_N(int N, const CoeffTable& coeffs) {
  if (coeffs.family != Family::kCritical) fail(ErrorCode::kUsage, "f_N needs the critical coefficient family");
  if (N < 0 || N > coeffs.n_max) fail(ErrorCode::kInsufficientTable, "f_N needs 0 <= N <= n_max");
  if (N + 1 > kDegreeCap) fail(ErrorCode::kUsage, "f_N degree is capped at 400");
}

// Polynomial coefficients a_0..a_{N+1} of f_N, lowest first.
std::vector<HReal> poly(int N, const CoeffTable& coeffs) {
  std::vector<HReal> a(N + 2);
  a[0] = HReal(-1);
  for (int n = 0; n <= N; ++n) a[n + 1] = coeffs.at(n);
  return a;
}

void horner(const std::vector<HReal>& a, const HComplex& z, HComplex& p, HComplex& dp) {
  p = HComplex(a.back());
  dp = HComplex();
  for (int k = static_cast<int>(a.size()) - 2; k >= 0; --k) {
    dp = dp * z + p;
    p = p * z + a[k];
  }
}

std::complex<double> eval_double(const std::vector<double>& a, std::complex<double> z) {
  std::complex<double> p = a.back();
  for (int k = static_cast<int>(a.size()) - 2; k >= 0; --k) p = p * z + a[k];
  return p;
}

std::vector<double> poly_double(int N, const CoeffTable& coeffs) {
  std::vector<double> a(N + 2);
  a[0] = -1.0;
  for (int n = 0; n <= N; ++n) a[n + 1] = coeffs.at(n).to_double();
  return a;
}

}  // namespace

RootReport roots_fN(int N, const CoeffTable& coeffs, const PrecisionCtx& ctx, const std::vector<double>& radii) {
  check_N(N, coeffs);
  PrecisionGuard g(ctx);
  RootReport rep;
  rep.N = N;
  const int deg = N + 1;
  std::vector<HReal> a = poly(N, coeffs);
  if (a.back().is_zero()) fail(ErrorCode::kDomain, "leading coefficient of f_N vanishes");

  // Companion matrix of the monic polynomial.
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(deg, deg);
  double lead = a.back().to_double();
  for (int i = 1; i < deg; ++i) C(i, i - 1) = 1.0;
  for (int i = 0; i < deg; ++i) C(i, deg - 1) = -a[i].to_double() / lead;
  Eigen::EigenSolver<Eigen::MatrixXd> es(C, false);
  if (es.info() != Eigen::Success) fail(ErrorCode::kNonConvergence, "companion eigenvalues did not converge");
  std::vector<HComplex> z(deg);
  for (int i = 0; i < deg; ++i) z[i] = HComplex(es.eigenvalues()[i]);

  // Aberth–Ehrlich: z_k ← z_k − w_k/(1 − w_k Σ_{j≠k} 1/(z_k − z_j)), w = p/p'.
  HReal stop = pow(HReal(10), -static_cast<long>(ctx.digits * 9 / 10));
  std::vector<bool> done(deg, false);
  constexpr int kMaxIter = 200;
  int it = 0;
  for (; it < kMaxIter; ++it) {
    bool all = true;
    for (int k = 0; k < deg; ++k) {
      if (done[k]) continue;
      HComplex p, dp;
      horner(a, z[k], p, dp);
      if (p.re.is_zero() && p.im.is_zero()) {
        done[k] = true;
        continue;
      }
      HComplex w = p / dp;
      HComplex s;
      for (int j = 0; j < deg; ++j)
        if (j != k) s += inv(z[k] - z[j]);
      HComplex step = w / (HComplex(1) - w * s);
      z[k] -= step;
      if (abs(step) <= stop * max(abs(z[k]), HReal(1))) done[k] = true;
      else all = false;
    }
    if (all) break;
  }
  rep.iterations = it;
  rep.polished = it < kMaxIter;

  for (const auto& r : z) {
    HComplex p, dp;
    horner(a, r, p, dp);
    rep.residual_max = max(rep.residual_max, abs(p));
  }
  std::sort(z.begin(), z.end(), [](const HComplex& x, const HComplex& y) { return abs(x) < abs(y); });
  rep.all_roots = z;
  for (const auto& r : z)
    if (abs(r) < 1) rep.roots_in_disk.push_back(r);
  if (!rep.roots_in_disk.empty()) rep.min_modulus = abs(rep.roots_in_disk.front());
  for (double rad : radii) rep.winding_counts.emplace_back(HReal(rad), winding_count(N, HReal(rad), 256, coeffs));
  return rep;
}

int winding_count(int N, const HReal& radius, int nodes, const CoeffTable& coeffs) {
  check_N(N, coeffs);
  if (radius <= 0) fail(ErrorCode::kDomain, "winding radius must be positive");
  if (nodes < 8) fail(ErrorCode::kUsage, "winding count needs at least 8 nodes");
  const double r = radius.to_double();
  std::vector<double> a = poly_double(N, coeffs);
  std::vector<double> da(a.size() - 1);
  for (std::size_t k = 1; k < a.size(); ++k) da[k - 1] = static_cast<double>(k) * a[k];
  double dmax = 0;  // max |f_N'| on the circle, bounded by the coefficient sum
  for (std::size_t k = 0; k < da.size(); ++k) dmax += std::abs(da[k]) * std::pow(r, static_cast<double>(k));
  for (int n = nodes; n <= (1 << 22); n *= 2) {
    std::vector<std::complex<double>> v(n);
    double fmin = INFINITY;
    for (int i = 0; i < n; ++i) {
      v[i] = eval_double(a, std::polar(r, 2 * M_PI * i / n));
      fmin = std::min(fmin, std::abs(v[i]));
    }
    double spacing = 2 * M_PI * r / n;
    if (fmin <= 10 * spacing * dmax && n * 2 > (1 << 22))
      fail(ErrorCode::kCircleTooClose, "a zero of f_N lies too close to the circle");
    double total = 0;
    bool coarse = false;
    for (int i = 0; i < n; ++i) {
      double d = std::arg(v[(i + 1) % n] / v[i]);
      if (std::abs(d) >= M_PI / 2) coarse = true;
      total += d;
    }
    // Clearance: no zero within 10 spacings, so |f_N| ≥ 10·spacing·max|f'| suffices.
    if (coarse || fmin <= 10 * spacing * dmax) continue;
    return static_cast<int>(std::lround(total / (2 * M_PI)));
  }
  fail(ErrorCode::kCircleTooClose, "a zero of f_N lies too close to the circle");
}

TailCertificate tail_radius_certificate(int N, const HReal& radius, const CoeffTable& coeffs, const PrecisionCtx& ctx) {
  check_N(N, coeffs);
  PrecisionGuard g(ctx);
  if (radius <= 0 || radius >= 1) fail(ErrorCode::kDomain, "certificate radius must lie in (0, 1)");
  HReal sq;
  for (int n = 0; n <= N; ++n) sq += sqr(coeffs.at(n));
  HReal tail = max(parseval_ceiling(ctx) - sq, HReal(0)) + pow(HReal(10), -static_cast<long>(coeffs.digits));
  TailCertificate c;
  c.bound = sqrt(tail) * pow(radius, static_cast<long>(N + 2)) / sqrt(HReal(1) - radius);
  // Minimum of |f_N| over 4096 circle nodes, less a Lipschitz allowance for
  // the gaps between them.
  std::vector<HReal> a = poly(N, coeffs);
  const int nodes = 4096;
  HReal fmin(INFINITY), lip;
  HReal rk(1);
  for (int k = 1; k < static_cast<int>(a.size()); ++k) {
    lip += HReal(k) * abs(a[k]) * rk;
    rk *= radius;
  }
  for (int i = 0; i < nodes; ++i) {
    HComplex z = polar(radius, 2 * const_pi() * i / nodes);
    HComplex p, dp;
    horner(a, z, p, dp);
    fmin = min(fmin, abs(p));
  }
  HReal gap = const_pi() * radius / nodes;
  c.min_abs_fN = max(fmin - lip * gap, HReal(0));
  c.certified = c.min_abs_fN > c.bound;
  return c;
}

std::string to_json(const RootReport& r) {
  nlohmann::ordered_json j;
  j["schema_version"] = 1;
  j["N"] = r.N;
  nlohmann::ordered_json roots = nlohmann::ordered_json::array();
  for (const auto& z : r.roots_in_disk) roots.push_back({to_decimal(z.re, 30), to_decimal(z.im, 30)});
  j["roots_in_disk"] = roots;
  j["min_modulus"] = r.min_modulus ? nlohmann::ordered_json(to_decimal(*r.min_modulus, 30)) : nlohmann::ordered_json();
  nlohmann::ordered_json wc = nlohmann::ordered_json::array();
  for (const auto& [rad, cnt] : r.winding_counts) wc.push_back({{"radius", to_decimal(rad, 15)}, {"count", cnt}});
  j["winding_counts"] = wc;
  j["residual_max"] = to_decimal(r.residual_max, 6);
  j["polished"] = r.polished;
  j["iterations"] = r.iterations;
  return j.dump(2);
}

std::string to_csv(const RootReport& r) {
  std::ostringstream os;
  os << "re,im,abs\n";
  for (const auto& z : r.roots_in_disk)
    os << to_decimal(z.re, 20) << "," << to_decimal(z.im, 20) << "," << to_decimal(abs(z), 20) << "\n";
  return os.str();
}

}  // namespace zetaline
