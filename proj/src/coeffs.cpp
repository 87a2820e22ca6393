#include "zetaline/coeffs.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "zetaline/error.hpp"
#include "zetaline/parallel.hpp"

namespace zetaline {

namespace {

constexpr int kMinAdvertised = 15;

HReal ten_pow(long e) { return pow(HReal(10), e); }

// Σ_{k=1}^n C(n−1,k−1) (−1)^{n−k} c_k and the matching Σ C(n−1,k−1) e_k,
// with c and e indexed from k = 1 at position 1.
void binomial_row_sum(int n, const std::vector<HReal>& c, const std::vector<HReal>& e, HReal& value, HReal& err) {
  std::vector<mpz_class> row = binom_row(static_cast<unsigned long>(n - 1));
  HReal acc, eacc, biggest;
  for (int k = 1; k <= n; ++k) {
    HReal b(row[k - 1]);
    HReal term = b * c[k];
    biggest = max(biggest, abs(term));
    if ((n - k) % 2) acc -= term;
    else acc += term;
    if (!e.empty()) eacc += b * e[k];
  }
  value = acc;
  err = eacc + biggest * ten_pow(-static_cast<long>(working_bits() / 3.3219));
}

int advertised_digits(int input_digits, int n_max) {
  int d = input_digits - coeff_reserve_digits(n_max);
  if (d < kMinAdvertised)
    fail(ErrorCode::kInsufficientPrecision,
         "coefficient table would keep only " + std::to_string(d) + " digits; raise --digits to at least " +
             std::to_string(kMinAdvertised + coeff_reserve_digits(n_max)));
  return d;
}

}  // namespace

const char* family_name(Family f) {
  switch (f) {
    case Family::kCritical:
      return "critical";
    case Family::kLine:
      return "line";
    case Family::kPower:
      return "power";
  }
  return "?";
}

HReal CoeffTable::at(int n) const {
  if (n < n_min || n > n_max) {
    if (family == Family::kPower && n < -k) return HReal(0);
    if (family == Family::kLine && n < 0 && sigma0 > 1) return HReal(0);
    fail(ErrorCode::kInsufficientTable, "coefficient index " + std::to_string(n) + " outside table");
  }
  return values[n - n_min];
}

int coeff_reserve_digits(int n_max) { return static_cast<int>(std::ceil(0.15 * std::max(0, n_max))); }

CoeffTable ell(int n_max, const StieltjesTable& gammas, const PrecisionCtx& ctx) {
  if (n_max < 0) fail(ErrorCode::kUsage, "n_max must be >= 0");
  if (gammas.k_max < n_max) fail(ErrorCode::kInsufficientTable, "Stieltjes table shorter than n_max");
  CoeffTable tab;
  tab.family = Family::kCritical;
  tab.n_min = -1;
  tab.n_max = n_max;
  tab.source_digits = gammas.digits;
  tab.digits = advertised_digits(std::min(ctx.digits, gammas.digits), n_max);
  PrecisionGuard g(ctx);
  // ℓ_n = Σ C(n−1,k−1)(−1)^{n−k} γ_k/k!
  std::vector<HReal> c(n_max + 1), e(n_max + 1);
  for (int k = 1; k <= n_max; ++k) {
    HReal fact = factorial(static_cast<unsigned long>(k));
    c[k] = gammas.gammas[k] / fact;
    e[k] = gammas.abs_error[k] / fact;
  }
  tab.values.assign(n_max + 2, HReal());
  tab.abs_error.assign(n_max + 2, HReal());
  tab.values[0] = HReal(-1);
  tab.values[1] = gammas.gammas[0] - 1;
  tab.abs_error[1] = gammas.abs_error[0];
  parallel_for(n_max, [&](std::size_t i) {
    int n = static_cast<int>(i) + 1;
    binomial_row_sum(n, c, e, tab.values[n + 1], tab.abs_error[n + 1]);
  });
  return tab;
}

CoeffTable ell_sigma(const HReal& sigma0, int n_min, int n_max, const PrecisionCtx& ctx) {
  if (sigma0 <= HReal(0.5)) fail(ErrorCode::kDomain, "ell_sigma needs sigma0 > 1/2; use ell for the critical line");
  if (sigma0 == HReal(1)) fail(ErrorCode::kDomain, "sigma0 = 1 is excluded: zeta(1 + it) is not in L2(mu)");
  if (n_min > n_max) fail(ErrorCode::kUsage, "n_min > n_max");
  CoeffTable tab;
  tab.family = Family::kLine;
  tab.sigma0 = sigma0;
  tab.n_min = n_min;
  tab.n_max = n_max;
  tab.digits = ctx.digits;
  tab.source_digits = ctx.digits;
  int K = std::max(n_max, 0);
  PrecisionCtx wctx = ctx.widened(coeff_reserve_digits(K) + 5);
  PrecisionGuard g(wctx);
  bool strip = sigma0 < 1;
  HReal d = sigma0 - HReal(0.5);
  HReal rho = (sigma0 - HReal(1.5)) / d;  // (σ0 − 3/2)/(σ0 − 1/2)
  std::vector<HReal> errs;
  std::vector<HComplex> a = entire_taylor_auto(HComplex(sigma0 + HReal(0.5)), HReal(3), K, wctx, &errs);
  // c_k = (−1)^k · (entire-part Taylor coefficient) so that ℓ_n = Σ C(n−1,k−1)(−1)^{n−k} c_k.
  std::vector<HReal> c(K + 1), e(K + 1);
  for (int k = 1; k <= K; ++k) {
    c[k] = k % 2 ? -a[k].re : a[k].re;
    e[k] = errs[k];
  }
  tab.values.assign(n_max - n_min + 1, HReal());
  tab.abs_error.assign(n_max - n_min + 1, HReal());
  parallel_for(tab.values.size(), [&](std::size_t i) {
    int n = n_min + static_cast<int>(i);
    HReal v, err;
    if (n < 0) {
      // (−1)^n/(σ0 − 1/2)² · ρ^{n−1} inside the strip, zero beyond it.
      if (strip) {
        v = pow(rho, static_cast<long>(n - 1)) / (d * d);
        if (n % 2) v = -v;
      }
    } else if (n == 0) {
      // ζ(σ0 + 1/2) = a_0 + 1/(σ0 − 1/2)
      v = strip ? a[0].re - HReal(1) / (HReal(1.5) - sigma0) : a[0].re + HReal(1) / d;
      err = errs[0];
    } else {
      binomial_row_sum(n, c, e, v, err);
      if (!strip) {
        // Pole part of ζ^(k)(σ0 + 1/2)/k! summed in closed form.
        HReal pole = pow(rho, static_cast<long>(n - 1)) / (d * d);
        if (n % 2 == 0) pole = -pole;
        v += pole;
      }
    }
    tab.values[i] = v.rounded(ctx.bits());
    tab.abs_error[i] = err.rounded(ctx.bits());
  });
  return tab;
}

CoeffTable ell_power(int k, int n_min, int n_max, const LaurentTable& lambdas, const PrecisionCtx& ctx) {
  if (k < 1) fail(ErrorCode::kUsage, "power k must be >= 1");
  if (lambdas.k != k) fail(ErrorCode::kInsufficientTable, "Laurent table is for a different power");
  if (lambdas.m_max < n_max + k) fail(ErrorCode::kInsufficientTable, "Laurent table needs m_max >= n_max + k");
  if (n_min > n_max) fail(ErrorCode::kUsage, "n_min > n_max");
  CoeffTable tab;
  tab.family = Family::kPower;
  tab.k = k;
  tab.n_min = n_min;
  tab.n_max = n_max;
  tab.source_digits = lambdas.digits;
  tab.digits = advertised_digits(std::min(ctx.digits, lambdas.digits), n_max);
  PrecisionGuard g(ctx);
  int M = n_max + k;
  std::vector<HReal> q(M + 1);  // λ_{m,k}/m!
  for (int m = 0; m <= M; ++m) q[m] = lambdas.lambdas[m] / factorial(static_cast<unsigned long>(m));
  tab.values.assign(n_max - n_min + 1, HReal());
  tab.abs_error.assign(n_max - n_min + 1, HReal());
  parallel_for(tab.values.size(), [&](std::size_t i) {
    int n = n_min + static_cast<int>(i);
    HReal v;
    if (n >= 1) {
      std::vector<HReal> c(n + 1);
      for (int j = 1; j <= n; ++j) c[j] = j % 2 ? -q[j + k] : q[j + k];
      HReal err;
      binomial_row_sum(n, c, {}, v, err);
      tab.abs_error[i] = err;
    } else if (n >= -k) {
      // (−1)^k Σ_{j=0}^{k+n} C(k−j, −n) (−1)^j λ_{j,k}/j!
      for (int j = 0; j <= k + n; ++j) {
        HReal term = HReal(binom_exact(static_cast<unsigned long>(k - j), static_cast<unsigned long>(-n))) * q[j];
        if (j % 2) v -= term;
        else v += term;
      }
      if (k % 2) v = -v;
    }
    tab.values[i] = v;
  });
  return tab;
}

std::vector<HReal> stieltjes_over_factorial_from_ell(const CoeffTable& critical) {
  if (critical.family != Family::kCritical) fail(ErrorCode::kUsage, "needs the critical family");
  int N = critical.n_max;
  std::vector<HReal> ellk(N + 1);
  for (int k = 1; k <= N; ++k) ellk[k] = critical.at(k);
  std::vector<HReal> out(N);
  for (int n = 1; n <= N; ++n) {
    std::vector<mpz_class> row = binom_row(static_cast<unsigned long>(n - 1));
    HReal acc;
    for (int k = 1; k <= n; ++k) acc += HReal(row[k - 1]) * ellk[k];
    out[n - 1] = acc;
  }
  return out;
}

DecayDiagnostics decay_diagnostics(const CoeffTable& table) {
  if (table.n_max < 50) fail(ErrorCode::kUsage, "decay diagnostics need n_max >= 50");
  DecayDiagnostics d;
  HReal s1, s2;
  for (int n = 0; n <= table.n_max; ++n) {
    HReal v = n >= table.n_min ? table.values[n - table.n_min] : HReal(0);
    s1 += abs(v);
    s2 += sqr(v);
    d.abs_partial_sums.push_back(s1);
    d.sq_partial_sums.push_back(s2);
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int cnt = 0;
  for (int n = std::max(1, table.n_max / 2); n <= table.n_max; ++n) {
    HReal v = abs(table.at(n));
    if (v.is_zero()) continue;
    double x = std::log(static_cast<double>(n));
    double y = log(v).to_double();
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++cnt;
  }
  double slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
  d.alpha_fit = HReal(-slope);
  return d;
}

HReal parseval_ceiling(const PrecisionCtx& ctx) {
  PrecisionGuard g(ctx);
  return log(2 * const_pi()) - const_euler() - 1;
}

std::string to_json(const CoeffTable& table) {
  nlohmann::ordered_json j;
  j["schema_version"] = 1;
  j["family"] = family_name(table.family);
  if (table.family == Family::kLine) j["sigma0"] = to_decimal(table.sigma0, std::min(table.digits, 40));
  if (table.family == Family::kPower) j["k"] = table.k;
  j["digits"] = table.digits;
  j["source_digits"] = table.source_digits;
  j["provenance"] = table.provenance == Provenance::kFormula ? "formula" : "quadrature";
  nlohmann::ordered_json vals = nlohmann::ordered_json::array();
  for (int n = table.n_min; n <= table.n_max; ++n) {
    nlohmann::ordered_json row{{"n", n}, {"value", to_decimal(table.values[n - table.n_min], table.digits)}};
    if (!table.abs_error.empty()) row["abs_error"] = to_decimal(table.abs_error[n - table.n_min], 3);
    vals.push_back(row);
  }
  j["values"] = vals;
  return j.dump(1) + "\n";
}

CoeffTable coeff_table_from_json(const std::string& text, const PrecisionCtx& ctx) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    fail(ErrorCode::kIo, std::string("bad coefficient JSON: ") + e.what());
  }
  if (j.value("schema_version", 0) != 1) fail(ErrorCode::kIo, "unsupported coefficient schema");
  CoeffTable t;
  std::string fam = j.at("family");
  t.family = fam == "critical" ? Family::kCritical : fam == "line" ? Family::kLine : Family::kPower;
  if (t.family == Family::kLine) t.sigma0 = from_decimal(j.at("sigma0").get<std::string>(), ctx);
  if (t.family == Family::kPower) t.k = j.at("k");
  t.digits = j.at("digits");
  t.source_digits = j.value("source_digits", t.digits);
  t.provenance = j.value("provenance", "formula") == "formula" ? Provenance::kFormula : Provenance::kQuadrature;
  const auto& vals = j.at("values");
  if (vals.empty()) fail(ErrorCode::kIo, "empty coefficient table");
  t.n_min = vals.front().at("n");
  t.n_max = vals.back().at("n");
  for (const auto& v : vals) {
    t.values.push_back(from_decimal(v.at("value").get<std::string>(), ctx));
    t.abs_error.push_back(v.contains("abs_error") ? from_decimal(v["abs_error"].get<std::string>(), ctx) : HReal());
  }
  if (static_cast<int>(t.values.size()) != t.n_max - t.n_min + 1) fail(ErrorCode::kIo, "coefficient rows not contiguous");
  return t;
}

std::string to_csv(const CoeffTable& table) {
  std::ostringstream os;
  os << "n,value\n";
  for (int n = table.n_min; n <= table.n_max; ++n)
    os << n << "," << to_decimal(table.values[n - table.n_min], table.digits) << "\n";
  return os.str();
}

}  // namespace zetaline
