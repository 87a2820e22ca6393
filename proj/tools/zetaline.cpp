#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <CLI11.hpp>
#include <json.hpp>

#include "zetaline/acceptance.hpp"
#include "zetaline/coeffs.hpp"
#include "zetaline/disk_roots.hpp"
#include "zetaline/ergodic.hpp"
#include "zetaline/error.hpp"
#include "zetaline/measure_quad.hpp"
#include "zetaline/parallel.hpp"
#include "zetaline/series.hpp"
#include "zetaline/zeta.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace zetaline;

namespace {

struct RunConfig {
  int digits = 0;  // 0: per-command default
  int n_max = -1;
  int n_min = INT32_MIN;
  int k_max = 20;
  double sigma = 0;
  int power = 0;
  double t = 0;
  double tol = 1e-10;
  double T = 0;
  std::string zeros;
  std::string cache_dir;
  bool no_cache = false;
  std::string format = "json";
  int workers = 0;
};

std::string dec(const HReal& x, int digits = 20) { return to_decimal(x, digits); }
json pair_of(const HComplex& z, int digits = 20) { return json::array({dec(z.re, digits), dec(z.im, digits)}); }

json quad_json(const QuadratureResult& q) {
  return {{"value", pair_of(q.value, 15)},
          {"est_error", dec(q.est_error, 3)},
          {"trunc_bound", dec(q.trunc_bound, 3)},
          {"nodes_used", q.nodes_used}};
}

int default_digits(int n) { return 60 + static_cast<int>(std::ceil(0.15 * n)); }

// Tables are always used in their serialized form, so a cache hit and a cold
// run feed identical numbers downstream.
class Cache {
 public:
  explicit Cache(const RunConfig& cfg) {
    if (cfg.no_cache) return;
    std::string d = cfg.cache_dir;
    if (d.empty()) {
      if (const char* env = std::getenv("ZETALINE_CACHE_DIR")) d = env;
      else if (const char* home = std::getenv("HOME")) d = std::string(home) + "/.cache/zetaline";
    }
    if (d.empty()) return;
    std::error_code ec;
    fs::create_directories(d, ec);
    if (ec || access(d.c_str(), W_OK) != 0) {
      std::cerr << "notice: cache directory " << d << " is not writable; running uncached\n";
      return;
    }
    dir_ = d;
  }

  CoeffTable table(const std::string& key, const PrecisionCtx& ctx, const std::function<CoeffTable()>& make) {
    fs::path p = dir_.empty() ? fs::path() : fs::path(dir_) / (key + ".json");
    if (!p.empty() && fs::exists(p)) {
      std::ifstream in(p);
      std::stringstream ss;
      ss << in.rdbuf();
      try {
        return coeff_table_from_json(ss.str(), ctx);
      } catch (const NumericError& e) {
        std::cerr << "notice: cache entry " << p.string() << " is stale (" << e.what() << "); recomputing\n";
      }
    }
    std::string text = to_json(make());
    if (!p.empty()) write_atomic(p, text);
    return coeff_table_from_json(text, ctx);
  }

 private:
  static void write_atomic(const fs::path& p, const std::string& text) {
    fs::path tmp = p;
    tmp += ".tmp." + std::to_string(getpid());
    {
      std::ofstream out(tmp, std::ios::binary);
      out << text;
      if (!out) {
        std::cerr << "notice: could not write cache entry " << p.string() << "\n";
        return;
      }
    }
    std::error_code ec;
    fs::rename(tmp, p, ec);
    if (ec) {
      fs::remove(tmp, ec);
      std::cerr << "notice: could not write cache entry " << p.string() << "\n";
    }
  }

  std::string dir_;
};

CoeffTable critical_table(Cache& cache, int n_max, int digits) {
  PrecisionCtx ctx(digits);
  return cache.table("critical_n" + std::to_string(n_max) + "_d" + std::to_string(digits), ctx,
                     [&] { return ell(n_max, stieltjes(n_max, ctx), ctx); });
}

void emit(const std::string& text) {
  std::cout << text;
  if (!text.empty() && text.back() != '\n') std::cout << "\n";
}

void check_positive(const RunConfig& c) {
  if (c.T < 0 || c.tol <= 0 || c.workers < 0 || c.digits < 0) fail(ErrorCode::kUsage, "numeric options must be positive");
  if (c.format != "json" && c.format != "csv") fail(ErrorCode::kUsage, "--format must be json or csv");
}

int cmd_stieltjes(const RunConfig& c, const std::string& method) {
  PrecisionCtx ctx(c.digits ? c.digits : 50);
  StieltjesMethod m;
  if (method == "contour") m = StieltjesMethod::kContour;
  else if (method == "limit") m = StieltjesMethod::kLimitAccel;
  else fail(ErrorCode::kUsage, "--method must be contour or limit");
  StieltjesTable t = stieltjes(c.k_max, ctx, m);
  json j;
  j["schema_version"] = 1;
  j["method"] = method_name(t.method);
  j["digits"] = t.digits;
  json rows = json::array();
  for (int k = 0; k <= t.k_max; ++k)
    rows.push_back({{"k", k}, {"value", dec(t.gammas[k], t.digits)}, {"abs_error", dec(t.abs_error[k], 3)}});
  j["gammas"] = rows;
  emit(j.dump(1));
  return 0;
}

int cmd_coeffs(const RunConfig& c, Cache& cache, bool has_sigma, bool has_power) {
  if (has_sigma && has_power) fail(ErrorCode::kUsage, "--sigma and --power exclude each other");
  int n_max = c.n_max < 0 ? 30 : c.n_max;
  int digits = c.digits ? c.digits : default_digits(n_max);
  PrecisionCtx ctx(digits);
  CoeffTable t;
  if (has_sigma) {
    int n_min = c.n_min == INT32_MIN ? -n_max : c.n_min;
    PrecisionGuard g(ctx);
    std::string key = "line_s" + to_decimal(HReal(c.sigma), 17) + "_n" + std::to_string(n_min) + "_" +
                      std::to_string(n_max) + "_d" + std::to_string(digits);
    t = cache.table(key, ctx, [&] { return ell_sigma(HReal(c.sigma), n_min, n_max, ctx); });
  } else if (has_power) {
    if (c.power < 1) fail(ErrorCode::kUsage, "--power must be at least 1");
    int n_min = c.n_min == INT32_MIN ? -c.power : c.n_min;
    std::string key = "power_k" + std::to_string(c.power) + "_n" + std::to_string(n_min) + "_" + std::to_string(n_max) +
                      "_d" + std::to_string(digits);
    t = cache.table(key, ctx, [&] {
      return ell_power(c.power, n_min, n_max, laurent_power_coeffs(c.power, n_max + c.power, ctx), ctx);
    });
  } else {
    t = critical_table(cache, n_max, digits);
  }
  emit(c.format == "csv" ? to_csv(t) : to_json(t));
  return 0;
}

int cmd_eval(const RunConfig& c, Cache& cache, const std::string& method) {
  if (method != "em" && method != "series" && method != "both") fail(ErrorCode::kUsage, "--method must be em, series or both");
  PrecisionCtx work(c.digits ? c.digits : 40);
  PrecisionGuard g(work);
  HComplex s{HReal(c.sigma), HReal(c.t)};
  json j;
  j["schema_version"] = 1;
  j["s"] = pair_of(s, 17);
  HComplex em, ser;
  if (method != "series") {
    em = zeta_em(s, work);
    j["em"] = pair_of(em, 25);
  }
  if (method != "em") {
    int n_max = c.n_max < 0 ? 400 : c.n_max;
    CoeffTable t = critical_table(cache, n_max, default_digits(n_max) + 10);
    SeriesZeta v = zeta_via_series(s, t, HReal(c.tol), work);
    PrecisionGuard g2(work);
    if (v.at_pole) {
      j["series"] = nullptr;
      j["regular_part"] = pair_of(v.regular.value, 25);
    } else {
      ser = v.value;
      j["series"] = pair_of(ser, 25);
    }
    j["route"] = route_name(v.regular.route);
    j["terms"] = v.regular.terms;
    j["tail_bound"] = dec(v.regular.tail_bound, 3);
    if (method == "both" && !v.at_pole) j["discrepancy"] = dec(abs(em - ser), 3);
  }
  emit(j.dump(1));
  return 0;
}

int cmd_parseval(const RunConfig& c, Cache& cache) {
  int n_max = c.n_max < 0 ? 100 : c.n_max;
  CoeffTable t = critical_table(cache, n_max, c.digits ? c.digits : default_digits(n_max));
  PrecisionCtx work(40);
  LineOptions lo;
  if (c.T > 0) lo.T = c.T;
  IdentityReport q = hnorm_identity(lo);
  PrecisionGuard g(work);
  json j;
  j["schema_version"] = 1;
  HReal ceiling = parseval_ceiling(work);
  j["ceiling"] = dec(ceiling);
  json rows = json::array();
  HReal sum;
  for (int n = 0; n <= n_max; ++n) {
    sum += sqr(t.at(n));
    rows.push_back({{"N", n}, {"partial_sum", dec(sum)}});
  }
  j["partial_sums"] = rows;
  j["ceiling_minus_partial"] = dec(ceiling - sum, 6);
  j["hnorm_quadrature"] = quad_json(q.quad);
  j["quadrature_minus_partial"] = dec(q.quad.value.re - sum, 6);
  emit(j.dump(1));
  return 0;
}

int cmd_quad(const RunConfig& c, const std::string& which, double a, double b) {
  LineOptions lo;
  if (c.T > 0) lo.T = c.T;
  PrecisionCtx ctx(40);
  PrecisionGuard g(ctx);
  json j;
  j["schema_version"] = 1;
  j["identity"] = which;
  j["T_cutoff"] = dec(HReal(lo.T), 6);
  if (which == "coffey" || which == "hnorm") {
    IdentityReport r = which == "coffey" ? coffey_identity(lo) : hnorm_identity(lo);
    emit(to_json(r));
    return 0;
  }
  if (which == "cross") {
    if (a < 0.5 || b < 0.5 || a >= 1.5 || b >= 1.5) fail(ErrorCode::kRegion, "cross moments need 1/2 <= a, b < 3/2");
    j["a"] = dec(HReal(a), 17);
    j["b"] = dec(HReal(b), 17);
    j["quadrature"] = quad_json(cross_quadrature(a, b, lo));
    auto table_for = [&](double x) {
      return x == 0.5 ? ell(40, stieltjes(40, ctx), ctx) : ell_sigma(HReal(x), -30, 60, ctx);
    };
    CoeffTable ta = table_for(a), tb = table_for(b);
    PrecisionGuard g2(ctx);
    CrossMoment s = cross_moment_closed_form(HReal(a), HReal(b), ta, tb, pow(HReal(10), -15), ctx);
    j["series"] = {{"value", dec(s.value)}, {"tail_bound", dec(s.tail_bound, 3)}, {"terms", s.terms}};
    double other = a == 0.5 ? b : b == 0.5 ? a : -1;
    if (other > 0.5) {
      j["closed_form_without_l1"] = dec(cross_half_without_l1(HReal(other), ctx));
      j["closed_form"] = dec(cross_half_closed_form(HReal(other), ctx));
    }
  } else if (which == "log-disk") {
    j["quadrature"] = quad_json(log_integral_disk(lo));
    j["lower_bound"] = dec(log(1 - const_euler()), 15);
    j["upper_bound"] = dec(log(parseval_ceiling(ctx)) / 2, 15);
  } else if (which == "bsy") {
    double T = c.T > 0 ? c.T : 1e4;
    lo.T = T;
    j["T_cutoff"] = dec(HReal(T), 6);
    BsyReport r = bsy_integral(T, load_zero_ordinates(c.zeros.empty() ? default_zero_file() : c.zeros), lo);
    j["quadrature"] = quad_json(r.quad);
    j["ordinates_used"] = r.ordinates_used;
    j["sign_changes"] = r.sign_changes;
    j["uncovered_zero"] = r.uncovered_zero;
    j["target"] = "0";
  } else if (which == "phi-l2") {
    j["quadrature"] = quad_json(phi_l2_halfline(lo));
    j["target"] = "0.818896";
  } else {
    fail(ErrorCode::kUsage, "unknown identity '" + which + "'");
  }
  emit(j.dump(1));
  return 0;
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      fail(ErrorCode::kUsage, "bad number '" + item + "' in list");
    }
  }
  return out;
}

int cmd_roots(const RunConfig& c, Cache& cache, const std::string& radii, const std::string& certify) {
  int n_max = c.n_max < 0 ? 100 : c.n_max;
  CoeffTable t = critical_table(cache, n_max, c.digits ? c.digits : default_digits(n_max));
  PrecisionCtx work(t.digits);
  RootReport r = roots_fN(n_max, t, work, parse_list(radii));
  if (c.format == "csv") {
    emit(to_csv(r));
    return 0;
  }
  json j = json::parse(to_json(r));
  if (!certify.empty()) {
    json certs = json::array();
    for (double rad : parse_list(certify)) {
      TailCertificate tc = tail_radius_certificate(n_max, HReal(rad), t, work);
      certs.push_back({{"radius", dec(HReal(rad), 15)},
                       {"bound", dec(tc.bound, 6)},
                       {"min_abs_fN", dec(tc.min_abs_fN, 6)},
                       {"certified", tc.certified}});
    }
    j["certificates"] = certs;
  }
  emit(j.dump(2));
  return 0;
}

int cmd_ergodic(const RunConfig& c, const std::vector<std::string>& gs_text, long iters, int seeds,
                const std::string& csv_dir) {
  std::vector<Observable> gs;
  for (const auto& s : gs_text) gs.push_back(parse_observable(s));
  if (gs.empty()) gs.push_back(Observable::e(0));
  long max_m = 0;
  for (const auto& g : gs)
    for (const auto& [m, a] : g.terms) max_m = std::max(max_m, -m);
  PrecisionCtx ctx(50);
  int n = static_cast<int>(std::max(max_m, 1L));
  CoeffTable t = ell(n, stieltjes(n + 2, ctx), ctx);
  ErgodicOptions o;
  o.iterations = iters;
  auto runs = birkhoff_seeds(gs, seeds, t, o);
  json j;
  j["schema_version"] = 1;
  j["precision"] = "native double";
  j["iterations"] = iters;
  j["seeds"] = seeds;
  json obs = json::array();
  for (std::size_t k = 0; k < gs.size(); ++k) {
    cplx med = median_estimate(runs, k);
    json per = json::array();
    for (const auto& seed : runs) per.push_back(json::parse(to_json(seed[k])));
    char buf[2][32];
    std::snprintf(buf[0], sizeof buf[0], "%.17g", med.real());
    std::snprintf(buf[1], sizeof buf[1], "%.17g", med.imag());
    obs.push_back({{"g", gs[k].describe()},
                   {"prediction", pair_of(runs[0][k].prediction)},
                   {"median", json::array({buf[0], buf[1]})},
                   {"runs", per}});
    if (!csv_dir.empty()) {
      fs::create_directories(csv_dir);
      for (const auto& seed : runs) {
        std::ofstream out(fs::path(csv_dir) / (gs[k].describe() + "_seed" + std::to_string(seed[k].seed) + ".csv"));
        out << to_csv(seed[k]);
        if (!out) fail(ErrorCode::kIo, "could not write CSV to " + csv_dir);
      }
    }
  }
  j["observables"] = obs;
  emit(j.dump(1));
  return 0;
}

int cmd_verify_all(const RunConfig& c, const std::string& only) {
  AcceptanceOptions o;
  if (c.T > 0) o.T = c.T;
  o.zero_file = c.zeros;
  for (double id : only.empty() ? std::vector<double>{} : parse_list(only)) o.only.push_back(static_cast<int>(id));
  auto results = run_acceptance(o, [&](const CriterionResult& r) {
    if (c.format == "json") return;
    std::cout << format_line(r) << "\n";
    for (const auto& n : r.notes) std::cout << "    note: " << n << "\n";
    std::cout.flush();
  });
  if (c.format == "json") emit(to_json(results));
  return all_passed(results) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig c;
  CLI::App app{"High-precision Fourier coefficients of zeta on vertical lines"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--digits", c.digits, "working decimal digits");
  app.add_option("--workers", c.workers, "worker threads (0: hardware)");
  app.add_option("--cache-dir", c.cache_dir, "coefficient cache (default $ZETALINE_CACHE_DIR or ~/.cache/zetaline)");
  app.add_flag("--no-cache", c.no_cache, "do not read or write the cache");
  app.add_option("--format", c.format, "json or csv");
  app.add_option("--zeros", c.zeros, "zero-ordinate file");

  auto* st = app.add_subcommand("stieltjes", "Stieltjes constants");
  std::string st_method = "contour";
  st->add_option("--kmax", c.k_max);
  st->add_option("--method", st_method, "contour or limit");

  auto* co = app.add_subcommand("coeffs", "coefficient table");
  co->add_option("--nmax", c.n_max);
  co->add_option("--nmin", c.n_min);
  auto* o_sigma = co->add_option("--sigma", c.sigma, "coefficients on the line Re s = sigma0");
  auto* o_power = co->add_option("--power", c.power, "coefficients of zeta^K");

  auto* ev = app.add_subcommand("eval", "zeta by Euler-Maclaurin and by the series");
  std::string ev_method = "both";
  ev->add_option("--sigma", c.sigma)->required();
  ev->add_option("--t", c.t)->required();
  ev->add_option("--method", ev_method, "em, series or both");
  ev->add_option("--nmax", c.n_max, "coefficient table size (default 400)");
  ev->add_option("--tol", c.tol);

  auto* pa = app.add_subcommand("parseval", "partial sums against the norm");
  pa->add_option("--nmax", c.n_max);
  pa->add_option("--T", c.T, "quadrature cutoff");

  auto* qu = app.add_subcommand("quad", "integral identities by quadrature");
  std::string which;
  double qa = 0.75, qb = 0.5;
  qu->add_option("identity", which, "coffey|hnorm|cross|log-disk|bsy|phi-l2")->required();
  qu->add_option("--a", qa);
  qu->add_option("--b", qb);
  qu->add_option("--T", c.T, "quadrature cutoff");

  auto* ro = app.add_subcommand("roots", "zeros of the partial-sum polynomials");
  std::string radii = "0.5,0.8,0.9", certify;
  ro->add_option("--nmax", c.n_max);
  ro->add_option("--radii", radii);
  ro->add_option("--certify", certify, "radii for the tail certificate");

  auto* er = app.add_subcommand("ergodic", "Birkhoff averages along Boole orbits");
  std::vector<std::string> gs;
  long iters = 200000;
  int seeds = 20;
  std::string csv_dir;
  er->add_option("--g", gs, "observable em:INDEX (repeatable)");
  er->add_option("--iters", iters);
  er->add_option("--seeds", seeds);
  er->add_option("--csv-dir", csv_dir, "write one CSV per seed here");

  auto* va = app.add_subcommand("verify-all", "run the acceptance criteria");
  std::string only;
  va->add_option("--only", only, "comma-separated criterion ids");
  va->add_option("--T", c.T, "quadrature cutoff");
  c.format = "";

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (c.format.empty()) c.format = va->parsed() ? "text" : "json";
    if (!va->parsed()) check_positive(c);
    else if (c.format != "text" && c.format != "json") fail(ErrorCode::kUsage, "verify-all prints text or json");
    if (c.workers > 0) set_worker_count(c.workers);
    Cache cache(c);
    if (st->parsed()) return cmd_stieltjes(c, st_method);
    if (co->parsed()) return cmd_coeffs(c, cache, o_sigma->count() > 0, o_power->count() > 0);
    if (ev->parsed()) return cmd_eval(c, cache, ev_method);
    if (pa->parsed()) return cmd_parseval(c, cache);
    if (qu->parsed()) return cmd_quad(c, which, qa, qb);
    if (ro->parsed()) return cmd_roots(c, cache, radii, certify);
    if (er->parsed()) return cmd_ergodic(c, gs, iters, seeds, csv_dir);
    if (va->parsed()) return cmd_verify_all(c, only);
  } catch (const NumericError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
