// Command-line front end: verify suites, densities, kernels, counterexample
// sums and extremal searches.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cube_spectral/counterexamples.hpp"
#include "cube_spectral/errors.hpp"
#include "cube_spectral/kernel.hpp"
#include "cube_spectral/search.hpp"
#include "cube_spectral/subordination.hpp"
#include "cube_spectral/suites.hpp"

namespace cs = cube_spectral;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

// Rows of numbers rendered as CSV (header + rows) or a JSON array of objects.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  std::string render(const std::string& format) const {
    std::ostringstream out;
    if (format == "json") {
      cs::Json arr = cs::Json::array();
      for (const auto& row : rows) {
        cs::Json obj = cs::Json::object();
        for (std::size_t i = 0; i < columns.size(); ++i) obj[columns[i]] = row[i];
        arr.push_back(obj);
      }
      out << arr.dump(2) << '\n';
      return out.str();
    }
    for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
    out << '\n';
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_double(row[i]);
      out << '\n';
    }
    return out.str();
  }
};

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw cs::InvalidParameter("cannot open output file " + path);
  file << text;
}

std::vector<double> parse_doubles(const std::string& list) {
  std::vector<double> out;
  std::stringstream ss(list);
  ss.imbue(std::locale::classic());
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::istringstream is(item);
    is.imbue(std::locale::classic());
    double v;
    if (!(is >> v)) throw cs::InvalidParameter("not a number: '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw cs::InvalidParameter("empty list");
  return out;
}

std::vector<int> parse_ints(const std::string& list) {
  std::vector<int> out;
  for (double v : parse_doubles(list)) {
    if (v != std::floor(v)) throw cs::InvalidParameter("not an integer in list");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

int resolve_threads(int flag) {
  if (flag > 0) return flag;
  if (const char* env = std::getenv("CUBE_SPECTRAL_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 1;
}

struct Options {
  int n = 0;
  std::string p;
  double gamma = 0.5;
  double t = 0.0;
  std::string band;
  std::uint64_t seed = 0;
  std::string out;
  std::string format;
  int threads = 0;

  std::string suite;
  std::string which;
  double tau_min = 1e-2;
  double tau_max = 1e4;
  int points = 61;
  int restarts = 32;
  int iterations = 2000;
};

int run_verify(const Options& o) {
  cs::SuiteParams params;
  params.seed = o.seed;
  params.n = o.n;
  params.threads = resolve_threads(o.threads);
  const cs::RunManifest m = cs::run_suite(o.suite, params);
  if (o.format == "csv") {
    std::ostringstream csv;
    csv << "name,params,measured,bound,pass\n";
    for (const auto& r : m.reports) {
      std::string p = r.params.dump();
      // Quote the JSON params as a single CSV field.
      std::string quoted = "\"";
      for (char c : p) quoted += (c == '"') ? std::string("\"\"") : std::string(1, c);
      quoted += '"';
      csv << r.name << ',' << quoted << ',' << format_double(r.measured) << ','
          << format_double(r.bound) << ',' << (r.pass ? "true" : "false") << '\n';
    }
    emit(csv.str(), o.out);
  } else {
    emit(cs::to_json(m).dump(2) + "\n", o.out);
  }
  for (const auto& r : m.reports) {
    std::cerr << (r.pass ? "PASS " : "FAIL ") << r.name << ' ' << r.params.dump() << '\n';
  }
  return m.pass() ? kExitPass : kExitFail;
}

int run_density(const Options& o) {
  if (!(o.tau_min > 0.0 && o.tau_max > o.tau_min) || o.points < 2) {
    throw cs::InvalidParameter("density: need 0 < tau-min < tau-max and points >= 2");
  }
  const cs::StableDensityEvaluator ev(o.gamma);
  Table table{{"tau", "p_gamma", "tail_ratio"}, {}};
  for (int i = 0; i < o.points; ++i) {
    const double tau = o.tau_min * std::pow(o.tau_max / o.tau_min, static_cast<double>(i) / (o.points - 1));
    const double p = ev.density(tau);
    table.rows.push_back({tau, p, std::pow(tau, 1.0 + o.gamma) * p / ev.tail_constant()});
  }
  emit(table.render(o.format.empty() ? "csv" : o.format), o.out);
  return kExitPass;
}

int run_kernel(const Options& o) {
  const std::vector<int> band = o.band.empty() ? std::vector<int>{1, 2} : parse_ints(o.band);
  const int n = o.n > 0 ? o.n : 12;
  const cs::ModificationPlan plan = cs::build_plan(o.gamma, band);
  const double t = o.t > 0.0 ? o.t : plan.t0;
  const cs::VerificationReport r = cs::verify_modification(plan, n, t);
  cs::Json j = {{"gamma", plan.gamma},          {"band", plan.band},
                {"kappa", plan.kappa},          {"t0", plan.t0},
                {"t", t},                       {"n", n},
                {"min_value", r.extra["min_value"]}, {"band_dev", r.extra["band_dev"]},
                {"l1_norm", r.extra["l1_norm"]},     {"bound", r.bound},
                {"pass", r.pass}};
  emit(j.dump(2) + "\n", o.out);
  return r.pass ? kExitPass : kExitFail;
}

int run_counterexample(const Options& o) {
  const double nan = std::nan("");
  Table table{{"n", "t", "gamma", "value", "bound"}, {}};
  if (o.which == "delta") {
    const int n = o.n > 0 ? o.n : 2000;
    const double t = o.t > 0.0 ? o.t : 1.0;
    const double eps = std::exp(-t);
    double bound = nan;
    if (eps <= 0.5) {
      bound = cs::almost1_bound(n, eps, true);
      if (n % 2 == 0) std::cerr << "note: almost-1 bound for even n is heuristic\n";
    }
    table.rows.push_back({static_cast<double>(n), t, 1.0, cs::exact_heat_l1(n, t), bound});
  } else if (o.which == "fractional") {
    const double n = o.n > 0 ? o.n : 10000;
    const double t = o.t > 0.0 ? o.t : 1.0;
    const cs::StableDensityEvaluator ev(o.gamma);
    const double bound = cs::fractional_l1_bound(n, t, ev);
    const double value = n <= 10000 ? cs::fractional_l1_norm(static_cast<int>(n), t, ev) : nan;
    table.rows.push_back({n, t, o.gamma, value, bound});
  } else if (o.which == "gaussian") {
    const cs::GaussianPolynomial f({0.0, 3.0, 0.0, 1.0});
    const double base = f.l1_norm();
    for (int i = 0; i < 41; ++i) {
      const double t = 1e-3 * std::pow(100.0, i / 40.0);
      table.rows.push_back({1.0, t, 1.0, f.heat(t).l1_norm() / base, 1.0});
    }
    const cs::OuFlatness flat = cs::gaussian_ou_flatness();
    std::cerr << "integral " << format_double(flat.integral) << ", defect exponent "
              << format_double(flat.defect_exponent) << '\n';
  } else {
    throw cs::InvalidParameter("--which must be delta, fractional or gaussian");
  }
  emit(table.render(o.format.empty() ? "csv" : o.format), o.out);
  return kExitPass;
}

int run_search(const Options& o) {
  cs::SearchConfig cfg;
  cfg.n = o.n > 0 ? o.n : 6;
  cfg.gamma = o.gamma;
  cfg.t = o.t > 0.0 ? o.t : 1.0;
  cfg.seed = o.seed;
  cfg.restarts = o.restarts;
  cfg.iterations = o.iterations;
  cfg.threads = resolve_threads(o.threads);
  if (!o.band.empty()) cfg.projection = cs::Projection::band(parse_ints(o.band));
  Table table{{"p", "gamma", "t", "n", "ratio", "rate", "restarts"}, {}};
  for (double p : o.p.empty() ? std::vector<double>{2.0} : parse_doubles(o.p)) {
    cfg.p = p;
    const cs::SearchResult r = cs::worst_ratio_search(cfg);
    table.rows.push_back({p, cfg.gamma, cfg.t, static_cast<double>(cfg.n), r.ratio,
                          -std::log(r.ratio) / cfg.t, static_cast<double>(cfg.restarts)});
  }
  emit(table.render(o.format.empty() ? "csv" : o.format), o.out);
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  std::locale::global(std::locale::classic());
  CLI::App app{"Spectral tools for the heat semigroup on the Boolean cube"};
  app.set_version_flag("--version", cs::kVersion);
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--n", o.n, "dimension");
    sub->add_option("--gamma", o.gamma, "fractional exponent in (0, 1]");
    sub->add_option("--t", o.t, "time");
    sub->add_option("--band", o.band, "comma-separated degrees");
    sub->add_option("--seed", o.seed, "random seed");
    sub->add_option("--out", o.out, "output path (default stdout)");
    sub->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--threads", o.threads, "worker threads (env CUBE_SPECTRAL_THREADS)");
  };

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  common(verify);
  verify->add_option("--suite", o.suite, "suite name")->required();

  auto* density = app.add_subcommand("density", "stable density table (CSV tau,p_gamma,tail_ratio)");
  common(density);
  density->add_option("--tau-min", o.tau_min, "smallest tau");
  density->add_option("--tau-max", o.tau_max, "largest tau");
  density->add_option("--points", o.points, "log-spaced grid size");

  auto* kernel = app.add_subcommand("kernel", "build and check a modified kernel (JSON)");
  common(kernel);

  auto* counter = app.add_subcommand("counterexample", "counterexample sums (CSV n,t,gamma,value,bound)");
  common(counter);
  counter->add_option("--which", o.which, "delta, fractional or gaussian")->required();

  auto* search = app.add_subcommand("search", "extremal ratio search (CSV p,gamma,t,n,ratio,rate,restarts)");
  common(search);
  search->add_option("--p", o.p, "exponent or comma-separated list");
  search->add_option("--restarts", o.restarts, "restarts");
  search->add_option("--iterations", o.iterations, "ascent iterations per restart");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*verify) {
      const auto& names = cs::suite_names();
      if (std::find(names.begin(), names.end(), o.suite) == names.end()) {
        std::cerr << "unknown suite '" << o.suite << "'; expected one of:";
        for (const auto& s : names) std::cerr << ' ' << s;
        std::cerr << '\n' << verify->help();
        return kExitUsage;
      }
      return run_verify(o);
    }
    if (*density) return run_density(o);
    if (*kernel) return run_kernel(o);
    if (*counter) return run_counterexample(o);
    if (*search) return run_search(o);
  } catch (const cs::NumericFailure& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const cs::ConstructionFailure& e) {
    std::cerr << "construction failure: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const cs::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
