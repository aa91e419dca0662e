#include "cube_spectral/search.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>

#include "cube_spectral/errors.hpp"
#include "cube_spectral/random.hpp"

namespace cube_spectral {

namespace {

double pnorm(std::span<const double> v, double p) {
  double acc = 0.0;
  if (std::isinf(p)) {
    for (double x : v) acc = std::max(acc, std::abs(x));
    return acc;
  }
  if (p == 1.0) {
    for (double x : v) acc += std::abs(x);
  } else if (p == 2.0) {
    for (double x : v) acc += x * x;
  } else {
    for (double x : v) acc += std::pow(std::abs(x), p);
  }
  acc /= static_cast<double>(v.size());
  return p == 1.0 ? acc : std::pow(acc, 1.0 / p);
}

DegreeMultiplier projector(const SearchConfig& cfg) {
  if (cfg.projection.kind == Projection::Kind::band) {
    return DegreeMultiplier::degree_projection(cfg.projection.degrees);
  }
  std::vector<int> all;
  for (int d = 1; d <= cfg.n; ++d) all.push_back(d);
  return DegreeMultiplier::degree_projection(all);
}

std::vector<int> admissible_degrees(const SearchConfig& cfg) {
  if (cfg.projection.kind == Projection::Kind::band) return cfg.projection.degrees;
  return {1};
}

// Translates of the projected and the evolved point mass at the origin:
// changing f at m by delta moves g by delta q(. ^ m) and F by delta k(. ^ m).
struct Kernels {
  std::vector<double> q;
  std::vector<double> k;
};

Kernels make_kernels(const SearchConfig& cfg) {
  const std::size_t size = std::size_t{1} << cfg.n;
  std::vector<double> delta(size, 0.0);
  delta[0] = static_cast<double>(size);
  const Spectrum proj = apply_multiplier(fwht(CubeFunction(cfg.n, std::move(delta))), projector(cfg));
  const Spectrum evolved = apply_multiplier(proj, DegreeMultiplier::heat(cfg.t, cfg.gamma));
  const CubeFunction q = ifwht(proj);
  const CubeFunction k = ifwht(evolved);
  return {{q.values().begin(), q.values().end()}, {k.values().begin(), k.values().end()}};
}

CubeFunction initial_point(const SearchConfig& cfg, int restart, Rng& rng) {
  const std::size_t size = std::size_t{1} << cfg.n;
  switch (restart % 4) {
    case 0: {
      const auto degrees = admissible_degrees(cfg);
      const int d = degrees[std::uniform_int_distribution<std::size_t>(0, degrees.size() - 1)(rng)];
      std::vector<int> coords(cfg.n);
      for (int j = 0; j < cfg.n; ++j) coords[j] = j;
      std::shuffle(coords.begin(), coords.end(), rng);
      Mask s = 0;
      for (int j = 0; j < d; ++j) s |= Mask{1} << coords[j];
      return CubeFunction::character(cfg.n, s);
    }
    case 1: {
      std::vector<double> v(size, 0.0);
      const Mask m = static_cast<Mask>(std::uniform_int_distribution<std::size_t>(0, size - 1)(rng));
      v[m] = 1.0;
      v[m ^ static_cast<Mask>(size - 1)] = -1.0;
      return CubeFunction(cfg.n, std::move(v));
    }
    default:
      return random_uniform_function(cfg.n, rng);
  }
}

struct RestartOutcome {
  std::vector<double> g;
  double ratio;
};

RestartOutcome run_restart(const SearchConfig& cfg, const Kernels& ker, int restart) {
  Rng rng = substream(cfg.seed, static_cast<std::uint64_t>(restart));
  const std::size_t size = std::size_t{1} << cfg.n;
  const DegreeMultiplier proj = projector(cfg);
  const DegreeMultiplier heat = DegreeMultiplier::heat(cfg.t, cfg.gamma);

  std::vector<double> g, big_f;
  auto reset = [&](const CubeFunction& start) {
    const Spectrum a = apply_multiplier(fwht(start), proj);
    const CubeFunction gf = ifwht(a);
    const CubeFunction ff = ifwht(apply_multiplier(a, heat));
    g.assign(gf.values().begin(), gf.values().end());
    big_f.assign(ff.values().begin(), ff.values().end());
  };
  auto degenerate = [&] { return pnorm(g, cfg.p) <= 1e-12; };

  reset(initial_point(cfg, restart, rng));
  // A start with no component in the subspace is redrawn from noise.
  for (int tries = 0; degenerate(); ++tries) {
    if (tries > 100) throw NumericFailure("worst_ratio_search: projection annihilates every start", 0.0);
    reset(random_uniform_function(cfg.n, rng));
  }

  std::uniform_int_distribution<std::size_t> pick(0, size - 1);
  std::vector<double> g_try(size), f_try(size);
  double best = pnorm(big_f, cfg.p) / pnorm(g, cfg.p);
  double step = cfg.initial_step;
  for (int it = 0; it < cfg.iterations; ++it, step *= cfg.decay) {
    const Mask m = static_cast<Mask>(pick(rng));
    double scale = 0.0;
    for (double x : g) scale = std::max(scale, std::abs(x));
    for (double sign : {1.0, -1.0}) {
      const double delta = sign * step * scale;
      for (std::size_t x = 0; x < size; ++x) {
        g_try[x] = g[x] + delta * ker.q[x ^ m];
        f_try[x] = big_f[x] + delta * ker.k[x ^ m];
      }
      const double denom = pnorm(g_try, cfg.p);
      if (denom <= 1e-12 * scale) continue;
      const double ratio = pnorm(f_try, cfg.p) / denom;
      if (ratio > best) {
        best = ratio;
        g.swap(g_try);
        big_f.swap(f_try);
        break;
      }
    }
  }
  // Recompute from scratch so incremental drift cannot leak into the result.
  reset(CubeFunction(cfg.n, g));
  return {g, pnorm(big_f, cfg.p) / pnorm(g, cfg.p)};
}

}  // namespace

void validate(const SearchConfig& cfg) {
  std::ostringstream msg;
  if (cfg.n < 1 || cfg.n > 12) msg << "n must be in [1, 12]; ";
  if (!(cfg.p >= 1.0)) msg << "p must be >= 1; ";
  if (!(cfg.gamma > 0.0 && cfg.gamma <= 1.0)) msg << "gamma must be in (0, 1]; ";
  if (!(cfg.t > 0.0) || !std::isfinite(cfg.t)) msg << "t must be positive; ";
  if (cfg.restarts < 1) msg << "restarts must be >= 1; ";
  if (cfg.iterations < 0) msg << "iterations must be >= 0; ";
  if (!(cfg.initial_step > 0.0)) msg << "initial step must be positive; ";
  if (!(cfg.decay > 0.0 && cfg.decay <= 1.0)) msg << "decay must be in (0, 1]; ";
  if (cfg.threads < 1) msg << "threads must be >= 1; ";
  if (cfg.projection.kind == Projection::Kind::band) {
    if (cfg.projection.degrees.empty()) msg << "band must be nonempty; ";
    for (int d : cfg.projection.degrees) {
      if (d < 1 || d > cfg.n) {
        msg << "band degrees must lie in 1..n; ";
        break;
      }
    }
  }
  if (!msg.str().empty()) throw InvalidParameter("search config: " + msg.str());
}

SearchResult worst_ratio_search(const SearchConfig& cfg) {
  validate(cfg);
  const Kernels ker = make_kernels(cfg);
  std::vector<RestartOutcome> outcomes(cfg.restarts);
  const int workers = std::min(cfg.threads, cfg.restarts);
  if (workers == 1) {
    for (int r = 0; r < cfg.restarts; ++r) outcomes[r] = run_restart(cfg, ker, r);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (int r = w; r < cfg.restarts; r += workers) outcomes[r] = run_restart(cfg, ker, r);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  int best = 0;
  std::vector<double> ratios;
  for (int r = 0; r < cfg.restarts; ++r) {
    ratios.push_back(outcomes[r].ratio);
    if (outcomes[r].ratio > outcomes[best].ratio) best = r;
  }
  std::vector<double> g = std::move(outcomes[best].g);
  const double norm = pnorm(g, cfg.p);
  for (double& x : g) x /= norm;
  return {CubeFunction(cfg.n, std::move(g)), ratios[best], best, std::move(ratios)};
}

std::vector<ScanPoint> constant_scan(std::span<const double> p_grid, const SearchConfig& base) {
  std::vector<ScanPoint> out;
  for (double p : p_grid) {
    if (!(p > 1.0)) throw InvalidParameter("constant_scan: every p must exceed 1");
    SearchConfig cfg = base;
    cfg.p = p;
    const SearchResult r = worst_ratio_search(cfg);
    out.push_back({p, r.ratio, -std::log(r.ratio) / cfg.t});
  }
  return out;
}

bool rates_decrease_toward_one(std::vector<ScanPoint> scan, double tolerance) {
  std::sort(scan.begin(), scan.end(), [](const auto& a, const auto& b) { return a.p < b.p; });
  for (std::size_t i = 0; i < scan.size(); ++i) {
    for (std::size_t j = i + 1; j < scan.size(); ++j) {
      if (scan[i].rate > (1.0 + tolerance) * scan[j].rate) return false;
    }
  }
  return true;
}

}  // namespace cube_spectral
