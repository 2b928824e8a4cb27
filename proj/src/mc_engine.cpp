#include "critrange/mc_engine.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace critrange::mc_engine {

PathSample sample_path(Rng& rng, double t, double dt, Refinement mode, double record_at) {
  if (!(dt > 0.0) || !(dt <= t) || !(dt <= 0.05)) {
    throw DomainError("sample_path: need 0 < dt <= min(t, 0.05)");
  }
  const int64_t steps = std::llround(t / dt);
  const int64_t rec =
      record_at >= 0.0 && record_at <= t ? std::llround(record_at / dt) : -1;
  PathSample p;
  p.t = t;
  p.dt = dt;
  p.mode = mode;
  const double sd = std::sqrt(dt);
  double x = 0.0;
  for (int64_t k = 0; k < steps; ++k) {
    const double x0 = x;
    x += sd * rng.normal();
    if (mode == Refinement::bridge) {
      const double gap = x - x0;
      const double dmax = std::sqrt(gap * gap - 2.0 * dt * std::log(rng.uniform()));
      const double dmin = std::sqrt(gap * gap - 2.0 * dt * std::log(rng.uniform()));
      p.run_max = std::max(p.run_max, 0.5 * (x0 + x + dmax));
      p.run_min = std::min(p.run_min, 0.5 * (x0 + x - dmin));
    } else {
      p.run_max = std::max(p.run_max, x);
      p.run_min = std::min(p.run_min, x);
    }
    if (k + 1 == rec) p.x_at = x;
  }
  p.endpoint = x;
  if (rec == 0) p.x_at = 0.0;
  if (rec < 0) p.x_at = x;
  return p;
}

double girsanov_weight(const PathSample& p, double h) {
  if (!(h > 0.0)) throw DomainError("girsanov_weight: h must be > 0");
  return std::exp(h * (p.endpoint - p.run_max + p.run_min));
}

WeightedEnsemble run_ensemble(const asymptotics::ModelParams& p, std::int64_t n_paths,
                              double dt, Refinement mode, std::uint64_t seed,
                              int threads, double u) {
  p.validate();
  if (n_paths < 1000) throw DomainError("run_ensemble: need at least 1000 paths");
  if (threads < 1) throw DomainError("run_ensemble: need at least one thread");
  const double T = p.t * p.h * p.h;
  const double record_at = u * p.h * p.h;
  WeightedEnsemble e;
  e.meta = {seed, p.t, dt, n_paths, p.h, mode, u};
  e.entries.resize(static_cast<std::size_t>(n_paths));
  auto worker = [&](std::int64_t lo, std::int64_t hi) {
    for (std::int64_t i = lo; i < hi; ++i) {
      Rng rng(seed, static_cast<std::uint64_t>(i));
      const PathSample s = sample_path(rng, T, dt, mode, record_at);
      e.entries[static_cast<std::size_t>(i)] = {s.endpoint, s.run_min, s.run_max, s.x_at,
                                                girsanov_weight(s, 1.0)};
    }
  };
  if (threads == 1) {
    worker(0, n_paths);
  } else {
    std::vector<std::thread> pool;
    const std::int64_t chunk = (n_paths + threads - 1) / threads;
    for (int k = 0; k < threads; ++k) {
      const std::int64_t lo = k * chunk;
      const std::int64_t hi = std::min<std::int64_t>(lo + chunk, n_paths);
      if (lo < hi) pool.emplace_back(worker, lo, hi);
    }
    for (auto& th : pool) th.join();
  }
  return e;
}

std::vector<std::pair<double, double>> functional_points(const WeightedEnsemble& e,
                                                         Functional f) {
  const double h = e.meta.h;
  const double sT = std::sqrt(e.meta.t) * h;
  std::vector<std::pair<double, double>> pts;
  pts.reserve(e.entries.size());
  for (const auto& s : e.entries) {
    double v = 0.0;
    switch (f) {
      case Functional::neg_min: v = -s.run_min / h; break;
      case Functional::max_scaled: v = s.run_max / sT; break;
      case Functional::endpoint_scaled: v = s.endpoint / sT; break;
      case Functional::endpoint_at_u: v = s.x_at / h; break;
      case Functional::gap_scaled: v = (s.run_max - s.endpoint) / sT; break;
    }
    pts.emplace_back(v, s.weight);
  }
  return pts;
}

stats::WeightedECDF conditional_ecdf(const WeightedEnsemble& e, Functional f) {
  if (ess(e) < 100.0) {
    throw DegenerateWeights("conditional_ecdf: effective sample size below 100");
  }
  return stats::weighted_ecdf(functional_points(e, f));
}

double mean_weight(const WeightedEnsemble& e) {
  if (e.entries.empty()) throw EmptyInput("mean_weight: empty ensemble");
  double s = 0.0;
  for (const auto& en : e.entries) s += en.weight;
  return s / static_cast<double>(e.entries.size());
}

double ess(const WeightedEnsemble& e) {
  if (e.entries.empty()) throw EmptyInput("ess: empty ensemble");
  double s = 0.0;
  double s2 = 0.0;
  for (const auto& en : e.entries) {
    s += en.weight;
    s2 += en.weight * en.weight;
  }
  return s * s / s2;
}

}  // namespace critrange::mc_engine
