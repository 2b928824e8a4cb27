#pragma once

#include <cstdint>
#include <vector>

#include "critrange/asymptotics.hpp"
#include "critrange/rng.hpp"
#include "critrange/stats.hpp"

namespace critrange::mc_engine {

enum class Refinement { skeleton, bridge };

// One simulated driftless path: endpoint, running extremes, and the skeleton
// value at a requested intermediate time.
struct PathSample {
  double t = 0.0;
  double dt = 0.0;
  double endpoint = 0.0;
  double run_min = 0.0;
  double run_max = 0.0;
  double x_at = 0.0;  // skeleton value at the recorded time (endpoint if none)
  Refinement mode = Refinement::skeleton;
};

struct EnsembleMeta {
  std::uint64_t seed = 0;
  double t = 0.0;   // physical horizon
  double dt = 0.0;  // step of the unit-drift simulation
  std::int64_t n = 0;
  double h = 1.0;
  Refinement mode = Refinement::skeleton;
  double u = 1.0;   // physical time of the recorded intermediate value
};

// Compact per-path summary plus its Girsanov weight.
struct Entry {
  double endpoint;
  double run_min;
  double run_max;
  double x_at;
  double weight;
};

struct WeightedEnsemble {
  EnsembleMeta meta;
  std::vector<Entry> entries;
};

enum class Functional { neg_min, max_scaled, endpoint_scaled, endpoint_at_u, gap_scaled };

// Simulates a driftless path on a grid of step dt. In bridge mode each step
// additionally draws the within-step extremes of the Brownian bridge (exact
// one-sided laws, drawn independently of each other) into run_min/run_max.
// record_at: grid time whose skeleton value is stored in x_at (< 0 disables).
PathSample sample_path(Rng& rng, double t, double dt, Refinement mode,
                       double record_at = -1.0);

// w = e^{h (X_t - M_t + m_t)} in (0,1].
double girsanov_weight(const PathSample& p, double h);

// Deterministic ensemble: path i uses the substream keyed by (seed, i), so
// the result is identical for every worker count. Simulation runs at unit
// drift over horizon t h^2; h enters only through the rescaling.
WeightedEnsemble run_ensemble(const asymptotics::ModelParams& p, std::int64_t n_paths,
                              double dt, Refinement mode, std::uint64_t seed,
                              int threads = 1, double u = 1.0);

// (functional value, weight) pairs in path order, mapped back to physical
// units: neg_min = -m/h, max_scaled = M/sqrt(th^2), endpoint_scaled,
// endpoint_at_u = X_{uh^2}/h, gap_scaled = (M - X)/sqrt(th^2).
std::vector<std::pair<double, double>> functional_points(const WeightedEnsemble& e,
                                                         Functional f);

// Self-normalized weighted ECDF of a functional under the conditioned law.
// Throws DegenerateWeights when the effective sample size is below 100.
stats::WeightedECDF conditional_ecdf(const WeightedEnsemble& e, Functional f);

double mean_weight(const WeightedEnsemble& e);

// (sum w)^2 / sum w^2.
double ess(const WeightedEnsemble& e);

}  // namespace critrange::mc_engine
