// Global-best particle swarm optimizer used as the comparison baseline.
#ifndef EAGLE_PSO_HPP
#define EAGLE_PSO_HPP

#include <algorithm>
#include <cstdint>
#include <vector>

#include "core.hpp"
#include "objectives.hpp"
#include "random.hpp"

namespace eagle {

struct PsoConfig
{
  double w = 0.7;
  double c1 = 1.5;
  double c2 = 1.5;
  std::size_t n = 20;
  /// Velocity cap as a fraction of each coordinate's width.
  double v_max_fraction = 0.2;
  std::uint64_t max_evals = 200000;
  /// Stop once gbest has improved by less than `tolerance` over `patience` iterations.
  double tolerance = 1e-5;
  std::size_t patience = 20;
  std::size_t samples = 3;

  void validate() const
  {
    require(n >= 2, ErrorKind::invalid_config, "swarm needs at least 2 particles");
    require(w >= 0.0 && w <= 1.0, ErrorKind::invalid_config, "inertia must lie in [0, 1]");
    require(c1 >= 0.0 && c2 >= 0.0, ErrorKind::invalid_config, "c1 and c2 must be non-negative");
    require(v_max_fraction > 0.0, ErrorKind::invalid_config, "v_max must be positive");
    require(samples >= 1, ErrorKind::invalid_config, "samples must be >= 1");
    require(patience >= 1, ErrorKind::invalid_config, "patience must be >= 1");
  }
};

inline OptimizationResult pso_optimize(NoisyObjective& obj, const Bounds& bounds, const PsoConfig& cfg,
                                       RngStream& rng)
{
  cfg.validate();
  require_same_dim(bounds.size(), obj.dim(), "pso bounds");
  const std::size_t d = bounds.size();
  const std::size_t samples = obj.deterministic() ? 1 : cfg.samples;
  const std::uint64_t per_iteration = static_cast<std::uint64_t>(cfg.n) * samples;
  require(cfg.max_evals >= per_iteration, ErrorKind::invalid_config, "pso budget must cover the initial swarm");

  std::vector<double> v_max(d);
  for (std::size_t k = 0; k < d; ++k) {
    v_max[k] = cfg.v_max_fraction * bounds[k].width();
  }

  struct Particle
  {
    DesignVector x;
    DesignVector v;
    DesignVector best_x;
    MeanEstimate best;
  };

  const std::uint64_t start = obj.eval_count();
  auto spent = [&] { return obj.eval_count() - start; };

  std::vector<Particle> swarm(cfg.n);
  std::size_t g = 0;
  for (std::size_t p = 0; p < swarm.size(); ++p) {
    auto& s = swarm[p];
    s.x = sample_uniform_in_bounds(rng, bounds);
    s.v.assign(d, 0.0);
    s.best_x = s.x;
    s.best = estimate_mean(obj, s.x, rng, samples);
    if (s.best.mean < swarm[g].best.mean) {
      g = p;
    }
  }
  DesignVector gbest_x = swarm[g].best_x;
  MeanEstimate gbest = swarm[g].best;

  OptimizationResult res;
  res.trace.push_back({0, gbest.mean, gbest.std, gbest.mean, spent(), true, TraceSource::init});

  std::vector<double> history{gbest.mean};
  std::size_t it = 0;
  while (spent() + per_iteration <= cfg.max_evals) {
    ++it;
    for (auto& s : swarm) {
      for (std::size_t k = 0; k < d; ++k) {
        const double r1 = rng.uniform();
        const double r2 = rng.uniform();
        double v = cfg.w * s.v[k] + cfg.c1 * r1 * (s.best_x[k] - s.x[k]) + cfg.c2 * r2 * (gbest_x[k] - s.x[k]);
        s.v[k] = std::clamp(v, -v_max[k], v_max[k]);
        s.x[k] += s.v[k];
      }
      reflect_into(s.x, bounds);
      const auto est = estimate_mean(obj, s.x, rng, samples);
      if (est.mean < s.best.mean) {
        s.best = est;
        s.best_x = s.x;
      }
    }
    bool improved = false;
    for (const auto& s : swarm) {
      if (s.best.mean < gbest.mean) {
        gbest = s.best;
        gbest_x = s.best_x;
        improved = true;
      }
    }
    res.trace.push_back({it, gbest.mean, gbest.std, gbest.mean, spent(), improved, TraceSource::generation});
    history.push_back(gbest.mean);
    if (history.size() > cfg.patience && history[history.size() - 1 - cfg.patience] - gbest.mean < cfg.tolerance) {
      break;
    }
  }

  res.best_x = gbest_x;
  res.best_mean = gbest.mean;
  res.best_std = gbest.std;
  res.stages = it;
  res.evaluations = spent();
  return res;
}

} // namespace eagle

#endif // EAGLE_PSO_HPP
