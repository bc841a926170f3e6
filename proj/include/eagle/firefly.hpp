// Firefly Algorithm: standalone optimizer and the Eagle Strategy's local searcher.
#ifndef EAGLE_FIREFLY_HPP
#define EAGLE_FIREFLY_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <span>
#include <vector>

#include "core.hpp"
#include "objectives.hpp"
#include "random.hpp"

namespace eagle {

enum class PairScan
{
  lower_triangular, // i compares against j < i in the ranked population
  full,             // i compares against every j != i
};

struct FaConfig
{
  double alpha = 0.2;
  double beta0 = 1.0;
  double gamma = 1.0;
  std::size_t n = 20;
  std::size_t max_gen = 100;
  /// Per-dimension randomization scale S_k; empty means S_k = 1.
  std::vector<double> scale;
  /// Samples per brightness estimate on noisy objectives.
  std::size_t samples = 3;
  /// Stagnation: stop after `patience` consecutive generations whose best
  /// estimated value moved by less than `tolerance`.
  double tolerance = 1e-5;
  std::size_t patience = 30;
  PairScan pair_scan = PairScan::lower_triangular;

  void validate(std::size_t dim) const
  {
    require(alpha >= 0.0 && alpha <= 1.0, ErrorKind::invalid_config, "alpha must lie in [0, 1]");
    require(beta0 > 0.0, ErrorKind::invalid_config, "beta0 must be positive");
    require(gamma >= 0.0, ErrorKind::invalid_config, "gamma must be non-negative");
    require(n >= 2, ErrorKind::invalid_config, "population needs at least 2 fireflies");
    require(samples >= 1, ErrorKind::invalid_config, "samples must be >= 1");
    require(patience >= 1, ErrorKind::invalid_config, "patience must be >= 1");
    if (!scale.empty()) {
      require_same_dim(scale.size(), dim, "firefly scale");
      for (double s : scale) {
        require(s > 0.0, ErrorKind::invalid_config, "scale factors must be positive");
      }
    }
  }

  double scale_at(std::size_t k) const noexcept { return scale.empty() ? 1.0 : scale[k]; }
};

/// beta0 * exp(-gamma * r^2).
inline double attractiveness(double r, double beta0, double gamma)
{
  return beta0 * std::exp(-gamma * r * r);
}

inline double distance(std::span<const double> xi, std::span<const double> xj)
{
  return euclidean_distance(xi, xj);
}

/// Observer for the attraction term of each move: (r_ij, beta).
using AttractionObserver = std::function<void(double, double)>;

/// Move xi toward the brighter xj:
///   xi + beta0 exp(-gamma r^2) (xj - xi) + alpha S_k (u_k - 1/2),  u_k ~ U[0, 1).
/// The result is not confined; see the Region overload.
inline DesignVector move_firefly(std::span<const double> xi, std::span<const double> xj, const FaConfig& cfg,
                                 RngStream& rng, const AttractionObserver& observe = {})
{
  require_same_dim(xi.size(), xj.size(), "move_firefly");
  const double r = distance(xi, xj);
  const double beta = attractiveness(r, cfg.beta0, cfg.gamma);
  if (observe) {
    observe(r, beta);
  }
  DesignVector out(xi.size());
  // lerp is exact at beta = 0 and beta = 1.
  for (std::size_t k = 0; k < xi.size(); ++k) {
    out[k] = std::lerp(xi[k], xj[k], beta);
  }
  // The random term always consumes one draw per coordinate so that alpha
  // does not change the stream layout.
  for (std::size_t k = 0; k < xi.size(); ++k) {
    out[k] += cfg.alpha * cfg.scale_at(k) * (rng.uniform() - 0.5);
  }
  return out;
}

inline DesignVector move_firefly(std::span<const double> xi, std::span<const double> xj, const FaConfig& cfg,
                                 RngStream& rng, const Region& region, const AttractionObserver& observe = {})
{
  auto out = move_firefly(xi, xj, cfg, rng, observe);
  region.contain(out);
  return out;
}

/// Random move taken by a firefly that sees no brighter partner.
inline DesignVector random_firefly_step(std::span<const double> xi, const FaConfig& cfg, RngStream& rng,
                                        const Region& region)
{
  DesignVector out(xi.begin(), xi.end());
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k] += cfg.alpha * cfg.scale_at(k) * (rng.uniform() - 0.5);
  }
  region.contain(out);
  return out;
}

/// Run the Firefly Algorithm on obj inside region with at most `budget`
/// single evaluations. Brightness is the negated Monte Carlo mean.
inline OptimizationResult fa_optimize(NoisyObjective& obj, const Region& region, const FaConfig& cfg,
                                      RngStream& rng, std::uint64_t budget,
                                      const AttractionObserver& observe = {})
{
  region.validate();
  require_same_dim(region.dim(), obj.dim(), "fa_optimize region");
  cfg.validate(obj.dim());
  const std::size_t samples = obj.deterministic() ? 1 : cfg.samples;
  const std::uint64_t per_generation = static_cast<std::uint64_t>(cfg.n) * samples;
  require(budget >= per_generation, ErrorKind::invalid_config,
          "firefly budget must cover the initial population");

  struct Fly
  {
    DesignVector x;
    MeanEstimate est;
  };

  const std::uint64_t start = obj.eval_count();
  auto spent = [&] { return obj.eval_count() - start; };

  std::vector<Fly> pop(cfg.n);
  for (auto& f : pop) {
    f.x = sample_uniform_in_region(rng, region);
    f.est = estimate_mean(obj, f.x, rng, samples);
  }
  // Rank brightest first; ties keep their index order.
  auto rank = [&pop] {
    std::stable_sort(pop.begin(), pop.end(), [](const Fly& a, const Fly& b) { return a.est.mean < b.est.mean; });
  };
  rank();

  OptimizationResult res;
  res.best_x = pop.front().x;
  res.best_mean = pop.front().est.mean;
  res.best_std = pop.front().est.std;
  res.trace.push_back({0, res.best_mean, res.best_std, res.best_mean, spent(), true, TraceSource::init});

  std::size_t stalled = 0;
  std::size_t gen = 0;
  while (gen < cfg.max_gen && spent() + per_generation <= budget) {
    ++gen;
    for (std::size_t i = 0; i < pop.size(); ++i) {
      DesignVector p = pop[i].x;
      bool moved = false;
      const std::size_t upper = cfg.pair_scan == PairScan::full ? pop.size() : i;
      for (std::size_t j = 0; j < upper; ++j) {
        if (j == i) {
          continue;
        }
        // Brighter means larger intensity = smaller estimated objective.
        if (pop[j].est.mean < pop[i].est.mean) {
          p = move_firefly(p, pop[j].x, cfg, rng, region, observe);
          moved = true;
        }
      }
      if (!moved) {
        p = random_firefly_step(p, cfg, rng, region);
      }
      pop[i].x = std::move(p);
      pop[i].est = estimate_mean(obj, pop[i].x, rng, samples);
    }
    rank();

    const double previous = res.best_mean;
    bool improved = false;
    if (pop.front().est.mean < res.best_mean) {
      res.best_x = pop.front().x;
      res.best_mean = pop.front().est.mean;
      res.best_std = pop.front().est.std;
      improved = true;
    }
    res.trace.push_back({gen, res.best_mean, res.best_std, res.best_mean, spent(), improved,
                         TraceSource::generation});
    stalled = (previous - res.best_mean < cfg.tolerance) ? stalled + 1 : 0;
    if (stalled >= cfg.patience) {
      break;
    }
  }
  res.stages = gen;
  res.evaluations = spent();
  return res;
}

} // namespace eagle

#endif // EAGLE_FIREFLY_HPP
