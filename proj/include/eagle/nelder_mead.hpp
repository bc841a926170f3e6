// Nelder-Mead downhill simplex on the Monte Carlo mean of a noisy objective.
#ifndef EAGLE_NELDER_MEAD_HPP
#define EAGLE_NELDER_MEAD_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "core.hpp"
#include "objectives.hpp"
#include "random.hpp"

namespace eagle {

struct NmConfig
{
  double reflection = 1.0;
  double expansion = 2.0;
  double contraction = 0.5;
  double shrink = 0.5;
  /// Stop when max - min of the vertex values drops below this.
  double tolerance = 1e-10;
  std::uint64_t max_evals = 1000;
  /// Samples per vertex estimate on noisy objectives.
  std::size_t samples = 3;

  void validate() const
  {
    require(reflection > 0.0, ErrorKind::invalid_config, "reflection must be > 0");
    require(expansion > 1.0, ErrorKind::invalid_config, "expansion must be > 1");
    require(contraction > 0.0 && contraction < 1.0, ErrorKind::invalid_config, "contraction must lie in (0, 1)");
    require(shrink > 0.0 && shrink < 1.0, ErrorKind::invalid_config, "shrink must lie in (0, 1)");
    require(tolerance >= 0.0, ErrorKind::invalid_config, "tolerance must be non-negative");
    require(samples >= 1, ErrorKind::invalid_config, "samples must be >= 1");
  }
};

namespace detail {

/// Simplex search from region.center with axis edges `edge`; every trial
/// point is folded into `region`.
inline OptimizationResult nelder_mead_impl(NoisyObjective& obj, const Region& region, double edge,
                                           const NmConfig& cfg, RngStream& rng)
{
  cfg.validate();
  region.validate();
  require_same_dim(region.dim(), obj.dim(), "nelder_mead region");
  const std::size_t d = obj.dim();
  const std::size_t samples = obj.deterministic() ? 1 : cfg.samples;
  require(cfg.max_evals >= (d + 1) * samples, ErrorKind::invalid_config,
          "nelder_mead budget must cover the initial simplex");

  struct Vertex
  {
    DesignVector x;
    MeanEstimate est;
  };

  const std::uint64_t start = obj.eval_count();
  auto spent = [&] { return obj.eval_count() - start; };
  auto can_afford = [&](std::size_t points) { return spent() + points * samples <= cfg.max_evals; };
  auto eval = [&](DesignVector x) {
    region.contain(x);
    Vertex v{std::move(x), {}};
    v.est = estimate_mean(obj, v.x, rng, samples);
    return v;
  };

  std::vector<Vertex> simplex;
  simplex.reserve(d + 1);
  simplex.push_back(eval(region.center));
  for (std::size_t k = 0; k < d; ++k) {
    DesignVector x = region.center;
    x[k] += edge;
    // Step the other way when the axis offset would leave the box.
    if (x[k] > region.bounds[k].hi) {
      x[k] = region.center[k] - edge;
    }
    simplex.push_back(eval(std::move(x)));
  }
  auto order = [&] {
    std::stable_sort(simplex.begin(), simplex.end(),
                     [](const Vertex& a, const Vertex& b) { return a.est.mean < b.est.mean; });
  };
  order();

  OptimizationResult res;
  auto record = [&](std::size_t it, bool improved) {
    res.trace.push_back({it, simplex.front().est.mean, simplex.front().est.std, simplex.front().est.mean, spent(),
                         improved, it == 0 ? TraceSource::init : TraceSource::generation});
  };
  record(0, true);

  std::size_t it = 0;
  while (simplex.back().est.mean - simplex.front().est.mean >= cfg.tolerance && can_afford(1)) {
    ++it;
    const double prev_best = simplex.front().est.mean;
    DesignVector centroid(d, 0.0);
    for (std::size_t v = 0; v < d; ++v) {
      for (std::size_t k = 0; k < d; ++k) {
        centroid[k] += simplex[v].x[k] / static_cast<double>(d);
      }
    }
    const auto& worst = simplex.back();
    auto along = [&](double t) {
      DesignVector x(d);
      for (std::size_t k = 0; k < d; ++k) {
        x[k] = centroid[k] + t * (centroid[k] - worst.x[k]);
      }
      return x;
    };

    const double f_best = simplex.front().est.mean;
    const double f_second = simplex[d - 1].est.mean;
    const double f_worst = worst.est.mean;

    Vertex xr = eval(along(cfg.reflection));
    bool do_shrink = false;
    if (xr.est.mean < f_best) {
      if (can_afford(1)) {
        Vertex xe = eval(along(cfg.reflection * cfg.expansion));
        simplex.back() = xe.est.mean < xr.est.mean ? std::move(xe) : std::move(xr);
      } else {
        simplex.back() = std::move(xr);
      }
    } else if (xr.est.mean < f_second) {
      simplex.back() = std::move(xr);
    } else if (!can_afford(1)) {
      break;
    } else if (xr.est.mean < f_worst) {
      Vertex xc = eval(along(cfg.reflection * cfg.contraction));
      if (xc.est.mean <= xr.est.mean) {
        simplex.back() = std::move(xc);
      } else {
        do_shrink = true;
      }
    } else {
      Vertex xcc = eval(along(-cfg.contraction));
      if (xcc.est.mean < f_worst) {
        simplex.back() = std::move(xcc);
      } else {
        do_shrink = true;
      }
    }
    if (do_shrink) {
      if (!can_afford(d)) {
        break;
      }
      const DesignVector best = simplex.front().x;
      for (std::size_t v = 1; v <= d; ++v) {
        DesignVector x(d);
        for (std::size_t k = 0; k < d; ++k) {
          x[k] = best[k] + cfg.shrink * (simplex[v].x[k] - best[k]);
        }
        simplex[v] = eval(std::move(x));
      }
    }
    order();
    record(it, simplex.front().est.mean < prev_best);
  }

  res.best_x = simplex.front().x;
  res.best_mean = simplex.front().est.mean;
  res.best_std = simplex.front().est.std;
  res.stages = it;
  res.evaluations = spent();
  return res;
}

} // namespace detail

/// Minimize inside the ball `region` (intersected with its box), starting
/// from the center with simplex edges of radius / 2.
inline OptimizationResult nelder_mead(NoisyObjective& obj, const Region& region, const NmConfig& cfg,
                                      RngStream& rng)
{
  const double edge = std::isfinite(region.radius) ? 0.5 * region.radius : 0.25 * max_width(region.bounds);
  return detail::nelder_mead_impl(obj, region, edge, cfg, rng);
}

/// Start at `start` with simplex edges of radius / 2; trial points are only
/// confined to the objective's bounds.
inline OptimizationResult nelder_mead(NoisyObjective& obj, std::span<const double> start, double radius,
                                      const NmConfig& cfg, RngStream& rng)
{
  require(radius > 0.0, ErrorKind::invalid_config, "radius must be positive");
  require_same_dim(start.size(), obj.dim(), "nelder_mead start");
  require(inside(start, obj.bounds()), ErrorKind::invalid_config, "start outside bounds");
  Region box = Region::whole(obj.bounds());
  box.center.assign(start.begin(), start.end());
  return detail::nelder_mead_impl(obj, box, 0.5 * radius, cfg, rng);
}

} // namespace eagle

#endif // EAGLE_NELDER_MEAD_HPP
