// Heavy-tailed step lengths and the Lévy walk used for global exploration.
#ifndef EAGLE_LEVY_HPP
#define EAGLE_LEVY_HPP

#include <cmath>
#include <span>

#include "core.hpp"
#include "random.hpp"

namespace eagle {

/// Power-law step-length law p(t) ∝ t^(-lambda) on [step_min, step_max].
struct LevyConfig
{
  double lambda = 1.5;
  double step_min = 1e-3;
  double step_max = 1.0;

  void validate() const
  {
    require(lambda > 1.0 && lambda <= 3.0, ErrorKind::invalid_config,
            "levy exponent must lie in (1, 3]");
    require(step_min > 0.0, ErrorKind::invalid_config, "step_min must be positive");
    require(step_max >= step_min, ErrorKind::invalid_config, "step_max must be >= step_min");
  }

  /// step_min = 1e-3 x width, step_max = width.
  static LevyConfig for_bounds(const Bounds& bounds, double lambda = 1.5)
  {
    const double w = max_width(bounds);
    return LevyConfig{lambda, 1e-3 * w, w};
  }
};

/// Inverse CDF of the Pareto law evaluated at u in [0, 1), truncated at step_max.
inline double levy_step_from_uniform(double u, const LevyConfig& cfg)
{
  cfg.validate();
  const double t = cfg.step_min * std::pow(1.0 - u, -1.0 / (cfg.lambda - 1.0));
  return std::min(t, cfg.step_max);
}

inline double sample_levy_step(RngStream& rng, const LevyConfig& cfg)
{
  return levy_step_from_uniform(rng.uniform(), cfg);
}

/// current + step * direction, reflected coordinate-wise into bounds.
inline DesignVector walk_from(std::span<const double> current, const Bounds& bounds, double step,
                              std::span<const double> direction)
{
  require_same_dim(current.size(), bounds.size(), "walk_from");
  require_same_dim(direction.size(), bounds.size(), "walk_from direction");
  DesignVector x(current.begin(), current.end());
  for (std::size_t k = 0; k < x.size(); ++k) {
    x[k] += step * direction[k];
  }
  reflect_into(x, bounds);
  return x;
}

/// One Lévy-walk jump from current: heavy-tailed length, isotropic direction.
inline DesignVector levy_walk_point(RngStream& rng, std::span<const double> current,
                                    const Bounds& bounds, const LevyConfig& cfg)
{
  cfg.validate();
  require_same_dim(current.size(), bounds.size(), "levy_walk_point");
  const double t = sample_levy_step(rng, cfg);
  const auto u = sample_unit_direction(rng, current.size());
  return walk_from(current, bounds, t, u);
}

} // namespace eagle

#endif // EAGLE_LEVY_HPP
