// Seeded random streams and the samplers built on them.
#ifndef EAGLE_RANDOM_HPP
#define EAGLE_RANDOM_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "core.hpp"

namespace eagle {

/// A reproducible random stream identified by (seed, stream_id).
///
/// The engine is std::mt19937_64 seeded through std::seed_seq, both of which
/// the standard pins down bit for bit. The real-valued draws below are
/// computed here rather than through std::*_distribution, whose algorithms
/// are implementation defined, so a given (seed, stream_id) yields the same
/// sequence with every standard library.
class RngStream
{
public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id)
  : seed_(seed)
  , stream_id_(stream_id)
  , engine_(make_engine(seed, stream_id))
  {}

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal draw (Marsaglia polar method).
  double normal()
  {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u = 0.0;
    double v = 0.0;
    double s = 0.0;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    has_spare_ = true;
    return u * m;
  }

private:
  static std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream_id)
  {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream_id),
                      static_cast<std::uint32_t>(stream_id >> 32), 0x9e3779b9u};
    return std::mt19937_64(seq);
  }

  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Gaussian draw with the given mean and standard deviation. sigma = 0
/// returns the mean exactly without consuming randomness.
inline double sample_gaussian(RngStream& rng, double mean, double sigma)
{
  require(sigma >= 0.0, ErrorKind::invalid_config, "sigma must be non-negative");
  if (sigma == 0.0) {
    return mean;
  }
  return mean + sigma * rng.normal();
}

/// Uniform point inside a non-degenerate box.
inline DesignVector sample_uniform_in_bounds(RngStream& rng, const Bounds& bounds)
{
  require(!bounds.empty(), ErrorKind::invalid_config, "empty bounds");
  DesignVector x(bounds.size());
  for (std::size_t k = 0; k < bounds.size(); ++k) {
    const auto& b = bounds[k];
    require(b.hi > b.lo, ErrorKind::invalid_config, "degenerate interval in bounds");
    double v = rng.uniform(b.lo, b.hi);
    // Rounding can land exactly on hi; keep strictly inside.
    if (v >= b.hi) {
      v = std::nextafter(b.hi, b.lo);
    }
    if (v <= b.lo) {
      v = std::nextafter(b.lo, b.hi);
    }
    x[k] = v;
  }
  return x;
}

/// Uniformly random unit vector in d dimensions.
inline DesignVector sample_unit_direction(RngStream& rng, std::size_t dim)
{
  DesignVector u(dim);
  double norm = 0.0;
  do {
    norm = 0.0;
    for (auto& c : u) {
      c = rng.normal();
      norm += c * c;
    }
  } while (norm == 0.0);
  norm = std::sqrt(norm);
  for (auto& c : u) {
    c /= norm;
  }
  return u;
}

/// Uniform point in region = box ∩ ball. Points drawn in the ball are folded
/// into the box; folding never increases the distance to an in-box center.
inline DesignVector sample_uniform_in_region(RngStream& rng, const Region& region)
{
  region.validate();
  if (!std::isfinite(region.radius)) {
    return sample_uniform_in_bounds(rng, region.bounds);
  }
  const std::size_t d = region.dim();
  // Ball covers the box: plain box sampling is uniform on the intersection.
  double far_sq = 0.0;
  for (std::size_t k = 0; k < d; ++k) {
    const double a = std::max(region.center[k] - region.bounds[k].lo,
                              region.bounds[k].hi - region.center[k]);
    far_sq += a * a;
  }
  if (far_sq <= region.radius * region.radius) {
    return sample_uniform_in_bounds(rng, region.bounds);
  }
  const auto u = sample_unit_direction(rng, d);
  const double rho = region.radius * std::pow(rng.uniform(), 1.0 / static_cast<double>(d));
  DesignVector x(d);
  for (std::size_t k = 0; k < d; ++k) {
    x[k] = region.center[k] + rho * u[k];
  }
  reflect_into(x, region.bounds);
  return x;
}

} // namespace eagle

#endif // EAGLE_RANDOM_HPP
