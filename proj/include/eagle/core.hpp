// Shared value types, error reporting and box/ball containment helpers.
#ifndef EAGLE_CORE_HPP
#define EAGLE_CORE_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace eagle {

/// A point in the d-dimensional search domain.
using DesignVector = std::vector<double>;

/// Closed interval [lo, hi] for one coordinate.
struct Interval
{
  double lo = 0.0;
  double hi = 0.0;

  double width() const noexcept { return hi - lo; }
  double mid() const noexcept { return 0.5 * (lo + hi); }
  bool contains(double x) const noexcept { return x >= lo && x <= hi; }

  friend bool operator==(const Interval&, const Interval&) = default;
};

using Bounds = std::vector<Interval>;

enum class ErrorKind
{
  invalid_config,
  dimension_mismatch,
  empty_region,
  unknown_algorithm,
  unknown_problem,
  unknown_format,
};

inline const char* to_string(ErrorKind kind) noexcept
{
  switch (kind) {
    case ErrorKind::invalid_config: return "invalid-config";
    case ErrorKind::dimension_mismatch: return "dimension-mismatch";
    case ErrorKind::empty_region: return "empty-region";
    case ErrorKind::unknown_algorithm: return "unknown-algorithm";
    case ErrorKind::unknown_problem: return "unknown-problem";
    case ErrorKind::unknown_format: return "unknown-format";
  }
  return "unknown";
}

/// Every failure raised by the library carries one of the ErrorKind tags.
class Error : public std::runtime_error
{
public:
  Error(ErrorKind kind, const std::string& what)
  : std::runtime_error(std::string(to_string(kind)) + ": " + what)
  , kind_(kind)
  {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

inline void require(bool condition, ErrorKind kind, const std::string& what)
{
  if (!condition) {
    throw Error(kind, what);
  }
}

inline void require_same_dim(std::size_t a, std::size_t b, const char* where)
{
  require(a == b, ErrorKind::dimension_mismatch,
          std::string(where) + ": got " + std::to_string(a) + " vs " + std::to_string(b));
}

inline bool inside(std::span<const double> x, const Bounds& bounds) noexcept
{
  if (x.size() != bounds.size()) {
    return false;
  }
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (!bounds[k].contains(x[k])) {
      return false;
    }
  }
  return true;
}

inline double max_width(const Bounds& bounds) noexcept
{
  double w = 0.0;
  for (const auto& b : bounds) {
    w = std::max(w, b.width());
  }
  return w;
}

/// Fold x into [lo, hi] by repeated mirror reflection at the endpoints.
/// The map is 1-Lipschitz and fixes every point of the interval.
inline double reflect_into(double x, Interval iv) noexcept
{
  const double w = iv.width();
  if (!(w > 0.0)) {
    return iv.lo;
  }
  if (iv.contains(x)) {
    return x;
  }
  const double period = 2.0 * w;
  double y = std::fmod(x - iv.lo, period);
  if (y < 0.0) {
    y += period;
  }
  if (y > w) {
    y = period - y;
  }
  return iv.lo + y;
}

inline void reflect_into(std::span<double> x, const Bounds& bounds)
{
  require_same_dim(x.size(), bounds.size(), "reflect_into");
  for (std::size_t k = 0; k < x.size(); ++k) {
    x[k] = reflect_into(x[k], bounds[k]);
  }
}

inline double euclidean_distance(std::span<const double> a, std::span<const double> b)
{
  require_same_dim(a.size(), b.size(), "distance");
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = a[k] - b[k];
    s += d * d;
  }
  return std::sqrt(s);
}

/// A search region: the intersection of a box with a ball.
/// An infinite radius means the whole box.
struct Region
{
  Bounds bounds;
  DesignVector center;
  double radius = std::numeric_limits<double>::infinity();

  std::size_t dim() const noexcept { return bounds.size(); }

  bool contains(std::span<const double> x) const
  {
    if (!inside(x, bounds)) {
      return false;
    }
    return !std::isfinite(radius) || euclidean_distance(x, center) <= radius * (1.0 + 1e-12);
  }

  /// Extent of the region along coordinate k.
  double extent(std::size_t k) const noexcept
  {
    const double w = bounds[k].width();
    return std::isfinite(radius) ? std::min(w, 2.0 * radius) : w;
  }

  static Region whole(const Bounds& bounds)
  {
    Region r;
    r.bounds = bounds;
    r.center.resize(bounds.size());
    for (std::size_t k = 0; k < bounds.size(); ++k) {
      r.center[k] = bounds[k].mid();
    }
    return r;
  }

  void validate() const
  {
    require(!bounds.empty(), ErrorKind::empty_region, "region has no dimensions");
    require_same_dim(center.size(), bounds.size(), "region center");
    for (const auto& b : bounds) {
      require(b.hi >= b.lo, ErrorKind::empty_region, "interval with hi < lo");
    }
    require(radius > 0.0, ErrorKind::empty_region, "non-positive radius");
    require(inside(center, bounds), ErrorKind::empty_region, "center outside bounds");
  }

  /// Map x into the region: coordinate folding into the box, then a radial
  /// fold into the ball. Both steps keep the point in the box because the
  /// center lies in the box and the radial fold is a convex combination.
  void contain(std::span<double> x) const
  {
    reflect_into(x, bounds);
    if (!std::isfinite(radius)) {
      return;
    }
    const double rho = euclidean_distance(x, center);
    if (rho <= radius) {
      return;
    }
    const double folded = reflect_into(rho, Interval{0.0, radius});
    const double s = folded / rho;
    for (std::size_t k = 0; k < x.size(); ++k) {
      x[k] = center[k] + s * (x[k] - center[k]);
    }
  }
};

/// One row of a convergence trace.
enum class TraceSource
{
  init,
  walk,
  local,
  generation,
};

inline const char* to_string(TraceSource s) noexcept
{
  switch (s) {
    case TraceSource::init: return "init";
    case TraceSource::walk: return "walk";
    case TraceSource::local: return "local";
    case TraceSource::generation: return "generation";
  }
  return "?";
}

struct TraceEntry
{
  std::size_t stage = 0;
  double best_mean = 0.0;
  double best_std = 0.0;
  double best_score = 0.0;
  std::uint64_t evaluations = 0;
  bool accepted = false;
  TraceSource source = TraceSource::generation;

  friend bool operator==(const TraceEntry&, const TraceEntry&) = default;
};

struct OptimizationResult
{
  DesignVector best_x;
  double best_mean = std::numeric_limits<double>::infinity();
  double best_std = 0.0;
  std::uint64_t evaluations = 0;
  std::size_t stages = 0;
  std::vector<TraceEntry> trace;

  friend bool operator==(const OptimizationResult&, const OptimizationResult&) = default;
};

} // namespace eagle

#endif // EAGLE_CORE_HPP
