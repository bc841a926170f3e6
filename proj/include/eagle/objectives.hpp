// Benchmark functions, noise models and Monte Carlo mean estimation.
#ifndef EAGLE_OBJECTIVES_HPP
#define EAGLE_OBJECTIVES_HPP

#include <algorithm>
#include <array>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include "core.hpp"
#include "random.hpp"

namespace eagle {

enum class FunctionId
{
  ackley,
  dejong,
  easom,
  griewank,
  michalewicz,
  rastrigin,
  rosenbrock,
  schwefel,
  shubert,
};

namespace detail {

struct FunctionInfo
{
  FunctionId id;
  std::string_view name;
  std::size_t default_dim;
  std::size_t fixed_dim; // 0 when any dimension is allowed
  std::size_t min_dim;
  Interval domain;
  std::string_view formula;
};

inline constexpr std::array<FunctionInfo, 9> kFunctions{{
  {FunctionId::ackley, "ackley", 128, 0, 1, {-32.768, 32.768},
   "20*(1 - exp(-0.2*sqrt(mean(x_i^2)))) + (e - exp(mean(cos(2*pi*x_i))))"},
  {FunctionId::dejong, "dejong", 256, 0, 1, {-5.12, 5.12}, "sum(x_i^2)"},
  {FunctionId::easom, "easom", 2, 2, 2, {-100.0, 100.0},
   "-cos(x_1)*cos(x_2)*exp(-((x_1-pi)^2 + (x_2-pi)^2))"},
  {FunctionId::griewank, "griewank", 16, 0, 1, {-600.0, 600.0},
   "1 + sum(x_i^2)/4000 - prod(cos(x_i/sqrt(i)))"},
  {FunctionId::michalewicz, "michalewicz", 16, 0, 1, {0.0, std::numbers::pi},
   "-sum(sin(x_i)*sin(i*x_i^2/pi)^20)"},
  {FunctionId::rastrigin, "rastrigin", 16, 0, 1, {-5.12, 5.12},
   "10*d + sum(x_i^2 - 10*cos(2*pi*x_i))"},
  {FunctionId::rosenbrock, "rosenbrock", 16, 0, 2, {-2.048, 2.048},
   "sum(100*(x_{i+1} - x_i^2)^2 + (1 - x_i)^2)"},
  {FunctionId::schwefel, "schwefel", 128, 0, 1, {-500.0, 500.0},
   "c*d - sum(x_i*sin(sqrt(|x_i|))), c = max_x x*sin(sqrt(|x|)) = 418.98288727..."},
  {FunctionId::shubert, "shubert", 2, 2, 2, {-10.0, 10.0},
   "prod_{i=1,2} sum_{j=1..5} j*cos((j+1)*x_i + j)"},
}};

inline const FunctionInfo& info(FunctionId id)
{
  for (const auto& f : kFunctions) {
    if (f.id == id) {
      return f;
    }
  }
  throw Error(ErrorKind::unknown_problem, "unregistered function id");
}

inline double ackley(std::span<const double> x)
{
  const double d = static_cast<double>(x.size());
  double sq = 0.0;
  double cs = 0.0;
  for (double v : x) {
    sq += v * v;
    cs += std::cos(2.0 * std::numbers::pi * v);
  }
  // Grouped so that the origin evaluates to exactly 0.
  return 20.0 * (1.0 - std::exp(-0.2 * std::sqrt(sq / d))) + (std::numbers::e - std::exp(cs / d));
}

inline double dejong(std::span<const double> x)
{
  double s = 0.0;
  for (double v : x) {
    s += v * v;
  }
  return s;
}

inline double easom(std::span<const double> x)
{
  const double a = x[0] - std::numbers::pi;
  const double b = x[1] - std::numbers::pi;
  return -std::cos(x[0]) * std::cos(x[1]) * std::exp(-(a * a + b * b));
}

inline double griewank(std::span<const double> x)
{
  double s = 0.0;
  double p = 1.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    s += x[i] * x[i];
    p *= std::cos(x[i] / std::sqrt(static_cast<double>(i + 1)));
  }
  return 1.0 + s / 4000.0 - p;
}

inline double michalewicz_term(double x, std::size_t i)
{
  const double s = std::sin(static_cast<double>(i) * x * x / std::numbers::pi);
  const double s2 = s * s;
  const double s4 = s2 * s2;
  const double s8 = s4 * s4;
  const double s16 = s8 * s8;
  return -std::sin(x) * s16 * s4;
}

inline double michalewicz(std::span<const double> x)
{
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    s += michalewicz_term(x[i], i + 1);
  }
  return s;
}

inline double rastrigin(std::span<const double> x)
{
  double s = 10.0 * static_cast<double>(x.size());
  for (double v : x) {
    s += v * v - 10.0 * std::cos(2.0 * std::numbers::pi * v);
  }
  return s;
}

inline double rosenbrock(std::span<const double> x)
{
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const double a = x[i + 1] - x[i] * x[i];
    const double b = 1.0 - x[i];
    s += 100.0 * a * a + b * b;
  }
  return s;
}

inline double schwefel_gain(double x) { return x * std::sin(std::sqrt(std::abs(x))); }

inline double shubert_factor(double x)
{
  double s = 0.0;
  for (int j = 1; j <= 5; ++j) {
    s += j * std::cos((j + 1) * x + j);
  }
  return s;
}

inline double shubert(std::span<const double> x) { return shubert_factor(x[0]) * shubert_factor(x[1]); }

/// Global minimizer of a 1-D function on [lo, hi]: dense grid scan, then
/// Brent refinement inside the winning grid cell pair.
template <typename F>
std::pair<double, double> minimize_1d(F f, Interval iv, std::size_t grid)
{
  const double h = iv.width() / static_cast<double>(grid);
  std::size_t best = 0;
  double best_v = f(iv.lo);
  for (std::size_t g = 1; g <= grid; ++g) {
    const double v = f(iv.lo + h * static_cast<double>(g));
    if (v < best_v) {
      best_v = v;
      best = g;
    }
  }
  const double a = std::max(iv.lo, iv.lo + h * (static_cast<double>(best) - 1.0));
  const double b = std::min(iv.hi, iv.lo + h * (static_cast<double>(best) + 1.0));
  const auto r = boost::math::tools::brent_find_minima(f, a, b, std::numeric_limits<double>::digits);
  if (r.second <= best_v) {
    return r;
  }
  return {iv.lo + h * static_cast<double>(best), best_v};
}

/// All local minimizers of f on [lo, hi] whose value is within tol of the global minimum.
template <typename F>
std::vector<double> all_global_minimizers_1d(F f, Interval iv, std::size_t grid, double tol)
{
  const double h = iv.width() / static_cast<double>(grid);
  std::vector<std::pair<double, double>> local;
  for (std::size_t g = 1; g < grid; ++g) {
    const double x0 = iv.lo + h * static_cast<double>(g - 1);
    const double x1 = iv.lo + h * static_cast<double>(g);
    const double x2 = iv.lo + h * static_cast<double>(g + 1);
    if (f(x1) <= f(x0) && f(x1) <= f(x2)) {
      local.push_back(boost::math::tools::brent_find_minima(f, x0, x2, std::numeric_limits<double>::digits));
    }
  }
  double lowest = std::numeric_limits<double>::infinity();
  for (const auto& [x, v] : local) {
    lowest = std::min(lowest, v);
  }
  std::vector<double> out;
  for (const auto& [x, v] : local) {
    if (v <= lowest + tol) {
      out.push_back(x);
    }
  }
  return out;
}

} // namespace detail

/// A named deterministic test function on a box, with its known global minimum.
class BenchmarkProblem
{
public:
  BenchmarkProblem(FunctionId id, std::size_t dim)
  : id_(id)
  , dim_(dim)
  {
    const auto& fi = detail::info(id);
    if (fi.fixed_dim != 0) {
      require(dim == fi.fixed_dim, ErrorKind::dimension_mismatch,
              std::string(fi.name) + " is defined for d = " + std::to_string(fi.fixed_dim) + " only");
    }
    require(dim >= fi.min_dim, ErrorKind::dimension_mismatch,
            std::string(fi.name) + " needs d >= " + std::to_string(fi.min_dim));
    bounds_.assign(dim, fi.domain);
    locate_minimum();
  }

  FunctionId id() const noexcept { return id_; }
  std::string_view name() const noexcept { return detail::info(id_).name; }
  std::string_view formula() const noexcept { return detail::info(id_).formula; }
  std::size_t dim() const noexcept { return dim_; }
  const Bounds& bounds() const noexcept { return bounds_; }
  double f_star() const noexcept { return f_star_; }
  const DesignVector& x_star() const noexcept { return minimizers_.front(); }

  /// Every known global minimizer (18 for Shubert, one otherwise).
  const std::vector<DesignVector>& minimizers() const noexcept { return minimizers_; }

  double domain_width() const noexcept { return max_width(bounds_); }

  double operator()(std::span<const double> x) const
  {
    require_same_dim(x.size(), dim_, name().data());
    switch (id_) {
      case FunctionId::ackley: return detail::ackley(x);
      case FunctionId::dejong: return detail::dejong(x);
      case FunctionId::easom: return detail::easom(x);
      case FunctionId::griewank: return detail::griewank(x);
      case FunctionId::michalewicz: return detail::michalewicz(x);
      case FunctionId::rastrigin: return detail::rastrigin(x);
      case FunctionId::rosenbrock: return detail::rosenbrock(x);
      case FunctionId::schwefel: return schwefel_offset_ * static_cast<double>(dim_) - schwefel_sum(x);
      case FunctionId::shubert: return detail::shubert(x);
    }
    return 0.0;
  }

private:
  static double schwefel_sum(std::span<const double> x)
  {
    double s = 0.0;
    for (double v : x) {
      s += detail::schwefel_gain(v);
    }
    return s;
  }

  void locate_minimum()
  {
    const auto& dom = detail::info(id_).domain;
    DesignVector x(dim_, 0.0);
    switch (id_) {
      case FunctionId::ackley:
      case FunctionId::dejong:
      case FunctionId::griewank:
      case FunctionId::rastrigin:
        minimizers_ = {x};
        break;
      case FunctionId::rosenbrock:
        minimizers_ = {DesignVector(dim_, 1.0)};
        break;
      case FunctionId::easom:
        minimizers_ = {DesignVector{std::numbers::pi, std::numbers::pi}};
        break;
      case FunctionId::schwefel: {
        auto [xs, v] = detail::minimize_1d([](double t) { return -detail::schwefel_gain(t); }, dom, 20000);
        // Brent stops near sqrt(eps) relative; polish on the derivative root.
        auto slope = [](double t) { return std::sin(std::sqrt(t)) + 0.5 * std::sqrt(t) * std::cos(std::sqrt(t)); };
        std::uintmax_t iters = 100;
        const auto [lo, hi] = boost::math::tools::toms748_solve(slope, xs - 1e-3, xs + 1e-3,
                                                               boost::math::tools::eps_tolerance<double>(), iters);
        xs = 0.5 * (lo + hi);
        v = -detail::schwefel_gain(xs);
        schwefel_offset_ = -v;
        minimizers_ = {DesignVector(dim_, xs)};
        break;
      }
      case FunctionId::michalewicz: {
        // Separable: the global minimizer is the coordinate-wise 1-D minimizer.
        for (std::size_t i = 0; i < dim_; ++i) {
          const std::size_t idx = i + 1;
          x[i] = detail::minimize_1d([idx](double t) { return detail::michalewicz_term(t, idx); }, dom,
                                     4000 * (idx + 1))
                   .first;
        }
        minimizers_ = {x};
        break;
      }
      case FunctionId::shubert: {
        // f = g(x1) g(x2); the minimum pairs the largest g with the smallest g.
        const auto lows = detail::all_global_minimizers_1d(detail::shubert_factor, dom, 20000, 1e-8);
        const auto highs = detail::all_global_minimizers_1d(
          [](double t) { return -detail::shubert_factor(t); }, dom, 20000, 1e-8);
        for (double a : highs) {
          for (double b : lows) {
            minimizers_.push_back({a, b});
            minimizers_.push_back({b, a});
          }
        }
        break;
      }
    }
    f_star_ = std::numeric_limits<double>::infinity();
    for (const auto& m : minimizers_) {
      f_star_ = std::min(f_star_, (*this)(m));
    }
    if (id_ == FunctionId::ackley || id_ == FunctionId::dejong || id_ == FunctionId::griewank ||
        id_ == FunctionId::rastrigin || id_ == FunctionId::rosenbrock || id_ == FunctionId::schwefel) {
      f_star_ = 0.0;
    }
  }

  FunctionId id_;
  std::size_t dim_;
  Bounds bounds_;
  double f_star_ = 0.0;
  double schwefel_offset_ = 0.0;
  std::vector<DesignVector> minimizers_;
};

using detail::FunctionInfo;

/// Registered functions in name order.
inline std::span<const FunctionInfo> function_registry() noexcept
{
  return detail::kFunctions;
}

inline std::vector<std::string> problem_names()
{
  std::vector<std::string> out;
  for (const auto& f : detail::kFunctions) {
    out.emplace_back(f.name);
  }
  return out;
}

namespace detail {

inline std::size_t edit_distance(std::string_view a, std::string_view b)
{
  std::vector<std::size_t> prev(b.size() + 1);
  std::vector<std::size_t> cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) {
    prev[j] = j;
  }
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

} // namespace detail

inline FunctionId function_id(std::string_view name)
{
  std::string lowered(name);
  std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  // Accept the short tags used in result tables.
  if (lowered == "mwz") {
    lowered = "michalewicz";
  } else if (lowered == "rbk") {
    lowered = "rosenbrock";
  } else if (lowered == "sphere") {
    lowered = "dejong";
  }
  std::string_view nearest;
  std::size_t nearest_d = std::numeric_limits<std::size_t>::max();
  for (const auto& f : detail::kFunctions) {
    if (f.name == lowered) {
      return f.id;
    }
    const auto d = detail::edit_distance(lowered, f.name);
    if (d < nearest_d) {
      nearest_d = d;
      nearest = f.name;
    }
  }
  throw Error(ErrorKind::unknown_problem,
              "no function named '" + std::string(name) + "'; did you mean '" + std::string(nearest) + "'?");
}

inline std::size_t default_dim(FunctionId id) { return detail::info(id).default_dim; }

/// Look up a registered problem; dim = 0 selects the default dimension.
inline BenchmarkProblem make_problem(std::string_view name, std::size_t dim = 0)
{
  const auto id = function_id(name);
  return BenchmarkProblem(id, dim == 0 ? default_dim(id) : dim);
}

inline double evaluate_deterministic(const BenchmarkProblem& problem, std::span<const double> x)
{
  return problem(x);
}

enum class NoiseKind
{
  none,
  additive_gaussian, // f(x) + N(0, sigma^2)
  relative_gaussian, // f(x) * (1 + N(0, sigma^2))
  design_gaussian,   // f(x + N(0, sigma^2 I))
};

struct NoiseModel
{
  NoiseKind kind = NoiseKind::none;
  double sigma = 0.0;

  static NoiseModel none() { return {}; }
  static NoiseModel additive(double sigma)
  {
    return sigma == 0.0 ? none() : NoiseModel{NoiseKind::additive_gaussian, sigma};
  }

  void validate() const
  {
    require(sigma >= 0.0, ErrorKind::invalid_config, "noise sigma must be non-negative");
    require(kind != NoiseKind::none || sigma == 0.0, ErrorKind::invalid_config,
            "noise kind 'none' requires sigma = 0");
  }

  bool deterministic() const noexcept { return kind == NoiseKind::none || sigma == 0.0; }
};

struct MeanEstimate
{
  double mean = 0.0;
  double std = 0.0;            // sample standard deviation, 0 when n = 1
  double standard_error = 0.0; // std / sqrt(n)
  std::size_t n = 0;
};

namespace detail {
inline std::atomic<std::uint64_t> evaluation_tally{0};
}

/// Noisy evaluations made by every objective in this process.
inline std::uint64_t total_evaluations() noexcept
{
  return detail::evaluation_tally.load(std::memory_order_relaxed);
}

/// A problem seen through a noise model. Counts every single noisy evaluation.
/// One instance per trial; the counter is not synchronized.
class NoisyObjective
{
public:
  NoisyObjective(std::shared_ptr<const BenchmarkProblem> problem, NoiseModel noise)
  : problem_(std::move(problem))
  , noise_(noise)
  {
    require(problem_ != nullptr, ErrorKind::invalid_config, "null problem");
    noise_.validate();
  }

  NoisyObjective(const BenchmarkProblem& problem, NoiseModel noise)
  : NoisyObjective(std::make_shared<const BenchmarkProblem>(problem), noise)
  {}

  const BenchmarkProblem& problem() const noexcept { return *problem_; }
  const NoiseModel& noise() const noexcept { return noise_; }
  std::uint64_t eval_count() const noexcept { return eval_count_; }
  std::uint64_t out_of_bounds_count() const noexcept { return out_of_bounds_; }
  std::size_t dim() const noexcept { return problem_->dim(); }
  const Bounds& bounds() const noexcept { return problem_->bounds(); }

  /// True when repeated evaluations at one point are bit-identical.
  bool deterministic() const noexcept { return noise_.deterministic(); }

  double evaluate(std::span<const double> x, RngStream& rng)
  {
    require_same_dim(x.size(), problem_->dim(), "evaluate_noisy");
    if (!inside(x, problem_->bounds())) {
      ++out_of_bounds_;
    }
    ++eval_count_;
    detail::evaluation_tally.fetch_add(1, std::memory_order_relaxed);
    switch (noise_.kind) {
      case NoiseKind::none: return (*problem_)(x);
      case NoiseKind::additive_gaussian: return (*problem_)(x) + sample_gaussian(rng, 0.0, noise_.sigma);
      case NoiseKind::relative_gaussian: {
        const double f = (*problem_)(x);
        return f + std::abs(f) * sample_gaussian(rng, 0.0, noise_.sigma);
      }
      case NoiseKind::design_gaussian: {
        DesignVector xi(x.begin(), x.end());
        for (auto& v : xi) {
          v = sample_gaussian(rng, v, noise_.sigma);
        }
        return (*problem_)(xi);
      }
    }
    return 0.0;
  }

private:
  std::shared_ptr<const BenchmarkProblem> problem_;
  NoiseModel noise_;
  std::uint64_t eval_count_ = 0;
  std::uint64_t out_of_bounds_ = 0;
};

inline double evaluate_noisy(NoisyObjective& obj, std::span<const double> x, RngStream& rng)
{
  return obj.evaluate(x, rng);
}

/// Running sample statistics. Values are accumulated relative to the first
/// one, so identical samples reproduce that sample exactly as the mean.
class SampleAccumulator
{
public:
  void add(double v)
  {
    if (n_ == 0) {
      shift_ = v;
    }
    const double d = v - shift_;
    sum_ += d;
    sum_sq_ += d * d;
    ++n_;
  }

  std::size_t count() const noexcept { return n_; }

  MeanEstimate estimate() const
  {
    MeanEstimate est;
    est.n = n_;
    if (n_ == 0) {
      return est;
    }
    const double n = static_cast<double>(n_);
    est.mean = shift_ + sum_ / n;
    if (n_ > 1) {
      const double ss = std::max(0.0, sum_sq_ - sum_ * sum_ / n);
      est.std = std::sqrt(ss / (n - 1.0));
      est.standard_error = est.std / std::sqrt(n);
    }
    return est;
  }

private:
  std::size_t n_ = 0;
  double shift_ = 0.0;
  double sum_ = 0.0;
  double sum_sq_ = 0.0;
};

/// Monte Carlo mean of n_samples independent noisy evaluations.
inline MeanEstimate estimate_mean(NoisyObjective& obj, std::span<const double> x, RngStream& rng,
                                  std::size_t n_samples)
{
  require(n_samples >= 1, ErrorKind::invalid_config, "estimate_mean needs at least one sample");
  SampleAccumulator acc;
  for (std::size_t i = 0; i < n_samples; ++i) {
    acc.add(obj.evaluate(x, rng));
  }
  return acc.estimate();
}

/// mean + lambda_weight * std.
inline double robust_score(double mean, double std, double lambda_weight)
{
  return mean + lambda_weight * std;
}

inline double robust_score(const MeanEstimate& e, double lambda_weight)
{
  return robust_score(e.mean, e.std, lambda_weight);
}

} // namespace eagle

#endif // EAGLE_OBJECTIVES_HPP
