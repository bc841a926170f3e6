// Seeded trials, success checks and per-cell aggregation.
#ifndef EAGLE_HARNESS_HPP
#define EAGLE_HARNESS_HPP

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "core.hpp"
#include "firefly.hpp"
#include "nelder_mead.hpp"
#include "objectives.hpp"
#include "pso.hpp"
#include "random.hpp"
#include "strategy.hpp"

namespace eagle {

enum class Algorithm
{
  es,
  fa,
  pso,
  nm,
};

inline constexpr std::string_view to_string(Algorithm a) noexcept
{
  switch (a) {
    case Algorithm::es: return "es";
    case Algorithm::fa: return "fa";
    case Algorithm::pso: return "pso";
    case Algorithm::nm: return "nm";
  }
  return "?";
}

inline Algorithm parse_algorithm(std::string_view name)
{
  for (Algorithm a : {Algorithm::es, Algorithm::fa, Algorithm::pso, Algorithm::nm}) {
    if (name == to_string(a)) {
      return a;
    }
  }
  throw Error(ErrorKind::unknown_algorithm, "unknown algorithm '" + std::string(name) + "' (expected es, fa, pso or nm)");
}

enum class SuccessMode
{
  value_gap,
  position_gap,
};

struct SuccessCriteria
{
  SuccessMode mode = SuccessMode::value_gap;
  double value_eps = 1e-2;
  /// Absolute distance; unset means 1e-2 of the domain width.
  std::optional<double> position_eps;

  void validate() const
  {
    require(value_eps > 0.0, ErrorKind::invalid_config, "value_eps must be positive");
    require(!position_eps || *position_eps > 0.0, ErrorKind::invalid_config, "position_eps must be positive");
  }

  double position_eps_for(const BenchmarkProblem& p) const
  {
    return position_eps ? *position_eps : 1e-2 * p.domain_width();
  }
};

/// Verdict on a returned point, judged on the noise-free function.
inline bool success_check(std::span<const double> best_x, const BenchmarkProblem& problem,
                          const SuccessCriteria& criteria)
{
  criteria.validate();
  require_same_dim(best_x.size(), problem.dim(), "success_check");
  if (criteria.mode == SuccessMode::value_gap) {
    return problem(best_x) - problem.f_star() <= criteria.value_eps;
  }
  const double eps = criteria.position_eps_for(problem);
  for (const auto& m : problem.minimizers()) {
    if (euclidean_distance(best_x, m) <= eps) {
      return true;
    }
  }
  return false;
}

/// Per-algorithm configuration used by the harness.
struct AlgorithmSettings
{
  EsConfig es;
  FaConfig fa;
  std::uint64_t fa_max_evals = 200000;
  PsoConfig pso;
  NmConfig nm;
  /// Stand-alone Nelder-Mead starts at a random point with this initial
  /// edge, as a fraction of the domain width.
  double nm_edge = 0.25;

  /// Stopping tolerance shared by every algorithm.
  void set_tolerance(double tol)
  {
    es.outer_tolerance = tol;
    es.fa.tolerance = tol;
    fa.tolerance = tol;
    pso.tolerance = tol;
    nm.tolerance = tol;
  }

  /// Population size shared by FA (inside ES and alone) and PSO.
  void set_population(std::size_t n)
  {
    es.fa.n = n;
    fa.n = n;
    pso.n = n;
  }

  void validate(std::size_t dim) const
  {
    es.validate();
    es.fa.validate(dim);
    es.nm.validate();
    fa.validate(dim);
    pso.validate();
    nm.validate();
    require(nm_edge > 0.0, ErrorKind::invalid_config, "nm_edge must be positive");
  }
};

struct TrialRecord
{
  Algorithm algorithm = Algorithm::es;
  std::string problem;
  std::size_t dim = 0;
  double sigma = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t trial = 0;
  std::uint64_t evaluations = 0;
  bool success = false;
  DesignVector best_x;
  double best_value = 0.0; // noise-free
  double best_mean = 0.0;  // as estimated by the algorithm
  std::size_t stages = 0;
  std::vector<TraceEntry> trace;
  double wall_seconds = 0.0;
};

/// Equality of everything except wall time.
inline bool same_outcome(const TrialRecord& a, const TrialRecord& b)
{
  return a.algorithm == b.algorithm && a.problem == b.problem && a.dim == b.dim && a.sigma == b.sigma &&
         a.seed == b.seed && a.trial == b.trial && a.evaluations == b.evaluations && a.success == b.success &&
         a.best_x == b.best_x && a.best_value == b.best_value && a.best_mean == b.best_mean &&
         a.stages == b.stages && a.trace == b.trace;
}

inline OptimizationResult run_algorithm(Algorithm algorithm, NoisyObjective& obj, const AlgorithmSettings& s,
                                        RngStream& rng)
{
  const Bounds& bounds = obj.bounds();
  switch (algorithm) {
    case Algorithm::es: return es_optimize(obj, s.es, rng);
    case Algorithm::fa: return fa_optimize(obj, Region::whole(bounds), s.fa, rng, s.fa_max_evals);
    case Algorithm::pso: return pso_optimize(obj, bounds, s.pso, rng);
    case Algorithm::nm: {
      const DesignVector start = sample_uniform_in_bounds(rng, bounds);
      return nelder_mead(obj, start, 2.0 * s.nm_edge * max_width(bounds), s.nm, rng);
    }
  }
  throw Error(ErrorKind::unknown_algorithm, "unhandled algorithm");
}

/// One seeded run on a fresh objective and stream (seed, trial).
inline TrialRecord run_trial(Algorithm algorithm, const BenchmarkProblem& problem, const NoiseModel& noise,
                             std::uint64_t seed, const SuccessCriteria& criteria,
                             const AlgorithmSettings& settings = {}, std::uint64_t trial = 0)
{
  criteria.validate();
  settings.validate(problem.dim());
  const auto t0 = std::chrono::steady_clock::now();

  NoisyObjective obj(problem, noise);
  RngStream rng(seed, trial);
  OptimizationResult res = run_algorithm(algorithm, obj, settings, rng);

  TrialRecord rec;
  rec.algorithm = algorithm;
  rec.problem = std::string(problem.name());
  rec.dim = problem.dim();
  rec.sigma = noise.sigma;
  rec.seed = seed;
  rec.trial = trial;
  rec.evaluations = obj.eval_count();
  rec.best_value = problem(res.best_x);
  rec.best_mean = res.best_mean;
  rec.stages = res.stages;
  rec.success = success_check(res.best_x, problem, criteria);
  rec.best_x = std::move(res.best_x);
  rec.trace = std::move(res.trace);
  rec.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rec;
}

inline TrialRecord run_trial(std::string_view algorithm, std::string_view problem, std::size_t dim,
                             const NoiseModel& noise, std::uint64_t seed, const SuccessCriteria& criteria,
                             const AlgorithmSettings& settings = {}, std::uint64_t trial = 0)
{
  const Algorithm a = parse_algorithm(algorithm);
  return run_trial(a, make_problem(problem, dim), noise, seed, criteria, settings, trial);
}

enum class StatsOver
{
  all,
  successes,
};

inline constexpr std::string_view to_string(StatsOver s) noexcept
{
  return s == StatsOver::all ? "all" : "successes";
}

inline StatsOver parse_stats_over(std::string_view s)
{
  if (s == "all") {
    return StatsOver::all;
  }
  if (s == "successes") {
    return StatsOver::successes;
  }
  throw Error(ErrorKind::invalid_config, "stats-over must be 'all' or 'successes', got '" + std::string(s) + "'");
}

/// One row of an algorithm comparison table. Evaluation statistics are in
/// thousands; the spread is the population standard deviation.
struct ExperimentReport
{
  std::string algorithm;
  std::string function;
  std::size_t dim = 0;
  double sigma = 0.0;
  std::size_t runs = 0;
  double mean_evals_k = 0.0;
  double std_evals_k = 0.0;
  double success_rate_pct = 0.0;

  bool operator==(const ExperimentReport&) const = default;
};

/// Aggregates trials of a single (algorithm, function) cell. With
/// `successes` and no successful trial the evaluation statistics are 0.
inline ExperimentReport summarize(const std::vector<TrialRecord>& trials, StatsOver over = StatsOver::all)
{
  require(!trials.empty(), ErrorKind::invalid_config, "no trials to summarize");
  ExperimentReport r;
  r.algorithm = std::string(to_string(trials.front().algorithm));
  r.function = trials.front().problem;
  r.dim = trials.front().dim;
  r.sigma = trials.front().sigma;
  r.runs = trials.size();

  std::size_t wins = 0;
  std::vector<double> evals;
  for (const auto& t : trials) {
    wins += t.success ? 1 : 0;
    if (over == StatsOver::all || t.success) {
      evals.push_back(static_cast<double>(t.evaluations) / 1e3);
    }
  }
  r.success_rate_pct = 100.0 * static_cast<double>(wins) / static_cast<double>(trials.size());
  if (!evals.empty()) {
    double sum = 0.0;
    for (double e : evals) {
      sum += e;
    }
    const double mean = sum / static_cast<double>(evals.size());
    double ss = 0.0;
    for (double e : evals) {
      ss += (e - mean) * (e - mean);
    }
    r.mean_evals_k = mean;
    r.std_evals_k = std::sqrt(ss / static_cast<double>(evals.size()));
  }
  return r;
}

/// Trials with seeds base_seed .. base_seed + n_runs - 1, in seed order.
inline std::vector<TrialRecord> run_trials(Algorithm algorithm, const BenchmarkProblem& problem,
                                           const NoiseModel& noise, std::size_t n_runs, std::uint64_t base_seed,
                                           const SuccessCriteria& criteria, const AlgorithmSettings& settings = {})
{
  require(n_runs >= 1, ErrorKind::invalid_config, "n_runs must be >= 1");
  std::vector<TrialRecord> out;
  out.reserve(n_runs);
  for (std::size_t i = 0; i < n_runs; ++i) {
    out.push_back(run_trial(algorithm, problem, noise, base_seed + i, criteria, settings, i));
  }
  return out;
}

inline ExperimentReport run_experiment(Algorithm algorithm, const BenchmarkProblem& problem,
                                       const NoiseModel& noise, std::size_t n_runs, std::uint64_t base_seed,
                                       const SuccessCriteria& criteria, const AlgorithmSettings& settings = {},
                                       StatsOver over = StatsOver::all)
{
  return summarize(run_trials(algorithm, problem, noise, n_runs, base_seed, criteria, settings), over);
}

} // namespace eagle

#endif // EAGLE_HARNESS_HPP
