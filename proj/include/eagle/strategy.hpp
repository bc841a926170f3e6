// The two-stage Eagle Strategy: Lévy-walk exploration alternating with
// intensive local search inside a shrinking hypersphere.
#ifndef EAGLE_STRATEGY_HPP
#define EAGLE_STRATEGY_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <limits>

#include "core.hpp"
#include "firefly.hpp"
#include "levy.hpp"
#include "nelder_mead.hpp"
#include "objectives.hpp"
#include "random.hpp"

namespace eagle {

enum class LocalSearcher
{
  firefly,
  nelder_mead,
};

enum class Termination
{
  value,    // change of the accepted robust score
  position, // distance between consecutive accepted points
};

struct EsConfig
{
  /// Step lengths are fractions of the domain width (scaled per problem).
  double levy_lambda = 1.5;
  double levy_step_min = 1e-3;
  double levy_step_max = 1.0;

  LocalSearcher local = LocalSearcher::firefly;
  /// FA inside the hypersphere: alpha is scaled per dimension by the sphere
  /// extent S_k; with `scale_absorption` gamma is also read in units of the
  /// largest extent, gamma_eff = gamma / S_max^2.
  FaConfig fa;
  bool scale_absorption = true;
  NmConfig nm;

  /// Hypersphere radius as a fraction of the domain width.
  double hypersphere_radius_init = 0.5;
  double hypersphere_shrink = 0.75;
  double hypersphere_radius_floor = 1e-3;

  double outer_tolerance = 1e-5;
  Termination termination = Termination::value;
  /// Stop after this many consecutive stages without an accepted update.
  std::size_t stall_stages = 10;
  std::size_t max_stages = 100;
  std::uint64_t local_budget_per_stage = 600;
  /// Overall evaluation cap; 0 means no cap beyond the stage limits.
  std::uint64_t max_evals = 0;
  double robust_lambda = 0.0;
  /// Samples behind every accept/reject decision.
  std::size_t confirm_samples = 10;
  /// Extra independent samples pooled into a provisional winner before it
  /// replaces the incumbent.
  std::size_t reconfirm_samples = 10;
  /// Candidates first get `screen_samples`; a screened score more than
  /// `screen_z` standard errors away from the incumbent decides immediately.
  std::size_t screen_samples = 3;
  double screen_z = 3.0;

  void validate() const
  {
    require(hypersphere_radius_init > 0.0 && hypersphere_radius_init <= 1.0, ErrorKind::invalid_config,
            "hypersphere_radius_init must lie in (0, 1]");
    require(hypersphere_shrink > 0.0 && hypersphere_shrink <= 1.0, ErrorKind::invalid_config,
            "hypersphere_shrink must lie in (0, 1]");
    require(hypersphere_radius_floor > 0.0, ErrorKind::invalid_config, "radius floor must be positive");
    require(outer_tolerance > 0.0, ErrorKind::invalid_config, "outer_tolerance must be positive");
    require(robust_lambda >= 0.0, ErrorKind::invalid_config, "robust_lambda must be non-negative");
    require(confirm_samples >= 1, ErrorKind::invalid_config, "confirm_samples must be >= 1");
    require(screen_samples >= 1, ErrorKind::invalid_config, "screen_samples must be >= 1");
    require(screen_z >= 0.0, ErrorKind::invalid_config, "screen_z must be non-negative");
    require(stall_stages >= 1, ErrorKind::invalid_config, "stall_stages must be >= 1");
    LevyConfig{levy_lambda, levy_step_min, levy_step_max}.validate();
  }

  LevyConfig levy_for(const Bounds& bounds) const
  {
    const double w = max_width(bounds);
    return LevyConfig{levy_lambda, levy_step_min * w, levy_step_max * w};
  }
};

/// Eagle Strategy result; trace rows carry the source of each candidate
/// (init, walk or local) and whether it was accepted.
inline OptimizationResult es_optimize(NoisyObjective& obj, const EsConfig& cfg, RngStream& rng)
{
  cfg.validate();
  const Bounds& bounds = obj.bounds();
  require(!bounds.empty(), ErrorKind::empty_region, "objective has no dimensions");
  for (const auto& b : bounds) {
    require(b.hi > b.lo, ErrorKind::empty_region, "degenerate domain");
  }
  const LevyConfig levy = cfg.levy_for(bounds);
  const double width = max_width(bounds);
  const std::size_t confirm = obj.deterministic() ? 1 : cfg.confirm_samples;

  const std::uint64_t start = obj.eval_count();
  auto spent = [&] { return obj.eval_count() - start; };
  auto remaining = [&]() -> std::uint64_t {
    if (cfg.max_evals == 0) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    return cfg.max_evals > spent() ? cfg.max_evals - spent() : 0;
  };
  auto score_of = [&](const MeanEstimate& e) { return robust_score(e, cfg.robust_lambda); };

  OptimizationResult res;
  res.best_x = sample_uniform_in_bounds(rng, bounds);
  MeanEstimate best = estimate_mean(obj, res.best_x, rng, confirm);
  double best_score = score_of(best);
  res.trace.push_back({0, best.mean, best.std, best_score, spent(), true, TraceSource::init});

  // Pooled within-point variance of every multi-sample estimate so far.
  double pooled_ss = best.n > 1 ? best.std * best.std * static_cast<double>(best.n - 1) : 0.0;
  double pooled_df = best.n > 1 ? static_cast<double>(best.n - 1) : 0.0;
  auto pool = [&](const MeanEstimate& e) {
    if (e.n > 1) {
      pooled_ss += e.std * e.std * static_cast<double>(e.n - 1);
      pooled_df += static_cast<double>(e.n - 1);
    }
  };

  struct Assessment
  {
    MeanEstimate est;
    bool eligible = false; // fully confirmed, or a clear win after the screen
  };

  // Sequential estimate: a short screen settles clear wins and clear losses.
  // Ambiguous candidates get the full confirmation sample, and a provisional
  // winner is re-confirmed with an independent batch before it may replace
  // the incumbent.
  auto assess = [&](std::span<const double> x) {
    SampleAccumulator acc;
    auto draw_until = [&](std::size_t n) {
      while (acc.count() < n) {
        acc.add(obj.evaluate(x, rng));
      }
    };
    draw_until(std::min(cfg.screen_samples, confirm));
    if (acc.count() < confirm && pooled_df > 0.0) {
      const MeanEstimate screened = acc.estimate();
      const double sd = std::sqrt(pooled_ss / pooled_df);
      const double margin = cfg.screen_z * sd / std::sqrt(static_cast<double>(acc.count()));
      const double sc = score_of(screened);
      if (sc > best_score + margin || sc < best_score - margin) {
        pool(screened);
        return Assessment{screened, sc < best_score - margin};
      }
    }
    draw_until(confirm);
    if (confirm > 1 && score_of(acc.estimate()) < best_score) {
      draw_until(confirm + cfg.reconfirm_samples);
    }
    const MeanEstimate full = acc.estimate();
    pool(full);
    return Assessment{full, true};
  };
  const std::uint64_t assess_cost = obj.deterministic() ? 1 : confirm + cfg.reconfirm_samples;

  double radius = cfg.hypersphere_radius_init * width;
  const double floor = cfg.hypersphere_radius_floor * width;
  std::size_t since_accept = 0;
  std::size_t stage = 0;

  while (stage < cfg.max_stages && remaining() >= assess_cost) {
    ++stage;
    // Global exploration: one Lévy jump from the current best.
    DesignVector candidate = levy_walk_point(rng, res.best_x, bounds, levy);
    auto [cand_est, confirmed] = assess(candidate);
    TraceSource source = TraceSource::walk;

    // Intensive local search inside the hypersphere around the walk point.
    const std::uint64_t local_cap = remaining() > assess_cost
                                      ? std::min<std::uint64_t>(cfg.local_budget_per_stage, remaining() - assess_cost)
                                      : 0;
    Region sphere;
    sphere.bounds = bounds;
    sphere.center = candidate;
    sphere.radius = radius;
    OptimizationResult local;
    bool ran_local = false;
    if (cfg.local == LocalSearcher::firefly) {
      const std::size_t samples = obj.deterministic() ? 1 : cfg.fa.samples;
      if (local_cap >= cfg.fa.n * samples) {
        FaConfig fa = cfg.fa;
        fa.scale.assign(bounds.size(), 0.0);
        double s_max = 0.0;
        for (std::size_t k = 0; k < bounds.size(); ++k) {
          fa.scale[k] = sphere.extent(k);
          s_max = std::max(s_max, fa.scale[k]);
        }
        if (cfg.scale_absorption) {
          fa.gamma = cfg.fa.gamma / (s_max * s_max);
        }
        local = fa_optimize(obj, sphere, fa, rng, local_cap);
        ran_local = true;
      }
    } else {
      const std::size_t samples = obj.deterministic() ? 1 : cfg.nm.samples;
      if (local_cap >= (bounds.size() + 1) * samples) {
        NmConfig nm = cfg.nm;
        nm.max_evals = local_cap;
        local = nelder_mead(obj, sphere, nm, rng);
        ran_local = true;
      }
    }
    if (ran_local && remaining() >= assess_cost) {
      // Fresh samples: the searcher's own estimate is biased by selection.
      const auto [local_est, local_confirmed] = assess(local.best_x);
      if (local_confirmed && (!confirmed || score_of(local_est) < score_of(cand_est))) {
        candidate = local.best_x;
        cand_est = local_est;
        source = TraceSource::local;
        confirmed = true;
      }
    }

    const double cand_score = score_of(cand_est);
    bool accepted = false;
    bool converged = false;
    if (confirmed && cand_score < best_score) {
      const double change = best_score - cand_score;
      const double moved = euclidean_distance(candidate, res.best_x);
      accepted = true;
      res.best_x = std::move(candidate);
      best = cand_est;
      best_score = cand_score;
      since_accept = 0;
      converged = (cfg.termination == Termination::value ? change : moved) < cfg.outer_tolerance;
    } else {
      ++since_accept;
    }
    res.trace.push_back({stage, best.mean, best.std, best_score, spent(), accepted, source});

    radius = std::max(floor, radius * cfg.hypersphere_shrink);
    if (converged || since_accept >= cfg.stall_stages) {
      break;
    }
  }

  res.best_mean = best.mean;
  res.best_std = best.std;
  res.stages = stage;
  res.evaluations = spent();
  return res;
}

} // namespace eagle

#endif // EAGLE_STRATEGY_HPP
