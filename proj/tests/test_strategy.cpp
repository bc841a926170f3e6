#include <vector>

#include <gtest/gtest.h>

#include <eagle/strategy.hpp>

using namespace eagle;

TEST(EagleStrategy, SingleStageWithoutLocalSearch)
{
  EsConfig cfg;
  cfg.max_stages = 1;
  cfg.local_budget_per_stage = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    NoisyObjective obj(make_problem("rastrigin", 3), NoiseModel::none());
    RngStream rng(seed, 0);
    const auto res = es_optimize(obj, cfg, rng);

    RngStream replay(seed, 0);
    const auto x0 = sample_uniform_in_bounds(replay, obj.bounds());
    const auto x1 = levy_walk_point(replay, x0, obj.bounds(), cfg.levy_for(obj.bounds()));
    const double f0 = obj.problem()(x0), f1 = obj.problem()(x1);
    EXPECT_EQ(res.best_x, f1 < f0 ? x1 : x0);
    EXPECT_EQ(res.best_mean, std::min(f0, f1));
    EXPECT_EQ(res.evaluations, 2u);
    EXPECT_EQ(res.stages, 1u);
  }
}

TEST(EagleStrategy, UnimodalFromAnyStart)
{
  EsConfig cfg;
  cfg.hypersphere_radius_init = 1.0;
  const auto problem = make_problem("dejong", 8);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    NoisyObjective obj(problem, NoiseModel::none());
    RngStream rng(seed, 0);
    const auto res = es_optimize(obj, cfg, rng);
    EXPECT_LE(problem(res.best_x), 1e-2) << "seed " << seed;
  }
}

TEST(EagleStrategy, AcceptedScoresStrictlyDecrease)
{
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    NoisyObjective obj(make_problem("ackley", 2), NoiseModel::additive(0.025));
    RngStream rng(seed, 0);
    const auto res = es_optimize(obj, EsConfig{}, rng);
    double last = res.trace.front().best_score;
    for (std::size_t i = 1; i < res.trace.size(); ++i) {
      const auto& e = res.trace[i];
      if (e.accepted) {
        ASSERT_LT(e.best_score, last);
        ASSERT_TRUE(e.source == TraceSource::walk || e.source == TraceSource::local);
        last = e.best_score;
      } else {
        ASSERT_EQ(e.best_score, last);
      }
    }
  }
}

TEST(EagleStrategy, EvaluationAccountingAndCap)
{
  EsConfig cfg;
  cfg.max_evals = 1000;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    NoisyObjective obj(make_problem("ackley", 2), NoiseModel::additive(0.025));
    RngStream rng(seed, 3);
    const auto res = es_optimize(obj, cfg, rng);
    EXPECT_EQ(res.evaluations, obj.eval_count());
    EXPECT_LE(res.evaluations, 1000u);
    EXPECT_EQ(res.trace.back().evaluations, res.evaluations);
    for (std::size_t i = 1; i < res.trace.size(); ++i) {
      ASSERT_GE(res.trace[i].evaluations, res.trace[i - 1].evaluations);
    }
  }
}

TEST(EagleStrategy, Deterministic)
{
  auto run = [] {
    NoisyObjective obj(make_problem("griewank", 4), NoiseModel::additive(0.025));
    RngStream rng(5, 5);
    return es_optimize(obj, EsConfig{}, rng);
  };
  EXPECT_EQ(run(), run());
}

TEST(EagleStrategy, NelderMeadLocalSearcher)
{
  EsConfig cfg;
  cfg.local = LocalSearcher::nelder_mead;
  NoisyObjective obj(make_problem("rosenbrock", 4), NoiseModel::none());
  RngStream rng(2, 0);
  const auto res = es_optimize(obj, cfg, rng);
  EXPECT_EQ(res.evaluations, obj.eval_count());
  EXPECT_LT(res.best_mean, 1e-3);
}

TEST(EagleStrategy, PositionTermination)
{
  EsConfig cfg;
  cfg.termination = Termination::position;
  NoisyObjective obj(make_problem("dejong", 2), NoiseModel::none());
  RngStream rng(2, 0);
  const auto res = es_optimize(obj, cfg, rng);
  EXPECT_LT(res.best_mean, 1e-4);
}

TEST(EagleStrategy, ConfigValidation)
{
  NoisyObjective obj(make_problem("dejong", 2), NoiseModel::none());
  RngStream rng(1, 0);
  EsConfig c;
  c.hypersphere_radius_init = 0.0;
  EXPECT_THROW(es_optimize(obj, c, rng), Error);
  c = {};
  c.hypersphere_shrink = 1.5;
  EXPECT_THROW(es_optimize(obj, c, rng), Error);
  c = {};
  c.outer_tolerance = 0.0;
  EXPECT_THROW(es_optimize(obj, c, rng), Error);
  c = {};
  c.levy_lambda = 1.0;
  EXPECT_THROW(es_optimize(obj, c, rng), Error);
  EXPECT_EQ(obj.eval_count(), 0u);
}
