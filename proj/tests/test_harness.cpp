#include <cmath>
#include <limits>
#include <vector>

#include <gtest/gtest.h>

#include <eagle/harness.hpp>

using namespace eagle;

namespace {

TrialRecord fake(std::uint64_t evals, bool success)
{
  TrialRecord t;
  t.algorithm = Algorithm::es;
  t.problem = "easom";
  t.dim = 2;
  t.sigma = 0.025;
  t.evaluations = evals;
  t.success = success;
  return t;
}

} // namespace

TEST(SuccessCheck, OptimumPassesBothModes)
{
  for (const auto& name : problem_names()) {
    const auto p = make_problem(name, name == "easom" || name == "shubert" ? 2 : 5);
    SuccessCriteria c;
    EXPECT_TRUE(success_check(p.x_star(), p, c)) << name;
    c.mode = SuccessMode::position_gap;
    EXPECT_TRUE(success_check(p.x_star(), p, c)) << name;
  }
}

TEST(SuccessCheck, FarPointFails)
{
  const auto p = make_problem("ackley", 2);
  EXPECT_FALSE(success_check(std::vector{5.0, 5.0}, p, SuccessCriteria{}));
  SuccessCriteria pos;
  pos.mode = SuccessMode::position_gap;
  EXPECT_FALSE(success_check(std::vector{5.0, 5.0}, p, pos));
  // 1% of the width 65.536 is 0.655.
  EXPECT_TRUE(success_check(std::vector{0.4, 0.4}, p, pos));
  EXPECT_FALSE(success_check(std::vector{0.5, 0.5}, p, pos));
}

TEST(SuccessCheck, HugeEpsilonAlwaysPasses)
{
  SuccessCriteria c;
  c.value_eps = std::numeric_limits<double>::max();
  const auto p = make_problem("schwefel", 3);
  RngStream rng(1, 0);
  for (int i = 0; i < 100; ++i) {
    ASSERT_TRUE(success_check(sample_uniform_in_bounds(rng, p.bounds()), p, c));
  }
}

TEST(SuccessCheck, AnyShubertMinimizerCounts)
{
  const auto p = make_problem("shubert");
  SuccessCriteria c;
  c.mode = SuccessMode::position_gap;
  for (const auto& m : p.minimizers()) {
    EXPECT_TRUE(success_check(m, p, c));
  }
}

TEST(RunTrial, RepeatsExactly)
{
  const auto noise = NoiseModel::additive(0.025);
  for (auto a : {Algorithm::es, Algorithm::fa, Algorithm::pso, Algorithm::nm}) {
    const auto r1 = run_trial(a, make_problem("ackley", 2), noise, 17, SuccessCriteria{});
    const auto r2 = run_trial(a, make_problem("ackley", 2), noise, 17, SuccessCriteria{});
    EXPECT_TRUE(same_outcome(r1, r2)) << to_string(a);
    EXPECT_GT(r1.evaluations, 0u);
  }
}

TEST(RunTrial, NelderMeadSolvesSphere)
{
  const auto r = run_trial("nm", "dejong", 2, NoiseModel::none(), 3, SuccessCriteria{});
  EXPECT_TRUE(r.success);
  EXPECT_LE(r.best_value, 1e-2);
}

TEST(RunTrial, UnknownNames)
{
  try {
    run_trial("es", "ackely", 2, NoiseModel::none(), 1, SuccessCriteria{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::unknown_problem);
    EXPECT_NE(std::string(e.what()).find("ackley"), std::string::npos);
  }
  try {
    run_trial("ga", "ackley", 2, NoiseModel::none(), 1, SuccessCriteria{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::unknown_algorithm);
  }
}

TEST(RunTrial, CountsMatchGlobalTally)
{
  const auto before = total_evaluations();
  const auto trials =
    run_trials(Algorithm::es, make_problem("ackley", 2), NoiseModel::additive(0.025), 5, 40, SuccessCriteria{});
  std::uint64_t sum = 0;
  for (const auto& t : trials) {
    sum += t.evaluations;
  }
  EXPECT_EQ(total_evaluations() - before, sum);
}

TEST(Summarize, PopulationStdOverAllRuns)
{
  const auto r = summarize({fake(10000, true), fake(12000, true), fake(14000, true)});
  EXPECT_DOUBLE_EQ(r.mean_evals_k, 12.0);
  EXPECT_NEAR(r.std_evals_k, std::sqrt(8.0 / 3.0), 1e-12);
  EXPECT_NEAR(r.std_evals_k, 1.63, 5e-3);
  EXPECT_EQ(r.success_rate_pct, 100.0);
  EXPECT_EQ(r.runs, 3u);
}

TEST(Summarize, SuccessesOnly)
{
  const std::vector<TrialRecord> t{fake(10000, true), fake(30000, false), fake(14000, true), fake(50000, false)};
  const auto all = summarize(t, StatsOver::all);
  const auto wins = summarize(t, StatsOver::successes);
  EXPECT_DOUBLE_EQ(all.mean_evals_k, 26.0);
  EXPECT_DOUBLE_EQ(wins.mean_evals_k, 12.0);
  EXPECT_DOUBLE_EQ(wins.std_evals_k, 2.0);
  EXPECT_EQ(all.success_rate_pct, 50.0);
  EXPECT_EQ(wins.success_rate_pct, 50.0);
  const auto none = summarize({fake(5000, false)}, StatsOver::successes);
  EXPECT_EQ(none.mean_evals_k, 0.0);
}

TEST(RunExperiment, SingleRun)
{
  const auto r = run_experiment(Algorithm::nm, make_problem("dejong", 2), NoiseModel::none(), 1, 9, SuccessCriteria{});
  EXPECT_EQ(r.std_evals_k, 0.0);
  EXPECT_TRUE(r.success_rate_pct == 0.0 || r.success_rate_pct == 100.0);
}

TEST(RunExperiment, ReproducibleAndMatchesBruteForce)
{
  const auto p = make_problem("griewank", 3);
  const auto noise = NoiseModel::additive(0.025);
  const auto a = run_experiment(Algorithm::pso, p, noise, 8, 100, SuccessCriteria{});
  const auto b = run_experiment(Algorithm::pso, p, noise, 8, 100, SuccessCriteria{});
  EXPECT_EQ(a, b);

  double sum = 0.0;
  int wins = 0;
  std::vector<double> e;
  for (std::uint64_t i = 0; i < 8; ++i) {
    const auto t = run_trial(Algorithm::pso, p, noise, 100 + i, SuccessCriteria{}, AlgorithmSettings{}, i);
    e.push_back(t.evaluations / 1e3);
    sum += e.back();
    wins += t.success;
  }
  const double mean = sum / 8;
  double ss = 0.0;
  for (double v : e) {
    ss += (v - mean) * (v - mean);
  }
  EXPECT_DOUBLE_EQ(a.mean_evals_k, mean);
  EXPECT_DOUBLE_EQ(a.std_evals_k, std::sqrt(ss / 8));
  EXPECT_DOUBLE_EQ(a.success_rate_pct, 100.0 * wins / 8);
}

TEST(AlgorithmSettings, SharedKnobs)
{
  AlgorithmSettings s;
  s.set_tolerance(1e-3);
  s.set_population(30);
  EXPECT_EQ(s.es.outer_tolerance, 1e-3);
  EXPECT_EQ(s.pso.tolerance, 1e-3);
  EXPECT_EQ(s.fa.n, 30u);
  EXPECT_EQ(s.es.fa.n, 30u);
  EXPECT_EQ(s.pso.n, 30u);
}
