#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include <eagle/objectives.hpp>

using namespace eagle;

// Reference values computed with 30-digit arithmetic from the textbook formulas.
TEST(Functions, ReferenceValues)
{
  EXPECT_NEAR(make_problem("ackley", 2)(std::vector{1.0, 1.0}), 3.62538493844036282660, 1e-12);
  EXPECT_NEAR(make_problem("ackley", 2)(std::vector{5.0, 5.0}), 12.6424111765711535681, 1e-12);
  EXPECT_NEAR(make_problem("griewank", 2)(std::vector{1.0, 2.0}), 0.916993262132670822700, 1e-12);
  EXPECT_NEAR(make_problem("rastrigin", 2)(std::vector{0.5, -1.5}), 42.5, 1e-12);
  EXPECT_NEAR(make_problem("rosenbrock", 3)(std::vector{0.0, 0.0, 0.0}), 2.0, 0.0);
  EXPECT_NEAR(make_problem("easom")(std::vector{3.0, 3.0}), -0.941564157536494494521, 1e-12);
  EXPECT_NEAR(make_problem("michalewicz", 2)(std::vector{2.2, 1.57}), -1.80114071847382508312, 1e-12);
  EXPECT_NEAR(make_problem("shubert")(std::vector{0.5, -0.5}), 4.48822129910129432063, 1e-12);
  EXPECT_NEAR(make_problem("schwefel", 2)(std::vector{1.0, 2.0}), 835.148771668074044989, 1e-9);
  EXPECT_NEAR(make_problem("dejong", 3)(std::vector{1.0, -2.0, 3.0}), 14.0, 0.0);
}

TEST(Functions, KnownOptima)
{
  EXPECT_NEAR(make_problem("michalewicz", 2).f_star(), -1.8013, 1e-4);
  EXPECT_NEAR(make_problem("michalewicz", 5).f_star(), -4.687658, 1e-6);
  EXPECT_NEAR(make_problem("michalewicz", 10).f_star(), -9.66015, 1e-5);
  EXPECT_NEAR(make_problem("shubert").f_star(), -186.7309, 1e-4);
  EXPECT_EQ(make_problem("shubert").minimizers().size(), 18u);
  EXPECT_DOUBLE_EQ(make_problem("easom").f_star(), -1.0);
  EXPECT_NEAR(make_problem("schwefel", 3).x_star()[0], 420.968746359982027, 1e-7);
  EXPECT_EQ(make_problem("rosenbrock", 4).x_star(), (DesignVector{1, 1, 1, 1}));
}

TEST(Functions, AckleyOriginIsExactlyZero)
{
  for (std::size_t d : {1u, 2u, 8u, 128u}) {
    const auto p = make_problem("ackley", d);
    EXPECT_EQ(p(DesignVector(d, 0.0)), 0.0);
  }
}

TEST(Functions, OptimumAndLowerBound)
{
  RngStream rng(77, 0);
  for (const auto& name : problem_names()) {
    const auto p = make_problem(name, name == "easom" || name == "shubert" ? 2 : 4);
    for (const auto& m : p.minimizers()) {
      EXPECT_NEAR(p(m), p.f_star(), 1e-9) << name;
      EXPECT_TRUE(inside(m, p.bounds())) << name;
    }
    for (int i = 0; i < 2000; ++i) {
      const auto x = sample_uniform_in_bounds(rng, p.bounds());
      ASSERT_GE(p(x), p.f_star() - 1e-9) << name;
    }
  }
}

TEST(Registry, NamesAndDefaults)
{
  EXPECT_EQ(problem_names().size(), 9u);
  EXPECT_EQ(make_problem("ackley").dim(), 128u);
  EXPECT_EQ(make_problem("dejong").dim(), 256u);
  EXPECT_EQ(make_problem("MWZ").name(), "michalewicz");
  EXPECT_EQ(make_problem("rbk").name(), "rosenbrock");
  EXPECT_EQ(make_problem("Sphere", 3).name(), "dejong");
}

TEST(Registry, UnknownNameSuggestsNearest)
{
  try {
    make_problem("ackely");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::unknown_problem);
    EXPECT_NE(std::string(e.what()).find("did you mean 'ackley'"), std::string::npos) << e.what();
  }
}

TEST(Registry, DimensionRules)
{
  EXPECT_THROW(make_problem("easom", 3), Error);
  EXPECT_THROW(make_problem("rosenbrock", 1), Error);
  EXPECT_NO_THROW(make_problem("easom", 2));
}

TEST(Noise, NoneIsBitExact)
{
  NoisyObjective obj(make_problem("ackley", 2), NoiseModel::none());
  RngStream rng(1, 0);
  const DesignVector x{0.3, -1.7};
  const double f = evaluate_deterministic(obj.problem(), x);
  EXPECT_EQ(obj.evaluate(x, rng), f);
  const auto est = estimate_mean(obj, x, rng, 25);
  EXPECT_EQ(est.mean, f);
  EXPECT_EQ(est.std, 0.0);
  EXPECT_EQ(obj.eval_count(), 26u);
}

TEST(Noise, AdditiveZeroSigmaIsDeterministic)
{
  NoisyObjective obj(make_problem("dejong", 2), NoiseModel::additive(0.0));
  EXPECT_TRUE(obj.deterministic());
  RngStream rng(3, 0);
  const DesignVector x{0.1, 0.2};
  EXPECT_EQ(estimate_mean(obj, x, rng, 10).mean, obj.problem()(x));
}

TEST(Noise, AdditiveHasRequestedSpread)
{
  NoisyObjective obj(make_problem("dejong", 2), NoiseModel::additive(0.025));
  RngStream rng(3, 0);
  const DesignVector x{1.0, 0.0};
  const auto est = estimate_mean(obj, x, rng, 100000);
  EXPECT_NEAR(est.mean, 1.0, 4 * 0.025 / std::sqrt(1e5));
  EXPECT_NEAR(est.std, 0.025, 0.025 * 0.01);
}

TEST(Noise, StandardErrorScaling)
{
  NoisyObjective obj(make_problem("ackley", 2), NoiseModel::additive(0.025));
  RngStream rng(12, 0);
  const DesignVector x{0.5, 0.5};
  const double se100 = estimate_mean(obj, x, rng, 100).standard_error;
  const double se10000 = estimate_mean(obj, x, rng, 10000).standard_error;
  EXPECT_NEAR(se100 / se10000, 10.0, 2.0);
}

TEST(Noise, CountsOutOfBoundsProbes)
{
  NoisyObjective obj(make_problem("dejong", 2), NoiseModel::none());
  RngStream rng(1, 0);
  obj.evaluate(DesignVector{10.0, 0.0}, rng);
  obj.evaluate(DesignVector{0.0, 0.0}, rng);
  EXPECT_EQ(obj.out_of_bounds_count(), 1u);
  EXPECT_EQ(obj.eval_count(), 2u);
}

TEST(Noise, RejectsBadModels)
{
  EXPECT_THROW((NoiseModel{NoiseKind::additive_gaussian, -0.1}.validate()), Error);
  EXPECT_THROW((NoiseModel{NoiseKind::none, 0.1}.validate()), Error);
  NoisyObjective obj(make_problem("dejong", 2), NoiseModel::none());
  RngStream rng(1, 0);
  EXPECT_THROW(estimate_mean(obj, DesignVector{0.0, 0.0}, rng, 0), Error);
  EXPECT_THROW(obj.evaluate(DesignVector{0.0}, rng), Error);
}

TEST(Noise, GlobalTallyTracksEveryObjective)
{
  const auto before = total_evaluations();
  NoisyObjective a(make_problem("dejong", 2), NoiseModel::none());
  NoisyObjective b(make_problem("ackley", 3), NoiseModel::additive(0.1));
  RngStream rng(1, 0);
  estimate_mean(a, DesignVector{0.0, 0.0}, rng, 7);
  estimate_mean(b, DesignVector{0.0, 0.0, 0.0}, rng, 5);
  EXPECT_EQ(total_evaluations() - before, 12u);
}

TEST(RobustScore, MeanPlusWeightedStd)
{
  EXPECT_DOUBLE_EQ(robust_score(1.0, 0.5, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(robust_score(1.0, 0.5, 2.0), 2.0);
  EXPECT_DOUBLE_EQ(robust_score(MeanEstimate{1.0, 0.5, 0.1, 25}, 1.0), 1.5);
}

TEST(SampleAccumulator, IdenticalSamplesGiveThatValue)
{
  SampleAccumulator acc;
  for (int i = 0; i < 10; ++i) {
    acc.add(0.1);
  }
  EXPECT_EQ(acc.estimate().mean, 0.1);
  EXPECT_EQ(acc.estimate().std, 0.0);
}
