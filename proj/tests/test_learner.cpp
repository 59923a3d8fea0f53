#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <random>

#include "nimt/learner.hpp"

using namespace nimt;

TEST_CASE("one step from zero") {
  LearnerState learner(RkhsFunction(ZeroBase{}, Kernel::rbf()), 0.2,
                       LossKind::Square);
  auto coeffs = learner.step(TeachingPack{{{{0.7}, 0.5}}});
  REQUIRE(coeffs.size() == 1);
  // g = 2(0 - 0.5) = -1, coeff = -eta * g = 0.2
  CHECK(coeffs[0] == doctest::Approx(0.2).epsilon(1e-14));
  CHECK(learner.evaluate({0.7}) == doctest::Approx(0.2).epsilon(1e-14));
  CHECK(learner.step_count() == 1);
}

TEST_CASE("empty pack rejected") {
  LearnerState learner(RkhsFunction(ZeroBase{}, Kernel::rbf()), 0.1,
                       LossKind::Square);
  CHECK_THROWS_AS(learner.step(TeachingPack{}), std::invalid_argument);
}

TEST_CASE("pointwise one-step identity") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  const Kernel kernel = Kernel::rbf();
  for (int trial = 0; trial < 50; ++trial) {
    RkhsFunction f(GaussianMixture1D{{1.0}, {u(rng)}, {1.0}}, kernel);
    for (int i = 0; i < 5; ++i) f.add_term({u(rng)}, 0.3 * u(rng));
    const double eta = 0.05;
    LearnerState learner(f, eta, LossKind::Square);
    const Point x{u(rng)};
    const double y = u(rng);
    const double g = gradient_scalar(LossKind::Square, f.evaluate(x), y);
    learner.step(TeachingPack{{{x, y}}});
    for (int i = 0; i < 20; ++i) {
      const Point probe{u(rng)};
      const double expected =
          f.evaluate(probe) - eta * g * eval_kernel(kernel, x, probe);
      CHECK(std::abs(learner.evaluate(probe) - expected) <= 1e-12);
    }
  }
}

TEST_CASE("square-loss drop at the taught point is 4 eta (1 - eta) e^2") {
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (double eta : {0.1, 0.25}) {
    for (int trial = 0; trial < 50; ++trial) {
      RkhsFunction f(ZeroBase{}, Kernel::rbf());
      f.add_term({u(rng)}, u(rng));
      LearnerState learner(f, eta, LossKind::Square);
      const Point x{u(rng)};
      const double y = u(rng);
      const double e = f.evaluate(x) - y;
      const double before = loss_value(LossKind::Square, f.evaluate(x), y);
      learner.step(TeachingPack{{{x, y}}});
      const double after = loss_value(LossKind::Square, learner.evaluate(x), y);
      CHECK(before - after ==
            doctest::Approx(4.0 * eta * (1.0 - eta) * e * e).epsilon(1e-10));
    }
  }
}

TEST_CASE("concrete drop oracles") {
  // e = 1, eta = 0.1: drop 0.36; eta = 0.25: drop 0.75
  for (auto [eta, drop] : {std::pair{0.1, 0.36}, std::pair{0.25, 0.75}}) {
    LearnerState learner(RkhsFunction(ZeroBase{}, Kernel::rbf()), eta,
                         LossKind::Square);
    learner.step(TeachingPack{{{{0.0}, -1.0}}});  // pred 0, label -1, e = 1
    const double after = loss_value(LossKind::Square, learner.evaluate({0.0}), -1.0);
    CHECK(1.0 - after == doctest::Approx(drop).epsilon(1e-12));
  }
}

TEST_CASE("pack predictions are all taken before the update") {
  // duplicate example: both coefficients must come from the same pre-step
  // prediction
  LearnerState learner(RkhsFunction(ZeroBase{}, Kernel::rbf()), 0.2,
                       LossKind::Square);
  auto coeffs = learner.step(TeachingPack{{{{0.7}, 0.5}, {{0.7}, 0.5}}});
  REQUIRE(coeffs.size() == 2);
  CHECK(coeffs[0] == coeffs[1]);
  // mean aggregation: the pack of two halves each contribution
  CHECK(coeffs[0] == doctest::Approx(0.1).epsilon(1e-14));
  CHECK(learner.evaluate({0.7}) == doctest::Approx(0.2).epsilon(1e-14));
}

TEST_CASE("mean vs sum aggregation") {
  const TeachingPack pack{{{{0.2}, 1.0}, {{0.9}, -0.5}}};
  LearnerState mean(RkhsFunction(ZeroBase{}, Kernel::rbf()), 0.1,
                    LossKind::Square, PackAggregation::Mean);
  LearnerState sum(RkhsFunction(ZeroBase{}, Kernel::rbf()), 0.1,
                   LossKind::Square, PackAggregation::Sum);
  auto cm = mean.step(pack);
  auto cs = sum.step(pack);
  REQUIRE(cm.size() == 2);
  REQUIRE(cs.size() == 2);
  for (int j = 0; j < 2; ++j) {
    CHECK(cs[j] == doctest::Approx(2.0 * cm[j]).epsilon(1e-14));
  }
}
