#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <random>

#include "nimt/loss.hpp"

using namespace nimt;

TEST_CASE("square loss values and gradients") {
  CHECK(loss_value(LossKind::Square, 0.3, 0.5) == doctest::Approx(0.04));
  CHECK(gradient_scalar(LossKind::Square, 0.3, 0.5) == doctest::Approx(-0.4));
  CHECK(gradient_scalar(LossKind::Square, 0.5, 0.5) == 0.0);
}

TEST_CASE("hinge loss values and gradients") {
  CHECK(loss_value(LossKind::Hinge, 0.3, 1.0) == doctest::Approx(0.7));
  CHECK(loss_value(LossKind::Hinge, 2.0, 1.0) == 0.0);
  CHECK(gradient_scalar(LossKind::Hinge, 0.3, 1.0) == -1.0);
  CHECK(gradient_scalar(LossKind::Hinge, -0.3, -1.0) == 1.0);
  CHECK(gradient_scalar(LossKind::Hinge, 2.0, 1.0) == 0.0);
  // kink: converged points must be stationary
  CHECK(gradient_scalar(LossKind::Hinge, 1.0, 1.0) == 0.0);
  CHECK_THROWS_AS(gradient_scalar(LossKind::Hinge, 0.3, 0.5),
                  std::invalid_argument);
  CHECK_THROWS_AS(loss_value(LossKind::Hinge, 0.3, 0.0), std::invalid_argument);
}

TEST_CASE("safe learning rates") {
  auto r1 = safe_learning_rate(LossKind::Square, Kernel::rbf());
  REQUIRE(r1.has_value());
  CHECK(*r1 == doctest::Approx(0.25));

  DomainBox box{{-1.0, -1.0}, {1.0, 1.0}};
  auto r2 = safe_learning_rate(LossKind::Square, Kernel::linear(1.0), box);
  REQUIRE(r2.has_value());
  CHECK(*r2 == doctest::Approx(1.0 / 12.0));

  CHECK_FALSE(safe_learning_rate(LossKind::Hinge, Kernel::rbf()).has_value());
}

TEST_CASE("gradients match central finite differences") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  std::bernoulli_distribution coin(0.5);
  const double h = 1e-6;
  for (int i = 0; i < 1000; ++i) {
    const double pred = u(rng);
    {
      const double y = u(rng);
      const double fd = (loss_value(LossKind::Square, pred + h, y) -
                         loss_value(LossKind::Square, pred - h, y)) /
                        (2.0 * h);
      CHECK(std::abs(gradient_scalar(LossKind::Square, pred, y) - fd) <= 1e-5);
    }
    {
      const double y = coin(rng) ? 1.0 : -1.0;
      if (std::abs(y * pred - 1.0) < 1e-3) continue;  // kink neighborhood
      const double fd = (loss_value(LossKind::Hinge, pred + h, y) -
                         loss_value(LossKind::Hinge, pred - h, y)) /
                        (2.0 * h);
      CHECK(std::abs(gradient_scalar(LossKind::Hinge, pred, y) - fd) <= 1e-5);
    }
  }
}

TEST_CASE("square gradient is odd around the label") {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 200; ++i) {
    const double y = u(rng), d = u(rng);
    CHECK(gradient_scalar(LossKind::Square, y + d, y) ==
          doctest::Approx(-gradient_scalar(LossKind::Square, y - d, y))
              .epsilon(1e-12));
  }
}

TEST_CASE("square gradient is 2-Lipschitz with equality") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 200; ++i) {
    const double y = u(rng), p = u(rng), q = u(rng);
    const double lhs = std::abs(gradient_scalar(LossKind::Square, p, y) -
                                gradient_scalar(LossKind::Square, q, y));
    CHECK(lhs == doctest::Approx(2.0 * std::abs(p - q)).epsilon(1e-12));
  }
}
