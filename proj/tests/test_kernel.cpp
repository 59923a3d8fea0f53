#include <doctest.h>

#include <stdexcept>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "nimt/kernel.hpp"

using namespace nimt;

TEST_CASE("rbf self-similarity and paper form") {
  Kernel k = Kernel::rbf();
  CHECK(eval_kernel(k, {0.3}, {0.3}) == doctest::Approx(1.0).epsilon(1e-15));
  // exp(-||(x-x')/2||^2) at distance 2
  CHECK(eval_kernel(k, {0.0}, {2.0}) ==
        doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
}

TEST_CASE("linear kernel with offset") {
  Kernel k = Kernel::linear(1.0);
  CHECK(eval_kernel(k, {1.0, 2.0}, {3.0, 4.0}) == doctest::Approx(12.0));
}

TEST_CASE("dimension mismatch rejected") {
  CHECK_THROWS_AS(eval_kernel(Kernel::rbf(), {1.0}, {1.0, 2.0}),
                  std::invalid_argument);
}

TEST_CASE("gram matrix basics") {
  Kernel k = Kernel::rbf();
  auto g1 = gram_matrix(k, {{0.0}});
  CHECK(g1.size() == 1);
  CHECK(g1[0][0] == doctest::Approx(1.0));

  auto g2 = gram_matrix(k, {{0.0}, {2.0}});
  CHECK(g2[0][1] == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
  CHECK(g2[1][0] == g2[0][1]);

  CHECK_THROWS_AS(gram_matrix(k, {}), std::invalid_argument);
}

TEST_CASE("gram matrices on random points are symmetric and PSD") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (const Kernel& k : {Kernel::rbf(), Kernel::rbf(0.7), Kernel::linear(1.0)}) {
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<Point> pts;
      for (int i = 0; i < 10; ++i) pts.push_back({u(rng), u(rng)});
      auto g = gram_matrix(k, pts);
      Eigen::MatrixXd m(10, 10);
      for (int i = 0; i < 10; ++i) {
        for (int j = 0; j < 10; ++j) {
          CHECK(g[i][j] == g[j][i]);
          m(i, j) = g[i][j];
        }
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
      CHECK(es.eigenvalues().minCoeff() >= -1e-8);
    }
  }
}

TEST_CASE("rbf translation invariance") {
  Kernel k = Kernel::rbf();
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 200; ++i) {
    const double x = u(rng), y = u(rng), c = u(rng);
    CHECK(std::abs(eval_kernel(k, {x + c}, {y + c}) - eval_kernel(k, {x}, {y})) <=
          1e-12);
  }
}

TEST_CASE("kernel bound") {
  CHECK(kernel_bound(Kernel::rbf()) == doctest::Approx(1.0));
  DomainBox box{{-1.0, -1.0}, {1.0, 1.0}};
  CHECK(kernel_bound(Kernel::linear(1.0), box) == doctest::Approx(3.0));
  CHECK_THROWS_AS(kernel_bound(Kernel::linear(1.0)), std::invalid_argument);
}

TEST_CASE("kernel values never exceed the bound over the box") {
  DomainBox box{{-1.0, -1.0}, {1.0, 1.0}};
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (const Kernel& k : {Kernel::rbf(), Kernel::linear(1.0)}) {
    const double bound = kernel_bound(k, box);
    for (int i = 0; i < 500; ++i) {
      Point a{u(rng), u(rng)}, b{u(rng), u(rng)};
      CHECK(eval_kernel(k, a, b) <= bound + 1e-12);
    }
  }
}
