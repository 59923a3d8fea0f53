#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <numbers>
#include <random>

#include "nimt/function_space.hpp"

using namespace nimt;

namespace {

double normal_pdf(double x, double mu, double s) {
  const double z = (x - mu) / s;
  return std::exp(-0.5 * z * z) / (s * std::sqrt(2.0 * std::numbers::pi));
}

}  // namespace

TEST_CASE("zero function evaluates to zero") {
  RkhsFunction f(ZeroBase{}, Kernel::rbf());
  CHECK(f.evaluate({0.0}) == 0.0);
  CHECK(f.evaluate({3.5}) == 0.0);
}

TEST_CASE("gaussian mixture evaluation") {
  RkhsFunction f = make_target(
      GaussianMixture1D{{1.0 / 3.0, 2.0 / 3.0}, {-2.0, 2.0}, {1.0, 1.0}},
      Kernel::rbf());
  // oracle: closed-form normal pdf sum
  const double expected = normal_pdf(2.0, -2.0, 1.0) / 3.0 +
                          2.0 * normal_pdf(2.0, 2.0, 1.0) / 3.0;
  CHECK(expected == doctest::Approx(0.2660061303428768).epsilon(1e-12));
  CHECK(f.evaluate({2.0}) == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("single expansion term at its own center") {
  RkhsFunction f(ZeroBase{}, Kernel::rbf());
  f.add_term({0.7}, 0.2);
  CHECK(f.evaluate({0.7}) == doctest::Approx(0.2).epsilon(1e-14));
}

TEST_CASE("add_expansion_term merges duplicate centers and rejects non-finite") {
  RkhsFunction f(ZeroBase{}, Kernel::rbf());
  RkhsFunction g = add_expansion_term(f, {1.0}, 0.1);
  g = add_expansion_term(g, {1.0}, 0.1);
  CHECK(g.terms().size() == 1);
  CHECK(g.terms()[0].coeff == doctest::Approx(0.2));
  CHECK_THROWS_AS(g.added({1.0}, std::nan("")), std::invalid_argument);

  // coeff 0 leaves evaluation unchanged
  RkhsFunction h = add_expansion_term(f, {0.3}, 0.0);
  for (double x : {-2.0, 0.0, 0.3, 5.0}) {
    CHECK(h.evaluate({x}) == f.evaluate({x}));
  }
}

TEST_CASE("one-step reproducing check") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  Kernel k = Kernel::rbf();
  RkhsFunction f(GaussianMixture1D{{1.0}, {0.0}, {1.0}}, k);
  f.add_term({1.0}, 0.4);
  const Point c{u(rng)};
  const double a = 0.37;
  RkhsFunction g = add_expansion_term(f, c, a);
  for (int i = 0; i < 100; ++i) {
    const Point x{u(rng)};
    CHECK(std::abs(g.evaluate(x) - f.evaluate(x) - a * eval_kernel(k, c, x)) <=
          1e-12);
  }
}

TEST_CASE("evaluation is linear in the expansion") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  Kernel k = Kernel::rbf();
  RkhsFunction f(ZeroBase{}, k);
  std::vector<ExpansionTerm> terms;
  for (int i = 0; i < 20; ++i) {
    terms.push_back({{u(rng)}, u(rng)});
    f.add_term(terms.back().center, terms.back().coeff);
  }
  for (int i = 0; i < 50; ++i) {
    const Point x{u(rng)};
    double sum = 0.0;
    for (const auto& t : terms) sum += t.coeff * eval_kernel(k, t.center, x);
    CHECK(f.evaluate(x) == doctest::Approx(sum).epsilon(1e-10));
  }
}

TEST_CASE("empirical_l2") {
  CHECK(empirical_l2({1.0, 2.0, 3.0}, {1.0, 2.0, 3.0}) == 0.0);
  CHECK(empirical_l2({3.0, 4.0, 0.0, 0.0}, {0.0, 0.0, 0.0, 0.0}) ==
        doctest::Approx(1.25).epsilon(1e-15));
  // positive homogeneity
  CHECK(empirical_l2({6.0, 8.0, 0.0, 0.0}, {0.0, 0.0, 0.0, 0.0}) ==
        doctest::Approx(2.5).epsilon(1e-15));
  CHECK_THROWS_AS(empirical_l2({}, {}), std::invalid_argument);
  CHECK_THROWS_AS(empirical_l2({1.0}, {1.0, 2.0}), std::invalid_argument);
}

TEST_CASE("empirical_l2 triangle inequality") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> f(8), g(8), h(8);
    for (int i = 0; i < 8; ++i) {
      f[i] = u(rng);
      g[i] = u(rng);
      h[i] = u(rng);
    }
    CHECK(empirical_l2(f, h) <= empirical_l2(f, g) + empirical_l2(g, h) + 1e-10);
  }
}

TEST_CASE("make_target catalog entries") {
  Kernel k = Kernel::rbf();
  RkhsFunction init = make_target(GaussianMixture1D{{1.0}, {-10.0}, {1.0}}, k);
  CHECK(init.terms().empty());
  CHECK(init.evaluate({-10.0}) ==
        doctest::Approx(0.3989422804014327).epsilon(1e-12));

  RkhsFunction plane = make_target(Plane{{1.0, 1.0, -8.0}}, k);
  CHECK(plane.evaluate({5.0, 5.0}) == doctest::Approx(2.0));

  // the two bumps cancel at x1 = 0
  RkhsFunction boundary = make_target(Boundary2D{1.0, {0.5, -0.5}, {0.5, 0.5}}, k);
  for (double x2 : {-0.8, -0.1, 0.3, 0.9}) {
    CHECK(boundary.evaluate({0.0, x2}) == doctest::Approx(x2).epsilon(1e-12));
  }

  CHECK_THROWS_AS(make_target(GaussianMixture1D{{1.0}, {0.0}, {-1.0}}, k),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_target(GaussianMixture1D{{0.5, 0.4}, {0.0, 1.0}, {1.0, 1.0}}, k),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_target(GridFunction{2, 2, {0.0, 1.0}}, k),
                  std::invalid_argument);
}

TEST_CASE("grid base uses nearest-lattice lookup") {
  GridFunction g{2, 2, {0.0, 1.0, 0.5, 0.25}};
  RkhsFunction f = make_target(g, Kernel::rbf(0.1));
  CHECK(f.evaluate({0.25, 0.25}) == 0.0);   // pixel (0,0)
  CHECK(f.evaluate({0.75, 0.25}) == 1.0);   // pixel (0,1)
  CHECK(f.evaluate({0.25, 0.75}) == 0.5);   // pixel (1,0)
  CHECK(f.evaluate({0.75, 0.75}) == 0.25);  // pixel (1,1)
}
