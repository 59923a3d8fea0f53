#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nimt/teacher.hpp"

namespace nimt {

/// Half-open lattice start + i*step, i = 0..count-1 with
/// count = ceil((stop-start)/step - 1e-9); dims > 1 takes the Cartesian
/// product in row-major order (first axis slowest).
std::vector<Point> build_grid(double start, double stop, double step, int dims);

struct Scenario {
  std::string name;
  RkhsFunction target;
  RkhsFunction init;
  std::vector<Point> grid;
  LossKind loss = LossKind::Square;
  double eta = 0.01;
  double epsilon = 1e-4;
  int max_iters = 1000;
  bool sign_labels = false;
};

struct ScenarioOverrides {
  std::optional<double> eta;
  std::optional<double> epsilon;
  std::optional<int> max_iters;
  std::optional<double> rbf_scale;
  std::optional<GridFunction> target_image;
  std::optional<GridFunction> init_image;
  std::optional<double> paraboloid_sign;  // parametric3d init: +1 or -1
};

/// Known names: gmm1d, cls2d, image, linear_compare, parametric3d.
Scenario make_scenario(const std::string& name,
                       const ScenarioOverrides& overrides = {});

SessionConfig session_from_scenario(const Scenario& s, TeacherPolicy policy,
                                    bool assert_descent = true,
                                    bool assert_theorem1 = true);

/// Linear learner on bias-augmented inputs, square loss.
struct ParametricLearner {
  std::vector<double> w;  // weights, last entry is the bias
  double eta = 0.01;
};

ParametricLearner parametric_gd_step(const ParametricLearner& p, const Point& x,
                                     double y);

double parametric_predict(const ParametricLearner& p, const Point& x);

/// Bundled synthetic 28x28 test images (values in [0,1]).
GridFunction synthetic_ring(std::size_t n = 28);
GridFunction synthetic_figure_eight(std::size_t n = 28);

/// Pixel-center grid of an image, row-major over (x, y) in [0,1]^2.
std::vector<Point> image_grid(const GridFunction& g);

}  // namespace nimt
