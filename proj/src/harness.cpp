#include "nimt/harness.hpp"

#include <cmath>
#include <stdexcept>

namespace nimt {

std::vector<Point> build_grid(double start, double stop, double step, int dims) {
  if (!(step > 0.0)) {
    throw std::invalid_argument("build_grid: step must be positive");
  }
  if (!(stop > start)) {
    throw std::invalid_argument("build_grid: stop must exceed start");
  }
  if (dims < 1) {
    throw std::invalid_argument("build_grid: dims must be at least 1");
  }
  // epsilon-guarded ceiling keeps the count stable under float accumulation
  const std::size_t count = static_cast<std::size_t>(
      std::max(1.0, std::ceil((stop - start) / step - 1e-9)));
  std::vector<double> axis(count);
  for (std::size_t i = 0; i < count; ++i) {
    axis[i] = start + static_cast<double>(i) * step;
  }
  if (dims == 1) {
    std::vector<Point> pts;
    pts.reserve(count);
    for (double v : axis) pts.push_back({v});
    return pts;
  }
  std::vector<Point> pts;
  std::size_t total = 1;
  for (int d = 0; d < dims; ++d) total *= count;
  pts.reserve(total);
  std::vector<std::size_t> idx(dims, 0);
  for (std::size_t i = 0; i < total; ++i) {
    Point p(dims);
    std::size_t rem = i;
    for (int d = dims - 1; d >= 0; --d) {
      p[d] = axis[rem % count];
      rem /= count;
    }
    pts.push_back(std::move(p));
  }
  return pts;
}

namespace {

Scenario image_scenario(const ScenarioOverrides& o) {
  GridFunction target_img = o.target_image ? *o.target_image : synthetic_ring();
  GridFunction init_img = o.init_image ? *o.init_image : synthetic_figure_eight();
  if (target_img.rows != init_img.rows || target_img.cols != init_img.cols) {
    throw std::invalid_argument("image scenario: target/init shapes differ");
  }
  const Kernel kernel = Kernel::rbf(o.rbf_scale.value_or(0.1));
  Scenario s;
  s.name = "image";
  s.grid = image_grid(target_img);
  s.target = make_target(BaseFunction{std::move(target_img)}, kernel);
  s.init = make_target(BaseFunction{std::move(init_img)}, kernel);
  s.loss = LossKind::Square;
  s.eta = o.eta.value_or(0.01);
  s.epsilon = o.epsilon.value_or(1e-4);
  s.max_iters = o.max_iters.value_or(1000);
  return s;
}

}  // namespace

Scenario make_scenario(const std::string& name, const ScenarioOverrides& o) {
  if (name == "gmm1d") {
    const Kernel kernel = Kernel::rbf(o.rbf_scale.value_or(2.0));
    Scenario s;
    s.name = name;
    s.target = make_target(
        GaussianMixture1D{{1.0 / 3.0, 2.0 / 3.0}, {-2.0, 2.0}, {1.0, 1.0}},
        kernel);
    s.init = make_target(GaussianMixture1D{{1.0}, {-10.0}, {1.0}}, kernel);
    s.grid = build_grid(-14.0, 14.0, 0.1, 1);
    s.loss = LossKind::Square;
    s.eta = o.eta.value_or(0.01);
    s.epsilon = o.epsilon.value_or(0.0001);
    s.max_iters = o.max_iters.value_or(500000);
    return s;
  }
  if (name == "cls2d") {
    const Kernel kernel = Kernel::rbf(o.rbf_scale.value_or(2.0));
    Scenario s;
    s.name = name;
    s.target = make_target(Boundary2D{1.0, {0.5, -0.5}, {0.5, 0.5}}, kernel);
    s.init = make_target(Boundary2D{-1.0, {0.3, -0.6}, {0.5, 0.5}}, kernel);
    s.grid = build_grid(-1.0, 1.0, 0.01, 2);
    s.loss = LossKind::Hinge;
    s.eta = o.eta.value_or(0.001);
    s.epsilon = o.epsilon.value_or(0.001);
    s.max_iters = o.max_iters.value_or(10000);
    s.sign_labels = true;
    return s;
  }
  if (name == "image") {
    return image_scenario(o);
  }
  if (name == "linear_compare") {
    const Kernel kernel = Kernel::linear(1.0);
    Scenario s;
    s.name = name;
    s.target = make_target(Plane{{1.0, 1.0}}, kernel);     // x + 1
    s.init = make_target(Plane{{-0.5, 0.5}}, kernel);      // -0.5 x + 0.5
    s.grid = build_grid(-1.0, 1.0, 0.1, 1);
    s.loss = LossKind::Square;
    s.eta = o.eta.value_or(0.01);
    s.epsilon = o.epsilon.value_or(0.0001);
    s.max_iters = o.max_iters.value_or(50);
    return s;
  }
  if (name == "parametric3d") {
    const Kernel kernel = Kernel::rbf(o.rbf_scale.value_or(2.0));
    Scenario s;
    s.name = name;
    s.target = make_target(Plane{{1.0, 1.0, -8.0}}, kernel);  // x1 + x2 - 8
    s.init = make_target(Paraboloid{o.paraboloid_sign.value_or(-1.0), {5.0, 5.0}},
                         kernel);
    s.grid = build_grid(0.0, 10.0, 1.0, 2);
    s.loss = LossKind::Square;
    s.eta = o.eta.value_or(0.01);
    s.epsilon = o.epsilon.value_or(0.0001);
    s.max_iters = o.max_iters.value_or(2000);
    return s;
  }
  throw std::invalid_argument("make_scenario: unknown scenario '" + name + "'");
}

SessionConfig session_from_scenario(const Scenario& s, TeacherPolicy policy,
                                    bool assert_descent, bool assert_theorem1) {
  SessionConfig c{.target = s.target,
                  .init = s.init,
                  .grid = s.grid,
                  .loss = s.loss,
                  .eta = s.eta,
                  .epsilon = s.epsilon,
                  .max_iters = s.max_iters,
                  .policy = std::move(policy),
                  .sign_labels = s.sign_labels,
                  .assert_descent = assert_descent,
                  .assert_theorem1 = assert_theorem1};
  return c;
}

double parametric_predict(const ParametricLearner& p, const Point& x) {
  if (x.size() + 1 != p.w.size()) {
    throw std::invalid_argument("parametric_predict: dimension mismatch");
  }
  double v = p.w.back();  // bias coordinate
  for (std::size_t i = 0; i < x.size(); ++i) v += p.w[i] * x[i];
  return v;
}

ParametricLearner parametric_gd_step(const ParametricLearner& p, const Point& x,
                                     double y) {
  const double g = 2.0 * (parametric_predict(p, x) - y);
  ParametricLearner out = p;
  for (std::size_t i = 0; i < x.size(); ++i) out.w[i] -= p.eta * g * x[i];
  out.w.back() -= p.eta * g;  // bias input is the constant 1
  return out;
}

namespace {

GridFunction ring_image(std::size_t n, double cx, double cy, double r0, double w) {
  GridFunction g{n, n, std::vector<double>(n * n, 0.0)};
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      const double x = (static_cast<double>(c) + 0.5) / static_cast<double>(n);
      const double y = (static_cast<double>(r) + 0.5) / static_cast<double>(n);
      const double rad = std::hypot(x - cx, y - cy);
      const double z = (rad - r0) / w;
      g.values[r * n + c] = std::exp(-z * z);
    }
  }
  return g;
}

}  // namespace

GridFunction synthetic_ring(std::size_t n) {
  return ring_image(n, 0.5, 0.5, 0.30, 0.08);
}

GridFunction synthetic_figure_eight(std::size_t n) {
  GridFunction top = ring_image(n, 0.5, 0.30, 0.16, 0.07);
  GridFunction bottom = ring_image(n, 0.5, 0.70, 0.16, 0.07);
  for (std::size_t i = 0; i < top.values.size(); ++i) {
    top.values[i] = std::max(top.values[i], bottom.values[i]);
  }
  return top;
}

std::vector<Point> image_grid(const GridFunction& g) {
  std::vector<Point> pts;
  pts.reserve(g.rows * g.cols);
  for (std::size_t r = 0; r < g.rows; ++r) {
    for (std::size_t c = 0; c < g.cols; ++c) {
      pts.push_back({(static_cast<double>(c) + 0.5) / static_cast<double>(g.cols),
                     (static_cast<double>(r) + 0.5) / static_cast<double>(g.rows)});
    }
  }
  return pts;
}

}  // namespace nimt
