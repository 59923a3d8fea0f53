#pragma once

#include <array>
#include <cstddef>
#include <unordered_map>
#include <variant>
#include <vector>

#include "nimt/kernel.hpp"

namespace nimt {

struct ZeroBase {};

/// Mixture of 1-D normal pdfs; weights sum to 1, stddevs positive.
struct GaussianMixture1D {
  std::vector<double> weights;
  std::vector<double> means;
  std::vector<double> stddevs;
};

/// 2-D decision-boundary function
///   f(x1,x2) = x2 - s*exp(-((x1-c0)/w0)^2) + s*exp(-((x1-c1)/w1)^2)
/// with s = sign. The bumps are negated Gaussians so the boundary stays
/// bounded on the unit square.
struct Boundary2D {
  double sign = 1.0;
  std::array<double, 2> centers{};
  std::array<double, 2> widths{};
};

/// f(x) = sum_i coeffs[i] * x_i + coeffs.back() (last entry is the constant).
struct Plane {
  std::vector<double> coeffs;
};

/// f(x) = sign * sum_i (x_i - center_i)^2.
struct Paraboloid {
  double sign = 1.0;
  Point center;
};

/// Raster surface: values in [0,1], pixel centers mapped to [0,1]^2.
/// Pixel (r,c) sits at ((c + 0.5)/cols, (r + 0.5)/rows); evaluation is a
/// nearest-lattice lookup.
struct GridFunction {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;  // row-major

  double at(std::size_t r, std::size_t c) const { return values[r * cols + c]; }
};

using BaseFunction = std::variant<ZeroBase, GaussianMixture1D, Boundary2D,
                                  Plane, Paraboloid, GridFunction>;

double evaluate_base(const BaseFunction& base, const Point& x);

struct ExpansionTerm {
  Point center;
  double coeff;
};

/// RKHS-represented model: an analytic-or-grid base plus a finite kernel
/// expansion sum_i coeff_i * K(center_i, .). Terms with identical centers
/// are merged by coefficient addition.
class RkhsFunction {
 public:
  RkhsFunction() : base_(ZeroBase{}) {}
  RkhsFunction(BaseFunction base, Kernel kernel);

  double evaluate(const Point& x) const;
  double operator()(const Point& x) const { return evaluate(x); }

  /// In-place term addition (exclusive variant; see `added` for the value
  /// form). Throws on non-finite coeff.
  void add_term(const Point& center, double coeff);

  /// Value-returning form of add_term.
  RkhsFunction added(const Point& center, double coeff) const;

  const BaseFunction& base() const { return base_; }
  const Kernel& kernel() const { return kernel_; }
  const std::vector<ExpansionTerm>& terms() const { return terms_; }

 private:
  BaseFunction base_;
  Kernel kernel_;
  std::vector<ExpansionTerm> terms_;
  std::unordered_map<std::size_t, std::vector<std::size_t>> center_index_;

  std::size_t hash_point(const Point& p) const;
};

/// Value-semantics wrapper for the one-step update of an existing function.
RkhsFunction add_expansion_term(const RkhsFunction& f, const Point& center,
                                double coeff);

/// Empirical (average) L2 discrepancy: (1/n) * sqrt(sum_i (f_i - g_i)^2).
double empirical_l2(const std::vector<double>& f_values,
                    const std::vector<double>& g_values);

/// Validates catalog parameters and wraps the base into an expansion-free
/// RkhsFunction.
RkhsFunction make_target(const BaseFunction& base, const Kernel& kernel);

}  // namespace nimt
