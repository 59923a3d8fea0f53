#include "nimt/function_space.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nimt {

namespace {

void require_dim(const Point& x, std::size_t dim, const char* who) {
  if (x.size() != dim) {
    throw std::invalid_argument(std::string(who) + ": expected dimension " +
                                std::to_string(dim) + ", got " +
                                std::to_string(x.size()));
  }
}

double normal_pdf(double x, double mu, double sigma) {
  const double z = (x - mu) / sigma;
  return std::exp(-0.5 * z * z) / (sigma * std::sqrt(2.0 * std::numbers::pi));
}

}  // namespace

double evaluate_base(const BaseFunction& base, const Point& x) {
  return std::visit(
      [&](const auto& b) -> double {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, ZeroBase>) {
          return 0.0;
        } else if constexpr (std::is_same_v<T, GaussianMixture1D>) {
          require_dim(x, 1, "GaussianMixture1D");
          double v = 0.0;
          for (std::size_t i = 0; i < b.weights.size(); ++i) {
            v += b.weights[i] * normal_pdf(x[0], b.means[i], b.stddevs[i]);
          }
          return v;
        } else if constexpr (std::is_same_v<T, Boundary2D>) {
          require_dim(x, 2, "Boundary2D");
          const double b0 = (x[0] - b.centers[0]) / b.widths[0];
          const double b1 = (x[0] - b.centers[1]) / b.widths[1];
          return x[1] - b.sign * std::exp(-b0 * b0) +
                 b.sign * std::exp(-b1 * b1);
        } else if constexpr (std::is_same_v<T, Plane>) {
          require_dim(x, b.coeffs.size() - 1, "Plane");
          double v = b.coeffs.back();
          for (std::size_t i = 0; i + 1 < b.coeffs.size(); ++i) {
            v += b.coeffs[i] * x[i];
          }
          return v;
        } else if constexpr (std::is_same_v<T, Paraboloid>) {
          require_dim(x, b.center.size(), "Paraboloid");
          double v = 0.0;
          for (std::size_t i = 0; i < x.size(); ++i) {
            const double d = x[i] - b.center[i];
            v += d * d;
          }
          return b.sign * v;
        } else if constexpr (std::is_same_v<T, GridFunction>) {
          require_dim(x, 2, "GridFunction");
          // nearest-lattice lookup: pixel (r,c) center at
          // ((c+0.5)/cols, (r+0.5)/rows)
          auto clamp_idx = [](double v, std::size_t n) -> std::size_t {
            long i = std::lround(v * static_cast<double>(n) - 0.5);
            if (i < 0) i = 0;
            if (i >= static_cast<long>(n)) i = static_cast<long>(n) - 1;
            return static_cast<std::size_t>(i);
          };
          const std::size_t c = clamp_idx(x[0], b.cols);
          const std::size_t r = clamp_idx(x[1], b.rows);
          return b.at(r, c);
        }
      },
      base);
}

RkhsFunction::RkhsFunction(BaseFunction base, Kernel kernel)
    : base_(std::move(base)), kernel_(kernel) {}

std::size_t RkhsFunction::hash_point(const Point& p) const {
  std::size_t h = p.size();
  std::hash<double> hd;
  for (double v : p) {
    h ^= hd(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

double RkhsFunction::evaluate(const Point& x) const {
  double v = evaluate_base(base_, x);
  for (const auto& term : terms_) {
    v += term.coeff * eval_kernel(kernel_, term.center, x);
  }
  return v;
}

void RkhsFunction::add_term(const Point& center, double coeff) {
  if (!std::isfinite(coeff)) {
    throw std::invalid_argument("add_term: non-finite coefficient");
  }
  const std::size_t h = hash_point(center);
  auto it = center_index_.find(h);
  if (it != center_index_.end()) {
    for (std::size_t idx : it->second) {
      if (terms_[idx].center == center) {
        terms_[idx].coeff += coeff;
        return;
      }
    }
  }
  terms_.push_back({center, coeff});
  center_index_[h].push_back(terms_.size() - 1);
}

RkhsFunction RkhsFunction::added(const Point& center, double coeff) const {
  RkhsFunction out = *this;
  out.add_term(center, coeff);
  return out;
}

RkhsFunction add_expansion_term(const RkhsFunction& f, const Point& center,
                                double coeff) {
  return f.added(center, coeff);
}

double empirical_l2(const std::vector<double>& f_values,
                    const std::vector<double>& g_values) {
  if (f_values.empty() || f_values.size() != g_values.size()) {
    throw std::invalid_argument("empirical_l2: lists must be nonempty and of equal length");
  }
  double sq = 0.0;
  for (std::size_t i = 0; i < f_values.size(); ++i) {
    const double d = f_values[i] - g_values[i];
    sq += d * d;
  }
  return std::sqrt(sq) / static_cast<double>(f_values.size());
}

RkhsFunction make_target(const BaseFunction& base, const Kernel& kernel) {
  std::visit(
      [](const auto& b) {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, GaussianMixture1D>) {
          if (b.weights.empty() || b.weights.size() != b.means.size() ||
              b.weights.size() != b.stddevs.size()) {
            throw std::invalid_argument(
                "make_target: mixture component lists must be nonempty and of "
                "equal length");
          }
          double wsum = 0.0;
          for (double w : b.weights) wsum += w;
          if (std::abs(wsum - 1.0) > 1e-12) {
            throw std::invalid_argument(
                "make_target: mixture weights must sum to 1");
          }
          for (double s : b.stddevs) {
            if (!(s > 0.0)) {
              throw std::invalid_argument(
                  "make_target: mixture stddevs must be positive");
            }
          }
        } else if constexpr (std::is_same_v<T, Boundary2D>) {
          if (!(b.widths[0] > 0.0) || !(b.widths[1] > 0.0)) {
            throw std::invalid_argument(
                "make_target: boundary widths must be positive");
          }
        } else if constexpr (std::is_same_v<T, Plane>) {
          if (b.coeffs.empty()) {
            throw std::invalid_argument("make_target: plane needs coefficients");
          }
        } else if constexpr (std::is_same_v<T, GridFunction>) {
          if (b.rows == 0 || b.cols == 0 ||
              b.values.size() != b.rows * b.cols) {
            throw std::invalid_argument(
                "make_target: grid shape does not match value count");
          }
          for (double v : b.values) {
            if (!std::isfinite(v)) {
              throw std::invalid_argument(
                  "make_target: grid values must be finite");
            }
          }
        }
      },
      base);
  return RkhsFunction(base, kernel);
}

}  // namespace nimt
