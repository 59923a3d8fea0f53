#include "nimt/kernel.hpp"

#include <cmath>
#include <stdexcept>

namespace nimt {

double eval_kernel(const Kernel& k, const Point& x, const Point& y) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("eval_kernel: dimension mismatch (" +
                                std::to_string(x.size()) + " vs " +
                                std::to_string(y.size()) + ")");
  }
  switch (k.kind) {
    case KernelKind::Rbf: {
      double sq = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = (x[i] - y[i]) / k.rbf_scale;
        sq += d * d;
      }
      return std::exp(-sq);
    }
    case KernelKind::Linear: {
      double dot = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) dot += x[i] * y[i];
      return dot + k.linear_offset;
    }
  }
  throw std::logic_error("eval_kernel: unknown kernel kind");
}

std::vector<std::vector<double>> gram_matrix(const Kernel& k,
                                             const std::vector<Point>& pts) {
  if (pts.empty()) {
    throw std::invalid_argument("gram_matrix: empty point list");
  }
  const std::size_t n = pts.size();
  std::vector<std::vector<double>> g(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double v = eval_kernel(k, pts[i], pts[j]);
      g[i][j] = v;
      g[j][i] = v;
    }
  }
  return g;
}

double kernel_bound(const Kernel& k, const std::optional<DomainBox>& box) {
  switch (k.kind) {
    case KernelKind::Rbf:
      return 1.0;  // attained at x = x'
    case KernelKind::Linear: {
      if (!box) {
        throw std::invalid_argument(
            "kernel_bound: linear kernel is unbounded without a domain box");
      }
      if (box->lo.size() != box->hi.size()) {
        throw std::invalid_argument("kernel_bound: malformed domain box");
      }
      // max over the box of x_i * x'_i with x, x' independent is
      // max(lo_i^2, hi_i^2) per coordinate.
      double dot = 0.0;
      for (std::size_t i = 0; i < box->lo.size(); ++i) {
        dot += std::max(box->lo[i] * box->lo[i], box->hi[i] * box->hi[i]);
      }
      return dot + k.linear_offset;
    }
  }
  throw std::logic_error("kernel_bound: unknown kernel kind");
}

}  // namespace nimt
