#pragma once

#include <optional>
#include <vector>

namespace nimt {

using Point = std::vector<double>;

enum class KernelKind { Rbf, Linear };

/// Axis-aligned bounding box, used to bound unbounded kernels.
struct DomainBox {
  std::vector<double> lo;
  std::vector<double> hi;
};

/// Positive-definite kernel. Immutable value; all operations are pure.
///
/// Rbf:    K(x,x') = exp(-||(x - x') / rbf_scale||^2)
/// Linear: K(x,x') = <x,x'> + linear_offset
struct Kernel {
  KernelKind kind = KernelKind::Rbf;
  double rbf_scale = 2.0;
  double linear_offset = 1.0;

  static Kernel rbf(double scale = 2.0) { return {KernelKind::Rbf, scale, 0.0}; }
  static Kernel linear(double offset = 1.0) {
    return {KernelKind::Linear, 0.0, offset};
  }
};

double eval_kernel(const Kernel& k, const Point& x, const Point& y);

/// n x n symmetric matrix of pairwise kernel values.
std::vector<std::vector<double>> gram_matrix(const Kernel& k,
                                             const std::vector<Point>& pts);

/// Sup bound M_K of the kernel over the given domain. Rbf needs no box;
/// Linear without a box is unbounded and throws.
double kernel_bound(const Kernel& k,
                    const std::optional<DomainBox>& box = std::nullopt);

}  // namespace nimt
