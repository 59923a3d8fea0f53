#include "nimt/loss.hpp"

#include <cmath>
#include <stdexcept>

namespace nimt {

namespace {

void check_inputs(LossKind l, double pred, double y) {
  if (!std::isfinite(pred) || !std::isfinite(y)) {
    throw std::invalid_argument("loss: non-finite input");
  }
  if (l == LossKind::Hinge && y != 1.0 && y != -1.0) {
    throw std::invalid_argument("loss: hinge label must be -1 or 1");
  }
}

}  // namespace

double loss_value(LossKind l, double pred, double y) {
  check_inputs(l, pred, y);
  switch (l) {
    case LossKind::Square: {
      const double d = y - pred;
      return d * d;
    }
    case LossKind::Hinge:
      return std::max(0.0, 1.0 - y * pred);
  }
  throw std::logic_error("loss_value: unknown loss");
}

double gradient_scalar(LossKind l, double pred, double y) {
  check_inputs(l, pred, y);
  switch (l) {
    case LossKind::Square:
      return 2.0 * (pred - y);
    case LossKind::Hinge:
      return (y * pred < 1.0) ? -y : 0.0;
  }
  throw std::logic_error("gradient_scalar: unknown loss");
}

std::optional<double> safe_learning_rate(LossKind l, const Kernel& k,
                                         const std::optional<DomainBox>& box) {
  if (l == LossKind::Hinge) return std::nullopt;
  const double lipschitz = 2.0;  // L_L for square loss
  return 1.0 / (2.0 * lipschitz * kernel_bound(k, box));
}

}  // namespace nimt
