#pragma once

#include <optional>

#include "nimt/kernel.hpp"

namespace nimt {

enum class LossKind { Square, Hinge };

/// Square: (y - pred)^2.  Hinge: max(0, 1 - y*pred), y in {-1, 1}.
double loss_value(LossKind l, double pred, double y);

/// dL/df at (pred, y). Square: 2(pred - y). Hinge: -y if y*pred < 1, else 0
/// (zero on the kink so converged points are stationary).
double gradient_scalar(LossKind l, double pred, double y);

/// 1/(2 L_L M_K) from the sufficient-descent condition. Square loss has
/// L_L = 2; hinge is not Lipschitz smooth, so no safe rate exists.
std::optional<double> safe_learning_rate(
    LossKind l, const Kernel& k,
    const std::optional<DomainBox>& box = std::nullopt);

}  // namespace nimt
