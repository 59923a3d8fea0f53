#pragma once

#include <vector>

#include "nimt/function_space.hpp"
#include "nimt/loss.hpp"

namespace nimt {

struct TeachingExample {
  Point x;
  double y;
};

/// Nonempty pack of examples fed to the learner in one iteration.
struct TeachingPack {
  std::vector<TeachingExample> examples;
};

enum class PackAggregation { Mean, Sum };

/// The gray-box iterative learner. Learning rate and loss are private; the
/// teacher-facing surface is model evaluation only.
class LearnerState {
 public:
  LearnerState(RkhsFunction model, double eta, LossKind loss,
               PackAggregation aggregation = PackAggregation::Mean);

  double evaluate(const Point& x) const { return model_.evaluate(x); }
  const RkhsFunction& model() const { return model_; }
  int step_count() const { return step_count_; }

  /// Functional-gradient step on one pack. All predictions are taken at the
  /// pre-step model; each example j contributes a term -eta * g_j / k
  /// (or -eta * g_j under Sum aggregation) at center x_j. Returns the
  /// per-example coefficients that were added.
  std::vector<double> step(const TeachingPack& pack);

 private:
  RkhsFunction model_;
  double eta_;
  LossKind loss_;
  PackAggregation aggregation_;
  int step_count_ = 0;
};

}  // namespace nimt
