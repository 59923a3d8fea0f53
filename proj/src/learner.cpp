#include "nimt/learner.hpp"

#include <stdexcept>

namespace nimt {

LearnerState::LearnerState(RkhsFunction model, double eta, LossKind loss,
                           PackAggregation aggregation)
    : model_(std::move(model)),
      eta_(eta),
      loss_(loss),
      aggregation_(aggregation) {
  if (!(eta > 0.0)) {
    throw std::invalid_argument("LearnerState: eta must be positive");
  }
}

std::vector<double> LearnerState::step(const TeachingPack& pack) {
  if (pack.examples.empty()) {
    throw std::invalid_argument("learner step: empty pack");
  }
  const double k = static_cast<double>(pack.examples.size());
  const double scale =
      (aggregation_ == PackAggregation::Mean) ? eta_ / k : eta_;

  // Predictions first: the whole pack is evaluated at f^t.
  std::vector<double> coeffs;
  coeffs.reserve(pack.examples.size());
  for (const auto& ex : pack.examples) {
    const double g = gradient_scalar(loss_, model_.evaluate(ex.x), ex.y);
    coeffs.push_back(-scale * g);
  }
  for (std::size_t j = 0; j < pack.examples.size(); ++j) {
    model_.add_term(pack.examples[j].x, coeffs[j]);
  }
  ++step_count_;
  return coeffs;
}

}  // namespace nimt
