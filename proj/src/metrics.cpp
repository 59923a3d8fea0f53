#include "nimt/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace nimt {

double discrepancy(LossKind l, double pred, double y) {
  const double g = gradient_scalar(l, pred, y);
  return g * g;
}

double greedy_ratio(double S_rand, double S_star) {
  if (S_rand > S_star + 1e-12) {
    throw std::runtime_error(
        "greedy_ratio: counterfactual discrepancy exceeds the greedy pick");
  }
  if (S_star == 0.0) return 1.0;  // converged sentinel
  return std::min(S_rand / S_star, 1.0);
}

DescentCheck sufficient_descent_check(double loss_before, double loss_after,
                                      double eta, double S) {
  const double lhs = loss_after - loss_before;
  const double rhs = -(eta / 2.0) * S;
  return {lhs <= rhs + 1e-12, rhs - lhs};
}

double optimal_direction_check(LossKind l, std::pair<double, double> greedy,
                               std::pair<double, double> other) {
  // <g* K_{x*} - g K_x, f - f*> = g*(f(x*) - f*(x*)) - g(f(x) - f*(x))
  const double gs = gradient_scalar(l, greedy.first, greedy.second);
  const double go = gradient_scalar(l, other.first, other.second);
  return gs * (greedy.first - greedy.second) - go * (other.first - other.second);
}

std::vector<BoundPoint> bound_monitor(const std::vector<IterationRecord>& records,
                                      double eta_min) {
  std::vector<BoundPoint> out;
  if (records.empty()) return out;
  const double l0 = records.front().Lbar;
  double min_s = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < records.size(); ++i) {
    min_s = std::min(min_s, records[i].S_taught);
    const int t = static_cast<int>(i) + 1;
    BoundPoint p;
    p.t = t;
    p.min_S = min_s;
    p.bound = 2.0 * l0 / (eta_min * t);
    const double psi = records[i].psi;
    p.bound_greedy = psi > 0.0 ? 2.0 * l0 / (eta_min * psi)
                               : std::numeric_limits<double>::infinity();
    out.push_back(p);
  }
  return out;
}

}  // namespace nimt
