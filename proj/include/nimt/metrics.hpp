#pragma once

#include <utility>
#include <vector>

#include "nimt/learner.hpp"
#include "nimt/loss.hpp"

namespace nimt {

/// Per-iteration diagnostics of a teaching session.
///
/// S_star is the discrepancy at the greedy (argmax-residual) pick over the
/// pool; S_rand at an independently seeded counterfactual uniform pick from
/// the same f^t. The *_pred / *_y fields carry the evaluations behind those
/// two picks so Theorem-style checks can be replayed from the record.
struct IterationRecord {
  int t = 0;
  std::vector<TeachingExample> selected;
  double S_star = 0.0;
  double S_rand = 0.0;
  double gamma = 0.0;
  double psi = 0.0;
  double M = 0.0;     // empirical L2 to f* over the grid
  double Lbar = 0.0;  // mean pointwise loss over the grid
  double descent_lhs = 0.0;
  double descent_rhs = 0.0;
  double bound_rhs = 0.0;

  // not serialized; used by in-session checks and tests
  double greedy_pred = 0.0;
  double greedy_y = 0.0;
  double counter_pred = 0.0;
  double counter_y = 0.0;
  double S_taught = 0.0;
  bool descent_pass = true;
};

/// S_L(f;x) = |dL/df at (pred, y)|^2.
double discrepancy(LossKind l, double pred, double y);

/// gamma = S_rand / S_star in (0,1]. S_star = 0 means the session is
/// converged at both picks; the ratio's limiting value 1 is returned as the
/// sentinel. Throws if the greedy pick was not maximal.
double greedy_ratio(double S_rand, double S_star);

struct DescentCheck {
  bool pass = false;
  double slack = 0.0;  // bound - observed drop; negative slack fails
};

/// Sufficient-descent inequality at the taught point:
/// loss_after - loss_before <= -(eta/2) * S + 1e-12.
DescentCheck sufficient_descent_check(double loss_before, double loss_after,
                                      double eta, double S);

/// <G* - G, f^t - f*> computed via the reproducing property; both pairs are
/// (pred, y) under the same f^t with y = f*(x). Nonnegative (within 1e-12)
/// whenever the first pair is the argmax pick.
double optimal_direction_check(LossKind l, std::pair<double, double> greedy,
                               std::pair<double, double> other);

struct BoundPoint {
  int t = 0;
  double min_S = 0.0;       // running minimum of S at the taught points
  double bound = 0.0;       // 2 Lbar(f^0) / (eta_min * t)
  double bound_greedy = 0.0;  // 2 Lbar(f^0) / (eta_min * psi(t))
};

/// Monitor-only convergence bounds; not asserted.
std::vector<BoundPoint> bound_monitor(const std::vector<IterationRecord>& records,
                                      double eta_min);

}  // namespace nimt
