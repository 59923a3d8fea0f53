#include "nimt/teacher.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace nimt {

PackSize PackSize::count(int n) {
  PackSize p;
  p.is_ratio = false;
  p.n = n;
  return p;
}

PackSize PackSize::ratio(double r) {
  PackSize p;
  p.is_ratio = true;
  p.r = r;
  return p;
}

std::size_t PackSize::resolve(std::size_t pool_size) const {
  std::size_t k;
  if (is_ratio) {
    if (!(r > 0.0) || r > 1.0) {
      throw std::invalid_argument("pack size ratio must lie in (0, 1]");
    }
    k = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::llround(r * static_cast<double>(pool_size))));
  } else {
    if (n < 1) throw std::invalid_argument("pack size must be at least 1");
    k = static_cast<std::size_t>(n);
  }
  if (k > pool_size) {
    throw std::invalid_argument("pack size exceeds pool size");
  }
  return k;
}

std::vector<std::size_t> rft_select(std::size_t k,
                                    const std::vector<std::size_t>& pool,
                                    std::mt19937_64& rng) {
  if (k > pool.size()) {
    throw std::invalid_argument("rft_select: k exceeds pool size");
  }
  // partial Fisher-Yates: the first k slots end up a uniform draw without
  // replacement
  std::vector<std::size_t> work = pool;
  for (std::size_t i = 0; i < k; ++i) {
    std::uniform_int_distribution<std::size_t> d(i, work.size() - 1);
    std::swap(work[i], work[d(rng)]);
  }
  work.resize(k);
  return work;
}

std::vector<std::size_t> gft_select(const std::vector<double>& f_vals,
                                    const std::vector<double>& target_vals,
                                    std::size_t k,
                                    const std::vector<std::size_t>& pool) {
  if (k > pool.size()) {
    throw std::invalid_argument("gft_select: k exceeds pool size");
  }
  for (std::size_t i : pool) {
    if (i >= f_vals.size() || i >= target_vals.size()) {
      throw std::invalid_argument("gft_select: pool index without values");
    }
  }
  std::vector<std::size_t> order = pool;
  auto absres = [&](std::size_t i) { return std::abs(f_vals[i] - target_vals[i]); };
  std::partial_sort(order.begin(), order.begin() + static_cast<long>(k),
                    order.end(), [&](std::size_t a, std::size_t b) {
                      const double ra = absres(a), rb = absres(b);
                      if (ra != rb) return ra > rb;
                      return a < b;  // ties: smallest index
                    });
  order.resize(k);
  return order;
}

TeachingPack label_pack(const std::vector<std::size_t>& indices,
                        const std::vector<Point>& grid,
                        const std::vector<double>& label_vals,
                        const std::vector<double>* alt_label_vals,
                        double alt_prob, std::mt19937_64& rng) {
  const std::vector<double>* source = &label_vals;
  if (alt_label_vals != nullptr) {
    // one Bernoulli draw per iteration, applied to the whole pack
    std::bernoulli_distribution d(alt_prob);
    if (d(rng)) source = alt_label_vals;
  }
  TeachingPack pack;
  pack.examples.reserve(indices.size());
  for (std::size_t i : indices) {
    if (i >= grid.size()) {
      throw std::invalid_argument("label_pack: index out of range");
    }
    pack.examples.push_back({grid[i], (*source)[i]});
  }
  return pack;
}

std::vector<std::size_t> build_pool(std::size_t n, double ratio,
                                    std::uint64_t seed) {
  if (!(ratio > 0.0) || ratio > 1.0) {
    throw std::invalid_argument("pool ratio must lie in (0, 1]");
  }
  const std::size_t m = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::llround(ratio * static_cast<double>(n))));
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::seed_seq seq{seed, static_cast<std::uint64_t>(0x706f6f6cULL)};
  std::mt19937_64 rng(seq);
  for (std::size_t i = 0; i < m; ++i) {
    std::uniform_int_distribution<std::size_t> d(i, n - 1);
    std::swap(idx[i], idx[d(rng)]);
  }
  idx.resize(m);
  std::sort(idx.begin(), idx.end());
  return idx;
}

namespace {

std::vector<double> evaluate_over_grid(const RkhsFunction& f,
                                       const std::vector<Point>& grid) {
  std::vector<double> v;
  v.reserve(grid.size());
  for (const auto& x : grid) v.push_back(f.evaluate(x));
  return v;
}

// Affine rescale so min/max of the alternative match min/max of the target.
std::vector<double> rescale_to_match(const std::vector<double>& alt,
                                     const std::vector<double>& target) {
  const auto [tmin_it, tmax_it] = std::minmax_element(target.begin(), target.end());
  const auto [amin_it, amax_it] = std::minmax_element(alt.begin(), alt.end());
  const double tmin = *tmin_it, tmax = *tmax_it;
  const double amin = *amin_it, amax = *amax_it;
  std::vector<double> out(alt.size());
  if (amax == amin) {
    std::fill(out.begin(), out.end(), 0.5 * (tmin + tmax));
    return out;
  }
  const double a = (tmax - tmin) / (amax - amin);
  for (std::size_t i = 0; i < alt.size(); ++i) {
    out[i] = tmin + a * (alt[i] - amin);
  }
  return out;
}

DomainBox grid_box(const std::vector<Point>& grid) {
  DomainBox box;
  box.lo = grid.front();
  box.hi = grid.front();
  for (const auto& p : grid) {
    for (std::size_t d = 0; d < p.size(); ++d) {
      box.lo[d] = std::min(box.lo[d], p[d]);
      box.hi[d] = std::max(box.hi[d], p[d]);
    }
  }
  return box;
}

std::size_t argmax_discrepancy(LossKind loss, const std::vector<double>& f_vals,
                               const std::vector<double>& label_vals,
                               const std::vector<std::size_t>& pool) {
  std::size_t best = pool.front();
  double best_s = -1.0;
  for (std::size_t i : pool) {
    const double s = discrepancy(loss, f_vals[i], label_vals[i]);
    if (s > best_s) {
      best_s = s;
      best = i;
    }
  }
  return best;
}

}  // namespace

SessionLog run_session(const SessionConfig& config) {
  if (config.grid.empty()) {
    throw std::invalid_argument("run_session: empty grid");
  }
  if (!(config.epsilon > 0.0)) {
    throw std::invalid_argument("run_session: epsilon must be positive");
  }
  const std::size_t n = config.grid.size();

  // pool
  std::vector<std::size_t> pool;
  if (config.policy.pool_indices) {
    pool = *config.policy.pool_indices;
    for (std::size_t i : pool) {
      if (i >= n) throw std::invalid_argument("run_session: pool index out of range");
    }
    if (pool.empty()) throw std::invalid_argument("run_session: empty pool");
  } else if (config.policy.pool_ratio) {
    pool = build_pool(n, *config.policy.pool_ratio, config.policy.seed);
  } else {
    pool.resize(n);
    std::iota(pool.begin(), pool.end(), 0);
  }
  const std::size_t k = config.policy.k.resolve(pool.size());

  const std::vector<double> target_vals = evaluate_over_grid(config.target, config.grid);
  std::vector<double> label_vals = target_vals;
  if (config.sign_labels) {
    for (double& v : label_vals) v = v >= 0.0 ? 1.0 : -1.0;
  }
  std::vector<double> alt_label_vals;
  const bool has_alt = config.policy.alt.has_value();
  if (has_alt) {
    alt_label_vals =
        rescale_to_match(evaluate_over_grid(config.policy.alt->alt_target, config.grid),
                         target_vals);
    if (config.sign_labels) {
      for (double& v : alt_label_vals) v = v >= 0.0 ? 1.0 : -1.0;
    }
  }

  LearnerState learner(config.init, config.eta, config.loss, config.aggregation);
  std::vector<double> f_vals = evaluate_over_grid(config.init, config.grid);

  std::mt19937_64 main_rng(config.policy.seed);
  std::seed_seq counter_seq{config.policy.seed,
                            static_cast<std::uint64_t>(0xc07e7f4c7ULL)};
  std::mt19937_64 counter_rng(counter_seq);

  // Lemma-3 assertions apply only under its own hypotheses.
  const auto safe_eta = [&]() -> std::optional<double> {
    try {
      return safe_learning_rate(config.loss, config.target.kernel(),
                                grid_box(config.grid));
    } catch (const std::exception&) {
      return std::nullopt;
    }
  }();
  const bool descent_applicable = config.loss == LossKind::Square && k == 1 &&
                                  safe_eta && config.eta <= *safe_eta + 1e-15;

  SessionLog log;
  double psi = 0.0;
  double lbar0 = 0.0;
  double m = 0.0;

  for (int t = 0;; ++t) {
    m = empirical_l2(f_vals, target_vals);
    if (m < config.epsilon) {
      log.converged = true;
      break;
    }
    if (t >= config.max_iters) break;

    IterationRecord rec;
    rec.t = t;
    rec.M = m;

    double lbar = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      lbar += loss_value(config.loss, f_vals[i], label_vals[i]);
    }
    lbar /= static_cast<double>(n);
    rec.Lbar = lbar;
    if (t == 0) lbar0 = lbar;

    // greedy reference pick (argmax discrepancy over the pool) and an
    // independently seeded counterfactual uniform pick, for gamma / Theorem-1
    // bookkeeping in both RFT and GFT sessions
    const std::size_t gi = argmax_discrepancy(config.loss, f_vals, label_vals, pool);
    const std::size_t ci = rft_select(1, pool, counter_rng).front();
    rec.greedy_pred = f_vals[gi];
    rec.greedy_y = label_vals[gi];
    rec.counter_pred = f_vals[ci];
    rec.counter_y = label_vals[ci];
    rec.S_star = discrepancy(config.loss, f_vals[gi], label_vals[gi]);
    rec.S_rand = discrepancy(config.loss, f_vals[ci], label_vals[ci]);
    rec.gamma = greedy_ratio(rec.S_rand, rec.S_star);
    psi += rec.gamma;
    rec.psi = psi;
    rec.bound_rhs = 2.0 * lbar0 / (config.eta * static_cast<double>(t + 1));

    if (config.assert_theorem1 && config.loss == LossKind::Square) {
      const double dir = optimal_direction_check(
          config.loss, {rec.greedy_pred, rec.greedy_y},
          {rec.counter_pred, rec.counter_y});
      if (dir < -1e-12) {
        throw std::runtime_error("run_session: optimal-direction check failed at iteration " +
                                 std::to_string(t));
      }
    }

    // select and label
    std::vector<std::size_t> sel =
        config.policy.kind == TeacherPolicy::Kind::Rft
            ? rft_select(k, pool, main_rng)
            : gft_select(f_vals, target_vals, k, pool);
    TeachingPack pack = label_pack(sel, config.grid, label_vals,
                                   has_alt ? &alt_label_vals : nullptr,
                                   has_alt ? config.policy.alt->prob : 0.0,
                                   main_rng);
    rec.selected = pack.examples;

    const std::size_t taught = sel.front();
    const double taught_y = pack.examples.front().y;
    rec.S_taught = discrepancy(config.loss, f_vals[taught], taught_y);
    const double loss_before = loss_value(config.loss, f_vals[taught], taught_y);

    // learner update; mirror the added terms onto the cached grid values
    const std::vector<double> coeffs = learner.step(pack);
    for (std::size_t j = 0; j < sel.size(); ++j) {
      const Point& xj = config.grid[sel[j]];
      const double cj = coeffs[j];
      if (cj == 0.0) continue;
      for (std::size_t i = 0; i < n; ++i) {
        f_vals[i] += cj * eval_kernel(config.target.kernel(), xj, config.grid[i]);
      }
    }
    for (double v : f_vals) {
      if (!std::isfinite(v)) {
        throw std::runtime_error("run_session: non-finite model value at iteration " +
                                 std::to_string(t));
      }
    }

    const double loss_after = loss_value(config.loss, f_vals[taught], taught_y);
    rec.descent_lhs = loss_after - loss_before;
    rec.descent_rhs = -(config.eta / 2.0) * rec.S_taught;
    const DescentCheck dc =
        sufficient_descent_check(loss_before, loss_after, config.eta, rec.S_taught);
    rec.descent_pass = dc.pass;
    if (config.assert_descent && descent_applicable && !dc.pass) {
      throw std::runtime_error("run_session: sufficient-descent check failed at iteration " +
                               std::to_string(t) + " (slack " +
                               std::to_string(dc.slack) + ")");
    }

    log.records.push_back(std::move(rec));
  }

  log.final_m = m;
  log.teaching_dimension = log.records.size();
  return log;
}

}  // namespace nimt
