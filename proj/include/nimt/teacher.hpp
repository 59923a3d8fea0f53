#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "nimt/function_space.hpp"
#include "nimt/learner.hpp"
#include "nimt/metrics.hpp"

namespace nimt {

/// Pack size: an example count, or a ratio of the pool resolved as
/// max(1, round(ratio * pool_size)).
struct PackSize {
  static PackSize count(int n);
  static PackSize ratio(double r);
  std::size_t resolve(std::size_t pool_size) const;

  bool is_ratio = false;
  int n = 1;
  double r = 1.0;
};

struct AltTeaching {
  double prob = 0.0;
  RkhsFunction alt_target;
};

struct TeacherPolicy {
  enum class Kind { Rft, Gft };
  Kind kind = Kind::Gft;
  PackSize k = PackSize::count(1);
  std::optional<std::vector<std::size_t>> pool_indices;  // explicit pool
  std::optional<double> pool_ratio;  // seeded subsample of the grid
  std::optional<AltTeaching> alt;
  std::uint64_t seed = 0;
};

/// k distinct indices drawn uniformly without replacement from the pool.
std::vector<std::size_t> rft_select(std::size_t k,
                                    const std::vector<std::size_t>& pool,
                                    std::mt19937_64& rng);

/// The k pool indices with largest |f(x_i) - f*(x_i)|, greedily without
/// replacement; ties broken by smallest index.
std::vector<std::size_t> gft_select(const std::vector<double>& f_vals,
                                    const std::vector<double>& target_vals,
                                    std::size_t k,
                                    const std::vector<std::size_t>& pool);

/// Labels the selected grid points. One Bernoulli draw per call decides
/// whether the whole pack is labeled from the alternative source.
TeachingPack label_pack(const std::vector<std::size_t>& indices,
                        const std::vector<Point>& grid,
                        const std::vector<double>& label_vals,
                        const std::vector<double>* alt_label_vals,
                        double alt_prob, std::mt19937_64& rng);

/// Seeded pool construction: round(ratio * n) grid indices, uniformly
/// subsampled, sorted ascending.
std::vector<std::size_t> build_pool(std::size_t n, double ratio,
                                    std::uint64_t seed);

struct SessionConfig {
  RkhsFunction target;
  RkhsFunction init;
  std::vector<Point> grid;
  LossKind loss = LossKind::Square;
  double eta = 0.01;
  double epsilon = 1e-4;
  int max_iters = 1000;
  TeacherPolicy policy;
  bool sign_labels = false;  // classification: teach sign(f*(x))
  PackAggregation aggregation = PackAggregation::Mean;
  bool assert_descent = true;
  bool assert_theorem1 = true;
};

struct SessionLog {
  std::vector<IterationRecord> records;
  bool converged = false;
  double final_m = 0.0;
  std::size_t teaching_dimension = 0;  // realized ITD = iteration count
};

/// Runs select -> label -> learner step -> metrics until the empirical L2
/// to f* drops below epsilon or max_iters is reached.
SessionLog run_session(const SessionConfig& config);

}  // namespace nimt
