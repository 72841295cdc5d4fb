#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hbopt/optimizers.hpp"
#include "hbopt/problems.hpp"
#include "hbopt/trace.hpp"

namespace hbopt {

enum class ReformulationVariant { TimeVarying, ConstBeta, Adaptive };
enum class Quantity { Individual, Averaged };

// Least-squares fit of log(gap) against log(t).
struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
  long t_lo = 0;
  long t_hi = 0;
  double r_squared = 0.0;
};

// Recomputes the reformulated sequence z_t = w_t + p_t from the logged
// iterates and replays one projected step per iteration from the logged
// gradients; returns the max infinity-norm residual. The adaptive variant
// rebuilds the EMA diagonal from the gradient log. Sets where the weighted
// and Euclidean projections differ are rejected for the adaptive variant
// (boxes and full space keep them equal).
double check_reformulation(const TrajectoryLog& log, ReformulationVariant variant,
                           const FeasibleSet& set, const Schedule& sched,
                           const std::optional<EmaConfig>& ema = std::nullopt);

// Minimum over t of (bound - sum) for the EMA-normalized squared-gradient
// sum; nonnegative within tolerance on any adaptive run whose beta2 schedule
// respects the [1 - 1/t, 1 - gamma/t] window. delta = 0 is accepted as long
// as no term divides by zero.
double check_ema_sum_bound(const std::vector<Vector>& gradients,
                           const std::vector<std::vector<double>>& v_log, double gamma,
                           double delta);

// Minimum per-coordinate increment of sqrt(t * v_t); nonnegative within
// tolerance when beta2_t >= 1 - 1/t.
double check_ema_monotonicity(const std::vector<std::vector<double>>& v_log);

RateFit fit_rate(const std::vector<TraceRecord>& trace, Quantity quantity, long t_lo, long t_hi);

// Upper bound on the optimal value: the smallest objective seen over long
// adaptive and plain projected-subgradient reference runs (individual and
// averaged iterates, full gradients).
double estimate_fstar(const ProblemOracle& problem, long budget, uint64_t seed,
                      double alpha = 2.0);

}  // namespace hbopt
