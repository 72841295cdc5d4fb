#include "hbopt/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hbopt {

double check_reformulation(const TrajectoryLog& log, ReformulationVariant variant,
                           const FeasibleSet& set, const Schedule& sched,
                           const std::optional<EmaConfig>& ema) {
  const size_t steps = log.gradients.size();
  if (steps == 0) throw std::invalid_argument("check_reformulation: empty trajectory");
  if (log.iterates.size() != steps + 1)
    throw std::invalid_argument("check_reformulation: iterate/gradient logs misaligned");
  if (variant == ReformulationVariant::Adaptive) {
    if (!ema.has_value()) throw std::invalid_argument("check_reformulation: adaptive variant needs EmaConfig");
    if (set.kind() == SetKind::L1Ball || set.kind() == SetKind::L2Ball)
      throw std::invalid_argument(
          "check_reformulation: adaptive variant needs a set where the weighted projection "
          "matches the Euclidean one (box or full space)");
  }
  if (variant == ReformulationVariant::ConstBeta && sched.is_time_varying())
    throw std::invalid_argument("check_reformulation: constant-beta variant needs a constant-beta schedule");
  if (variant != ReformulationVariant::ConstBeta && !sched.is_time_varying())
    throw std::invalid_argument("check_reformulation: variant needs a time-varying schedule");

  const int d = log.iterates[0].dim();
  const double beta = sched.beta();
  std::vector<double> v(static_cast<size_t>(d), 0.0);

  // z_1 = w_1 (start momentum is zero)
  std::vector<double> z(log.iterates[0].to_dense().dense_values());
  double max_residual = 0.0;

  for (size_t k = 0; k < steps; ++k) {
    const long t = static_cast<long>(k) + 1;
    const Vector& g = log.gradients[k];
    const Vector w_old = log.iterates[k].to_dense();
    const Vector w_new = log.iterates[k + 1].to_dense();

    double zstep = 0.0;
    double mult = 0.0;
    switch (variant) {
      case ReformulationVariant::TimeVarying:
        zstep = sched.alpha() / std::sqrt(static_cast<double>(t));
        mult = static_cast<double>(t + 1);
        break;
      case ReformulationVariant::ConstBeta:
        zstep = sched.alpha_t(t) / (1.0 - beta);
        mult = beta / (1.0 - beta);
        break;
      case ReformulationVariant::Adaptive:
        zstep = sched.alpha() / std::sqrt(static_cast<double>(t));
        mult = static_cast<double>(t + 1);
        break;
    }

    std::vector<double> rhs_pt(z);
    if (variant == ReformulationVariant::Adaptive) {
      const double b2 = ema->beta2_t(t);
      for (double& vi : v) vi *= b2;
      const double one_minus = 1.0 - b2;
      g.for_each_nonzero([&](int i, double gi) { v[static_cast<size_t>(i)] += one_minus * gi * gi; });
      const double reg = ema->delta / std::sqrt(static_cast<double>(t));
      g.for_each_nonzero([&](int i, double gi) {
        rhs_pt[static_cast<size_t>(i)] -= zstep * gi / (std::sqrt(v[static_cast<size_t>(i)]) + reg);
      });
    } else {
      g.for_each_nonzero([&](int i, double gi) { rhs_pt[static_cast<size_t>(i)] -= zstep * gi; });
    }
    const Vector rhs = project(set, Vector::dense(std::move(rhs_pt)));

    for (int i = 0; i < d; ++i) {
      const auto si = static_cast<size_t>(i);
      z[si] = w_new[i] + mult * (w_new[i] - w_old[i]);
      max_residual = std::max(max_residual, std::fabs(z[si] - rhs[i]));
    }
  }
  return max_residual;
}

double check_ema_sum_bound(const std::vector<Vector>& gradients,
                           const std::vector<std::vector<double>>& v_log, double gamma,
                           double delta) {
  if (gradients.empty()) throw std::invalid_argument("check_ema_sum_bound: empty logs");
  if (gradients.size() != v_log.size())
    throw std::invalid_argument("check_ema_sum_bound: gradient/v logs misaligned");
  if (!(gamma > 0.0 && gamma <= 1.0)) throw std::invalid_argument("check_ema_sum_bound: gamma in (0, 1]");
  if (delta < 0.0) throw std::invalid_argument("check_ema_sum_bound: delta must be nonnegative");

  double lhs = 0.0;
  double min_slack = std::numeric_limits<double>::infinity();
  const double factor = 2.0 * (2.0 - gamma) / gamma;
  for (size_t k = 0; k < gradients.size(); ++k) {
    const double td = static_cast<double>(k + 1);
    const auto& v = v_log[k];
    gradients[k].for_each_nonzero([&](int i, double gi) {
      const double denom = std::sqrt(td * v[static_cast<size_t>(i)]) + delta;
      if (denom <= 0.0) throw std::invalid_argument("check_ema_sum_bound: zero denominator");
      lhs += gi * gi / denom;
    });
    double rhs = 0.0;
    for (double vi : v) rhs += factor * (std::sqrt(td * vi) + delta);
    min_slack = std::min(min_slack, rhs - lhs);
  }
  return min_slack;
}

double check_ema_monotonicity(const std::vector<std::vector<double>>& v_log) {
  if (v_log.empty()) throw std::invalid_argument("check_ema_monotonicity: empty log");
  double min_delta = std::numeric_limits<double>::infinity();
  std::vector<double> prev(v_log[0].size(), 0.0);
  for (size_t k = 0; k < v_log.size(); ++k) {
    const double td = static_cast<double>(k + 1);
    for (size_t i = 0; i < v_log[k].size(); ++i) {
      const double m = std::sqrt(td * v_log[k][i]);
      min_delta = std::min(min_delta, m - prev[i]);
      prev[i] = m;
    }
  }
  return min_delta;
}

RateFit fit_rate(const std::vector<TraceRecord>& trace, Quantity quantity, long t_lo, long t_hi) {
  if (t_lo < 1 || t_hi < t_lo) throw std::invalid_argument("fit_rate: bad window");
  std::vector<double> xs, ys;
  for (const auto& rec : trace) {
    if (rec.t < t_lo || rec.t > t_hi) continue;
    const std::optional<double>& gap =
        quantity == Quantity::Individual ? rec.gap_individual : rec.gap_averaged;
    if (!gap.has_value()) throw std::invalid_argument("fit_rate: trace has no gap column");
    if (!(*gap > 0.0))
      throw std::invalid_argument("fit_rate: nonpositive gap in window (reference too high)");
    xs.push_back(std::log(static_cast<double>(rec.t)));
    ys.push_back(std::log(*gap));
  }
  if (xs.size() < 20) throw std::invalid_argument("fit_rate: window must cover at least 20 points");

  const double n = static_cast<double>(xs.size());
  double sx = 0.0, sy = 0.0;
  for (size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx, dy = ys[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  RateFit fit;
  fit.t_lo = t_lo;
  fit.t_hi = t_hi;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return fit;
}

double estimate_fstar(const ProblemOracle& problem, long budget, uint64_t seed, double alpha) {
  if (budget < 10000) throw std::invalid_argument("estimate_fstar: budget must be >= 10000");
  RunOptions options;
  const Schedule tv = Schedule::time_varying(alpha);
  const Schedule cb = Schedule::constant_beta(alpha, 0.0);
  const EmaConfig ema(0.1, 1e-8);
  const RunResult ada = run(OptimizerKind::AdaHbTimeVarying, problem, tv, ema, budget, seed,
                            nullptr, options);
  const RunResult psg = run(OptimizerKind::Psg, problem, cb, std::nullopt, budget, seed + 1,
                            nullptr, options);
  return std::min(ada.state.f_best, psg.state.f_best);
}

}  // namespace hbopt
