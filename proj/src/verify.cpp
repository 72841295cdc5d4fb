#include "hbopt/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "hbopt/diagnostics.hpp"
#include "hbopt/optimizers.hpp"
#include "hbopt/projections.hpp"
#include "hbopt/rng.hpp"
#include "hbopt/synthetic.hpp"

namespace hbopt {
namespace verify {

bool all_pass(const std::vector<CheckResult>& results) {
  return std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.pass; });
}

namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3e", x);
  return buf;
}

Vector random_point(Rng& rng, int dim, double lo, double hi) {
  std::vector<double> v(static_cast<size_t>(dim));
  for (double& e : v) e = rng.uniform(lo, hi);
  return Vector::dense(std::move(v));
}

}  // namespace

std::vector<CheckResult> run_projection_suite(uint64_t seed, int instances, int vi_samples) {
  Rng rng(seed);
  double max_oracle_diff = 0.0;
  double max_vi = -std::numeric_limits<double>::infinity();
  double max_idem = 0.0;
  double max_expansion = 0.0;

  for (int inst = 0; inst < instances; ++inst) {
    const int d = 1 + rng.uniform_int(6);
    const bool use_l1 = inst % 2 == 0;
    const double radius = rng.uniform(0.3, 1.5);
    const FeasibleSet set = use_l1 ? FeasibleSet::l1_ball(d, radius) : FeasibleSet::l2_ball(d, radius);

    const Vector x = random_point(rng, d, -2.0, 2.0);
    const Vector px = project(set, x);
    max_oracle_diff = std::max(max_oracle_diff, linf_diff(px, project_bruteforce(set, x)));
    max_idem = std::max(max_idem, linf_diff(px, project(set, px)));

    const Vector y = random_point(rng, d, -2.0, 2.0);
    const Vector py = project(set, y);
    double diff_sq = 0.0, proj_diff_sq = 0.0;
    for (int i = 0; i < d; ++i) {
      const double a = x[i] - y[i];
      const double b = px[i] - py[i];
      diff_sq += a * a;
      proj_diff_sq += b * b;
    }
    max_expansion = std::max(max_expansion, std::sqrt(proj_diff_sq) - std::sqrt(diff_sq));

    for (int s = 0; s < vi_samples; ++s) {
      const Vector u = random_feasible_point(set, rng);
      double inner = 0.0;
      for (int i = 0; i < d; ++i) inner += (x[i] - px[i]) * (u[i] - px[i]);
      max_vi = std::max(max_vi, inner);
    }
  }

  std::vector<CheckResult> out;
  out.push_back({"projection oracle equivalence (linf)", max_oracle_diff <= 1e-8, max_oracle_diff,
                 fmt(max_oracle_diff) + " <= 1e-8 over " + std::to_string(instances) + " instances"});
  out.push_back({"projection idempotence", max_idem <= 1e-12, max_idem, fmt(max_idem) + " <= 1e-12"});
  out.push_back({"projection non-expansiveness", max_expansion <= 1e-12, max_expansion,
                 fmt(max_expansion) + " <= 1e-12"});
  out.push_back({"nearest-point variational inequality", max_vi <= 1e-10, max_vi,
                 fmt(max_vi) + " <= 1e-10 at " + std::to_string(vi_samples) + " points/instance"});
  return out;
}

namespace {

struct IdentityOutcome {
  double max_residual = 0.0;
};

IdentityOutcome identity_run(OptimizerKind kind, ReformulationVariant variant, uint64_t seed,
                             int problems, long steps, double beta, double gamma) {
  Rng meta(seed);
  IdentityOutcome out;
  for (int p = 0; p < problems; ++p) {
    const int d = 2 + meta.uniform_int(19);
    const uint64_t problem_seed = meta.next_u64();
    const MaxAffineProblem problem = synthetic::random_max_affine_box(d, 4.0, problem_seed);

    Schedule sched = variant == ReformulationVariant::ConstBeta
                         ? Schedule::constant_beta(0.2 * (1.0 - beta), beta)
                         : Schedule::time_varying(0.2);
    std::optional<EmaConfig> ema;
    if (variant == ReformulationVariant::Adaptive) ema.emplace(gamma, 1e-8);

    RunOptions options;
    options.record_trajectory = true;
    Rng start_rng(problem_seed ^ 0x5bf03635ULL);
    options.start = random_point(start_rng, d, -0.5, 0.5);

    const RunResult res = run(kind, problem, sched, ema, steps, problem_seed + 1, nullptr, options);
    const double residual =
        check_reformulation(*res.log, variant, problem.feasible_set(), sched, ema);
    out.max_residual = std::max(out.max_residual, residual);
  }
  return out;
}

}  // namespace

std::vector<CheckResult> run_identity_suite(uint64_t seed, int problems, long steps) {
  std::vector<CheckResult> out;
  const std::string scope =
      " over " + std::to_string(problems) + " problems x " + std::to_string(steps) + " steps";

  const auto tv = identity_run(OptimizerKind::HbTimeVarying, ReformulationVariant::TimeVarying,
                               seed, problems, steps, 0.0, 0.0);
  out.push_back({"time-varying momentum reformulation", tv.max_residual <= 1e-9, tv.max_residual,
                 fmt(tv.max_residual) + " <= 1e-9" + scope});

  for (const double beta : {0.0, 0.5, 0.9}) {
    const auto cb = identity_run(OptimizerKind::HbConstBeta, ReformulationVariant::ConstBeta,
                                 seed + 17, problems, steps, beta, 0.0);
    out.push_back({"constant-beta reformulation (beta=" + std::to_string(beta).substr(0, 3) + ")",
                   cb.max_residual <= 1e-9, cb.max_residual, fmt(cb.max_residual) + " <= 1e-9" + scope});
  }

  for (const double gamma : {0.1, 0.5, 1.0}) {
    const auto ad = identity_run(OptimizerKind::AdaHbTimeVarying, ReformulationVariant::Adaptive,
                                 seed + 31, problems, steps, 0.0, gamma);
    out.push_back({"adaptive reformulation (gamma=" + std::to_string(gamma).substr(0, 3) + ")",
                   ad.max_residual <= 1e-9, ad.max_residual, fmt(ad.max_residual) + " <= 1e-9" + scope});
  }
  return out;
}

std::vector<CheckResult> run_ema_suite(uint64_t seed, int problems, long steps) {
  Rng meta(seed);
  double min_slack = std::numeric_limits<double>::infinity();
  double min_mono = std::numeric_limits<double>::infinity();
  for (int p = 0; p < problems; ++p) {
    const int d = 2 + meta.uniform_int(19);
    const uint64_t problem_seed = meta.next_u64();
    const MaxAffineProblem problem = synthetic::random_max_affine_box(d, 4.0, problem_seed);
    const double gamma = p % 3 == 0 ? 0.1 : (p % 3 == 1 ? 0.5 : 1.0);
    const EmaConfig ema(gamma, 1e-8);
    RunOptions options;
    options.check_ema_bound = true;
    options.record_trajectory = true;
    const RunResult res = run(OptimizerKind::AdaHbTimeVarying, problem, Schedule::time_varying(0.2),
                              ema, steps, problem_seed + 3, nullptr, options);
    min_slack = std::min(min_slack, *res.min_ema_slack);
    min_mono = std::min(min_mono, *res.min_ema_monotonicity);
    // offline recomputation from the logs must agree with the online monitor
    const double offline =
        check_ema_sum_bound(res.log->gradients, res.log->v_diag, gamma, ema.delta);
    min_slack = std::min(min_slack, offline);
    min_mono = std::min(min_mono, check_ema_monotonicity(res.log->v_diag));
  }
  std::vector<CheckResult> out;
  out.push_back({"EMA squared-gradient sum bound", min_slack >= -1e-9, min_slack,
                 "min slack " + fmt(min_slack) + " >= -1e-9"});
  out.push_back({"EMA sqrt(t v) monotonicity", min_mono >= -1e-12, min_mono,
                 "min increment " + fmt(min_mono) + " >= -1e-12"});
  return out;
}

std::vector<CheckResult> run_rate_suite(uint64_t seed) {
  (void)seed;  // the synthetic sequences are deterministic
  std::vector<CheckResult> out;
  const long t_max = 10000;
  for (const double p : {-1.0, -0.5, 0.0}) {
    std::vector<TraceRecord> trace(static_cast<size_t>(t_max));
    for (long t = 1; t <= t_max; ++t) {
      auto& rec = trace[static_cast<size_t>(t - 1)];
      rec.t = t;
      rec.gap_individual = 3.0 * std::pow(static_cast<double>(t), p);
    }
    const RateFit fit = fit_rate(trace, Quantity::Individual, 100, t_max);
    const double err = std::fabs(fit.slope - p);
    out.push_back({"rate-fit exponent recovery (p=" + std::to_string(p).substr(0, 4) + ")", err <= 1e-6, err,
                   "slope error " + fmt(err) + " <= 1e-6"});
  }
  // a log factor flattens the fitted slope above -0.5
  std::vector<TraceRecord> trace(static_cast<size_t>(t_max));
  for (long t = 1; t <= t_max; ++t) {
    auto& rec = trace[static_cast<size_t>(t - 1)];
    rec.t = t;
    rec.gap_individual = std::log(static_cast<double>(t)) / std::sqrt(static_cast<double>(t));
  }
  const RateFit fit = fit_rate(trace, Quantity::Individual, 100, t_max);
  out.push_back({"rate-fit log-factor flattening", fit.slope > -0.5, fit.slope,
                 "slope " + fmt(fit.slope) + " > -0.5"});
  return out;
}

std::vector<CheckResult> run_all(uint64_t seed) {
  std::vector<CheckResult> out = run_projection_suite(seed);
  for (auto& suite : {run_identity_suite(seed), run_ema_suite(seed), run_rate_suite(seed)}) {
    out.insert(out.end(), suite.begin(), suite.end());
  }
  return out;
}

}  // namespace verify
}  // namespace hbopt
