#include "hbopt/optimizers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hbopt {

Schedule Schedule::time_varying(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw std::invalid_argument("Schedule: alpha must be positive");
  return Schedule(true, alpha, 0.0);
}

Schedule Schedule::constant_beta(double alpha, double beta) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw std::invalid_argument("Schedule: alpha must be positive");
  if (!(beta >= 0.0 && beta < 1.0)) throw std::invalid_argument("Schedule: beta must be in [0, 1)");
  return Schedule(false, alpha, beta);
}

Schedule Schedule::with_fixed_horizon(long horizon) const {
  if (horizon < 1) throw std::invalid_argument("Schedule: fixed horizon must be >= 1");
  Schedule s = *this;
  s.fixed_horizon_ = horizon;
  return s;
}

namespace {

double alpha_over_sqrt(double alpha, long t, const std::optional<long>& fixed) {
  const long idx = fixed.has_value() ? *fixed : t;
  return alpha / std::sqrt(static_cast<double>(idx));
}

}  // namespace

double Schedule::alpha_t(long t) const {
  if (t < 1) throw std::invalid_argument("Schedule: t must be >= 1");
  if (time_varying_) {
    return alpha_ / (static_cast<double>(t + 2) * std::sqrt(static_cast<double>(t)));
  }
  return alpha_over_sqrt(alpha_, t, fixed_horizon_);
}

double Schedule::beta1_t(long t) const {
  if (t < 1) throw std::invalid_argument("Schedule: t must be >= 1");
  if (time_varying_) return static_cast<double>(t) / static_cast<double>(t + 2);
  return beta_;
}

EmaConfig::EmaConfig(double gamma_in, double delta_in) : gamma(gamma_in), delta(delta_in) {
  if (!(gamma > 0.0 && gamma <= 1.0)) throw std::invalid_argument("EmaConfig: gamma must be in (0, 1]");
  if (!(delta > 0.0) || !std::isfinite(delta)) throw std::invalid_argument("EmaConfig: delta must be positive");
}

double EmaConfig::beta2_t(long t) const {
  if (t < 1) throw std::invalid_argument("EmaConfig: t must be >= 1");
  const double lo = 1.0 - 1.0 / static_cast<double>(t);
  const double hi = 1.0 - gamma / static_cast<double>(t);
  return std::min(std::max(hi, lo), hi);
}

OptimizerState make_state(const ProblemOracle& problem, const Vector& start) {
  if (start.dim() != problem.dim()) throw std::invalid_argument("make_state: start dimension mismatch");
  if (!membership(problem.feasible_set(), start, 1e-9))
    throw std::invalid_argument("make_state: start point is not feasible");
  OptimizerState s;
  s.w_curr = start.to_dense();
  s.w_prev = s.w_curr;
  s.avg = s.w_curr;
  s.f_best = problem.value(start);
  return s;
}

OptimizerState make_state(const ProblemOracle& problem) {
  return make_state(problem, project(problem.feasible_set(), Vector::zeros(problem.dim())));
}

namespace {

struct StepTelemetry {
  Vector gradient;
  double alpha_used = 0.0;
  double beta1_used = 0.0;
  std::optional<double> beta2_used;
};

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

// shared iteration core; t_sched is the schedule index (equals s.t except in
// epoch mode)
StepTelemetry step_core(OptimizerState& s, const ProblemOracle& p, const Schedule& sched,
                        const std::optional<EmaConfig>& ema, OptimizerKind kind, long t_sched,
                        int batch, Rng* rng) {
  const bool adaptive = kind == OptimizerKind::AdaHbTimeVarying || kind == OptimizerKind::AdaHbConstBeta;
  const bool wants_tv = kind == OptimizerKind::HbTimeVarying || kind == OptimizerKind::AdaHbTimeVarying;
  const bool wants_const = kind == OptimizerKind::HbConstBeta || kind == OptimizerKind::AdaHbConstBeta;
  require(!wants_tv || sched.is_time_varying(), "step: optimizer needs a time-varying schedule");
  require(!wants_const || !sched.is_time_varying(), "step: optimizer needs a constant-beta schedule");
  require(!adaptive || ema.has_value(), "step: adaptive optimizer needs an EmaConfig");
  if (batch > 0) require(p.has_stochastic_oracle(), "step: problem has no stochastic oracle");

  StepTelemetry out;
  out.gradient = batch > 0 ? p.stochastic_subgradient(s.w_curr, batch, *rng)
                           : p.subgradient(s.w_curr);
  const Vector& g = out.gradient;
  if (g.dim() != s.w_curr.dim()) throw std::invalid_argument("step: gradient dimension mismatch");

  double beta1 = 0.0;
  double coeff = 0.0;
  switch (kind) {
    case OptimizerKind::Psg:
      coeff = alpha_over_sqrt(sched.alpha(), t_sched, sched.fixed_horizon());
      break;
    case OptimizerKind::HbTimeVarying:
    case OptimizerKind::AdaHbTimeVarying:
      beta1 = sched.beta1_t(t_sched);
      coeff = sched.alpha_t(t_sched);
      break;
    case OptimizerKind::HbConstBeta:
    case OptimizerKind::AdaHbConstBeta:
      beta1 = sched.beta();
      coeff = alpha_over_sqrt(sched.alpha(), t_sched, sched.fixed_horizon());
      break;
  }
  out.alpha_used = coeff;
  out.beta1_used = beta1;

  const int d = s.w_curr.dim();
  std::vector<double> vhat;
  if (adaptive) {
    if (s.v.empty()) s.v.assign(static_cast<size_t>(d), 0.0);
    const double b2 = ema->beta2_t(t_sched);
    out.beta2_used = b2;
    for (double& vi : s.v) vi *= b2;
    const double one_minus = 1.0 - b2;
    g.for_each_nonzero([&](int i, double gi) { s.v[static_cast<size_t>(i)] += one_minus * gi * gi; });
    vhat.resize(static_cast<size_t>(d));
    const double reg = ema->delta / std::sqrt(static_cast<double>(t_sched));
    for (int i = 0; i < d; ++i) {
      vhat[static_cast<size_t>(i)] = std::sqrt(s.v[static_cast<size_t>(i)]) + reg;
      if (!(vhat[static_cast<size_t>(i)] > 0.0))
        throw std::runtime_error("step: regularized second-moment entry not positive");
    }
  }

  const auto& w = s.w_curr.dense_values();
  const auto& wp = s.w_prev.dense_values();
  std::vector<double> u(static_cast<size_t>(d));
  for (int i = 0; i < d; ++i) {
    const auto si = static_cast<size_t>(i);
    u[si] = w[si] + beta1 * (w[si] - wp[si]);
  }
  if (adaptive) {
    g.for_each_nonzero([&](int i, double gi) {
      u[static_cast<size_t>(i)] -= coeff * (gi / vhat[static_cast<size_t>(i)]);
    });
  } else {
    g.for_each_nonzero([&](int i, double gi) { u[static_cast<size_t>(i)] -= coeff * gi; });
  }

  Vector w_new = project(p.feasible_set(), Vector::dense(std::move(u))).to_dense();

  s.w_prev = std::move(s.w_curr);
  s.w_curr = std::move(w_new);
  ++s.steps_done;
  ++s.t;

  const auto& wc = s.w_curr.dense_values();
  std::vector<double> avg(s.avg.dense_values());
  const double inv_k = 1.0 / static_cast<double>(s.steps_done);
  for (int i = 0; i < d; ++i) {
    const auto si = static_cast<size_t>(i);
    avg[si] += (wc[si] - avg[si]) * inv_k;
  }
  s.avg = Vector::dense(std::move(avg));
  return out;
}

}  // namespace

void psg_step(OptimizerState& s, const ProblemOracle& p, const Schedule& sched, int batch, Rng* rng) {
  step_core(s, p, sched, std::nullopt, OptimizerKind::Psg, s.t, batch, rng);
}

void hb_step_timevarying(OptimizerState& s, const ProblemOracle& p, const Schedule& sched,
                         int batch, Rng* rng) {
  step_core(s, p, sched, std::nullopt, OptimizerKind::HbTimeVarying, s.t, batch, rng);
}

void hb_step_constbeta(OptimizerState& s, const ProblemOracle& p, const Schedule& sched,
                       int batch, Rng* rng) {
  step_core(s, p, sched, std::nullopt, OptimizerKind::HbConstBeta, s.t, batch, rng);
}

void adahb_step_timevarying(OptimizerState& s, const ProblemOracle& p, const Schedule& sched,
                            const EmaConfig& ema, int batch, Rng* rng) {
  step_core(s, p, sched, ema, OptimizerKind::AdaHbTimeVarying, s.t, batch, rng);
}

void adahb_step_constbeta(OptimizerState& s, const ProblemOracle& p, const Schedule& sched,
                          const EmaConfig& ema, int batch, Rng* rng) {
  step_core(s, p, sched, ema, OptimizerKind::AdaHbConstBeta, s.t, batch, rng);
}

namespace {

// z carries the reformulated sequence w + p; the per-step residual compares
// the directly generated z against one projected step from the previous z
struct IdentityMonitor {
  Vector z;
  double max_residual = 0.0;
  double last_residual = 0.0;

  void init(const Vector& start) { z = start; }

  void update(const OptimizerState& s, const Vector& w_old, const Vector& g,
              const ProblemOracle& p, const Schedule& sched, long t,
              const std::optional<EmaConfig>& ema, OptimizerKind kind,
              const std::vector<double>& v_after) {
    double mult = 0.0;        // momentum multiplier for z_new
    double zstep = 0.0;       // step coefficient applied to g (or scaled g)
    switch (kind) {
      case OptimizerKind::Psg:
        return;
      case OptimizerKind::HbTimeVarying:
      case OptimizerKind::AdaHbTimeVarying:
        mult = static_cast<double>(t + 1);
        zstep = sched.alpha() / std::sqrt(static_cast<double>(t));
        break;
      case OptimizerKind::HbConstBeta:
      case OptimizerKind::AdaHbConstBeta: {
        const double beta = sched.beta();
        mult = beta / (1.0 - beta);
        zstep = alpha_over_sqrt(sched.alpha(), t, sched.fixed_horizon()) / (1.0 - beta);
        break;
      }
    }
    const bool adaptive = kind == OptimizerKind::AdaHbTimeVarying || kind == OptimizerKind::AdaHbConstBeta;
    const int d = s.w_curr.dim();
    std::vector<double> rhs_pt(z.dense_values());
    if (adaptive) {
      const double reg = ema->delta / std::sqrt(static_cast<double>(t));
      g.for_each_nonzero([&](int i, double gi) {
        const double vh = std::sqrt(v_after[static_cast<size_t>(i)]) + reg;
        rhs_pt[static_cast<size_t>(i)] -= zstep * (gi / vh);
      });
    } else {
      g.for_each_nonzero([&](int i, double gi) { rhs_pt[static_cast<size_t>(i)] -= zstep * gi; });
    }
    const Vector rhs = project(p.feasible_set(), Vector::dense(std::move(rhs_pt)));

    std::vector<double> znew(static_cast<size_t>(d));
    const auto& wn = s.w_curr.dense_values();
    const auto& wo = w_old.dense_values();
    for (int i = 0; i < d; ++i) {
      const auto si = static_cast<size_t>(i);
      znew[si] = wn[si] + mult * (wn[si] - wo[si]);
    }
    Vector znew_v = Vector::dense(std::move(znew));
    last_residual = linf_diff(znew_v, rhs);
    max_residual = std::max(max_residual, last_residual);
    z = std::move(znew_v);
  }
};

// running check of the EMA-normalized squared-gradient sum against its bound,
// plus monotonicity of sqrt(t v) per coordinate
struct EmaMonitor {
  double lhs = 0.0;
  double min_slack = std::numeric_limits<double>::infinity();
  double min_mono = std::numeric_limits<double>::infinity();
  std::vector<double> prev_m;
  double slack_at_t = 0.0;

  void update(const Vector& g, const std::vector<double>& v, long t, const EmaConfig& ema) {
    const double td = static_cast<double>(t);
    if (prev_m.empty()) prev_m.assign(v.size(), 0.0);
    g.for_each_nonzero([&](int i, double gi) {
      const double denom = std::sqrt(td * v[static_cast<size_t>(i)]) + ema.delta;
      lhs += gi * gi / denom;
    });
    double rhs = 0.0;
    const double factor = 2.0 * (2.0 - ema.gamma) / ema.gamma;
    for (size_t i = 0; i < v.size(); ++i) {
      const double m = std::sqrt(td * v[i]);
      rhs += factor * (m + ema.delta);
      min_mono = std::min(min_mono, m - prev_m[i]);
      prev_m[i] = m;
    }
    slack_at_t = rhs - lhs;
    min_slack = std::min(min_slack, slack_at_t);
  }
};

}  // namespace

RunResult run(OptimizerKind kind, const ProblemOracle& problem, const Schedule& sched,
              const std::optional<EmaConfig>& ema, long iterations, uint64_t seed,
              TraceSink* sink, const RunOptions& options) {
  if (iterations < 1) throw std::invalid_argument("run: iterations must be >= 1");
  if (options.schedule_epoch_size < 1) throw std::invalid_argument("run: epoch size must be >= 1");
  const bool adaptive = kind == OptimizerKind::AdaHbTimeVarying || kind == OptimizerKind::AdaHbConstBeta;
  if (options.check_identity && kind == OptimizerKind::Psg)
    throw std::invalid_argument("run: identity check needs a momentum optimizer");
  if (options.check_identity && options.schedule_epoch_size != 1)
    throw std::invalid_argument("run: identity check requires per-step schedule updates");
  if (options.check_ema_bound && !adaptive)
    throw std::invalid_argument("run: EMA bound check needs an adaptive optimizer");

  Rng rng(seed);
  RunResult result;
  result.state = options.start.has_value() ? make_state(problem, *options.start)
                                           : make_state(problem);
  OptimizerState& s = result.state;

  IdentityMonitor ident;
  if (options.check_identity) ident.init(s.w_curr);
  EmaMonitor ema_mon;

  if (options.record_trajectory) {
    result.log.emplace();
    result.log->iterates.reserve(static_cast<size_t>(iterations) + 1);
    result.log->iterates.push_back(s.w_curr);
  }

  for (long step = 1; step <= iterations; ++step) {
    const long t_sched = (step - 1) / options.schedule_epoch_size + 1;
    const Vector w_old = s.w_curr;
    StepTelemetry tel = step_core(s, problem, sched, ema, kind, t_sched, options.batch, &rng);

    if (options.check_identity) {
      ident.update(s, w_old, tel.gradient, problem, sched, t_sched, ema, kind, s.v);
    }
    if (options.check_ema_bound) {
      ema_mon.update(tel.gradient, s.v, t_sched, *ema);
    }

    const double f_ind = problem.value(s.w_curr);
    const double f_avg = problem.value(s.avg);
    s.f_best = std::min(s.f_best, std::min(f_ind, f_avg));
    result.final_f_individual = f_ind;
    result.final_f_averaged = f_avg;

    if (options.record_trajectory) {
      result.log->iterates.push_back(s.w_curr);
      result.log->gradients.push_back(tel.gradient);
      if (adaptive) result.log->v_diag.push_back(s.v);
    }

    if (sink != nullptr) {
      TraceRecord rec;
      rec.t = step;
      rec.f_individual = f_ind;
      rec.f_averaged = f_avg;
      if (options.reference_fstar.has_value()) {
        rec.gap_individual = f_ind - *options.reference_fstar;
        rec.gap_averaged = f_avg - *options.reference_fstar;
      }
      rec.alpha_t = tel.alpha_used;
      rec.beta1_t = tel.beta1_used;
      rec.beta2_t = tel.beta2_used;
      if (options.check_identity) rec.identity_residual = ident.last_residual;
      if (options.check_ema_bound) rec.lemma3_slack = ema_mon.slack_at_t;
      sink->write(rec);
    }
  }

  if (options.check_identity) result.max_identity_residual = ident.max_residual;
  if (options.check_ema_bound) {
    result.min_ema_slack = ema_mon.min_slack;
    result.min_ema_monotonicity = ema_mon.min_mono;
  }
  return result;
}

}  // namespace hbopt
