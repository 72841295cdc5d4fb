#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hbopt/problems.hpp"
#include "hbopt/rng.hpp"
#include "hbopt/trace.hpp"
#include "hbopt/vecmath.hpp"

namespace hbopt {

enum class OptimizerKind { Psg, HbTimeVarying, HbConstBeta, AdaHbTimeVarying, AdaHbConstBeta };

// Step-size and momentum schedules.
//   time-varying:  beta1_t = t/(t+2),  alpha_t = alpha/((t+2) sqrt(t))
//   constant beta: beta1_t = beta,     alpha_t = alpha/sqrt(t)
// A fixed horizon switches the constant-beta/psg step to alpha/sqrt(T),
// the variant used when the feasible set is unbounded.
class Schedule {
 public:
  static Schedule time_varying(double alpha);
  static Schedule constant_beta(double alpha, double beta);
  Schedule with_fixed_horizon(long horizon) const;

  bool is_time_varying() const { return time_varying_; }
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  std::optional<long> fixed_horizon() const { return fixed_horizon_; }

  double alpha_t(long t) const;
  double beta1_t(long t) const;

 private:
  Schedule(bool tv, double alpha, double beta) : time_varying_(tv), alpha_(alpha), beta_(beta) {}
  bool time_varying_;
  double alpha_;
  double beta_;
  std::optional<long> fixed_horizon_;
};

// Second-moment EMA configuration: beta2_t = 1 - gamma/t clamped into
// [1 - 1/t, 1 - gamma/t].
struct EmaConfig {
  double gamma;
  double delta;
  EmaConfig(double gamma_in, double delta_in);
  double beta2_t(long t) const;
};

// Iterate bundle mutated step by step. w_curr stays feasible; avg tracks the
// running mean of produced iterates; v is the second-moment EMA diagonal
// (adaptive variants only); f_best is the smallest objective value seen
// across individual and averaged iterates including the start point.
struct OptimizerState {
  long t = 1;  // index of the next step
  Vector w_curr;
  Vector w_prev;
  Vector avg;
  std::vector<double> v;
  double f_best = 0.0;
  long steps_done = 0;
};

OptimizerState make_state(const ProblemOracle& problem, const Vector& start);
// default start: projection of the origin onto the feasible set
OptimizerState make_state(const ProblemOracle& problem);

// Single iteration rules. Each consumes the subgradient at w_curr (exact when
// batch == 0, otherwise a batch estimate drawn from rng), applies the
// projected update, and advances t, the running average, and f_best.
void psg_step(OptimizerState& s, const ProblemOracle& p, const Schedule& sched,
              int batch = 0, Rng* rng = nullptr);
void hb_step_timevarying(OptimizerState& s, const ProblemOracle& p, const Schedule& sched,
                         int batch = 0, Rng* rng = nullptr);
void hb_step_constbeta(OptimizerState& s, const ProblemOracle& p, const Schedule& sched,
                       int batch = 0, Rng* rng = nullptr);
void adahb_step_timevarying(OptimizerState& s, const ProblemOracle& p, const Schedule& sched,
                            const EmaConfig& ema, int batch = 0, Rng* rng = nullptr);
void adahb_step_constbeta(OptimizerState& s, const ProblemOracle& p, const Schedule& sched,
                          const EmaConfig& ema, int batch = 0, Rng* rng = nullptr);

// Full iterate/gradient log for offline diagnostics. iterates[0] is the
// start point; iterates[k] the result of step k; gradients[k-1] the
// subgradient used by step k; v_diag[k-1] the EMA diagonal after step k.
struct TrajectoryLog {
  std::vector<Vector> iterates;
  std::vector<Vector> gradients;
  std::vector<std::vector<double>> v_diag;
};

struct RunOptions {
  int batch = 0;
  std::optional<double> reference_fstar;
  bool check_identity = false;   // online momentum-reformulation residual
  bool check_ema_bound = false;  // online EMA sum bound + monotonicity (adaptive)
  bool record_trajectory = false;
  std::optional<Vector> start;
  long schedule_epoch_size = 1;  // schedule index advances once per epoch
};

struct RunResult {
  OptimizerState state;
  double final_f_individual = 0.0;
  double final_f_averaged = 0.0;
  std::optional<double> max_identity_residual;
  std::optional<double> min_ema_slack;           // min over t of bound minus sum
  std::optional<double> min_ema_monotonicity;    // min step of sqrt(t v) + delta
  std::optional<TrajectoryLog> log;
};

// Executes `iterations` steps, emitting one TraceRecord per step into sink
// (when non-null). Deterministic for a given config and seed.
RunResult run(OptimizerKind kind, const ProblemOracle& problem, const Schedule& sched,
              const std::optional<EmaConfig>& ema, long iterations, uint64_t seed,
              TraceSink* sink, const RunOptions& options = {});

}  // namespace hbopt
