#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "hbopt/projections.hpp"
#include "hbopt/rng.hpp"
#include "hbopt/vecmath.hpp"

namespace hbopt {

// Convex objective with subgradient access and a feasible set. Oracles are
// immutable after construction; the stochastic oracle draws from an
// externally supplied generator.
class ProblemOracle {
 public:
  virtual ~ProblemOracle() = default;
  virtual int dim() const = 0;
  virtual double value(const Vector& w) const = 0;
  virtual Vector subgradient(const Vector& w) const = 0;
  virtual bool has_stochastic_oracle() const { return false; }
  virtual Vector stochastic_subgradient(const Vector& w, int batch, Rng& rng) const;
  virtual std::optional<double> subgradient_norm_bound() const { return std::nullopt; }
  virtual const FeasibleSet& feasible_set() const = 0;
};

// f(w) = max_i <h_i, w> + c_i; the subgradient is the piece with the smallest
// index among those attaining the max.
class MaxAffineProblem : public ProblemOracle {
 public:
  MaxAffineProblem(std::vector<Vector> pieces, std::vector<double> offsets, FeasibleSet set);
  MaxAffineProblem(std::vector<Vector> pieces, FeasibleSet set);

  int dim() const override { return set_.dim(); }
  double value(const Vector& w) const override;
  Vector subgradient(const Vector& w) const override;
  std::optional<double> subgradient_norm_bound() const override { return norm_bound_; }
  const FeasibleSet& feasible_set() const override { return set_; }

  int num_pieces() const { return static_cast<int>(pieces_.size()); }
  const Vector& piece(int i) const { return pieces_[static_cast<size_t>(i)]; }

 private:
  int argmax_piece(const Vector& w) const;
  std::vector<Vector> pieces_;
  std::vector<double> offsets_;
  FeasibleSet set_;
  double norm_bound_;
};

// Mean hinge loss (1/n) sum max(0, 1 - y_i <x_i, w>) over an l1 ball.
// A sample sitting exactly at margin 1 contributes zero to the subgradient.
class HingeLossProblem : public ProblemOracle {
 public:
  HingeLossProblem(std::vector<Vector> samples, std::vector<double> labels, double tau);

  int dim() const override { return set_.dim(); }
  double value(const Vector& w) const override;
  Vector subgradient(const Vector& w) const override;
  bool has_stochastic_oracle() const override { return true; }
  Vector stochastic_subgradient(const Vector& w, int batch, Rng& rng) const override;
  std::optional<double> subgradient_norm_bound() const override { return norm_bound_; }
  const FeasibleSet& feasible_set() const override { return set_; }

  int num_samples() const { return static_cast<int>(samples_.size()); }
  double tau() const { return set_.radius(); }

 private:
  Vector batch_subgradient(const Vector& w, const std::vector<int>& idx) const;
  std::vector<Vector> samples_;
  std::vector<double> labels_;
  FeasibleSet set_;
  double norm_bound_;
};

// Piecewise-linear objective over the unit l2 ball on which plain projected
// subgradient descent with step c/sqrt(t) is provably slow: its final value
// after T steps stays above gd_lower_bound(). Coefficients
// a_i = 1/(8c(T-i+1)), b_i = sqrt(i)/(2c sqrt(T)); row i of the piece matrix
// carries the a-prefix, then -b_i, then zeros, and row T+1 is the full
// a-vector. f(0) = 0 exactly and the minimum over the ball is 0.
class HardFunctionProblem : public ProblemOracle {
 public:
  HardFunctionProblem(int horizon, double c);

  int dim() const override { return set_.dim(); }
  double value(const Vector& w) const override;
  Vector subgradient(const Vector& w) const override;
  std::optional<double> subgradient_norm_bound() const override { return norm_bound_; }
  const FeasibleSet& feasible_set() const override { return set_; }

  int horizon() const { return horizon_; }
  double scale_c() const { return c_; }
  Vector piece(int i) const;  // h_i, 1-based, i in [1, T+1]

  // floor on f after T projected subgradient steps with step c/sqrt(t),
  // log(T)/(32 c sqrt(T)) with natural log; requires T >= 2
  double gd_lower_bound() const;

 private:
  // values of all T+1 pieces at w, via the prefix sums of a_j w_j
  int argmax_piece(const Vector& w, double* max_val) const;
  int horizon_;
  double c_;
  std::vector<double> a_, b_;
  FeasibleSet set_;
  double norm_bound_;
};

}  // namespace hbopt
