#include "hbopt/problems.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hbopt {

Vector ProblemOracle::stochastic_subgradient(const Vector&, int, Rng&) const {
  throw std::logic_error("ProblemOracle: no stochastic oracle available");
}

namespace {

double validate_pieces(const std::vector<Vector>& pieces, const std::vector<double>& offsets,
                       const FeasibleSet& set) {
  if (pieces.empty()) throw std::invalid_argument("MaxAffineProblem: needs at least one piece");
  if (offsets.size() != pieces.size())
    throw std::invalid_argument("MaxAffineProblem: offsets/pieces size mismatch");
  double bound = 0.0;
  for (const auto& h : pieces) {
    if (h.dim() != set.dim()) throw std::invalid_argument("MaxAffineProblem: piece dimension mismatch");
    bound = std::max(bound, norm2(h));
  }
  return bound;
}

}  // namespace

MaxAffineProblem::MaxAffineProblem(std::vector<Vector> pieces, std::vector<double> offsets,
                                   FeasibleSet set)
    : pieces_(std::move(pieces)), offsets_(std::move(offsets)), set_(std::move(set)) {
  norm_bound_ = validate_pieces(pieces_, offsets_, set_);
}

MaxAffineProblem::MaxAffineProblem(std::vector<Vector> pieces, FeasibleSet set)
    : pieces_(std::move(pieces)), offsets_(pieces_.size(), 0.0), set_(std::move(set)) {
  norm_bound_ = validate_pieces(pieces_, offsets_, set_);
}

int MaxAffineProblem::argmax_piece(const Vector& w) const {
  if (w.dim() != set_.dim()) throw std::invalid_argument("MaxAffineProblem: dimension mismatch");
  int best = 0;
  double best_val = dot(pieces_[0], w) + offsets_[0];
  for (size_t i = 1; i < pieces_.size(); ++i) {
    const double v = dot(pieces_[i], w) + offsets_[i];
    if (v > best_val) {
      best_val = v;
      best = static_cast<int>(i);
    }
  }
  return best;
}

double MaxAffineProblem::value(const Vector& w) const {
  const int i = argmax_piece(w);
  return dot(pieces_[static_cast<size_t>(i)], w) + offsets_[static_cast<size_t>(i)];
}

Vector MaxAffineProblem::subgradient(const Vector& w) const {
  return pieces_[static_cast<size_t>(argmax_piece(w))];
}

HingeLossProblem::HingeLossProblem(std::vector<Vector> samples, std::vector<double> labels,
                                   double tau)
    : samples_(std::move(samples)),
      labels_(std::move(labels)),
      set_(FeasibleSet::l1_ball(samples_.empty() ? 1 : samples_[0].dim(), tau)) {
  if (samples_.empty()) throw std::invalid_argument("HingeLossProblem: empty sample list");
  if (labels_.size() != samples_.size())
    throw std::invalid_argument("HingeLossProblem: labels/samples size mismatch");
  norm_bound_ = 0.0;
  for (size_t i = 0; i < samples_.size(); ++i) {
    if (samples_[i].dim() != set_.dim())
      throw std::invalid_argument("HingeLossProblem: inconsistent feature dimension");
    if (labels_[i] != 1.0 && labels_[i] != -1.0)
      throw std::invalid_argument("HingeLossProblem: labels must be +1 or -1");
    norm_bound_ = std::max(norm_bound_, norm2(samples_[i]));
  }
}

double HingeLossProblem::value(const Vector& w) const {
  if (w.dim() != set_.dim()) throw std::invalid_argument("HingeLossProblem: dimension mismatch");
  double acc = 0.0;
  for (size_t i = 0; i < samples_.size(); ++i) {
    const double margin = 1.0 - labels_[i] * dot(samples_[i], w);
    if (margin > 0.0) acc += margin;
  }
  return acc / static_cast<double>(samples_.size());
}

Vector HingeLossProblem::batch_subgradient(const Vector& w, const std::vector<int>& idx) const {
  std::vector<double> g(static_cast<size_t>(set_.dim()), 0.0);
  const double inv = 1.0 / static_cast<double>(idx.size());
  for (int i : idx) {
    const auto si = static_cast<size_t>(i);
    const double margin = 1.0 - labels_[si] * dot(samples_[si], w);
    if (margin > 0.0) {
      const double coef = -labels_[si] * inv;
      samples_[si].for_each_nonzero([&](int j, double v) { g[static_cast<size_t>(j)] += coef * v; });
    }
  }
  return Vector::dense(std::move(g));
}

Vector HingeLossProblem::subgradient(const Vector& w) const {
  if (w.dim() != set_.dim()) throw std::invalid_argument("HingeLossProblem: dimension mismatch");
  std::vector<int> all(samples_.size());
  for (size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  return batch_subgradient(w, all);
}

Vector HingeLossProblem::stochastic_subgradient(const Vector& w, int batch, Rng& rng) const {
  if (w.dim() != set_.dim()) throw std::invalid_argument("HingeLossProblem: dimension mismatch");
  if (batch < 1 || batch > num_samples())
    throw std::invalid_argument("HingeLossProblem: batch must be in [1, n]");
  if (batch == num_samples()) return subgradient(w);
  return batch_subgradient(w, rng.sample_without_replacement(num_samples(), batch));
}

HardFunctionProblem::HardFunctionProblem(int horizon, double c)
    : horizon_(horizon), c_(c), set_(FeasibleSet::l2_ball(horizon > 0 ? horizon : 1, 1.0)) {
  if (horizon <= 0) throw std::invalid_argument("HardFunctionProblem: horizon must be positive");
  if (!(c >= 1.0)) throw std::invalid_argument("HardFunctionProblem: c must be >= 1");
  a_.resize(static_cast<size_t>(horizon));
  b_.resize(static_cast<size_t>(horizon));
  const double sqrt_t = std::sqrt(static_cast<double>(horizon));
  for (int i = 1; i <= horizon; ++i) {
    a_[static_cast<size_t>(i - 1)] = 1.0 / (8.0 * c * static_cast<double>(horizon - i + 1));
    b_[static_cast<size_t>(i - 1)] = std::sqrt(static_cast<double>(i)) / (2.0 * c * sqrt_t);
  }
  // the largest piece norm is attained by one of the two full-prefix rows
  double prefix_sq = 0.0;
  double best = 0.0;
  for (int i = 1; i <= horizon; ++i) {
    const double bi = b_[static_cast<size_t>(i - 1)];
    best = std::max(best, std::sqrt(prefix_sq + bi * bi));
    const double ai = a_[static_cast<size_t>(i - 1)];
    prefix_sq += ai * ai;
  }
  norm_bound_ = std::max(best, std::sqrt(prefix_sq));
}

int HardFunctionProblem::argmax_piece(const Vector& w, double* max_val) const {
  if (w.dim() != horizon_) throw std::invalid_argument("HardFunctionProblem: dimension mismatch");
  // piece i value = sum_{j<i} a_j w_j - b_i w_i, piece T+1 = full a-sum
  int best = 1;
  double best_val = -b_[0] * w[0];
  double prefix = 0.0;
  for (int i = 2; i <= horizon_; ++i) {
    prefix += a_[static_cast<size_t>(i - 2)] * w[i - 2];
    const double v = prefix - b_[static_cast<size_t>(i - 1)] * w[i - 1];
    if (v > best_val) {
      best_val = v;
      best = i;
    }
  }
  prefix += a_[static_cast<size_t>(horizon_ - 1)] * w[horizon_ - 1];
  if (prefix > best_val) {
    best_val = prefix;
    best = horizon_ + 1;
  }
  if (max_val != nullptr) *max_val = best_val;
  return best;
}

double HardFunctionProblem::value(const Vector& w) const {
  double v = 0.0;
  argmax_piece(w, &v);
  return v;
}

Vector HardFunctionProblem::piece(int i) const {
  if (i < 1 || i > horizon_ + 1) throw std::invalid_argument("HardFunctionProblem: piece index out of range");
  std::vector<double> h(static_cast<size_t>(horizon_), 0.0);
  for (int j = 1; j < i && j <= horizon_; ++j) h[static_cast<size_t>(j - 1)] = a_[static_cast<size_t>(j - 1)];
  if (i <= horizon_) h[static_cast<size_t>(i - 1)] = -b_[static_cast<size_t>(i - 1)];
  return Vector::dense(std::move(h));
}

Vector HardFunctionProblem::subgradient(const Vector& w) const {
  return piece(argmax_piece(w, nullptr));
}

double HardFunctionProblem::gd_lower_bound() const {
  if (horizon_ < 2) throw std::logic_error("HardFunctionProblem: gd_lower_bound needs horizon >= 2");
  const double t = static_cast<double>(horizon_);
  return std::log(t) / (32.0 * c_ * std::sqrt(t));
}

}  // namespace hbopt
