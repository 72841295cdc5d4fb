#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace hbopt {

// Dense or sparse real vector. Immutable after construction; all entries
// finite; sparse storage keeps strictly increasing indices and no explicit
// zeros. Reductions accumulate in ascending index order so repeated runs are
// bit-identical.
class Vector {
 public:
  Vector() : dim_(0), dense_(true) {}

  static Vector zeros(int dim);
  static Vector dense(std::vector<double> values);
  static Vector sparse(int dim, std::vector<std::pair<int, double>> entries);

  int dim() const { return dim_; }
  bool is_dense() const { return dense_; }
  int nnz() const { return dense_ ? dim_ : static_cast<int>(idx_.size()); }

  // component access; on sparse storage this is a binary search
  double operator[](int i) const;

  const std::vector<double>& dense_values() const;
  const std::vector<int>& sparse_indices() const;
  const std::vector<double>& sparse_values() const;

  Vector to_dense() const;
  double max_abs() const;

  template <typename F>
  void for_each_nonzero(F&& f) const {
    if (dense_) {
      for (int i = 0; i < dim_; ++i) f(i, vals_[i]);
    } else {
      for (size_t k = 0; k < idx_.size(); ++k) f(idx_[k], vals_[k]);
    }
  }

 private:
  int dim_;
  bool dense_;
  std::vector<double> vals_;
  std::vector<int> idx_;  // empty when dense

  void require_finite() const;
};

// Strictly positive diagonal metric, the carrier for weighted norms and
// per-coordinate inverse scaling.
class DiagonalMetric {
 public:
  explicit DiagonalMetric(std::vector<double> diag);
  static DiagonalMetric identity(int dim);
  int dim() const { return static_cast<int>(diag_.size()); }
  const std::vector<double>& diag() const { return diag_; }

 private:
  std::vector<double> diag_;
};

// a*x + y; result is dense unless both operands are sparse
Vector axpy(double a, const Vector& x, const Vector& y);
double dot(const Vector& x, const Vector& y);
double weighted_norm_sq(const Vector& x, const DiagonalMetric& h);
Vector metric_apply_inverse(const DiagonalMetric& h, const Vector& x);

Vector scale(double a, const Vector& x);
double norm1(const Vector& x);
double norm2(const Vector& x);
double linf_diff(const Vector& x, const Vector& y);

}  // namespace hbopt
