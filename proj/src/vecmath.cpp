#include "hbopt/vecmath.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace hbopt {

namespace {

void check_dims(int a, int b, const char* op) {
  if (a != b) {
    throw std::invalid_argument(std::string(op) + ": dimension mismatch (" +
                                std::to_string(a) + " vs " + std::to_string(b) + ")");
  }
}

}  // namespace

void Vector::require_finite() const {
  for (double v : vals_) {
    if (!std::isfinite(v)) throw std::invalid_argument("Vector: non-finite entry");
  }
}

Vector Vector::zeros(int dim) {
  if (dim <= 0) throw std::invalid_argument("Vector: dimension must be positive");
  Vector v;
  v.dim_ = dim;
  v.dense_ = true;
  v.vals_.assign(static_cast<size_t>(dim), 0.0);
  return v;
}

Vector Vector::dense(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("Vector: dimension must be positive");
  Vector v;
  v.dim_ = static_cast<int>(values.size());
  v.dense_ = true;
  v.vals_ = std::move(values);
  v.require_finite();
  return v;
}

Vector Vector::sparse(int dim, std::vector<std::pair<int, double>> entries) {
  if (dim <= 0) throw std::invalid_argument("Vector: dimension must be positive");
  Vector v;
  v.dim_ = dim;
  v.dense_ = false;
  int prev = -1;
  for (const auto& [i, x] : entries) {
    if (i <= prev) throw std::invalid_argument("Vector: sparse indices must be strictly increasing");
    if (i >= dim) throw std::invalid_argument("Vector: sparse index out of range");
    prev = i;
    if (x == 0.0) continue;  // no explicit zeros
    v.idx_.push_back(i);
    v.vals_.push_back(x);
  }
  v.require_finite();
  return v;
}

double Vector::operator[](int i) const {
  if (i < 0 || i >= dim_) throw std::out_of_range("Vector: index out of range");
  if (dense_) return vals_[static_cast<size_t>(i)];
  auto it = std::lower_bound(idx_.begin(), idx_.end(), i);
  if (it == idx_.end() || *it != i) return 0.0;
  return vals_[static_cast<size_t>(it - idx_.begin())];
}

const std::vector<double>& Vector::dense_values() const {
  if (!dense_) throw std::logic_error("Vector: dense_values on sparse vector");
  return vals_;
}

const std::vector<int>& Vector::sparse_indices() const {
  if (dense_) throw std::logic_error("Vector: sparse_indices on dense vector");
  return idx_;
}

const std::vector<double>& Vector::sparse_values() const {
  if (dense_) throw std::logic_error("Vector: sparse_values on dense vector");
  return vals_;
}

Vector Vector::to_dense() const {
  if (dense_) return *this;
  std::vector<double> out(static_cast<size_t>(dim_), 0.0);
  for (size_t k = 0; k < idx_.size(); ++k) out[static_cast<size_t>(idx_[k])] = vals_[k];
  return Vector::dense(std::move(out));
}

double Vector::max_abs() const {
  double m = 0.0;
  for (double v : vals_) m = std::max(m, std::fabs(v));
  return m;
}

DiagonalMetric::DiagonalMetric(std::vector<double> diag) : diag_(std::move(diag)) {
  if (diag_.empty()) throw std::invalid_argument("DiagonalMetric: dimension must be positive");
  for (double d : diag_) {
    if (!std::isfinite(d) || d <= 0.0)
      throw std::invalid_argument("DiagonalMetric: entries must be finite and strictly positive");
  }
}

DiagonalMetric DiagonalMetric::identity(int dim) {
  return DiagonalMetric(std::vector<double>(static_cast<size_t>(dim), 1.0));
}

Vector axpy(double a, const Vector& x, const Vector& y) {
  check_dims(x.dim(), y.dim(), "axpy");
  if (!std::isfinite(a)) throw std::invalid_argument("axpy: non-finite coefficient");
  if (y.is_dense() || x.is_dense()) {
    std::vector<double> out = y.is_dense() ? y.dense_values()
                                           : y.to_dense().dense_values();
    x.for_each_nonzero([&](int i, double v) { out[static_cast<size_t>(i)] += a * v; });
    return Vector::dense(std::move(out));
  }
  // both sparse: merged sparse result
  const auto& xi = x.sparse_indices();
  const auto& xv = x.sparse_values();
  const auto& yi = y.sparse_indices();
  const auto& yv = y.sparse_values();
  std::vector<std::pair<int, double>> out;
  out.reserve(xi.size() + yi.size());
  size_t p = 0, q = 0;
  while (p < xi.size() || q < yi.size()) {
    if (q == yi.size() || (p < xi.size() && xi[p] < yi[q])) {
      out.emplace_back(xi[p], a * xv[p]);
      ++p;
    } else if (p == xi.size() || yi[q] < xi[p]) {
      out.emplace_back(yi[q], yv[q]);
      ++q;
    } else {
      out.emplace_back(xi[p], a * xv[p] + yv[q]);
      ++p;
      ++q;
    }
  }
  return Vector::sparse(x.dim(), std::move(out));
}

double dot(const Vector& x, const Vector& y) {
  check_dims(x.dim(), y.dim(), "dot");
  double acc = 0.0;
  if (x.is_dense() && y.is_dense()) {
    const auto& a = x.dense_values();
    const auto& b = y.dense_values();
    for (size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
  }
  if (!x.is_dense() && !y.is_dense()) {
    const auto& xi = x.sparse_indices();
    const auto& xv = x.sparse_values();
    const auto& yi = y.sparse_indices();
    const auto& yv = y.sparse_values();
    size_t p = 0, q = 0;
    while (p < xi.size() && q < yi.size()) {
      if (xi[p] < yi[q]) ++p;
      else if (yi[q] < xi[p]) ++q;
      else { acc += xv[p] * yv[q]; ++p; ++q; }
    }
    return acc;
  }
  const Vector& s = x.is_dense() ? y : x;
  const Vector& d = x.is_dense() ? x : y;
  s.for_each_nonzero([&](int i, double v) { acc += v * d[i]; });
  return acc;
}

double weighted_norm_sq(const Vector& x, const DiagonalMetric& h) {
  check_dims(x.dim(), h.dim(), "weighted_norm_sq");
  const auto& diag = h.diag();
  double acc = 0.0;
  x.for_each_nonzero([&](int i, double v) { acc += diag[static_cast<size_t>(i)] * v * v; });
  return acc;
}

Vector metric_apply_inverse(const DiagonalMetric& h, const Vector& x) {
  check_dims(x.dim(), h.dim(), "metric_apply_inverse");
  const auto& diag = h.diag();
  if (x.is_dense()) {
    std::vector<double> out(static_cast<size_t>(x.dim()));
    const auto& v = x.dense_values();
    for (size_t i = 0; i < v.size(); ++i) out[i] = v[i] / diag[i];
    return Vector::dense(std::move(out));
  }
  std::vector<std::pair<int, double>> out;
  out.reserve(static_cast<size_t>(x.nnz()));
  x.for_each_nonzero([&](int i, double v) { out.emplace_back(i, v / diag[static_cast<size_t>(i)]); });
  return Vector::sparse(x.dim(), std::move(out));
}

Vector scale(double a, const Vector& x) {
  if (x.is_dense()) {
    std::vector<double> out = x.dense_values();
    for (double& v : out) v *= a;
    return Vector::dense(std::move(out));
  }
  std::vector<std::pair<int, double>> out;
  x.for_each_nonzero([&](int i, double v) { out.emplace_back(i, a * v); });
  return Vector::sparse(x.dim(), std::move(out));
}

double norm1(const Vector& x) {
  double acc = 0.0;
  x.for_each_nonzero([&](int, double v) { acc += std::fabs(v); });
  return acc;
}

double norm2(const Vector& x) { return std::sqrt(dot(x, x)); }

double linf_diff(const Vector& x, const Vector& y) {
  check_dims(x.dim(), y.dim(), "linf_diff");
  double m = 0.0;
  if (x.is_dense() && y.is_dense()) {
    const auto& a = x.dense_values();
    const auto& b = y.dense_values();
    for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::fabs(a[i] - b[i]));
    return m;
  }
  for (int i = 0; i < x.dim(); ++i) m = std::max(m, std::fabs(x[i] - y[i]));
  return m;
}

}  // namespace hbopt
