#include "hbopt/projections.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace hbopt {

FeasibleSet FeasibleSet::l1_ball(int dim, double tau) {
  if (dim <= 0) throw std::invalid_argument("FeasibleSet: dimension must be positive");
  if (!(tau > 0.0) || !std::isfinite(tau)) throw std::invalid_argument("FeasibleSet: tau must be positive");
  FeasibleSet s(SetKind::L1Ball, dim);
  s.radius_ = tau;
  return s;
}

FeasibleSet FeasibleSet::l2_ball(int dim, double radius) {
  if (dim <= 0) throw std::invalid_argument("FeasibleSet: dimension must be positive");
  if (!(radius > 0.0) || !std::isfinite(radius)) throw std::invalid_argument("FeasibleSet: radius must be positive");
  FeasibleSet s(SetKind::L2Ball, dim);
  s.radius_ = radius;
  return s;
}

FeasibleSet FeasibleSet::box(Vector lower, Vector upper) {
  if (lower.dim() != upper.dim()) throw std::invalid_argument("FeasibleSet: box bound dimension mismatch");
  const Vector lo = lower.to_dense();
  const Vector hi = upper.to_dense();
  for (int i = 0; i < lo.dim(); ++i) {
    if (lo[i] > hi[i]) throw std::invalid_argument("FeasibleSet: box requires lower <= upper");
  }
  FeasibleSet s(SetKind::Box, lo.dim());
  s.lower_ = lo;
  s.upper_ = hi;
  return s;
}

FeasibleSet FeasibleSet::full_space(int dim) {
  if (dim <= 0) throw std::invalid_argument("FeasibleSet: dimension must be positive");
  return FeasibleSet(SetKind::FullSpace, dim);
}

double FeasibleSet::radius() const {
  if (kind_ != SetKind::L1Ball && kind_ != SetKind::L2Ball)
    throw std::logic_error("FeasibleSet: radius only defined for balls");
  return radius_;
}

const Vector& FeasibleSet::lower() const {
  if (kind_ != SetKind::Box) throw std::logic_error("FeasibleSet: lower only defined for boxes");
  return lower_;
}

const Vector& FeasibleSet::upper() const {
  if (kind_ != SetKind::Box) throw std::logic_error("FeasibleSet: upper only defined for boxes");
  return upper_;
}

std::optional<double> FeasibleSet::diameter() const {
  switch (kind_) {
    case SetKind::L1Ball:
    case SetKind::L2Ball:
      return 2.0 * radius_;
    case SetKind::Box: {
      double acc = 0.0;
      for (int i = 0; i < dim_; ++i) {
        const double d = upper_[i] - lower_[i];
        acc += d * d;
      }
      return std::sqrt(acc);
    }
    case SetKind::FullSpace:
      return std::nullopt;
  }
  return std::nullopt;
}

namespace {

void check_dim(const FeasibleSet& set, const Vector& x, const char* op) {
  if (set.dim() != x.dim()) throw std::invalid_argument(std::string(op) + ": dimension mismatch");
}

// threshold for the l1 ball: scan magnitudes in decreasing order and keep the
// largest prefix whose induced threshold stays below the smallest kept entry
double l1_threshold(const std::vector<double>& abs_sorted_desc, double tau) {
  double prefix = 0.0;
  double theta = 0.0;
  for (size_t j = 0; j < abs_sorted_desc.size(); ++j) {
    prefix += abs_sorted_desc[j];
    const double cand = (prefix - tau) / static_cast<double>(j + 1);
    if (abs_sorted_desc[j] > cand) {
      theta = cand;
    }
  }
  return theta;
}

Vector project_l1(const Vector& x, double tau) {
  if (norm1(x) <= tau) return x;
  const Vector xd = x.to_dense();
  std::vector<double> mags(xd.dense_values());
  for (double& m : mags) m = std::fabs(m);
  std::sort(mags.begin(), mags.end(), std::greater<double>());
  const double theta = l1_threshold(mags, tau);
  std::vector<double> out(static_cast<size_t>(xd.dim()));
  for (int i = 0; i < xd.dim(); ++i) {
    const double m = std::fabs(xd[i]) - theta;
    out[static_cast<size_t>(i)] = m > 0.0 ? (xd[i] > 0.0 ? m : -m) : 0.0;
  }
  return Vector::dense(std::move(out));
}

Vector project_l2(const Vector& x, double r) {
  const double n = norm2(x);
  if (n <= r) return x;
  return scale(r / n, x);
}

Vector project_box(const Vector& x, const Vector& lo, const Vector& hi) {
  std::vector<double> out(static_cast<size_t>(x.dim()));
  for (int i = 0; i < x.dim(); ++i) {
    out[static_cast<size_t>(i)] = std::min(std::max(x[i], lo[i]), hi[i]);
  }
  return Vector::dense(std::move(out));
}

double dist_sq(const Vector& a, const Vector& b) {
  double acc = 0.0;
  for (int i = 0; i < a.dim(); ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return acc;
}

// every candidate lies on the l1 sphere by construction, so the distance
// minimizer among them (or x itself when interior) is the projection
Vector bruteforce_l1(const Vector& x, double tau) {
  if (norm1(x) <= tau) return x;
  const int d = x.dim();
  Vector best = Vector::zeros(d);
  double best_d = std::numeric_limits<double>::infinity();
  const unsigned nsub = 1u << d;
  for (unsigned mask = 1; mask < nsub; ++mask) {
    double sum = 0.0;
    int count = 0;
    for (int i = 0; i < d; ++i) {
      if (mask & (1u << i)) {
        sum += std::fabs(x[i]);
        ++count;
      }
    }
    const double theta = (sum - tau) / count;
    if (theta < 0.0) continue;
    bool valid = true;
    std::vector<double> cand(static_cast<size_t>(d), 0.0);
    for (int i = 0; i < d && valid; ++i) {
      if (mask & (1u << i)) {
        const double m = std::fabs(x[i]) - theta;
        if (m < 0.0) valid = false;
        else cand[static_cast<size_t>(i)] = x[i] > 0.0 ? m : -m;
      }
    }
    if (!valid) continue;
    const Vector cv = Vector::dense(std::move(cand));
    const double ds = dist_sq(cv, x);
    if (ds < best_d) {
      best_d = ds;
      best = cv;
    }
  }
  return best;
}

// interior case plus the single boundary KKT solution
Vector bruteforce_l2(const Vector& x, double r) {
  const double n = norm2(x);
  if (n <= r) return x;
  return scale(r / n, x);
}

}  // namespace

Vector project(const FeasibleSet& set, const Vector& x) {
  check_dim(set, x, "project");
  switch (set.kind()) {
    case SetKind::L1Ball: return project_l1(x, set.radius());
    case SetKind::L2Ball: return project_l2(x, set.radius());
    case SetKind::Box:    return project_box(x, set.lower(), set.upper());
    case SetKind::FullSpace: return x;
  }
  throw std::logic_error("project: unknown set kind");
}

Vector project_bruteforce(const FeasibleSet& set, const Vector& x) {
  check_dim(set, x, "project_bruteforce");
  if (set.dim() > 8) throw std::invalid_argument("project_bruteforce: dimension must be <= 8");
  switch (set.kind()) {
    case SetKind::L1Ball: return bruteforce_l1(x, set.radius());
    case SetKind::L2Ball: return bruteforce_l2(x, set.radius());
    case SetKind::Box:    return project_box(x, set.lower(), set.upper());
    case SetKind::FullSpace: return x;
  }
  throw std::logic_error("project_bruteforce: unknown set kind");
}

bool membership(const FeasibleSet& set, const Vector& x, double tol) {
  check_dim(set, x, "membership");
  if (tol < 0.0) throw std::invalid_argument("membership: tol must be nonnegative");
  switch (set.kind()) {
    case SetKind::L1Ball: return norm1(x) <= set.radius() + tol;
    case SetKind::L2Ball: return norm2(x) <= set.radius() + tol;
    case SetKind::Box: {
      for (int i = 0; i < x.dim(); ++i) {
        if (x[i] < set.lower()[i] - tol || x[i] > set.upper()[i] + tol) return false;
      }
      return true;
    }
    case SetKind::FullSpace: return true;
  }
  return false;
}

Vector random_feasible_point(const FeasibleSet& set, Rng& rng) {
  const int d = set.dim();
  std::vector<double> v(static_cast<size_t>(d));
  switch (set.kind()) {
    case SetKind::L1Ball: {
      for (double& e : v) e = rng.uniform(-1.0, 1.0);
      Vector x = Vector::dense(std::move(v));
      const double target = set.radius() * std::pow(rng.uniform01(), 1.0 / d);
      const double n = norm1(x);
      return n > 0.0 ? scale(target / n, x) : x;
    }
    case SetKind::L2Ball: {
      for (double& e : v) e = rng.normal();
      Vector x = Vector::dense(std::move(v));
      const double target = set.radius() * std::pow(rng.uniform01(), 1.0 / d);
      const double n = norm2(x);
      return n > 0.0 ? scale(target / n, x) : x;
    }
    case SetKind::Box: {
      for (int i = 0; i < d; ++i) {
        v[static_cast<size_t>(i)] = rng.uniform(set.lower()[i], set.upper()[i]);
      }
      return Vector::dense(std::move(v));
    }
    case SetKind::FullSpace: {
      for (double& e : v) e = rng.normal();
      return Vector::dense(std::move(v));
    }
  }
  throw std::logic_error("random_feasible_point: unknown set kind");
}

}  // namespace hbopt
