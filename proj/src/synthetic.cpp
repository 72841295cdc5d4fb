#include "hbopt/synthetic.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "hbopt/dataio.hpp"
#include "hbopt/rng.hpp"

namespace hbopt {
namespace synthetic {

namespace {

std::vector<Vector> spanning_pieces(int dim, uint64_t seed) {
  Rng rng(seed);
  const int k = dim + 3;
  std::vector<std::vector<double>> rows(static_cast<size_t>(k));
  std::vector<double> mean(static_cast<size_t>(dim), 0.0);
  const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
  for (auto& row : rows) {
    row.resize(static_cast<size_t>(dim));
    for (int j = 0; j < dim; ++j) {
      row[static_cast<size_t>(j)] = rng.normal() * scale;
      mean[static_cast<size_t>(j)] += row[static_cast<size_t>(j)];
    }
  }
  std::vector<double> balance(static_cast<size_t>(dim));
  for (int j = 0; j < dim; ++j) balance[static_cast<size_t>(j)] = -mean[static_cast<size_t>(j)];
  std::vector<Vector> pieces;
  pieces.reserve(rows.size() + 1);
  for (auto& row : rows) pieces.push_back(Vector::dense(std::move(row)));
  pieces.push_back(Vector::dense(std::move(balance)));
  return pieces;
}

}  // namespace

MaxAffineProblem random_max_affine_box(int dim, double box_halfwidth, uint64_t seed) {
  if (!(box_halfwidth > 0.0)) throw std::invalid_argument("random_max_affine_box: halfwidth > 0");
  std::vector<double> lo(static_cast<size_t>(dim), -box_halfwidth);
  std::vector<double> hi(static_cast<size_t>(dim), box_halfwidth);
  return MaxAffineProblem(spanning_pieces(dim, seed),
                          FeasibleSet::box(Vector::dense(std::move(lo)), Vector::dense(std::move(hi))));
}

MaxAffineProblem random_max_affine_ball(int dim, double radius, uint64_t seed) {
  return MaxAffineProblem(spanning_pieces(dim, seed), FeasibleSet::l2_ball(dim, radius));
}

MaxAffineProblem jittered_staircase(int dim, double c, uint64_t seed) {
  if (dim < 2) throw std::invalid_argument("jittered_staircase: dim must be >= 2");
  if (!(c > 0.0)) throw std::invalid_argument("jittered_staircase: c must be positive");
  Rng rng(seed);
  std::vector<double> a(static_cast<size_t>(dim));
  std::vector<double> b(static_cast<size_t>(dim));
  const double sqrt_d = std::sqrt(static_cast<double>(dim));
  for (int i = 1; i <= dim; ++i) {
    const double j1 = rng.uniform(0.8, 1.2);
    const double j2 = rng.uniform(0.8, 1.2);
    a[static_cast<size_t>(i - 1)] = j1 / (8.0 * c * static_cast<double>(dim - i + 1));
    b[static_cast<size_t>(i - 1)] = j2 * std::sqrt(static_cast<double>(i)) / (2.0 * c * sqrt_d);
  }
  std::vector<int> perm(static_cast<size_t>(dim));
  for (int i = 0; i < dim; ++i) perm[static_cast<size_t>(i)] = i;
  for (int i = dim - 1; i > 0; --i) {
    const int j = rng.uniform_int(i + 1);
    std::swap(perm[static_cast<size_t>(i)], perm[static_cast<size_t>(j)]);
  }

  std::vector<Vector> pieces;
  pieces.reserve(static_cast<size_t>(dim) + 1);
  for (int i = 1; i <= dim + 1; ++i) {
    std::vector<double> row(static_cast<size_t>(dim), 0.0);
    for (int j = 1; j < i && j <= dim; ++j)
      row[static_cast<size_t>(perm[static_cast<size_t>(j - 1)])] = a[static_cast<size_t>(j - 1)];
    if (i <= dim) row[static_cast<size_t>(perm[static_cast<size_t>(i - 1)])] = -b[static_cast<size_t>(i - 1)];
    pieces.push_back(Vector::dense(std::move(row)));
  }
  return MaxAffineProblem(std::move(pieces), FeasibleSet::l2_ball(dim, 1.0));
}

void write_hinge_libsvm(std::ostream& out, const HingeDataConfig& config, uint64_t seed) {
  if (config.samples < 1 || config.dim < 1) throw std::invalid_argument("write_hinge_libsvm: bad sizes");
  if (config.nonzeros_per_sample < 1 || config.nonzeros_per_sample > config.dim)
    throw std::invalid_argument("write_hinge_libsvm: bad nonzeros_per_sample");
  if (config.generating_nonzeros < 1 || config.generating_nonzeros > config.dim)
    throw std::invalid_argument("write_hinge_libsvm: bad generating_nonzeros");
  Rng rng(seed);
  std::vector<double> w_true(static_cast<size_t>(config.dim), 0.0);
  for (int i : rng.sample_without_replacement(config.dim, config.generating_nonzeros)) {
    w_true[static_cast<size_t>(i)] = rng.normal() * config.generating_scale;
  }
  for (int s = 0; s < config.samples; ++s) {
    const std::vector<int> idx =
        rng.sample_without_replacement(config.dim, config.nonzeros_per_sample);
    std::vector<double> vals(idx.size());
    double margin = 0.0;
    for (size_t k = 0; k < idx.size(); ++k) {
      double v = rng.uniform(0.5, 1.5);
      if (rng.uniform01() < 0.5) v = -v;
      vals[k] = v;
      margin += v * w_true[static_cast<size_t>(idx[k])];
    }
    margin += config.margin_noise * rng.normal();
    double label = margin >= 0.0 ? 1.0 : -1.0;
    if (rng.uniform01() < config.label_flip_prob) label = -label;
    out << (label > 0.0 ? "+1" : "-1");
    for (size_t k = 0; k < idx.size(); ++k) {
      out << ' ' << (idx[k] + 1) << ':' << format_double(vals[k]);
    }
    out << '\n';
  }
  if (!out) throw std::runtime_error("write_hinge_libsvm: stream write failed");
}

}  // namespace synthetic
}  // namespace hbopt
