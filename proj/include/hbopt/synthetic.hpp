#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>

#include "hbopt/problems.hpp"

namespace hbopt {
namespace synthetic {

// Random piecewise-linear objective with minimum value 0 at the origin:
// num_pieces unit-scale Gaussian pieces plus one balancing piece so the
// directions span positively. Feasible set is the centered box
// [-box_halfwidth, box_halfwidth]^dim.
MaxAffineProblem random_max_affine_box(int dim, double box_halfwidth, uint64_t seed);

// Same construction over an l2 ball.
MaxAffineProblem random_max_affine_ball(int dim, double radius, uint64_t seed);

// Randomized variant of the slow-descent staircase objective: coefficients
// jittered by a factor in [0.8, 1.2] and coordinates permuted. Any positive
// coefficients keep the minimum over the unit ball exactly 0 (all pieces
// negative would force every coordinate positive, contradicting the
// all-positive final piece), so gap traces can use reference 0.
MaxAffineProblem jittered_staircase(int dim, double c, uint64_t seed);

struct HingeDataConfig {
  int samples = 10000;
  int dim = 200;
  int nonzeros_per_sample = 10;   // features per sample
  int generating_nonzeros = 30;   // support of the generating weight vector
  double generating_scale = 1.5;
  double margin_noise = 0.1;
  double label_flip_prob = 0.005;
};

// Sparse linear-model classification data in LibSVM text form. Labels come
// from a random sparse weight vector with additive margin noise and rare
// label flips.
void write_hinge_libsvm(std::ostream& out, const HingeDataConfig& config, uint64_t seed);

}  // namespace synthetic
}  // namespace hbopt
