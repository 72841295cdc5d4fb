#pragma once

#include <optional>

#include "hbopt/rng.hpp"
#include "hbopt/vecmath.hpp"

namespace hbopt {

enum class SetKind { L1Ball, L2Ball, Box, FullSpace };

// Closed convex feasible set with a Euclidean nearest-point map.
class FeasibleSet {
 public:
  static FeasibleSet l1_ball(int dim, double tau);
  static FeasibleSet l2_ball(int dim, double radius);
  static FeasibleSet box(Vector lower, Vector upper);
  static FeasibleSet full_space(int dim);

  SetKind kind() const { return kind_; }
  int dim() const { return dim_; }
  double radius() const;       // L1Ball / L2Ball only
  const Vector& lower() const; // Box only
  const Vector& upper() const; // Box only

  // finite for bounded kinds, nullopt for FullSpace
  std::optional<double> diameter() const;

 private:
  FeasibleSet(SetKind kind, int dim) : kind_(kind), dim_(dim) {}
  SetKind kind_;
  int dim_;
  double radius_ = 0.0;
  Vector lower_, upper_;
};

// Euclidean projection argmin_{y in Q} ||y - x||^2. Returns x unchanged when
// already feasible; result for the l1 ball uses the sort-and-threshold scan
// with the threshold taken from the largest admissible prefix.
Vector project(const FeasibleSet& set, const Vector& x);

// Independent projection oracle for test use: enumerates candidate support
// sets (l1) or boundary cases and picks the feasible distance minimizer.
// Guarded to dim <= 8.
Vector project_bruteforce(const FeasibleSet& set, const Vector& x);

// constraint_value <= bound + tol, e.g. ||x||_1 <= tau + tol
bool membership(const FeasibleSet& set, const Vector& x, double tol);

// feasible sample with decent spread, for property tests
Vector random_feasible_point(const FeasibleSet& set, Rng& rng);

}  // namespace hbopt
