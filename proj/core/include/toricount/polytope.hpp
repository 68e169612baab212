#pragma once

#include <vector>

#include "toricount/intlin.hpp"

namespace toricount {

// A finite set of characters spanning a lattice polytope (its convex hull).
// Canonically sorted and deduplicated; every point has the ambient rank.
struct PointSet {
  int rank = 0;
  std::vector<Covector> points;

  friend bool operator==(const PointSet& a, const PointSet& b) {
    return a.rank == b.rank && a.points == b.points;
  }
};

PointSet make_point_set(int rank, std::vector<Covector> pts);
PointSet translate(const PointSet& s, const Covector& by);
PointSet dilate(const PointSet& s, const Int& factor);

// Dimension of the affine span of the hull; EmptySet on an empty set.
int affine_dim(const PointSet& s);

PointSet minkowski_sum(const PointSet& a, const PointSet& b);

// Lattice-normalized volume: a simplex on a lattice basis has volume 1, so
// this is rank! times the Euclidean volume, always a nonnegative integer.
// Zero exactly when the hull is lower-dimensional. Computed by an exact
// triangulation of the hull (sum of |det| over simplex edge matrices).
using LatticeVolume = Int;
LatticeVolume lattice_volume(const PointSet& s);

// Mixed volume of exactly `rank` point sets, normalized by the diagonal
// axiom mixed_volume(P, ..., P) == lattice_volume(P): inclusion-exclusion
// over lattice volumes of partial Minkowski sums, divided exactly by rank!.
LatticeVolume mixed_volume(const std::vector<PointSet>& sets);

// Independent route to the same number, used as a cross-check: evaluate
// lattice_volume(l1*P1 + ... + ln*Pn) on the grid l in {1..n+1}^n, solve the
// exact linear system for the homogeneous degree-n volume polynomial, and
// read the l1*...*ln coefficient off (again divided exactly by n!).
LatticeVolume mixed_volume_oracle(const std::vector<PointSet>& sets);

}  // namespace toricount
