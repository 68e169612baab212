#pragma once

#include <utility>
#include <vector>

#include "toricount/polytope.hpp"

namespace toricount {

// Defect of a subfamily: dim of the Minkowski sum of the selected supports
// minus the number of selected supports. EmptyIndexSet on an empty subset,
// EmptySupport when a selected support is empty.
long defect(const std::vector<PointSet>& family, const std::vector<int>& subset);

// Defects of every nonempty subset, in ascending bitmask order (bit i set
// <=> family[i] selected). TooManySystems beyond 20 supports.
std::vector<std::pair<std::vector<int>, long>> defect_table(const std::vector<PointSet>& family);

// Union of all zero-defect subsets. Meaningful when no subset has negative
// defect: zero-defect subsets are then closed under union, so this is the
// greatest one (InvariantViolation when the union fails to have defect
// zero). Empty when no subset has zero defect.
std::vector<int> greatest_zero_defect_subset(const std::vector<PointSet>& family);

enum class KCase {
  AllPositive,     // every defect positive: one component
  NegativeDefect,  // some defect negative: empty intersection
  ZeroDefect,      // count is a mixed volume over the greatest zero-defect subset
};

struct KResult {
  LatticeVolume value = 0;
  KCase kase = KCase::AllPositive;
  // ZeroDefect: the greatest zero-defect subset. NegativeDefect: the first
  // negative subset in bitmask order. AllPositive: empty.
  std::vector<int> j0;
  // ZeroDefect only: basis of the saturated lattice generated by the
  // in-support differences over j0; the mixed volume is taken there.
  std::vector<Covector> lattice_basis;
};

// Number of irreducible components cut out of the torus by general members
// of the systems spanned by these supports. The empty family yields 1 (the
// torus itself).
KResult k_torus(const std::vector<PointSet>& family);

}  // namespace toricount
