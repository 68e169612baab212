#include "toricount/khovanskii.hpp"

#include <algorithm>

namespace toricount {

namespace {

void check_family(const std::vector<PointSet>& family) {
  for (size_t i = 0; i < family.size(); ++i) {
    if (family[i].points.empty())
      throw EmptySupport("support " + std::to_string(i) + " is empty");
    if (family[i].rank != family[0].rank)
      throw ArityMismatch("supports live in lattices of different ranks");
  }
}

// In-support difference vectors relative to the lex-least point; their span
// is the linear part of the affine span of the support.
std::vector<IntVec> differences(const PointSet& s) {
  std::vector<IntVec> out;
  const Covector& base = s.points.front();
  for (size_t i = 1; i < s.points.size(); ++i) {
    IntVec d(s.rank);
    for (int j = 0; j < s.rank; ++j) d[j] = s.points[i].coords[j] - base.coords[j];
    out.push_back(std::move(d));
  }
  return out;
}

long defect_by_rank(const std::vector<std::vector<IntVec>>& diffs, int rank, unsigned mask) {
  std::vector<IntVec> stacked;
  long count = 0;
  for (size_t j = 0; j < diffs.size(); ++j)
    if (mask >> j & 1u) {
      ++count;
      stacked.insert(stacked.end(), diffs[j].begin(), diffs[j].end());
    }
  return detail::rank_rows(stacked, rank) - count;
}

std::vector<int> mask_to_subset(unsigned mask, size_t m) {
  std::vector<int> out;
  for (size_t j = 0; j < m; ++j)
    if (mask >> j & 1u) out.push_back(static_cast<int>(j));
  return out;
}

}  // namespace

long defect(const std::vector<PointSet>& family, const std::vector<int>& subset) {
  if (subset.empty()) throw EmptyIndexSet("defect of the empty index set");
  check_family(family);
  std::vector<int> idx = subset;
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  PointSet sum;
  for (size_t k = 0; k < idx.size(); ++k) {
    if (idx[k] < 0 || idx[k] >= static_cast<int>(family.size()))
      throw ArityMismatch("support index out of range");
    sum = k == 0 ? family[idx[k]] : minkowski_sum(sum, family[idx[k]]);
  }
  return affine_dim(sum) - static_cast<long>(idx.size());
}

std::vector<std::pair<std::vector<int>, long>> defect_table(const std::vector<PointSet>& family) {
  check_family(family);
  const size_t m = family.size();
  if (m > 20) throw TooManySystems("defect table over more than 20 supports");
  std::vector<std::vector<IntVec>> diffs;
  for (const auto& s : family) diffs.push_back(differences(s));
  const int rank = family.empty() ? 0 : family[0].rank;
  std::vector<std::pair<std::vector<int>, long>> out;
  for (unsigned mask = 1; mask < (1u << m); ++mask)
    out.emplace_back(mask_to_subset(mask, m), defect_by_rank(diffs, rank, mask));
  return out;
}

std::vector<int> greatest_zero_defect_subset(const std::vector<PointSet>& family) {
  std::vector<bool> in_union(family.size(), false);
  bool any = false;
  for (const auto& [subset, d] : defect_table(family))
    if (d == 0) {
      any = true;
      for (int j : subset) in_union[j] = true;
    }
  std::vector<int> j0;
  for (size_t j = 0; j < family.size(); ++j)
    if (in_union[j]) j0.push_back(static_cast<int>(j));
  if (any && defect(family, j0) != 0)
    throw InvariantViolation("zero-defect subsets are not closed under union here");
  return j0;
}

KResult k_torus(const std::vector<PointSet>& family) {
  if (family.empty()) return KResult{1, KCase::AllPositive, {}, {}};
  check_family(family);
  const size_t m = family.size();
  if (m > 20) throw TooManySystems("counting over more than 20 systems on one orbit");
  const int rank = family[0].rank;

  std::vector<std::vector<IntVec>> diffs;
  for (const auto& s : family) diffs.push_back(differences(s));

  std::vector<bool> in_union(m, false);
  bool any_zero = false;
  for (unsigned mask = 1; mask < (1u << m); ++mask) {
    long d = defect_by_rank(diffs, rank, mask);
    if (d < 0) return KResult{0, KCase::NegativeDefect, mask_to_subset(mask, m), {}};
    if (d == 0) {
      any_zero = true;
      for (size_t j = 0; j < m; ++j)
        if (mask >> j & 1u) in_union[j] = true;
    }
  }
  if (!any_zero) return KResult{1, KCase::AllPositive, {}, {}};

  KResult res;
  res.kase = KCase::ZeroDefect;
  for (size_t j = 0; j < m; ++j)
    if (in_union[j]) res.j0.push_back(static_cast<int>(j));

  std::vector<Covector> gens;
  for (int j : res.j0)
    for (const IntVec& d : diffs[j]) gens.push_back(Covector{d});
  res.lattice_basis = saturate(gens, rank);
  if (res.lattice_basis.size() != res.j0.size())
    throw InvariantViolation("zero-defect union has the wrong span dimension");

  std::vector<PointSet> restricted;
  for (int j : res.j0) {
    std::vector<Covector> pts;
    pts.push_back(Covector{IntVec(res.j0.size(), Int(0))});
    for (const IntVec& d : diffs[j])
      pts.push_back(Covector{coordinates_in_sublattice(Covector{d}, res.lattice_basis)});
    restricted.push_back(make_point_set(static_cast<int>(res.j0.size()), std::move(pts)));
  }
  res.value = mixed_volume(restricted);
  return res;
}

}  // namespace toricount
