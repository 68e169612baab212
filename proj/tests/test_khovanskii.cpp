#include <doctest.h>

#include <algorithm>

#include "support/fixtures.hpp"
#include "toricount/khovanskii.hpp"
#include "toricount/oracle.hpp"

using namespace toricount;
using tf::cv;
using tf::pts;

namespace {

PointSet tri() { return pts(2, {{0, 0}, {1, 0}, {0, 1}}); }
PointSet seg_x() { return pts(2, {{0, 0}, {1, 0}}); }
PointSet seg_y() { return pts(2, {{0, 0}, {0, 1}}); }

PointSet apply_matrix(const PointSet& s, const IntMatrix& u) {
  std::vector<Covector> out;
  for (const auto& p : s.points) {
    IntVec v(s.rank, Int(0));
    for (int j = 0; j < s.rank; ++j)
      for (int i = 0; i < s.rank; ++i) v[j] += p.coords[i] * u.at(i, j);
    out.push_back(Covector{std::move(v)});
  }
  return make_point_set(s.rank, std::move(out));
}

long table_lookup(const std::vector<std::pair<std::vector<int>, long>>& table,
                  const std::vector<int>& subset) {
  for (const auto& [s, d] : table)
    if (s == subset) return d;
  REQUIRE(false);
  return 0;
}

}  // namespace

TEST_SUITE("khovanskii") {

TEST_CASE("defects of known families") {
  std::vector<PointSet> fam{tri(), seg_x(), pts(2, {{3, 3}})};
  CHECK(defect(fam, {0}) == 1);
  CHECK(defect(fam, {1}) == 0);
  CHECK(defect(fam, {2}) == -1);
  CHECK(defect(fam, {0, 1}) == 0);
  CHECK(defect(fam, {0, 1, 2}) == -1);
  CHECK(defect(fam, {1, 1, 0}) == 0);  // duplicates collapse

  CHECK_THROWS_AS(defect(fam, {}), EmptyIndexSet);
  CHECK_THROWS_AS(defect(fam, {3}), ArityMismatch);
  CHECK_THROWS_AS(defect(fam, {-1}), ArityMismatch);
  CHECK_THROWS_AS(defect({tri(), PointSet{2, {}}}, {0}), EmptySupport);
  CHECK_THROWS_AS(defect({tri(), pts(3, {{0, 0, 0}})}, {0}), ArityMismatch);
}

TEST_CASE("defect tables enumerate subsets in bitmask order") {
  std::vector<PointSet> fam{seg_x(), seg_y()};
  auto table = defect_table(fam);
  REQUIRE(table.size() == 3);
  CHECK(table[0].first == std::vector<int>{0});
  CHECK(table[0].second == 0);
  CHECK(table[1].first == std::vector<int>{1});
  CHECK(table[1].second == 0);
  CHECK(table[2].first == std::vector<int>{0, 1});
  CHECK(table[2].second == 0);

  // Every entry agrees with the single-subset computation.
  std::vector<PointSet> fam2{tri(), seg_x(), pts(2, {{0, 0}, {1, 1}})};
  for (const auto& [subset, d] : defect_table(fam2)) CHECK(d == defect(fam2, subset));

  std::vector<PointSet> too_many(21, pts(1, {{0}}));
  CHECK_THROWS_AS(defect_table(too_many), TooManySystems);
  CHECK(defect_table({}).empty());
}

TEST_CASE("greatest zero-defect subset") {
  CHECK(greatest_zero_defect_subset({seg_x(), seg_y()}) == std::vector<int>{0, 1});
  CHECK(greatest_zero_defect_subset({tri(), seg_x()}) == std::vector<int>{0, 1});
  CHECK(greatest_zero_defect_subset({tri(), dilate(tri(), 2)}) == std::vector<int>{0, 1});
  // All defects positive: no zero-defect subset at all.
  CHECK(greatest_zero_defect_subset({tri()}).empty());
  // With a negative defect around, zero-defect subsets need not be closed
  // under union; the union here has defect -1.
  CHECK_THROWS_AS(greatest_zero_defect_subset({seg_x(), seg_y(), tri()}), InvariantViolation);
}

TEST_CASE("torus counts of known families") {
  KResult r = k_torus({});
  CHECK(r.kase == KCase::AllPositive);
  CHECK(r.value == 1);

  r = k_torus({tri()});
  CHECK(r.kase == KCase::AllPositive);
  CHECK(r.value == 1);
  CHECK(r.j0.empty());

  // Two general curves of the same ample class: the mixed volume.
  r = k_torus({tri(), tri()});
  CHECK(r.kase == KCase::ZeroDefect);
  CHECK(r.value == 1);
  CHECK(r.j0 == std::vector<int>{0, 1});

  PointSet two_tri = pts(2, {{0, 0}, {2, 0}, {0, 2}});
  r = k_torus({two_tri, two_tri});
  CHECK(r.kase == KCase::ZeroDefect);
  CHECK(r.value == 4);

  r = k_torus({tri(), pts(2, {{0, 0}, {1, 1}})});
  CHECK(r.kase == KCase::ZeroDefect);
  CHECK(r.value == 2);

  // A single point: negative defect, empty intersection.
  r = k_torus({pts(2, {{5, -2}})});
  CHECK(r.kase == KCase::NegativeDefect);
  CHECK(r.value == 0);
  CHECK(r.j0 == std::vector<int>{0});

  // Two parallel segments: first negative subset in bitmask order is {0,1}.
  r = k_torus({seg_x(), seg_x()});
  CHECK(r.kase == KCase::NegativeDefect);
  CHECK(r.value == 0);
  CHECK(r.j0 == std::vector<int>{0, 1});

  std::vector<PointSet> too_many(21, pts(1, {{0}, {1}}));
  CHECK_THROWS_AS(k_torus(too_many), TooManySystems);
}

TEST_CASE("zero-defect counts live in the saturated difference lattice") {
  // x^2 = c has two roots: the support spans an index-2 sublattice and the
  // count doubles relative to the primitive segment.
  KResult r = k_torus({pts(2, {{0, 0}, {2, 0}})});
  CHECK(r.kase == KCase::ZeroDefect);
  CHECK(r.value == 2);
  REQUIRE(r.lattice_basis.size() == 1);
  CHECK(r.lattice_basis[0] == cv({1, 0}));

  r = k_torus({pts(2, {{0, 0}, {1, 0}})});
  CHECK(r.value == 1);

  // x^2 = a, y^3 = b: six cosets of the trivial subgroup.
  r = k_torus({pts(2, {{0, 0}, {2, 0}}), pts(2, {{0, 0}, {0, 3}})});
  CHECK(r.kase == KCase::ZeroDefect);
  CHECK(r.value == 6);
  CHECK(r.j0 == std::vector<int>{0, 1});
  CHECK(r.lattice_basis.size() == 2);

  // Mixed case: a one-dimensional zero-defect part inside a larger family.
  r = k_torus({seg_x(), tri()});
  CHECK(r.kase == KCase::ZeroDefect);
  CHECK(r.j0 == std::vector<int>{0, 1});
  CHECK(r.value == 1);
}

TEST_CASE("defect tables agree with the elimination oracle") {
  Rng rng(4001);
  for (int t = 0; t < 40; ++t) {
    int rank = static_cast<int>(rng.uniform(1, 3));
    auto family = random_support_family(rng, rank, 4, 4, 3);
    CHECK(defect_table(family) == oracle_defect_table(family));
  }
}

TEST_CASE("torus count invariances") {
  Rng rng(4002);
  for (int t = 0; t < 30; ++t) {
    int rank = static_cast<int>(rng.uniform(1, 3));
    auto family = random_support_family(rng, rank, 4, 4, 3);
    KResult base = k_torus(family);

    // Translating any support individually changes nothing.
    auto translated = family;
    for (auto& s : translated) {
      IntVec off;
      for (int i = 0; i < rank; ++i) off.push_back(Int(rng.uniform(-5, 5)));
      s = translate(s, Covector{off});
    }
    KResult rt = k_torus(translated);
    CHECK(rt.value == base.value);
    CHECK(rt.kase == base.kase);
    CHECK(rt.j0 == base.j0);

    // Reordering the family permutes indices but not the count.
    auto shuffled = family;
    for (size_t i = shuffled.size(); i > 1; --i)
      std::swap(shuffled[i - 1], shuffled[static_cast<size_t>(rng.uniform(0, static_cast<long>(i) - 1))]);
    KResult rp = k_torus(shuffled);
    CHECK(rp.value == base.value);
    CHECK(rp.kase == base.kase);
    // The greatest zero-defect subset is canonical, so its size survives
    // reordering; the first negative subset found is order-dependent.
    if (base.kase == KCase::ZeroDefect) CHECK(rp.j0.size() == base.j0.size());

    // A unimodular change of the character lattice is invisible.
    IntMatrix u = tf::random_unimodular(rng, rank);
    auto twisted = family;
    for (auto& s : twisted) s = apply_matrix(s, u);
    KResult rg = k_torus(twisted);
    CHECK(rg.value == base.value);
    CHECK(rg.kase == base.kase);
    CHECK(rg.j0 == base.j0);
  }
}

TEST_CASE("zero-defect subsets are closed under union") {
  Rng rng(4003);
  int zero_cases = 0;
  for (int t = 0; t < 60; ++t) {
    int rank = static_cast<int>(rng.uniform(1, 3));
    auto family = random_support_family(rng, rank, 4, 4, 3);
    auto table = defect_table(family);
    bool negative = std::any_of(table.begin(), table.end(),
                                [](const auto& e) { return e.second < 0; });
    if (negative) continue;

    std::vector<int> j0 = greatest_zero_defect_subset(family);
    bool any_zero = false;
    for (const auto& [subset, d] : table)
      if (d == 0) {
        any_zero = true;
        // Every zero-defect subset sits inside the union.
        CHECK(std::includes(j0.begin(), j0.end(), subset.begin(), subset.end()));
      }
    if (!any_zero) {
      CHECK(j0.empty());
      continue;
    }
    ++zero_cases;
    CHECK(table_lookup(table, j0) == 0);

    KResult r = k_torus(family);
    CHECK(r.kase == KCase::ZeroDefect);
    CHECK(r.j0 == j0);
    CHECK(r.lattice_basis.size() == j0.size());
  }
  CHECK(zero_cases > 5);
}

}  // TEST_SUITE
