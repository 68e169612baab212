#include <doctest.h>

#include <algorithm>
#include <set>

#include "support/fixtures.hpp"
#include "support/fm_oracle.hpp"
#include "toricount/fan.hpp"
#include "toricount/oracle.hpp"

using namespace toricount;
using tf::cv;
using tf::ints;
using tf::lv;

namespace {

// All grid points of [-box, box]^rank, for exhaustive membership checks.
std::vector<IntVec> grid(int rank, long box) {
  std::vector<IntVec> out{{}};
  for (int i = 0; i < rank; ++i) {
    std::vector<IntVec> next;
    for (const auto& p : out)
      for (long v = -box; v <= box; ++v) {
        IntVec q = p;
        q.push_back(Int(v));
        next.push_back(std::move(q));
      }
    out = std::move(next);
  }
  return out;
}

}  // namespace

TEST_SUITE("fan") {

TEST_CASE("cones reduce generators to primitive extreme rays") {
  Cone c = build_cone({lv({1, 0}), lv({0, 1}), lv({1, 1})}, 2);
  CHECK(c.dim == 2);
  REQUIRE(c.rays.size() == 2);
  CHECK(c.rays[0] == lv({0, 1}));
  CHECK(c.rays[1] == lv({1, 0}));

  c = build_cone({lv({2, 2}), lv({1, 1}), lv({3, 0}), lv({0, 0})}, 2);
  REQUIRE(c.rays.size() == 2);
  CHECK(c.rays[0] == lv({1, 0}));
  CHECK(c.rays[1] == lv({1, 1}));
  CHECK(c.dim == 2);

  Cone zero = build_cone({}, 2);
  CHECK(zero.dim == 0);
  CHECK(zero.rays.empty());
  CHECK(zero.contains(lv({0, 0})));
  CHECK(!zero.contains(lv({1, 0})));

  Cone ray = build_cone({lv({4, 6})}, 2);
  CHECK(ray.dim == 1);
  REQUIRE(ray.rays.size() == 1);
  CHECK(ray.rays[0] == lv({2, 3}));
  CHECK(ray.contains(lv({4, 6})));
  CHECK(!ray.contains(lv({-2, -3})));
  CHECK(!ray.contains(lv({2, 4})));

  CHECK_THROWS_AS(build_cone({lv({1, 0}), lv({-1, 0})}, 2), NotStronglyConvex);
  CHECK_THROWS_AS(build_cone({lv({1, 0}), lv({-1, 1}), lv({0, -1})}, 2), NotStronglyConvex);
  CHECK_THROWS_AS(build_cone({lv({1})}, 2), ArityMismatch);
}

TEST_CASE("cone membership matches a Fourier-Motzkin oracle") {
  Rng rng(2001);
  int pointed_seen = 0, line_seen = 0;
  for (int t = 0; t < 70; ++t) {
    int rank = static_cast<int>(rng.uniform(2, 3));
    int k = static_cast<int>(rng.uniform(0, 4));
    std::vector<LatticeVector> gens;
    std::vector<IntVec> raw;
    for (int i = 0; i < k; ++i) {
      IntVec v;
      for (int j = 0; j < rank; ++j) v.push_back(Int(rng.uniform(-3, 3)));
      raw.push_back(v);
      gens.push_back(LatticeVector{std::move(v)});
    }

    auto ineqs = tf::fm_cone_inequalities(raw, rank);
    // The cone contains a line exactly when the inequalities share a kernel.
    bool has_line =
        !ineqs.empty() && rank_of(IntMatrix::from_rows(ineqs, rank)) < rank;
    if (ineqs.empty()) has_line = rank > 0;  // no constraints: the whole space

    if (has_line) {
      ++line_seen;
      CHECK_THROWS_AS(build_cone(gens, rank), NotStronglyConvex);
      continue;
    }

    ++pointed_seen;
    Cone c = build_cone(gens, rank);
    for (const auto& x : grid(rank, rank == 2 ? 3 : 2))
      CHECK(c.contains(LatticeVector{x}) == tf::fm_contains(ineqs, x));

    // Stored rays really are extreme: dropping one shrinks the cone.
    CHECK(build_cone(c.rays, rank) == c);
    if (c.rays.size() >= 2)
      for (size_t i = 0; i < c.rays.size(); ++i) {
        std::vector<LatticeVector> others;
        for (size_t j = 0; j < c.rays.size(); ++j)
          if (j != i) others.push_back(c.rays[j]);
        CHECK(!build_cone(others, rank).contains(c.rays[i]));
      }
  }
  CHECK(pointed_seen > 10);
  CHECK(line_seen > 5);
}

TEST_CASE("fans of the model varieties") {
  Fan p2 = tf::projective_plane();
  CHECK(p2.rank == 2);
  CHECK(p2.cones.size() == 7);
  CHECK(p2.maximal_ids.size() == 3);
  CHECK(p2.cones[0].cone.dim == 0);
  CHECK(p2.zero_cone_id() == 0);

  Fan f1 = tf::hirzebruch(1);
  CHECK(f1.cones.size() == 9);
  CHECK(f1.maximal_ids.size() == 4);

  Fan p1p1 = tf::p1_times_p1();
  CHECK(p1p1.cones.size() == 9);

  Fan p1 = tf::projective_line();
  CHECK(p1.cones.size() == 3);
  CHECK(p1.maximal_ids == std::vector<int>{1, 2});

  // Complete fans support every vector; the affine plane does not.
  for (const auto& x : grid(2, 2)) {
    CHECK(p2.in_support(LatticeVector{x}));
    CHECK(p1p1.in_support(LatticeVector{x}));
  }
  Fan a2 = tf::affine_plane();
  CHECK(a2.in_support(lv({2, 3})));
  CHECK(a2.in_support(lv({0, 0})));
  CHECK(!a2.in_support(lv({-1, 0})));
  CHECK(!a2.maximal_containing(lv({0, -2})).has_value());
}

TEST_CASE("cone ids, faces and lookups") {
  Fan p2 = tf::projective_plane();
  CHECK(p2.id_of({}) == 0);
  int r0 = p2.id_of({0});
  int top = p2.id_of({0, 1});
  REQUIRE(r0 > 0);
  REQUIRE(top > 0);
  CHECK(p2.id_of({0, 1, 2}) == -1);
  CHECK_THROWS_AS(p2.entry(99), UnknownCone);
  CHECK_THROWS_AS(faces(p2, -1), UnknownCone);

  std::vector<int> fs = faces(p2, top);
  CHECK(fs.size() == 4);  // zero cone, two rays, itself
  CHECK(std::find(fs.begin(), fs.end(), 0) != fs.end());
  CHECK(std::find(fs.begin(), fs.end(), r0) != fs.end());
  CHECK(std::find(fs.begin(), fs.end(), top) != fs.end());
  CHECK(faces(p2, 0) == std::vector<int>{0});

  // Every face list is closed under taking faces.
  for (size_t id = 0; id < p2.cones.size(); ++id)
    for (int f : faces(p2, static_cast<int>(id)))
      for (int g : faces(p2, f))
        CHECK(std::find(p2.faces_of[id].begin(), p2.faces_of[id].end(), g) !=
              p2.faces_of[id].end());
}

TEST_CASE("malformed fans are rejected") {
  // Non-primitive and duplicate rays.
  CHECK_THROWS_AS(build_fan(2, {lv({2, 0}), lv({0, 1})}, {{0, 1}}), NotAFan);
  CHECK_THROWS_AS(build_fan(2, {lv({1, 0}), lv({1, 0})}, {{0, 1}}), NotAFan);
  // Unused ray.
  CHECK_THROWS_AS(build_fan(2, {lv({1, 0}), lv({0, 1}), lv({-1, -1})}, {{0, 1}}), NotAFan);
  // A listed generator that is not an extreme ray of its cone.
  CHECK_THROWS_AS(
      build_fan(2, {lv({1, 0}), lv({0, 1}), lv({1, 1})}, {{0, 1, 2}}), NotAFan);
  // Two maximal cones overlapping in more than a common face.
  CHECK_THROWS_AS(
      build_fan(2, {lv({1, 0}), lv({0, 1}), lv({1, 1})}, {{0, 1}, {0, 2}}), NotAFan);
  // A listed cone that is not strongly convex.
  CHECK_THROWS_AS(build_fan(2, {lv({1, 0}), lv({-1, 0})}, {{0, 1}}), NotStronglyConvex);

  // Skipping validation accepts the overlapping pair (and documents that the
  // result is garbage-in garbage-out).
  Fan bad = build_fan(2, {lv({1, 0}), lv({0, 1}), lv({1, 1})}, {{0, 1}, {0, 2}}, false);
  CHECK(bad.maximal_ids.size() == 2);
}

TEST_CASE("support functions from Cartier data") {
  Fan p2 = tf::projective_plane();
  SupportFunction psi = support_from_ray_values(p2, ints({0, 0, 1}));

  CHECK(evaluate_support(psi, p2, lv({1, 0})) == 0);
  CHECK(evaluate_support(psi, p2, lv({0, 1})) == 0);
  CHECK(evaluate_support(psi, p2, lv({-1, -1})) == 1);
  CHECK(evaluate_support(psi, p2, lv({-2, -1})) == 2);
  CHECK(evaluate_support(psi, p2, lv({3, 5})) == 0);
  CHECK(ray_values(psi, p2) == ints({0, 0, 1}));
  CHECK(is_effective(psi, p2));

  SupportFunction neg = support_from_ray_values(p2, ints({0, 0, -1}));
  CHECK(!is_effective(neg, p2));

  SupportFunction sum = add_support(p2, psi, psi);
  CHECK(evaluate_support(sum, p2, lv({-2, -1})) == 4);
  SupportFunction tripled = scale_support(p2, psi, 3);
  CHECK(ray_values(tripled, p2) == ints({0, 0, 3}));

  Fan a2 = tf::affine_plane();
  SupportFunction zero = support_from_ray_values(a2, ints({0, 0}));
  CHECK_THROWS_AS(evaluate_support(zero, a2, lv({-1, 0})), OutsideSupport);
}

TEST_CASE("incompatible or incomplete Cartier data is rejected") {
  Fan p2 = tf::projective_plane();
  REQUIRE(p2.maximal_ids.size() == 3);
  int c01 = p2.id_of({0, 1});
  int c02 = p2.id_of({0, 2});
  int c12 = p2.id_of({1, 2});

  // Missing one maximal cone.
  CHECK_THROWS_AS(make_support_function(
                      p2, {{c01, cv({0, 0})}, {c02, cv({0, -1})}}),
                  NotCartier);
  // Datum for a non-maximal cone.
  CHECK_THROWS_AS(make_support_function(p2, {{c01, cv({0, 0})},
                                             {c02, cv({0, -1})},
                                             {c12, cv({-1, 0})},
                                             {0, cv({0, 0})}}),
                  NotCartier);
  // Disagreement on the shared ray e2 of c01 and c12.
  CHECK_THROWS_AS(make_support_function(p2, {{c01, cv({0, 0})},
                                             {c02, cv({0, -1})},
                                             {c12, cv({-1, 5})}}),
                  NotCartier);
  // Wrong rank.
  CHECK_THROWS_AS(make_support_function(
                      p2, {{c01, cv({0})}, {c02, cv({0})}, {c12, cv({0})}}),
                  NotCartier);

  // Ray values that are linear but not integrally linear on a singular cone.
  Fan quadric = build_fan(2, {lv({1, 0}), lv({1, 2})}, {{0, 1}});
  CHECK_THROWS_AS(support_from_ray_values(quadric, ints({1, 0})), NotCartier);
  CHECK(ray_values(support_from_ray_values(quadric, ints({1, 1})), quadric) == ints({1, 1}));

  CHECK_THROWS_AS(support_from_ray_values(p2, ints({0, 0})), ArityMismatch);
}

TEST_CASE("global sections") {
  Fan p1 = tf::projective_line();
  SectionEnumeration s = global_section_characters(
      support_from_ray_values(p1, ints({0, 2})), p1, 10);
  CHECK(s.bounded);
  REQUIRE(s.characters.size() == 3);
  CHECK(s.characters[0] == cv({0}));
  CHECK(s.characters[1] == cv({1}));
  CHECK(s.characters[2] == cv({2}));
  CHECK(s.inequalities.size() == 2);

  Fan p2 = tf::projective_plane();
  s = global_section_characters(support_from_ray_values(p2, ints({0, 0, 1})), p2, 10);
  CHECK(s.bounded);
  REQUIRE(s.characters.size() == 3);
  CHECK(s.characters[0] == cv({0, 0}));
  CHECK(s.characters[1] == cv({0, 1}));
  CHECK(s.characters[2] == cv({1, 0}));

  // Twice the divisor: the dilated triangle has 6 lattice points.
  s = global_section_characters(support_from_ray_values(p2, ints({0, 0, 2})), p2, 10);
  CHECK(s.characters.size() == 6);

  // Affine plane, trivial divisor: unbounded section polyhedron, clipped to
  // the requested box.
  Fan a2 = tf::affine_plane();
  s = global_section_characters(support_from_ray_values(a2, ints({0, 0})), a2, 1);
  CHECK(!s.bounded);
  CHECK(s.characters.size() == 4);  // {0,1}^2

  // Ineffective divisor on P^1: no sections at all.
  s = global_section_characters(support_from_ray_values(p1, ints({-1, 0})), p1, 10);
  CHECK(s.bounded);
  CHECK(s.characters.empty());
}

TEST_CASE("section counts are invariant under unimodular change of lattice") {
  Rng rng(2002);
  for (int t = 0; t < 20; ++t) {
    Fan base = t % 2 ? tf::projective_plane() : tf::hirzebruch(1);
    IntMatrix u = tf::random_unimodular(rng, base.rank);
    std::vector<LatticeVector> rays;
    for (const auto& r : base.rays) {
      IntVec v(base.rank, Int(0));
      for (int i = 0; i < base.rank; ++i)
        for (int j = 0; j < base.rank; ++j) v[i] += u.at(i, j) * r.coords[j];
      rays.push_back(LatticeVector{std::move(v)});
    }
    std::vector<std::vector<int>> maximal;
    for (int id : base.maximal_ids) maximal.push_back(base.cones[id].ray_ids);
    Fan twisted = build_fan(base.rank, std::move(rays), maximal);

    CHECK(twisted.cones.size() == base.cones.size());
    CHECK(twisted.maximal_ids.size() == base.maximal_ids.size());

    std::vector<Int> values;
    for (size_t i = 0; i < base.rays.size(); ++i) values.push_back(Int(rng.uniform(0, 3)));
    auto sa = global_section_characters(support_from_ray_values(base, values), base, 50);
    auto sb = global_section_characters(support_from_ray_values(twisted, values), twisted, 50);
    CHECK(sa.bounded == sb.bounded);
    CHECK(sa.characters.size() == sb.characters.size());
  }
}

TEST_CASE("star quotients") {
  Fan p2 = tf::projective_plane();
  int tau = p2.id_of({0});  // the ray through e1
  REQUIRE(tau > 0);
  StarFan star = quotient_star_fan(p2, tau);

  CHECK(star.fan.rank == 1);
  CHECK(star.fan.maximal_ids.size() == 2);
  std::set<Int> quotient_rays;
  for (const auto& r : star.fan.rays) quotient_rays.insert(r.coords[0]);
  CHECK(quotient_rays == std::set<Int>{Int(1), Int(-1)});

  // tau itself becomes the zero cone; the two top cones become the rays.
  CHECK(star.cone_map.size() == 3);
  CHECK(star.cone_map.at(tau) == 0);

  CHECK(project_vector(star, lv({1, 0})) == lv({0}));
  LatticeVector e2_image = project_vector(star, lv({0, 1}));
  CHECK(abs(e2_image.coords[0]) == 1);

  CHECK(star.projection.rows() == 2);
  CHECK(star.projection.cols() == 1);

  CHECK_THROWS_AS(quotient_star_fan(p2, 42), UnknownCone);
}

TEST_CASE("quotient by the zero cone changes nothing") {
  Fan f1 = tf::hirzebruch(1);
  StarFan star = quotient_star_fan(f1, 0);
  CHECK(star.fan.rank == 2);
  CHECK(star.fan.cones.size() == f1.cones.size());
  CHECK(star.fan.rays.size() == f1.rays.size());
  CHECK(star.projection.rows() == 2);
  CHECK(star.projection.cols() == 2);
  for (size_t i = 0; i < f1.cones.size(); ++i) CHECK(star.cone_map.count(static_cast<int>(i)));
}

TEST_CASE("quotient by a top-dimensional cone is the trivial fan") {
  Fan a2 = tf::affine_plane();
  int top = a2.id_of({0, 1});
  StarFan star = quotient_star_fan(a2, top);
  CHECK(star.fan.rank == 0);
  CHECK(star.fan.cones.size() == 1);
  CHECK(star.fan.rays.empty());

  // Sections of the trivial support function on the point: one character.
  SupportFunction zero = support_from_ray_values(a2, ints({0, 0}));
  SupportFunction q = quotient_support(zero, a2, top, star);
  SectionEnumeration s = global_section_characters(q, star.fan, 3);
  CHECK(s.bounded);
  REQUIRE(s.characters.size() == 1);
  CHECK(s.characters[0].rank() == 0);
}

TEST_CASE("support functions descend to star quotients") {
  Fan p2 = tf::projective_plane();
  SupportFunction psi = support_from_ray_values(p2, ints({0, 0, 1}));

  int tau = p2.id_of({0});
  StarFan star = quotient_star_fan(p2, tau);
  SupportFunction q = quotient_support(psi, p2, tau, star);
  // Restricting O(1) on P^2 to an invariant line leaves a degree-1 divisor
  // on P^1: two sections.
  SectionEnumeration s = global_section_characters(q, star.fan, 10);
  CHECK(s.bounded);
  CHECK(s.characters.size() == 2);

  // psi does not vanish on the ray through (-1,-1), so no quotient there.
  int bad_tau = p2.id_of({2});
  StarFan bad_star = quotient_star_fan(p2, bad_tau);
  CHECK_THROWS_AS(quotient_support(psi, p2, bad_tau, bad_star), QuotientUndefined);
}

}  // TEST_SUITE
