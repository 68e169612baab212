#pragma once

// Programmatic copies of the fixture varieties plus generators for random
// fans and random valid systems, shared across the test suites.

#include <utility>
#include <vector>

#include "toricount/counting.hpp"
#include "toricount/oracle.hpp"

namespace tf {

using namespace toricount;

inline LatticeVector lv(std::vector<long> v) {
  IntVec c;
  for (long x : v) c.push_back(Int(x));
  return LatticeVector{std::move(c)};
}

inline Covector cv(std::vector<long> v) {
  IntVec c;
  for (long x : v) c.push_back(Int(x));
  return Covector{std::move(c)};
}

inline std::vector<Int> ints(std::vector<long> v) {
  std::vector<Int> c;
  for (long x : v) c.push_back(Int(x));
  return c;
}

inline PointSet pts(int rank, std::vector<std::vector<long>> v) {
  std::vector<Covector> p;
  for (auto& x : v) p.push_back(cv(x));
  return make_point_set(rank, std::move(p));
}

inline Fan projective_line() { return build_fan(1, {lv({1}), lv({-1})}, {{0}, {1}}); }

inline Fan projective_plane() {
  return build_fan(2, {lv({1, 0}), lv({0, 1}), lv({-1, -1})}, {{0, 1}, {1, 2}, {0, 2}});
}

inline Fan affine_plane() { return build_fan(2, {lv({1, 0}), lv({0, 1})}, {{0, 1}}); }

inline Fan p1_times_p1() {
  return build_fan(2, {lv({1, 0}), lv({-1, 0}), lv({0, 1}), lv({0, -1})},
                   {{0, 2}, {0, 3}, {1, 2}, {1, 3}});
}

inline Fan hirzebruch(long a) {
  return build_fan(2, {lv({1, 0}), lv({0, 1}), lv({-1, a}), lv({0, -1})},
                   {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
}

inline Fan torus_fan(int rank) { return build_fan(rank, {}, {{}}); }

inline Fan affine_space(int rank) {
  std::vector<LatticeVector> rays;
  std::vector<int> top;
  for (int i = 0; i < rank; ++i) {
    IntVec v(rank, Int(0));
    v[i] = 1;
    rays.push_back(LatticeVector{std::move(v)});
    top.push_back(i);
  }
  return build_fan(rank, std::move(rays), {top});
}

// Random unimodular matrix: a short word in elementary row operations.
inline IntMatrix random_unimodular(Rng& rng, int n, int steps = 6) {
  IntMatrix u = IntMatrix::identity(n);
  for (int s = 0; s < steps && n > 1; ++s) {
    int i = static_cast<int>(rng.uniform(0, n - 1));
    int j = static_cast<int>(rng.uniform(0, n - 1));
    if (i == j) {
      for (int c = 0; c < n; ++c) u.at(i, c) = -u.at(i, c);
      continue;
    }
    Int f(rng.uniform(-2, 2));
    for (int c = 0; c < n; ++c) u.at(i, c) += f * u.at(j, c);
  }
  return u;
}

struct RandomProblem {
  Fan fan;
  std::vector<SystemDatum> data;
};

// A random valid input: one of the smooth model fans, rays twisted by a
// unimodular map, a random nonempty subset of its maximal cones, and
// systems assembled from honest global sections of random effective
// divisors (so validation always passes by construction).
inline RandomProblem random_problem(Rng& rng, int max_systems = 3) {
  Fan base;
  switch (rng.uniform(0, 6)) {
    case 0: base = projective_line(); break;
    case 1: base = projective_plane(); break;
    case 2: base = affine_plane(); break;
    case 3: base = p1_times_p1(); break;
    case 4: base = hirzebruch(rng.uniform(0, 2)); break;
    case 5: base = torus_fan(static_cast<int>(rng.uniform(1, 3))); break;
    default: base = affine_space(static_cast<int>(rng.uniform(1, 3))); break;
  }

  std::vector<std::vector<int>> chosen;
  for (int id : base.maximal_ids)
    if (chosen.empty() || rng.uniform(0, 2) > 0) chosen.push_back(base.cones[id].ray_ids);

  // Keep only the rays the chosen cones use, reindexed densely.
  std::vector<int> ray_index(base.rays.size(), -1);
  IntMatrix u = random_unimodular(rng, base.rank);
  std::vector<LatticeVector> rays;
  std::vector<std::vector<int>> maximal;
  for (const auto& cone : chosen) {
    std::vector<int> ids;
    for (int r : cone) {
      if (ray_index[r] < 0) {
        ray_index[r] = static_cast<int>(rays.size());
        IntVec v(base.rank, Int(0));
        for (int i = 0; i < base.rank; ++i)
          for (int j = 0; j < base.rank; ++j) v[i] += u.at(i, j) * base.rays[r].coords[j];
        rays.push_back(LatticeVector{std::move(v)});
      }
      ids.push_back(ray_index[r]);
    }
    maximal.push_back(std::move(ids));
  }
  Fan fan = build_fan(base.rank, std::move(rays), maximal);

  RandomProblem out{std::move(fan), {}};
  int m = static_cast<int>(rng.uniform(1, max_systems));
  for (int s = 0; s < m; ++s) {
    std::vector<Int> values;
    for (size_t r = 0; r < out.fan.rays.size(); ++r) values.push_back(Int(rng.uniform(0, 2)));
    SupportFunction psi = support_from_ray_values(out.fan, values);
    SectionEnumeration sections = global_section_characters(psi, out.fan, 2);
    std::vector<Covector> support;
    support.push_back(cv(std::vector<long>(out.fan.rank, 0)));  // 0 is always a section
    for (const auto& chi : sections.characters)
      if (rng.uniform(0, 2) == 0) support.push_back(chi);
    out.data.push_back(make_system_datum(std::move(support), std::move(psi)));
  }
  return out;
}

}  // namespace tf
