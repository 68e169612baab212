#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "toricount/eqls.hpp"
#include "toricount/khovanskii.hpp"

namespace toricount {

// Indices of the systems degenerating on each orbit, one sorted list per
// cone id. Between a cone and any of its faces the face's list is contained
// in the cone's.
std::vector<std::vector<int>> degeneracy_profile(const std::vector<SystemDatum>& data,
                                                 const Fan& f);

// d(sigma) = |D(sigma)| - dim sigma, per cone id. Always 0 on the zero cone.
std::vector<long> d_values(const std::vector<std::vector<int>>& profile, const Fan& f);

// Cones whose d-value is at least that of every face (the face relation is
// reflexive, so maximizers of d along face chains). The zero cone is always
// selected.
std::vector<int> selected_cones(const std::vector<long>& dvals, const Fan& f);

// Everything recorded about one orbit while counting.
struct OrbitRecord {
  int cone_id = 0;
  int cone_dim = 0;
  int orbit_dim = 0;            // fan rank - cone dim
  std::vector<int> degenerate;  // D(sigma)
  long d_value = 0;
  bool selected = false;
  // For selected cones only: restriction of each non-degenerate system, the
  // torus count over those restrictions, and its value.
  std::vector<std::pair<int, RestrictedSupport>> restricted;
  std::optional<KResult> k;
  LatticeVolume contribution = 0;
};

struct ComponentReport {
  int rank = 0;
  LatticeVolume total = 0;
  std::vector<OrbitRecord> records;  // one per cone, in cone id order
};

// Number of irreducible components of the intersection of general members
// of the given systems: the sum over selected orbits of the torus count of
// the restricted non-degenerate systems. Data are validated up front
// (InvariantViolation on a bad datum). `threads` > 1 distributes the
// per-orbit work; 0 or 1 runs sequentially.
ComponentReport count_components(const std::vector<SystemDatum>& data, const Fan& f,
                                 int threads = 0);

}  // namespace toricount
