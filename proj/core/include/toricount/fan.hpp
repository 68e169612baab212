#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "toricount/intlin.hpp"

namespace toricount {

// Strongly convex rational polyhedral cone in N_R. Stored by its primitive
// extreme rays together with an exact halfspace description; constraints
// cutting out the linear span appear as opposite covector pairs, so
// membership is always "every halfspace >= 0".
struct Cone {
  std::vector<LatticeVector> rays;   // primitive extreme rays, sorted
  std::vector<Covector> halfspaces;  // cone = {v : <h, v> >= 0 for all h}
  int dim = 0;

  bool contains(const LatticeVector& v) const;

  friend bool operator==(const Cone& a, const Cone& b) { return a.rays == b.rays; }
};

// Generators may be redundant; they are primitivized, deduplicated and
// reduced to the extreme rays. NotStronglyConvex when they span a line.
Cone build_cone(const std::vector<LatticeVector>& generators, int rank);

// A fan: a finite face-closed collection of strongly convex cones meeting
// along common faces. Cone ids are positions in `cones`, sorted by
// (dimension, ray-index list); the zero cone is always id 0.
struct Fan {
  struct Entry {
    Cone cone;
    std::vector<int> ray_ids;  // sorted indices into `rays`
  };

  int rank = 0;
  std::vector<LatticeVector> rays;  // primitive, pairwise distinct, input order
  std::vector<Entry> cones;
  std::vector<int> maximal_ids;            // inclusion-maximal cones, ascending
  std::vector<std::vector<int>> faces_of;  // per cone id: ids of its faces

  const Entry& entry(int id) const;
  int id_of(const std::vector<int>& sorted_ray_ids) const;  // -1 when absent
  std::optional<int> maximal_containing(const LatticeVector& v) const;
  bool in_support(const LatticeVector& v) const { return maximal_containing(v).has_value(); }
  int zero_cone_id() const { return 0; }
};

// Assembles the fan generated by the listed maximal cones (given as ray
// index lists) plus all their faces. Every listed generator must be an
// extreme ray of its cone and every ray must be used. With `validate` the
// pairwise common-face condition is checked (NotAFan otherwise); skipping it
// leaves malformed input undetected.
Fan build_fan(int rank, std::vector<LatticeVector> rays,
              const std::vector<std::vector<int>>& maximal_cones, bool validate = true);

// All faces of a cone, itself and the zero cone included.
std::vector<int> faces(const Fan& f, int cone_id);

// Support function of an equivariant divisor, as one covector per maximal
// cone; psi(v) = <m_sigma, v> on sigma. Signs follow the convention where
// the divisor of a character chi has support function <chi, ->, so psi of
// an effective divisor is >= 0 on the support.
struct SupportFunction {
  std::map<int, Covector> cartier;  // maximal cone id -> m_sigma
};

// Validates completeness (one datum per maximal cone) and compatibility
// (agreement on shared rays); NotCartier otherwise.
SupportFunction make_support_function(const Fan& f, std::map<int, Covector> cartier);

// Recovers Cartier data from prescribed values at the rays; NotCartier when
// the values are not integrally linear on some maximal cone.
SupportFunction support_from_ray_values(const Fan& f, const std::vector<Int>& values);

Int evaluate_support(const SupportFunction& psi, const Fan& f, const LatticeVector& v);
std::vector<Int> ray_values(const SupportFunction& psi, const Fan& f);
bool is_effective(const SupportFunction& psi, const Fan& f);

SupportFunction add_support(const Fan& f, const SupportFunction& a, const SupportFunction& b);
SupportFunction scale_support(const Fan& f, const SupportFunction& a, const Int& c);

// Characters chi with <chi, v> + psi(v) >= 0 on the whole support, i.e. the
// lattice points of the section polyhedron. When that polyhedron is bounded
// `characters` is the full list; otherwise it holds the solutions in the
// box |chi_i| <= bound and `bounded` is false.
struct SectionEnumeration {
  std::vector<std::pair<LatticeVector, Int>> inequalities;  // <chi, v> + c >= 0
  bool bounded = false;
  std::vector<Covector> characters;
};
SectionEnumeration global_section_characters(const SupportFunction& psi, const Fan& f,
                                             const Int& bound);

// Star of a cone tau: the fan {sigma/tau : tau a face of sigma} in the
// quotient lattice N / (span(tau) cap N). `projection` maps row vectors of N
// to the quotient; `covector_projection` maps characters orthogonal to tau.
struct StarFan {
  Fan fan;
  IntMatrix projection;           // rank x (rank - dim tau)
  IntMatrix covector_projection;  // rank x (rank - dim tau)
  std::map<int, int> cone_map;    // star cone id in the source fan -> quotient id
};

StarFan quotient_star_fan(const Fan& f, int tau_id);
LatticeVector project_vector(const StarFan& star, const LatticeVector& v);

// Transports psi to the star fan; requires psi to vanish on tau
// (QuotientUndefined otherwise).
SupportFunction quotient_support(const SupportFunction& psi, const Fan& f, int tau_id,
                                 const StarFan& star);

}  // namespace toricount
