#pragma once

#include <optional>
#include <string>
#include <vector>

#include "toricount/fan.hpp"
#include "toricount/polytope.hpp"

namespace toricount {

// One equivariant linear system on the toric variety of a fan: the subspace
// of sections of the line bundle with support function `psi` spanned by the
// characters in `support`.
struct SystemDatum {
  std::vector<Covector> support;  // sorted, distinct
  SupportFunction psi;
};

// Canonicalizes the character list (sort, dedup); section and compatibility
// checks are left to validate_datum.
SystemDatum make_system_datum(std::vector<Covector> support, SupportFunction psi);

// First defect found, if any: empty or ill-ranked support, malformed Cartier
// data, or a character violating a section inequality at some ray.
struct DatumViolation {
  int point = -1;  // index into `support`, -1 when no single point is at fault
  int ray = -1;    // ray index witnessing the violation, -1 otherwise
  std::string message;
};
std::optional<DatumViolation> validate_datum(const SystemDatum& d, const Fan& f);

// A section restricts to a nonzero function on the orbit of sigma exactly
// when <chi, -> + psi vanishes identically on sigma; the system degenerates
// on that orbit closure when this fails for every character. Checked on the
// extreme rays, which suffices since the function is linear on the cone.
bool degenerates_on(const SystemDatum& d, const Fan& f, int cone_id);

// Restriction to the orbit of a cone, written in coordinates on the
// character lattice of the orbit (the characters orthogonal to the cone).
struct RestrictedSupport {
  Covector witness;             // lex-least character vanishing on the cone
  std::vector<Covector> basis;  // basis of that orthogonal lattice in M
  PointSet points;              // (chi - witness) in `basis` coordinates
};

// Degenerate (as an exception) when the system degenerates on the orbit.
RestrictedSupport restrict_to_orbit(const SystemDatum& d, const Fan& f, int cone_id);

// Translates the support so its lex-least character is the origin, twisting
// psi by that character; section inequalities and all restrictions are
// unchanged.
SystemDatum normalize_datum(const SystemDatum& d, const Fan& f);

}  // namespace toricount
