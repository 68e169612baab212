#pragma once

#include <utility>
#include <vector>

#include "toricount/intlin.hpp"

namespace toricount::detail {

Int dot(const IntVec& a, const IntVec& b);

// Divide out the gcd of the entries; the zero vector is left alone.
void make_primitive(IntVec& v);

// Generators of the solution cone {y in R^dim : <a, y> >= 0 for every a in
// constraints}: `lines` is an HNF basis of the lineality space, `rays` are
// the primitive extreme rays modulo lineality, sorted. Computed by the
// incremental double-description method, exactly over Z.
struct DualDescription {
  std::vector<IntVec> lines;
  std::vector<IntVec> rays;
};
DualDescription dual_description(const std::vector<IntVec>& constraints, int dim);

// Facets of the convex hull of a full-dimensional point configuration:
// pairs (a, c) with <a, p> + c >= 0 for all points and equality on the
// facet. Normals are primitive and the list is sorted.
std::vector<std::pair<IntVec, Int>> hull_facets(const std::vector<IntVec>& points, int dim);

// Triangulation of the convex hull of a full-dimensional configuration,
// as (dim+1)-tuples of indices into `points` (which must be deduplicated).
// Simplices are cones from the lexicographically smallest point over a
// recursive triangulation of the facets that avoid it.
std::vector<std::vector<int>> triangulate_full_dim(const std::vector<IntVec>& points, int dim);

}  // namespace toricount::detail
