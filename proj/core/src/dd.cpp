#include "toricount/detail/dd.hpp"

#include <algorithm>
#include <cstdint>

namespace toricount::detail {

Int dot(const IntVec& a, const IntVec& b) {
  if (a.size() != b.size()) throw ArityMismatch("dot of vectors of different length");
  Int s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void make_primitive(IntVec& v) {
  Int g = 0;
  for (const Int& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  if (g <= 1) return;
  for (Int& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

namespace {

struct Ray {
  IntVec v;
  std::vector<uint64_t> tight;  // bit i set <=> constraint i holds with equality
};

bool tight_subset(const std::vector<uint64_t>& a, const std::vector<uint64_t>& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] & ~b[i]) return false;
  return true;
}

}  // namespace

DualDescription dual_description(const std::vector<IntVec>& constraints, int dim) {
  const int m = static_cast<int>(constraints.size());
  const size_t words = static_cast<size_t>((m + 63) / 64);
  for (const auto& a : constraints)
    if (static_cast<int>(a.size()) != dim) throw ArityMismatch("constraint of wrong rank");

  // Start from all of R^dim and cut one halfspace at a time, maintaining the
  // lineality basis and the extreme rays modulo lineality.
  std::vector<IntVec> lines;
  for (int i = 0; i < dim; ++i) {
    IntVec e(dim, Int(0));
    e[i] = 1;
    lines.push_back(std::move(e));
  }
  std::vector<Ray> rays;

  for (int k = 0; k < m; ++k) {
    const IntVec& a = constraints[k];
    const int word = k / 64;
    const uint64_t bit = uint64_t(1) << (k % 64);

    int l0 = -1;
    for (size_t i = 0; i < lines.size(); ++i)
      if (dot(a, lines[i]) != 0) {
        l0 = static_cast<int>(i);
        break;
      }

    if (l0 >= 0) {
      // The constraint cuts the lineality space: one line becomes a ray, the
      // remaining lines and all rays are projected into {a = 0}.
      IntVec piv = lines[l0];
      Int dp = dot(a, piv);
      if (dp < 0) {
        for (Int& x : piv) x = -x;
        dp = -dp;
      }
      lines.erase(lines.begin() + l0);
      for (IntVec& l : lines) {
        Int dl = dot(a, l);
        for (int j = 0; j < dim; ++j) l[j] = dp * l[j] - dl * piv[j];
        make_primitive(l);
      }
      for (Ray& r : rays) {
        Int dr = dot(a, r.v);
        for (int j = 0; j < dim; ++j) r.v[j] = dp * r.v[j] - dr * piv[j];
        make_primitive(r.v);
        r.tight[word] |= bit;  // now on the hyperplane
      }
      Ray nr;
      nr.v = std::move(piv);
      nr.tight.assign(words, 0);
      for (int j = 0; j < k; ++j) nr.tight[j / 64] |= uint64_t(1) << (j % 64);
      rays.push_back(std::move(nr));
      continue;
    }

    // The constraint vanishes on the lineality space: classic ray step.
    std::vector<Int> val(rays.size());
    std::vector<int> pos, neg;
    for (size_t i = 0; i < rays.size(); ++i) {
      val[i] = dot(a, rays[i].v);
      if (val[i] > 0)
        pos.push_back(static_cast<int>(i));
      else if (val[i] < 0)
        neg.push_back(static_cast<int>(i));
      else
        rays[i].tight[word] |= bit;
    }
    if (neg.empty()) continue;

    std::vector<Ray> next;
    next.reserve(rays.size());
    for (size_t i = 0; i < rays.size(); ++i)
      if (val[i] >= 0) next.push_back(rays[i]);
    for (int p : pos)
      for (int q : neg) {
        // Keep only combinations along edges: p and q are adjacent iff no
        // third extreme ray is tight on every constraint tight at both.
        std::vector<uint64_t> common(words);
        for (size_t w = 0; w < words; ++w) common[w] = rays[p].tight[w] & rays[q].tight[w];
        bool adjacent = true;
        for (size_t r = 0; r < rays.size(); ++r) {
          if (static_cast<int>(r) == p || static_cast<int>(r) == q) continue;
          if (tight_subset(common, rays[r].tight)) {
            adjacent = false;
            break;
          }
        }
        if (!adjacent) continue;
        Ray nr;
        nr.v.resize(dim);
        for (int j = 0; j < dim; ++j) nr.v[j] = val[p] * rays[q].v[j] - val[q] * rays[p].v[j];
        make_primitive(nr.v);
        nr.tight = std::move(common);
        nr.tight[word] |= bit;
        next.push_back(std::move(nr));
      }
    rays = std::move(next);
  }

  DualDescription out;
  for (Ray& r : rays) out.rays.push_back(std::move(r.v));
  std::sort(out.rays.begin(), out.rays.end(),
            [](const IntVec& x, const IntVec& y) { return compare_vec(x, y) < 0; });
  out.rays.erase(std::unique(out.rays.begin(), out.rays.end()), out.rays.end());
  if (!lines.empty()) {
    IntMatrix h = hermite_normal_form(IntMatrix::from_rows(lines, dim)).h;
    out.lines.clear();
    for (size_t i = 0; i < lines.size(); ++i) out.lines.push_back(h.row(static_cast<int>(i)));
  }
  return out;
}

std::vector<std::pair<IntVec, Int>> hull_facets(const std::vector<IntVec>& points, int dim) {
  if (points.empty()) throw EmptySet("hull of no points");
  std::vector<IntVec> constraints;
  constraints.reserve(points.size());
  for (const auto& p : points) {
    if (static_cast<int>(p.size()) != dim) throw ArityMismatch("point of wrong rank");
    IntVec row = p;
    row.push_back(1);
    constraints.push_back(std::move(row));
  }
  DualDescription dd = dual_description(constraints, dim + 1);
  if (!dd.lines.empty())
    throw InternalError("hull_facets called on a non-full-dimensional configuration");
  std::vector<std::pair<IntVec, Int>> facets;
  facets.reserve(dd.rays.size());
  for (IntVec& r : dd.rays) {
    Int c = r.back();
    r.pop_back();
    facets.emplace_back(std::move(r), std::move(c));
  }
  return facets;
}

std::vector<std::vector<int>> triangulate_full_dim(const std::vector<IntVec>& points, int dim) {
  if (points.empty()) throw EmptySet("triangulation of no points");
  if (dim == 0) return {{0}};
  if (dim == 1) {
    int lo = 0, hi = 0;
    for (int i = 1; i < static_cast<int>(points.size()); ++i) {
      if (points[i][0] < points[lo][0]) lo = i;
      if (points[i][0] > points[hi][0]) hi = i;
    }
    return {{lo, hi}};
  }

  int v0 = 0;
  for (int i = 1; i < static_cast<int>(points.size()); ++i)
    if (compare_vec(points[i], points[v0]) < 0) v0 = i;

  std::vector<std::vector<int>> simplices;
  for (const auto& [a, c] : hull_facets(points, dim)) {
    if (dot(a, points[v0]) + c != 0) {
      // Cone the apex v0 over a triangulation of this facet.
      std::vector<int> face;
      for (int i = 0; i < static_cast<int>(points.size()); ++i)
        if (dot(a, points[i]) + c == 0) face.push_back(i);

      int base = 0;
      for (int i = 1; i < static_cast<int>(face.size()); ++i)
        if (compare_vec(points[face[i]], points[face[base]]) < 0) base = i;
      std::vector<IntVec> dirs;
      for (int f : face) {
        IntVec d(dim);
        for (int j = 0; j < dim; ++j) d[j] = points[f][j] - points[face[base]][j];
        dirs.push_back(std::move(d));
      }
      std::vector<IntVec> basis = saturate_rows(dirs, dim);
      if (static_cast<int>(basis.size()) != dim - 1)
        throw InternalError("hull facet of unexpected dimension");
      std::vector<IntVec> coords;
      coords.reserve(face.size());
      for (const IntVec& d : dirs) {
        IntVec x;
        if (!solve_left(basis, dim, d, x))
          throw InternalError("facet point outside its saturated direction lattice");
        coords.push_back(std::move(x));
      }
      for (const auto& sub : triangulate_full_dim(coords, dim - 1)) {
        std::vector<int> simplex;
        simplex.reserve(dim + 1);
        for (int s : sub) simplex.push_back(face[s]);
        simplex.push_back(v0);
        simplices.push_back(std::move(simplex));
      }
    }
  }
  return simplices;
}

}  // namespace toricount::detail
