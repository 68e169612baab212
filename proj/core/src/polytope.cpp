#include "toricount/polytope.hpp"

#include <algorithm>
#include <map>

#include "toricount/detail/dd.hpp"

namespace toricount {

PointSet make_point_set(int rank, std::vector<Covector> pts) {
  for (const auto& p : pts)
    if (p.rank() != rank) throw ArityMismatch("point of wrong rank in point set");
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return PointSet{rank, std::move(pts)};
}

PointSet translate(const PointSet& s, const Covector& by) {
  if (by.rank() != s.rank) throw ArityMismatch("translation of wrong rank");
  std::vector<Covector> pts;
  pts.reserve(s.points.size());
  for (const auto& p : s.points) {
    Covector q = p;
    for (int i = 0; i < s.rank; ++i) q.coords[i] += by.coords[i];
    pts.push_back(std::move(q));
  }
  return PointSet{s.rank, std::move(pts)};  // translation preserves the order
}

PointSet dilate(const PointSet& s, const Int& factor) {
  std::vector<Covector> pts;
  pts.reserve(s.points.size());
  for (const auto& p : s.points) {
    Covector q = p;
    for (int i = 0; i < s.rank; ++i) q.coords[i] *= factor;
    pts.push_back(std::move(q));
  }
  return make_point_set(s.rank, std::move(pts));
}

int affine_dim(const PointSet& s) {
  if (s.points.empty()) throw EmptySet("affine dimension of an empty set");
  std::vector<IntVec> dirs;
  dirs.reserve(s.points.size() - 1);
  for (size_t i = 1; i < s.points.size(); ++i) {
    IntVec d(s.rank);
    for (int j = 0; j < s.rank; ++j) d[j] = s.points[i].coords[j] - s.points[0].coords[j];
    dirs.push_back(std::move(d));
  }
  return detail::rank_rows(dirs, s.rank);
}

PointSet minkowski_sum(const PointSet& a, const PointSet& b) {
  if (a.rank != b.rank) throw ArityMismatch("Minkowski sum of sets of different rank");
  if (a.points.empty() || b.points.empty()) throw EmptySet("Minkowski sum with an empty set");
  std::vector<Covector> pts;
  pts.reserve(a.points.size() * b.points.size());
  for (const auto& p : a.points)
    for (const auto& q : b.points) {
      Covector r = p;
      for (int i = 0; i < a.rank; ++i) r.coords[i] += q.coords[i];
      pts.push_back(std::move(r));
    }
  return make_point_set(a.rank, std::move(pts));
}

LatticeVolume lattice_volume(const PointSet& s) {
  if (s.points.empty()) throw EmptySet("volume of an empty set");
  if (s.rank == 0) return 1;  // the hull is the single point of rank-0 space
  if (affine_dim(s) < s.rank) return 0;

  std::vector<IntVec> pts;
  pts.reserve(s.points.size());
  for (const auto& p : s.points) pts.push_back(p.coords);

  Int total = 0;
  for (const auto& simplex : detail::triangulate_full_dim(pts, s.rank)) {
    IntMatrix edges(s.rank, s.rank);
    for (int i = 0; i < s.rank; ++i)
      for (int j = 0; j < s.rank; ++j)
        edges.at(i, j) = pts[simplex[i + 1]][j] - pts[simplex[0]][j];
    total += abs(determinant(edges));
  }
  return total;
}

LatticeVolume mixed_volume(const std::vector<PointSet>& sets) {
  const int n = static_cast<int>(sets.size());
  if (n == 0) return 1;
  for (const auto& s : sets) {
    if (s.rank != n) throw ArityMismatch("mixed volume needs exactly rank-many sets");
    if (s.points.empty()) throw EmptySet("mixed volume of an empty set");
  }
  // Inclusion-exclusion (polarization of the volume form):
  //   n! * MV = sum over nonempty J of (-1)^(n-|J|) Vol(sum of P_j, j in J).
  Int acc = 0;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    PointSet sum;
    bool first = true;
    int card = 0;
    for (int j = 0; j < n; ++j)
      if (mask & (1u << j)) {
        ++card;
        sum = first ? sets[j] : minkowski_sum(sum, sets[j]);
        first = false;
      }
    Int vol = lattice_volume(sum);
    if ((n - card) % 2 == 0)
      acc += vol;
    else
      acc -= vol;
  }
  Int factorial = 1;
  for (int i = 2; i <= n; ++i) factorial *= i;
  Int mv, rem;
  mpz_tdiv_qr(mv.get_mpz_t(), rem.get_mpz_t(), acc.get_mpz_t(), factorial.get_mpz_t());
  if (rem != 0) throw InternalError("mixed volume polarization sum not divisible by rank!");
  if (mv < 0) throw InternalError("negative mixed volume");
  return mv;
}

namespace {

void enumerate_exponents(int n, int total, IntVec& cur, std::vector<IntVec>& out) {
  if (static_cast<int>(cur.size()) == n - 1) {
    IntVec e = cur;
    e.push_back(total);
    out.push_back(std::move(e));
    return;
  }
  for (int v = 0; v <= total; ++v) {
    cur.push_back(v);
    enumerate_exponents(n, total - v, cur, out);
    cur.pop_back();
  }
}

}  // namespace

LatticeVolume mixed_volume_oracle(const std::vector<PointSet>& sets) {
  const int n = static_cast<int>(sets.size());
  if (n == 0) return 1;
  for (const auto& s : sets) {
    if (s.rank != n) throw ArityMismatch("mixed volume needs exactly rank-many sets");
    if (s.points.empty()) throw EmptySet("mixed volume of an empty set");
  }

  // Monomials of the homogeneous degree-n volume polynomial.
  std::vector<IntVec> monomials;
  {
    IntVec cur;
    enumerate_exponents(n, n, cur, monomials);
  }
  const int nm = static_cast<int>(monomials.size());

  // One equation per grid point lambda in {1..n+1}^n.
  std::vector<std::vector<mpq_class>> rows;
  std::vector<int> lambda(n, 1);
  for (;;) {
    PointSet sum;
    for (int i = 0; i < n; ++i) {
      PointSet d = dilate(sets[i], lambda[i]);
      sum = (i == 0) ? d : minkowski_sum(sum, d);
    }
    std::vector<mpq_class> row(nm + 1);
    for (int m = 0; m < nm; ++m) {
      Int c = 1;
      for (int i = 0; i < n; ++i) {
        Int p;
        mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(lambda[i]),
                      monomials[m][i].get_ui());
        c *= p;
      }
      row[m] = mpq_class(c);
    }
    row[nm] = mpq_class(lattice_volume(sum));
    rows.push_back(std::move(row));

    int i = n - 1;
    while (i >= 0 && lambda[i] == n + 1) lambda[i--] = 1;
    if (i < 0) break;
    ++lambda[i];
  }

  // Exact Gauss-Jordan elimination; the grid determines the polynomial, so
  // anything short of a unique consistent solution is a bug.
  const int nr = static_cast<int>(rows.size());
  int rank = 0;
  for (int col = 0; col < nm; ++col) {
    int piv = -1;
    for (int i = rank; i < nr; ++i)
      if (rows[i][col] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) throw InternalError("volume interpolation system is underdetermined");
    std::swap(rows[rank], rows[piv]);
    for (int i = 0; i < nr; ++i) {
      if (i == rank || rows[i][col] == 0) continue;
      mpq_class f = rows[i][col] / rows[rank][col];
      for (int j = col; j <= nm; ++j) rows[i][j] -= f * rows[rank][j];
    }
    ++rank;
  }
  for (int i = rank; i < nr; ++i)
    if (rows[i][nm] != 0) throw InternalError("volume interpolation system is inconsistent");

  // Column index of lambda_1 * ... * lambda_n.
  IntVec ones(n, Int(1));
  int target = -1;
  for (int m = 0; m < nm; ++m)
    if (monomials[m] == ones) target = m;
  if (target < 0) throw InternalError("missing multilinear monomial");
  int trow = -1;
  for (int i = 0; i < rank; ++i) {
    int lead = -1;
    for (int j = 0; j < nm; ++j)
      if (rows[i][j] != 0) {
        lead = j;
        break;
      }
    if (lead == target) trow = i;
  }
  if (trow < 0) throw InternalError("multilinear coefficient not isolated");
  mpq_class coeff = rows[trow][nm] / rows[trow][target];

  Int factorial = 1;
  for (int i = 2; i <= n; ++i) factorial *= i;
  coeff /= mpq_class(factorial);
  coeff.canonicalize();
  if (coeff.get_den() != 1) throw InternalError("interpolated mixed volume is not an integer");
  if (coeff.get_num() < 0) throw InternalError("negative interpolated mixed volume");
  return coeff.get_num();
}

}  // namespace toricount
