#include "toricount/oracle.hpp"

#include <gmpxx.h>

#include <algorithm>

namespace toricount {

Rng::Rng(uint64_t seed, uint64_t stream) {
  std::seed_seq seq{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32),
                    static_cast<uint32_t>(stream), static_cast<uint32_t>(stream >> 32)};
  gen_.seed(seq);
}

uint64_t Rng::next_u64() { return gen_(); }

long Rng::uniform(long lo, long hi) {
  if (hi < lo) throw ArityMismatch("empty range");
  uint64_t span = static_cast<uint64_t>(hi) - static_cast<uint64_t>(lo) + 1;
  return static_cast<long>(lo + static_cast<long>(gen_() % span));
}

long Rng::nonzero_uniform(long bound) {
  long v = uniform(1, 2 * bound);
  return v > bound ? bound - v : v;
}

namespace {

// Dense univariate polynomial over Z; p[i] is the t^i coefficient and the
// zero polynomial is the empty vector.
using Poly = std::vector<Int>;

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int degree(const Poly& p) { return static_cast<int>(p.size()) - 1; }

Poly sub(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), Int(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

Poly mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, Int(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

Poly scale(const Poly& a, const Int& c) {
  if (c == 0) return {};
  Poly r = a;
  for (Int& x : r) x *= c;
  return r;
}

Poly derivative(const Poly& p) {
  if (p.size() <= 1) return {};
  Poly r(p.size() - 1);
  for (size_t i = 1; i < p.size(); ++i) r[i - 1] = p[i] * static_cast<long>(i);
  return r;
}

Int content(const Poly& p) {
  Int g = 0;
  for (const Int& x : p) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  return g;
}

void make_primitive_poly(Poly& p) {
  Int g = content(p);
  if (g <= 1) return;
  for (Int& x : p) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

// Number of low zero coefficients removed (the multiplicity of t = 0).
int strip_powers(Poly& p) {
  if (p.empty()) return 0;
  size_t k = 0;
  while (k < p.size() && p[k] == 0) ++k;
  p.erase(p.begin(), p.begin() + k);
  return static_cast<int>(k);
}

// Division known to be exact; InternalError when it is not.
Poly div_exact(const Poly& a, const Poly& b) {
  if (b.empty()) throw InternalError("polynomial division by zero");
  if (a.empty()) return {};
  if (a.size() < b.size()) throw InternalError("inexact polynomial division");
  Poly rem = a;
  Poly q(a.size() - b.size() + 1, Int(0));
  for (int i = static_cast<int>(q.size()) - 1; i >= 0; --i) {
    const Int& top = rem[i + b.size() - 1];
    if (top == 0) continue;
    Int c, r;
    mpz_tdiv_qr(c.get_mpz_t(), r.get_mpz_t(), top.get_mpz_t(), b.back().get_mpz_t());
    if (r != 0) throw InternalError("inexact polynomial division");
    q[i] = c;
    for (size_t j = 0; j < b.size(); ++j) rem[i + j] -= c * b[j];
  }
  for (const Int& x : rem)
    if (x != 0) throw InternalError("inexact polynomial division");
  return q;
}

// Primitive-remainder-sequence gcd, returned primitive.
Poly poly_gcd(Poly a, Poly b) {
  trim(a);
  trim(b);
  make_primitive_poly(a);
  make_primitive_poly(b);
  if (degree(a) < degree(b)) std::swap(a, b);
  while (!b.empty()) {
    // pseudo-remainder of a by b
    Poly r = a;
    while (degree(r) >= degree(b)) {
      int shift = degree(r) - degree(b);
      Poly t = scale(b, r.back());
      t.insert(t.begin(), shift, Int(0));
      r = sub(scale(r, b.back()), t);
    }
    a = std::move(b);
    b = std::move(r);
    make_primitive_poly(b);
  }
  make_primitive_poly(a);
  if (!a.empty() && a.back() < 0)
    for (Int& x : a) x = -x;
  return a;
}

Poly poly_pow(const Poly& a, int e) {
  Poly r{Int(1)};
  for (int i = 0; i < e; ++i) r = mul(r, a);
  return r;
}

// Bivariate curve: index is the y-degree, entries are polynomials in x.
using Curve = std::vector<Poly>;

void trim_curve(Curve& c) {
  for (Poly& p : c) trim(p);
  while (!c.empty() && c.back().empty()) c.pop_back();
}

// Sylvester determinant in y via fraction-free elimination over Z[x]; the
// per-step division by the previous pivot is exact in any integral domain.
Poly sylvester_resultant(Curve f, Curve g) {
  trim_curve(f);
  trim_curve(g);
  if (f.empty() || g.empty()) return {};
  const int df = static_cast<int>(f.size()) - 1;
  const int dg = static_cast<int>(g.size()) - 1;
  if (df == 0) return poly_pow(f[0], dg);
  if (dg == 0) return poly_pow(g[0], df);

  const int n = df + dg;
  std::vector<Curve> m(n, Curve(n));
  for (int i = 0; i < dg; ++i)
    for (int j = 0; j <= df; ++j) m[i][i + j] = f[df - j];
  for (int i = 0; i < df; ++i)
    for (int j = 0; j <= dg; ++j) m[dg + i][i + j] = g[dg - j];

  bool negate = false;
  Poly prev{Int(1)};
  for (int k = 0; k + 1 < n; ++k) {
    if (m[k][k].empty()) {
      int piv = -1;
      for (int r = k + 1; r < n; ++r)
        if (!m[r][k].empty()) {
          piv = r;
          break;
        }
      if (piv < 0) return {};
      std::swap(m[k], m[piv]);
      negate = !negate;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j)
        m[i][j] = div_exact(sub(mul(m[k][k], m[i][j]), mul(m[i][k], m[k][j])), prev);
      m[i][k].clear();
    }
    prev = m[k][k];
  }
  Poly res = m[n - 1][n - 1];
  if (negate)
    for (Int& x : res) x = -x;
  return res;
}

Curve draw_curve(const PointSet& s, Rng& rng, long bound) {
  Int min_x = s.points.front().coords[0];
  Int max_x = min_x;
  Int min_y = s.points.front().coords[1];
  Int max_y = min_y;
  for (const auto& p : s.points) {
    min_x = std::min(min_x, p.coords[0]);
    max_x = std::max(max_x, p.coords[0]);
    min_y = std::min(min_y, p.coords[1]);
    max_y = std::max(max_y, p.coords[1]);
  }
  Int spread_x = max_x - min_x;
  Int spread_y = max_y - min_y;
  if (spread_x > 64 || spread_y > 64)
    throw ArityMismatch("support spread too large for the resultant oracle");
  Curve c(mpz_get_si(spread_y.get_mpz_t()) + 1,
          Poly(mpz_get_si(spread_x.get_mpz_t()) + 1, Int(0)));
  for (const auto& p : s.points) {
    long ex = mpz_get_si(Int(p.coords[0] - min_x).get_mpz_t());
    long ey = mpz_get_si(Int(p.coords[1] - min_y).get_mpz_t());
    c[ey][ex] = rng.nonzero_uniform(bound);
  }
  trim_curve(c);
  return c;
}

// Facial slice of the curve in one of the four axis directions, with the
// variable powers stripped so a shared root away from zero shows up as a
// nonconstant gcd.
Poly face_y_bottom(const Curve& c) { return c.front(); }
Poly face_y_top(const Curve& c) { return c.back(); }

Poly face_x_side(const Curve& c, bool top) {
  int target = 0;
  if (top) {
    for (const Poly& p : c) target = std::max(target, degree(p));
  } else {
    // after draw_curve the minimum x-exponent over the whole curve is 0
    target = 0;
  }
  Poly s(c.size(), Int(0));
  for (size_t j = 0; j < c.size(); ++j)
    if (degree(c[j]) >= target) s[j] = c[j][target];
  trim(s);
  return s;
}

bool faces_share_root(Poly u, Poly v) {
  strip_powers(u);
  strip_powers(v);
  trim(u);
  trim(v);
  if (u.empty() || v.empty()) throw InternalError("zero facial polynomial");
  return degree(poly_gcd(std::move(u), std::move(v))) > 0;
}

}  // namespace

ResultantCount bernstein_resultant_count(const PointSet& a, const PointSet& b, uint64_t seed,
                                         int attempt, long coefficient_bound) {
  if (a.rank != 2 || b.rank != 2)
    throw ArityMismatch("resultant counting works on rank-2 supports");
  if (a.points.empty() || b.points.empty()) throw EmptySupport("empty support");

  Rng rng(seed, static_cast<uint64_t>(attempt));
  Curve f = draw_curve(a, rng, coefficient_bound);
  Curve g = draw_curve(b, rng, coefficient_bound);

  ResultantCount out;
  out.attempts = attempt + 1;

  // A root shared by facial polynomials of the same direction is a solution
  // sitting on the toric boundary; it would leak into (or hide from) the
  // resultant degree, so redraw.
  if (faces_share_root(face_y_bottom(f), face_y_bottom(g)) ||
      faces_share_root(face_y_top(f), face_y_top(g)) ||
      faces_share_root(face_x_side(f, false), face_x_side(g, false)) ||
      faces_share_root(face_x_side(f, true), face_x_side(g, true))) {
    out.status = ResultantStatus::Degenerate;
    return out;
  }

  Poly res = sylvester_resultant(f, g);
  if (res.empty()) {
    out.status = ResultantStatus::ZeroResultant;
    return out;
  }
  strip_powers(res);
  make_primitive_poly(res);

  // Squarefree <=> every surviving root is the x-coordinate of exactly one
  // simple torus solution, so the degree is the solution count.
  if (degree(res) > 0 && degree(poly_gcd(res, derivative(res))) > 0) {
    out.status = ResultantStatus::Degenerate;
    return out;
  }
  out.status = ResultantStatus::Ok;
  out.count = degree(res);
  return out;
}

ResultantCount bernstein_count_with_retries(const PointSet& a, const PointSet& b, uint64_t seed,
                                            int max_attempts, long coefficient_bound) {
  ResultantCount last;
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    last = bernstein_resultant_count(a, b, seed, attempt, coefficient_bound);
    if (last.status == ResultantStatus::Ok) return last;
  }
  return last;
}

std::vector<std::pair<std::vector<int>, long>> oracle_defect_table(
    const std::vector<PointSet>& family) {
  const size_t m = family.size();
  if (m > 20) throw TooManySystems("defect table over more than 20 supports");
  for (const auto& s : family)
    if (s.points.empty()) throw EmptySupport("empty support");

  const int rank = family.empty() ? 0 : family[0].rank;
  std::vector<std::pair<std::vector<int>, long>> out;
  for (unsigned mask = 1; mask < (1u << m); ++mask) {
    std::vector<int> subset;
    std::vector<std::vector<mpq_class>> rows;
    for (size_t j = 0; j < m; ++j) {
      if (!(mask >> j & 1u)) continue;
      subset.push_back(static_cast<int>(j));
      const auto& pts = family[j].points;
      for (size_t i = 1; i < pts.size(); ++i) {
        std::vector<mpq_class> row(rank);
        for (int c = 0; c < rank; ++c) row[c] = mpq_class(pts[i].coords[c] - pts[0].coords[c]);
        rows.push_back(std::move(row));
      }
    }
    // plain rational Gaussian elimination for the rank
    long r = 0;
    for (int col = 0; col < rank && r < static_cast<long>(rows.size()); ++col) {
      long piv = -1;
      for (long i = r; i < static_cast<long>(rows.size()); ++i)
        if (rows[i][col] != 0) {
          piv = i;
          break;
        }
      if (piv < 0) continue;
      std::swap(rows[r], rows[piv]);
      for (long i = r + 1; i < static_cast<long>(rows.size()); ++i) {
        if (rows[i][col] == 0) continue;
        mpq_class factor = rows[i][col] / rows[r][col];
        for (int c = col; c < rank; ++c) rows[i][c] -= factor * rows[r][c];
      }
      ++r;
    }
    out.emplace_back(std::move(subset), r - static_cast<long>(subset.size()));
  }
  return out;
}

PointSet random_point_set(Rng& rng, int rank, int max_points, long box) {
  if (max_points < 1) throw ArityMismatch("need at least one point");
  int n = static_cast<int>(rng.uniform(1, max_points));
  std::vector<Covector> pts;
  for (int i = 0; i < n; ++i) {
    IntVec v(rank);
    for (int j = 0; j < rank; ++j) v[j] = rng.uniform(-box, box);
    pts.push_back(Covector{std::move(v)});
  }
  return make_point_set(rank, std::move(pts));
}

std::vector<PointSet> random_support_family(Rng& rng, int rank, int max_systems, int max_points,
                                            long box) {
  int m = static_cast<int>(rng.uniform(1, max_systems));
  std::vector<PointSet> out;
  for (int i = 0; i < m; ++i) out.push_back(random_point_set(rng, rank, max_points, box));
  return out;
}

std::pair<PointSet, PointSet> draw_resultant_pair(Rng& rng, int max_points, long box) {
  for (int tries = 0; tries < 10000; ++tries) {
    PointSet a = random_point_set(rng, 2, max_points, box);
    PointSet b = random_point_set(rng, 2, max_points, box);
    if (a.points.size() < 3 || b.points.size() < 3) continue;
    if (affine_dim(a) != 2 || affine_dim(b) != 2) continue;
    std::vector<IntVec> diffs;
    for (const PointSet* s : {&a, &b})
      for (size_t i = 1; i < s->points.size(); ++i) {
        IntVec d(2);
        for (int c = 0; c < 2; ++c) d[c] = s->points[i].coords[c] - s->points[0].coords[c];
        diffs.push_back(std::move(d));
      }
    HnfResult h = hermite_normal_form(IntMatrix::from_rows(diffs, 2));
    if (h.h.at(0, 0) == 1 && h.h.at(0, 1) == 0 && h.h.at(1, 0) == 0 && h.h.at(1, 1) == 1)
      return {std::move(a), std::move(b)};
  }
  throw InternalError("no usable support pair after many draws");
}

}  // namespace toricount
