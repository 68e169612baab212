#include "toricount/intlin.hpp"

#include <algorithm>
#include <utility>
#include <cstdlib>
#include <sstream>

namespace toricount {

int compare_vec(const IntVec& a, const IntVec& b) {
  const size_t n = std::min(a.size(), b.size());
  for (size_t i = 0; i < n; ++i) {
    const int c = cmp(a[i], b[i]);
    if (c != 0) return c < 0 ? -1 : 1;
  }
  if (a.size() == b.size()) return 0;
  return a.size() < b.size() ? -1 : 1;
}

Int pairing(const Covector& chi, const LatticeVector& v) {
  if (chi.rank() != v.rank()) throw ArityMismatch("pairing of vectors of different rank");
  Int s = 0;
  for (int i = 0; i < v.rank(); ++i) s += chi.coords[i] * v.coords[i];
  return s;
}

std::string to_string(const IntVec& v) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) os << ",";
    os << v[i].get_str();
  }
  os << ")";
  return os.str();
}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<int>> init) {
  rows_ = static_cast<int>(init.size());
  cols_ = rows_ ? static_cast<int>(init.begin()->size()) : 0;
  e_.reserve(static_cast<size_t>(rows_) * cols_);
  for (const auto& r : init) {
    if (static_cast<int>(r.size()) != cols_) throw ArityMismatch("ragged matrix initializer");
    for (int x : r) e_.emplace_back(x);
  }
}

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVec>& rows, int cols) {
  IntMatrix m(static_cast<int>(rows.size()), cols);
  for (int i = 0; i < m.rows(); ++i) {
    if (static_cast<int>(rows[i].size()) != cols) throw ArityMismatch("row of wrong length");
    for (int j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

IntVec IntMatrix::row(int i) const {
  IntVec r(cols_);
  for (int j = 0; j < cols_; ++j) r[j] = at(i, j);
  return r;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw ArityMismatch("matrix product shape mismatch");
  IntMatrix c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      if (a.at(i, k) == 0) continue;
      for (int j = 0; j < b.cols(); ++j) c.at(i, j) += a.at(i, k) * b.at(k, j);
    }
  return c;
}

IntMatrix transpose(const IntMatrix& m) {
  IntMatrix t(m.cols(), m.rows());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) t.at(j, i) = m.at(i, j);
  return t;
}

Int determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw ArityMismatch("determinant of non-square matrix");
  const int n = m.rows();
  if (n == 0) return 1;
  IntMatrix b = m;
  int sign = 1;
  Int prev = 1;
  for (int k = 0; k + 1 < n; ++k) {
    if (b.at(k, k) == 0) {
      int piv = -1;
      for (int i = k + 1; i < n; ++i)
        if (b.at(i, k) != 0) {
          piv = i;
          break;
        }
      if (piv < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(b.at(k, j), b.at(piv, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        Int t = b.at(i, j) * b.at(k, k) - b.at(i, k) * b.at(k, j);
        // Bareiss: division by the previous pivot is exact.
        mpz_divexact(b.at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      b.at(i, k) = 0;
    }
    prev = b.at(k, k);
  }
  return sign < 0 ? Int(-b.at(n - 1, n - 1)) : b.at(n - 1, n - 1);
}

namespace {

Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

void add_row_multiple(IntMatrix& m, int dst, int src, const Int& c) {
  if (c == 0) return;
  for (int j = 0; j < m.cols(); ++j) m.at(dst, j) += c * m.at(src, j);
}

void swap_rows(IntMatrix& m, int a, int b) {
  if (a == b) return;
  for (int j = 0; j < m.cols(); ++j) std::swap(m.at(a, j), m.at(b, j));
}

void negate_row(IntMatrix& m, int r) {
  for (int j = 0; j < m.cols(); ++j) m.at(r, j) = -m.at(r, j);
}

void add_col_multiple(IntMatrix& m, int dst, int src, const Int& c) {
  if (c == 0) return;
  for (int i = 0; i < m.rows(); ++i) m.at(i, dst) += c * m.at(i, src);
}

void swap_cols(IntMatrix& m, int a, int b) {
  if (a == b) return;
  for (int i = 0; i < m.rows(); ++i) std::swap(m.at(i, a), m.at(i, b));
}

}  // namespace

HnfResult hermite_normal_form(const IntMatrix& m) {
  HnfResult res{m, IntMatrix::identity(m.rows())};
  IntMatrix& h = res.h;
  IntMatrix& u = res.u;
  int r = 0;
  for (int col = 0; col < h.cols() && r < h.rows(); ++col) {
    // Euclidean elimination below the pivot row: repeatedly move the
    // smallest nonzero entry of the column into the pivot slot and reduce.
    for (;;) {
      int best = -1;
      for (int i = r; i < h.rows(); ++i) {
        if (h.at(i, col) == 0) continue;
        if (best < 0 || mpz_cmpabs(h.at(i, col).get_mpz_t(), h.at(best, col).get_mpz_t()) < 0) best = i;
      }
      if (best < 0) break;
      swap_rows(h, r, best);
      swap_rows(u, r, best);
      bool clean = true;
      for (int i = r + 1; i < h.rows(); ++i) {
        if (h.at(i, col) == 0) continue;
        Int q = floor_div(h.at(i, col), h.at(r, col));
        add_row_multiple(h, i, r, -q);
        add_row_multiple(u, i, r, -q);
        if (h.at(i, col) != 0) clean = false;
      }
      if (clean) break;
    }
    if (h.at(r, col) == 0) continue;  // no pivot in this column
    if (h.at(r, col) < 0) {
      negate_row(h, r);
      negate_row(u, r);
    }
    for (int i = 0; i < r; ++i) {
      Int q = floor_div(h.at(i, col), h.at(r, col));
      add_row_multiple(h, i, r, -q);
      add_row_multiple(u, i, r, -q);
    }
    ++r;
  }
  return res;
}

SnfResult smith_normal_form(const IntMatrix& m) {
  SnfResult res{m, IntMatrix::identity(m.rows()), IntMatrix::identity(m.cols())};
  IntMatrix& d = res.d;
  IntMatrix& u = res.u;
  IntMatrix& v = res.v;
  const int n = std::min(d.rows(), d.cols());
  for (int t = 0; t < n; ++t) {
    for (;;) {
      // Bring the absolutely smallest nonzero entry of the trailing block
      // to position (t, t).
      int bi = -1, bj = -1;
      for (int i = t; i < d.rows(); ++i)
        for (int j = t; j < d.cols(); ++j) {
          if (d.at(i, j) == 0) continue;
          if (bi < 0 || mpz_cmpabs(d.at(i, j).get_mpz_t(), d.at(bi, bj).get_mpz_t()) < 0) {
            bi = i;
            bj = j;
          }
        }
      if (bi < 0) {
        bi = bj = -1;
        break;
      }
      swap_rows(d, t, bi);
      swap_rows(u, t, bi);
      swap_cols(d, t, bj);
      swap_cols(v, t, bj);

      bool dirty = false;
      for (int i = t + 1; i < d.rows(); ++i) {
        if (d.at(i, t) == 0) continue;
        Int q = floor_div(d.at(i, t), d.at(t, t));
        add_row_multiple(d, i, t, -q);
        add_row_multiple(u, i, t, -q);
        if (d.at(i, t) != 0) dirty = true;
      }
      for (int j = t + 1; j < d.cols(); ++j) {
        if (d.at(t, j) == 0) continue;
        Int q = floor_div(d.at(t, j), d.at(t, t));
        add_col_multiple(d, j, t, -q);
        add_col_multiple(v, j, t, -q);
        if (d.at(t, j) != 0) dirty = true;
      }
      if (dirty) continue;

      bool row_clear = true, col_clear = true;
      for (int i = t + 1; i < d.rows(); ++i)
        if (d.at(i, t) != 0) col_clear = false;
      for (int j = t + 1; j < d.cols(); ++j)
        if (d.at(t, j) != 0) row_clear = false;
      if (!row_clear || !col_clear) continue;

      // Enforce the divisibility chain: pull any entry the pivot fails to
      // divide into the pivot row and keep reducing.
      bool divides = true;
      for (int i = t + 1; i < d.rows() && divides; ++i)
        for (int j = t + 1; j < d.cols() && divides; ++j)
          if (d.at(i, j) % d.at(t, t) != 0) {
            add_row_multiple(d, t, i, 1);
            add_row_multiple(u, t, i, 1);
            divides = false;
          }
      if (divides) break;
    }
    if (d.at(t, t) < 0) {
      negate_row(d, t);
      negate_row(u, t);
    }
  }
  return res;
}

int rank_of(const IntMatrix& m) {
  IntMatrix h = hermite_normal_form(m).h;
  int r = 0;
  for (int i = 0; i < h.rows(); ++i) {
    bool nonzero = false;
    for (int j = 0; j < h.cols(); ++j)
      if (h.at(i, j) != 0) {
        nonzero = true;
        break;
      }
    if (nonzero) ++r;
  }
  return r;
}

IntMatrix inverse_unimodular(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw ArityMismatch("inverse of non-square matrix");
  // For unimodular m the Hermite form is the identity, so u is the inverse.
  HnfResult r = hermite_normal_form(m);
  if (!(r.h == IntMatrix::identity(m.rows())))
    throw InternalError("inverse_unimodular called on a non-unimodular matrix");
  return r.u;
}

namespace detail {

std::vector<IntVec> kernel_rows(const IntMatrix& m) {
  // Row-reduce the transpose; rows of u that map to zero rows of h form a
  // basis of {x : m . x = 0}. Kernels of integer matrices are saturated.
  HnfResult r = hermite_normal_form(transpose(m));
  std::vector<IntVec> ker;
  for (int i = 0; i < r.h.rows(); ++i) {
    bool zero = true;
    for (int j = 0; j < r.h.cols(); ++j)
      if (r.h.at(i, j) != 0) {
        zero = false;
        break;
      }
    if (zero) ker.push_back(r.u.row(i));
  }
  if (ker.empty()) return ker;
  IntMatrix k = hermite_normal_form(IntMatrix::from_rows(ker, m.cols())).h;
  std::vector<IntVec> out;
  for (int i = 0; i < static_cast<int>(ker.size()); ++i) out.push_back(k.row(i));
  return out;
}

std::vector<IntVec> complement_rows(const std::vector<IntVec>& gens, int rank) {
  for (const auto& g : gens)
    if (static_cast<int>(g.size()) != rank) throw ArityMismatch("generator of wrong rank");
  if (gens.empty()) {
    std::vector<IntVec> out;
    for (int i = 0; i < rank; ++i) {
      IntVec e(rank, 0);
      e[i] = 1;
      out.push_back(std::move(e));
    }
    return out;
  }
  return kernel_rows(IntMatrix::from_rows(gens, rank));
}

std::vector<IntVec> saturate_rows(const std::vector<IntVec>& gens, int rank) {
  // Double annihilator: the kernel of the kernel is the saturation.
  return complement_rows(complement_rows(gens, rank), rank);
}

bool solve_left(const std::vector<IntVec>& basis, int rank, const IntVec& v, IntVec& out) {
  if (static_cast<int>(v.size()) != rank) throw ArityMismatch("vector of wrong rank");
  const int k = static_cast<int>(basis.size());
  if (k == 0) {
    for (const Int& x : v)
      if (x != 0) return false;
    out.clear();
    return true;
  }
  HnfResult r = hermite_normal_form(IntMatrix::from_rows(basis, rank));
  // Solve y * h = v by echelon back-substitution, then x = y * u.
  IntVec y(k, Int(0));
  IntVec w = v;
  for (int i = 0; i < k; ++i) {
    int piv = -1;
    for (int j = 0; j < rank; ++j)
      if (r.h.at(i, j) != 0) {
        piv = j;
        break;
      }
    if (piv < 0) break;  // zero rows trail; their y stays 0
    Int q, rem;
    mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), w[piv].get_mpz_t(), r.h.at(i, piv).get_mpz_t());
    if (rem != 0) return false;
    y[i] = q;
    if (q != 0)
      for (int j = 0; j < rank; ++j) w[j] -= q * r.h.at(i, j);
  }
  for (const Int& x : w)
    if (x != 0) return false;
  out.assign(k, Int(0));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) out[j] += y[i] * r.u.at(i, j);
  return true;
}

int rank_rows(const std::vector<IntVec>& rows, int rank) {
  if (rows.empty()) return 0;
  return rank_of(IntMatrix::from_rows(rows, rank));
}

}  // namespace detail

std::vector<Covector> orthogonal_complement_basis(const std::vector<LatticeVector>& gens, int rank) {
  std::vector<IntVec> rows;
  rows.reserve(gens.size());
  for (const auto& g : gens) rows.push_back(g.coords);
  std::vector<Covector> out;
  for (auto& r : detail::complement_rows(rows, rank)) out.push_back(Covector{std::move(r)});
  return out;
}

std::vector<LatticeVector> orthogonal_complement_basis(const std::vector<Covector>& gens, int rank) {
  std::vector<IntVec> rows;
  rows.reserve(gens.size());
  for (const auto& g : gens) rows.push_back(g.coords);
  std::vector<LatticeVector> out;
  for (auto& r : detail::complement_rows(rows, rank)) out.push_back(LatticeVector{std::move(r)});
  return out;
}

}  // namespace toricount
