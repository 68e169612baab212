#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "toricount/errors.hpp"

namespace toricount {

// All lattice arithmetic is exact. Int is an arbitrary-precision integer;
// intermediate quantities (normal-form pivots, determinants, volumes) can
// overflow fixed-width types even on small inputs, so nothing in the core
// ever goes through machine integers.
using Int = mpz_class;
using IntVec = std::vector<Int>;

// Three-way lexicographic comparison, used everywhere a deterministic order
// of vectors is needed.
int compare_vec(const IntVec& a, const IntVec& b);

// A point of the lattice N of one-parameter subgroups.
struct LatticeVector {
  IntVec coords;

  int rank() const { return static_cast<int>(coords.size()); }
  friend bool operator==(const LatticeVector& a, const LatticeVector& b) {
    return a.coords == b.coords;
  }
  friend bool operator<(const LatticeVector& a, const LatticeVector& b) {
    return compare_vec(a.coords, b.coords) < 0;
  }
};

// A point of the dual lattice M of characters. Kept as a distinct type from
// LatticeVector: mixing the two sides of the pairing is the classic toric
// sign bug and the compiler should catch it.
struct Covector {
  IntVec coords;

  int rank() const { return static_cast<int>(coords.size()); }
  friend bool operator==(const Covector& a, const Covector& b) {
    return a.coords == b.coords;
  }
  friend bool operator<(const Covector& a, const Covector& b) {
    return compare_vec(a.coords, b.coords) < 0;
  }
};

Int pairing(const Covector& chi, const LatticeVector& v);

std::string to_string(const IntVec& v);

// Dense matrix of Ints, row-major. Rows are lattice/dual vectors throughout:
// the normal forms below are row-style.
class IntMatrix {
public:
  IntMatrix() = default;
  IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), e_(static_cast<size_t>(rows) * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<int>> init);

  static IntMatrix identity(int n);
  static IntMatrix from_rows(const std::vector<IntVec>& rows, int cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Int& at(int i, int j) { return e_[static_cast<size_t>(i) * cols_ + j]; }
  const Int& at(int i, int j) const { return e_[static_cast<size_t>(i) * cols_ + j]; }
  IntVec row(int i) const;

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
  }

private:
  int rows_ = 0, cols_ = 0;
  std::vector<Int> e_;
};

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);
IntMatrix transpose(const IntMatrix& m);

// Exact determinant by fraction-free (Bareiss) elimination.
Int determinant(const IntMatrix& m);

// Row-style Hermite normal form h = u * m with u unimodular: h is upper
// echelon, pivots positive, entries above each pivot reduced into [0, pivot).
// The HNF of a lattice's row span is unique, which makes it usable as a
// canonical form for sublattices.
struct HnfResult {
  IntMatrix h;
  IntMatrix u;
};
HnfResult hermite_normal_form(const IntMatrix& m);

// Smith normal form d = u * m * v, u and v unimodular, d diagonal with
// nonnegative entries d1 | d2 | ... (nonzero ones positive).
struct SnfResult {
  IntMatrix d;
  IntMatrix u;
  IntMatrix v;
};
SnfResult smith_normal_form(const IntMatrix& m);

int rank_of(const IntMatrix& m);

// Inverse of a matrix with determinant +-1 (throws InternalError otherwise).
IntMatrix inverse_unimodular(const IntMatrix& m);

namespace detail {
// Canonical (HNF) basis of {x in Z^cols : every row of m pairs to 0 with x}.
// The result is automatically a saturated sublattice.
std::vector<IntVec> kernel_rows(const IntMatrix& m);
std::vector<IntVec> saturate_rows(const std::vector<IntVec>& gens, int rank);
std::vector<IntVec> complement_rows(const std::vector<IntVec>& gens, int rank);
// Solve x * basis_matrix = v exactly over Z; empty optional when impossible.
bool solve_left(const std::vector<IntVec>& basis, int rank, const IntVec& v, IntVec& out);
int rank_rows(const std::vector<IntVec>& rows, int rank);
}  // namespace detail

// Canonical basis (HNF rows) of the saturation of the span of `gens`:
// the smallest sublattice containing them whose quotient is torsion-free.
template <class V>
std::vector<V> saturate(const std::vector<V>& gens, int rank) {
  std::vector<IntVec> rows;
  rows.reserve(gens.size());
  for (const auto& g : gens) rows.push_back(g.coords);
  std::vector<V> out;
  for (auto& r : detail::saturate_rows(rows, rank)) out.push_back(V{std::move(r)});
  return out;
}

// Canonical basis of the annihilator of `gens` in the dual lattice. Applying
// it twice recovers the saturation of the original span.
std::vector<Covector> orthogonal_complement_basis(const std::vector<LatticeVector>& gens, int rank);
std::vector<LatticeVector> orthogonal_complement_basis(const std::vector<Covector>& gens, int rank);

// Coordinates of v in a (saturated) basis; NotInSublattice when v is outside
// the span or fails to be an integral combination.
template <class V>
IntVec coordinates_in_sublattice(const V& v, const std::vector<V>& basis) {
  std::vector<IntVec> rows;
  rows.reserve(basis.size());
  for (const auto& b : basis) rows.push_back(b.coords);
  IntVec out;
  if (!detail::solve_left(rows, v.rank(), v.coords, out))
    throw NotInSublattice("vector has no integral coordinates in the given basis");
  return out;
}

}  // namespace toricount
