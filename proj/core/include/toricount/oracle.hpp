#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "toricount/polytope.hpp"

namespace toricount {

// Deterministic random source: mt19937_64 (sequence fixed by the standard)
// with modulo range reduction, so draws are identical on every platform.
// The bias is below 2^-50 for any range used here.
class Rng {
 public:
  explicit Rng(uint64_t seed, uint64_t stream = 0);
  uint64_t next_u64();
  long uniform(long lo, long hi);  // inclusive
  long nonzero_uniform(long bound);  // uniform on [-bound,-1] U [1,bound]

 private:
  std::mt19937_64 gen_;
};

enum class ResultantStatus {
  Ok,
  ZeroResultant,  // the two curves share a component
  Degenerate,     // boundary or multiplicity accident; redraw coefficients
};

struct ResultantCount {
  ResultantStatus status = ResultantStatus::Degenerate;
  long count = -1;    // torus solutions, valid when status == Ok
  int attempts = 0;   // coefficient draws consumed
};

// Counts the torus solutions of one random system with the given rank-2
// supports by eliminating y: draw nonzero coefficients from
// [-coefficient_bound, coefficient_bound], take the Sylvester resultant in
// y, and read off its degree after stripping powers of x and the integer
// content. The draw is rejected (Degenerate) when a solution could hide on
// the toric boundary or collide with another: the facial polynomials of the
// two curves at each of the four axis directions must be coprime, and the
// stripped resultant must be squarefree.
ResultantCount bernstein_resultant_count(const PointSet& a, const PointSet& b, uint64_t seed,
                                         int attempt, long coefficient_bound = 1000);

// Retries bernstein_resultant_count with fresh coefficients until Ok, up to
// `max_attempts` draws total.
ResultantCount bernstein_count_with_retries(const PointSet& a, const PointSet& b, uint64_t seed,
                                            int max_attempts = 10,
                                            long coefficient_bound = 1000);

// Defect of every nonempty subfamily recomputed from scratch: fraction-free
// Gaussian elimination over the rationals on the in-support differences,
// sharing nothing with the lattice routines it cross-checks.
std::vector<std::pair<std::vector<int>, long>> oracle_defect_table(
    const std::vector<PointSet>& family);

// `max_points` >= 1 points with coordinates in [-box, box].
PointSet random_point_set(Rng& rng, int rank, int max_points, long box);

// Between 1 and max_systems supports of up to max_points each.
std::vector<PointSet> random_support_family(Rng& rng, int rank, int max_systems, int max_points,
                                            long box);

// Rank-2 support pair suitable for the resultant oracle: both supports
// two-dimensional (hence the pair has a zero-defect subfamily) and the
// in-support differences of the two together generate all of Z^2, which
// rules out the monomial substitutions that force multiple roots for every
// coefficient choice.
std::pair<PointSet, PointSet> draw_resultant_pair(Rng& rng, int max_points, long box);

}  // namespace toricount
