#pragma once

#include <cstdint>
#include <vector>

#include "stopred/bigint.hpp"
#include "stopred/bitvec.hpp"
#include "stopred/errors.hpp"

namespace stopred::cover {

// Default enumeration budget, measured in (set, row) coverage tests.
inline constexpr std::uint64_t kDefaultBudget = 1'000'000'000;

// A set of column positions, 1-based and strictly increasing (the external
// convention; all word-level machinery is 0-based internally).
struct ISet {
  std::vector<int> indices;

  static ISet of(std::vector<int> indices, int n);
  int size() const { return static_cast<int>(indices.size()); }
};

// True when the projection of `h` onto S has weight exactly 1.
bool covers(const gf2::BitVector& h, const ISet& s);

// True when no row of M covers S.
bool is_stopping_set(const gf2::BitMatrix& m, const ISet& s);

// Exact per-size uncovered counts, or an analytic stand-in for them.
struct CoverageProfile {
  int n = 0;
  int i_lo = 0;
  int i_hi = 0;
  std::vector<BigInt> u;       // u[i - i_lo] = sets of size i not covered
  gf2::BitMatrix source_rows;  // rows the counts refer to (may have no rows)
  bool exact = false;          // true when enumerated, false for closed-form upper bounds

  const BigInt& at(int i) const;
};

// Enumerates every i-set for i in [i_lo, i_hi] and counts the ones no row of
// M covers. With no rows at all, u_i = C(n, i) without enumeration. The
// worst-case (set, row) test count is checked against `budget` up front.
CoverageProfile uncovered_counts(const gf2::BitMatrix& m, int i_lo, int i_hi,
                                 std::uint64_t budget = kDefaultBudget, int threads = 0);

enum class DistanceKind { exact, at_least };

struct StoppingDistance {
  int value = 0;
  DistanceKind kind = DistanceKind::exact;
};

// Smallest s in [1, limit] such that some s-set of columns is a stopping set
// of M (no row covers it); (limit+1, at_least) when there is none. Sizes 1
// and 2 are genuine candidates: a zero column is a size-1 stopping set and a
// duplicated column pair a size-2 one.
StoppingDistance stopping_distance(const gf2::BitMatrix& m, int limit,
                                   std::uint64_t budget = kDefaultBudget, int threads = 0);

// Streams the k-subsets of {0,...,n-1} in colexicographic order. rank() is
// the colex rank, so a rank interval is a deterministic partition regardless
// of worker count.
class ISetEnumerator {
 public:
  ISetEnumerator(int n, int k);

  static std::uint64_t count(int n, int k);  // C(n, k), throws BudgetError past 2^63

  bool done() const { return done_; }
  std::uint64_t rank() const { return rank_; }
  const gf2::BitVector& mask() const { return mask_; }
  const std::vector<int>& positions() const { return c_; }  // 0-based ascending

  void next();
  void seek(std::uint64_t rank);

 private:
  int n_ = 0;
  int k_ = 0;
  std::vector<int> c_;
  gf2::BitVector mask_;
  std::uint64_t rank_ = 0;
  bool done_ = false;
};

}  // namespace stopred::cover
