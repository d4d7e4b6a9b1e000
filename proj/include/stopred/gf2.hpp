#pragma once

#include <bit>
#include <cstdint>
#include <utility>
#include <vector>

#include "stopred/bitvec.hpp"
#include "stopred/errors.hpp"

namespace stopred::gf2 {

// Hard cap on span enumeration: 2^28 elements.
inline constexpr int kMaxSpanRows = 28;

struct RrefResult {
  BitMatrix matrix;            // same row count as the input; zero rows sink to the bottom
  std::vector<int> pivot_cols; // 1-based column indices, ascending
};

int rank(const BitMatrix& m);

// Reduced row echelon form. Row space is preserved; the result is the unique
// canonical basis for it (plus trailing zero rows). Pivot columns are
// reported 1-based.
RrefResult rref(const BitMatrix& m);

// Basis of { v : M v^T = 0 }, one row per free column, in ascending free
// column order. rank(M) + row count of the result == col count of M.
BitMatrix nullspace_basis(const BitMatrix& m);

// Streams all 2^rows combinations of an independent basis. The element at
// enumeration index m is the XOR of the basis rows selected by the Gray code
// of m (m ^ (m >> 1)), so consecutive elements differ by exactly one basis
// row and index 0 is the zero vector. Downstream tie-breaking depends on this
// order, so it is part of the contract.
class SpanEnumerator {
 public:
  // Throws BudgetError when the basis has more than kMaxSpanRows rows and
  // std::invalid_argument when the rows are linearly dependent.
  explicit SpanEnumerator(BitMatrix basis);

  std::uint64_t size() const { return std::uint64_t(1) << basis_.row_count(); }
  const BitMatrix& basis() const { return basis_; }

  BitVector word_at(std::uint64_t index) const;

  // Visits indices [lo, hi) in order, maintaining the running word with one
  // XOR per step. fn(index, const BitVector&).
  template <typename Fn>
  void visit(std::uint64_t lo, std::uint64_t hi, Fn&& fn) const {
    if (lo >= hi) return;
    BitVector w = word_at(lo);
    fn(lo, static_cast<const BitVector&>(w));
    for (std::uint64_t m = lo + 1; m < hi; ++m) {
      w ^= basis_.row(std::countr_zero(m));
      fn(m, static_cast<const BitVector&>(w));
    }
  }

 private:
  BitMatrix basis_;
};

struct WeightCensus {
  int min_weight = 0;           // smallest nonzero-codeword weight
  std::uint64_t count = 0;      // exact number of words at that weight
  std::vector<BitVector> words; // first `word_cap` of them, in enumeration-index order
};

// Minimum nonzero weight over the span of `basis`, with the exact count and
// the words themselves up to `word_cap`. Partitions the enumeration counter
// range across workers; the result is independent of the worker count.
WeightCensus min_weight_census(const BitMatrix& basis, std::size_t word_cap = 1u << 16,
                               int threads = 0);

}  // namespace stopred::gf2
