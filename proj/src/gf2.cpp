#include "stopred/gf2.hpp"

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

#include "parallel.hpp"

namespace stopred::gf2 {

int rank(const BitMatrix& m) { return static_cast<int>(rref(m).pivot_cols.size()); }

RrefResult rref(const BitMatrix& m) {
  BitMatrix a = m;
  std::vector<int> pivots;
  int rows = a.row_count(), cols = a.col_count();
  int next_row = 0;
  for (int col = 0; col < cols && next_row < rows; ++col) {
    int pivot = -1;
    for (int r = next_row; r < rows; ++r) {
      if (a.row(r).get(col)) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    a.swap_rows(next_row, pivot);
    for (int r = 0; r < rows; ++r) {
      if (r != next_row && a.row(r).get(col)) a.xor_row(r, next_row);
    }
    pivots.push_back(col + 1);
    ++next_row;
  }
  return {std::move(a), std::move(pivots)};
}

BitMatrix nullspace_basis(const BitMatrix& m) {
  RrefResult rr = rref(m);
  int cols = m.col_count();
  std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
  for (int p : rr.pivot_cols) is_pivot[static_cast<std::size_t>(p - 1)] = true;

  BitMatrix basis(cols);
  for (int free_col = 0; free_col < cols; ++free_col) {
    if (is_pivot[static_cast<std::size_t>(free_col)]) continue;
    BitVector v(cols);
    v.set(free_col);
    // Each pivot row reads off one coordinate of the solution.
    for (std::size_t pr = 0; pr < rr.pivot_cols.size(); ++pr) {
      int pivot_col = rr.pivot_cols[pr] - 1;
      if (rr.matrix.row(static_cast<int>(pr)).get(free_col)) v.set(pivot_col);
    }
    basis.append_row(std::move(v));
  }
  return basis;
}

SpanEnumerator::SpanEnumerator(BitMatrix basis) : basis_(std::move(basis)) {
  if (basis_.row_count() > kMaxSpanRows) {
    throw BudgetError("span enumeration over " + std::to_string(basis_.row_count()) +
                      " rows exceeds the 2^" + std::to_string(kMaxSpanRows) + " cap");
  }
  if (rank(basis_) != basis_.row_count())
    throw std::invalid_argument("SpanEnumerator: basis rows are linearly dependent");
}

BitVector SpanEnumerator::word_at(std::uint64_t index) const {
  if (index >= size()) throw std::out_of_range("SpanEnumerator: index out of range");
  BitVector w(basis_.col_count());
  std::uint64_t gray = index ^ (index >> 1);
  while (gray) {
    int bit = std::countr_zero(gray);
    w ^= basis_.row(bit);
    gray &= gray - 1;
  }
  return w;
}

WeightCensus min_weight_census(const BitMatrix& basis, std::size_t word_cap, int threads) {
  SpanEnumerator span{basis};
  int worker_count = detail::resolve_threads(threads);

  struct Partial {
    int min_weight = 0;
    std::uint64_t count = 0;
    std::vector<std::pair<std::uint64_t, BitVector>> hits;  // (enumeration index, word)
  };
  std::vector<Partial> partials(static_cast<std::size_t>(std::max(1, worker_count)));

  // Skip enumeration index 0 (the zero word).
  detail::parallel_chunks(span.size() - 1, worker_count,
                          [&](int chunk, std::uint64_t lo, std::uint64_t hi) {
    Partial& p = partials[static_cast<std::size_t>(chunk)];
    span.visit(lo + 1, hi + 1, [&](std::uint64_t idx, const BitVector& w) {
      int wt = w.weight();
      if (p.count == 0 || wt < p.min_weight) {
        p.min_weight = wt;
        p.count = 1;
        p.hits.clear();
        if (word_cap > 0) p.hits.emplace_back(idx, w);
      } else if (wt == p.min_weight) {
        ++p.count;
        if (p.hits.size() < word_cap) p.hits.emplace_back(idx, w);
      }
    });
  });

  // Merge in chunk order; the chunks already visit ascending index ranges.
  WeightCensus out;
  for (const Partial& p : partials) {
    if (p.count == 0) continue;
    if (out.count == 0 || p.min_weight < out.min_weight) {
      out.min_weight = p.min_weight;
      out.count = p.count;
      out.words.clear();
      for (const auto& [idx, w] : p.hits) {
        if (out.words.size() >= word_cap) break;
        out.words.push_back(w);
      }
    } else if (p.min_weight == out.min_weight) {
      out.count += p.count;
      for (const auto& [idx, w] : p.hits) {
        if (out.words.size() >= word_cap) break;
        out.words.push_back(w);
      }
    }
  }
  return out;
}

}  // namespace stopred::gf2
