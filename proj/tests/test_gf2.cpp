#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "stopred/errors.hpp"
#include "stopred/gf2.hpp"

using stopred::gf2::BitMatrix;
using stopred::gf2::BitVector;
using stopred::gf2::SpanEnumerator;

namespace {

BitMatrix random_matrix(std::mt19937_64& rng, int rows, int cols) {
  BitMatrix m(cols);
  for (int i = 0; i < rows; ++i) {
    BitVector v(cols);
    for (int j = 0; j < cols; ++j)
      if (rng() & 1) v.set(j);
    m.append_row(std::move(v));
  }
  return m;
}

BitMatrix random_independent(std::mt19937_64& rng, int rows, int cols) {
  for (;;) {
    BitMatrix m = random_matrix(rng, rows, cols);
    if (stopred::gf2::rank(m) == rows) return m;
  }
}

// Reduces v against the nonzero rows of a reduced-echelon matrix.
BitVector reduce_by(const BitMatrix& rr, BitVector v) {
  for (const auto& row : rr.rows()) {
    if (row.is_zero() || v.is_zero()) break;
    if (!v.is_zero() && !row.is_zero() && v.get(row.leading_bit())) v ^= row;
  }
  return v;
}

}  // namespace

TEST_CASE("rank and rref on a hand-worked matrix") {
  BitMatrix m = BitMatrix::from_strings({"110", "011", "101"});
  CHECK(stopred::gf2::rank(m) == 2);

  auto rr = stopred::gf2::rref(m);
  CHECK(rr.pivot_cols == std::vector<int>{1, 2});
  CHECK(rr.matrix.row(0) == BitVector::from_bits("101"));
  CHECK(rr.matrix.row(1) == BitVector::from_bits("011"));
  CHECK(rr.matrix.row(2).is_zero());

  CHECK(stopred::gf2::rank(BitMatrix::identity(9)) == 9);
}

TEST_CASE("rref is canonical and preserves the row space") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    BitMatrix m = random_matrix(rng, 5, 9);
    auto rr = stopred::gf2::rref(m);

    int rank = stopred::gf2::rank(m);
    CHECK(static_cast<int>(rr.pivot_cols.size()) == rank);
    // Pivot columns ascend and hold exactly one 1 apiece.
    for (std::size_t p = 0; p < rr.pivot_cols.size(); ++p) {
      if (p > 0) CHECK(rr.pivot_cols[p - 1] < rr.pivot_cols[p]);
      int col = rr.pivot_cols[p] - 1;
      int ones = 0;
      for (const auto& row : rr.matrix.rows()) ones += row.get(col);
      CHECK(ones == 1);
      CHECK(rr.matrix.row(static_cast<int>(p)).leading_bit() == col);
    }
    for (int i = rank; i < rr.matrix.row_count(); ++i) CHECK(rr.matrix.row(i).is_zero());
    // Every original row reduces to zero against the echelon rows.
    for (const auto& row : m.rows()) CHECK(reduce_by(rr.matrix, row).is_zero());
  }
}

TEST_CASE("nullspace basis spans the orthogonal complement") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    BitMatrix m = random_matrix(rng, 4, 10);
    BitMatrix ns = stopred::gf2::nullspace_basis(m);
    CHECK(ns.row_count() == 10 - stopred::gf2::rank(m));
    CHECK(stopred::gf2::rank(ns) == ns.row_count());
    for (const auto& v : ns.rows())
      for (const auto& row : m.rows()) CHECK(orthogonal(v, row));
  }
}

TEST_CASE("span enumeration agrees with subset brute force") {
  std::mt19937_64 rng(23);
  BitMatrix basis = random_independent(rng, 4, 10);
  SpanEnumerator span(basis);
  REQUIRE(span.size() == 16);

  std::set<std::string> brute;
  for (unsigned mask = 0; mask < 16; ++mask) {
    BitVector w(10);
    for (int i = 0; i < 4; ++i)
      if ((mask >> i) & 1) w ^= basis.row(i);
    brute.insert(w.to_string());
  }

  std::set<std::string> seen;
  BitVector prev(10);
  span.visit(0, span.size(), [&](std::uint64_t idx, const BitVector& w) {
    CHECK(span.word_at(idx) == w);
    seen.insert(w.to_string());
    if (idx > 0) {
      // Consecutive words differ by exactly the basis row the counter flips.
      BitVector diff = prev ^ w;
      CHECK(diff == basis.row(std::countr_zero(idx)));
    }
    prev = w;
  });
  CHECK(seen == brute);

  CHECK(span.word_at(0).is_zero());
  for (int i = 0; i < 4; ++i)
    CHECK(span.word_at((std::uint64_t(1) << (i + 1)) - 1) == basis.row(i));
}

TEST_CASE("span enumerator rejects unusable bases") {
  CHECK_THROWS_AS(SpanEnumerator(BitMatrix::from_strings({"110", "011", "101"})),
                  std::invalid_argument);
  CHECK_THROWS_AS(SpanEnumerator(BitMatrix::identity(stopred::gf2::kMaxSpanRows + 1)),
                  stopred::BudgetError);
}

TEST_CASE("minimum-weight census matches brute force") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    BitMatrix basis = random_independent(rng, 5, 12);

    int best = 13;
    std::set<std::string> best_words;
    for (unsigned mask = 1; mask < 32; ++mask) {
      BitVector w(12);
      for (int i = 0; i < 5; ++i)
        if ((mask >> i) & 1) w ^= basis.row(i);
      if (w.weight() < best) {
        best = w.weight();
        best_words.clear();
      }
      if (w.weight() == best) best_words.insert(w.to_string());
    }

    auto census = stopred::gf2::min_weight_census(basis);
    CHECK(census.min_weight == best);
    CHECK(census.count == best_words.size());
    std::set<std::string> reported;
    for (const auto& w : census.words) reported.insert(w.to_string());
    CHECK(reported == best_words);

    // The cap limits the stored words, never the count.
    auto capped = stopred::gf2::min_weight_census(basis, 1);
    CHECK(capped.count == census.count);
    CHECK(capped.words.size() == std::min<std::size_t>(1, census.count));

    auto threaded = stopred::gf2::min_weight_census(basis, 1u << 16, 3);
    CHECK(threaded.min_weight == census.min_weight);
    CHECK(threaded.count == census.count);
    CHECK(threaded.words.size() == census.words.size());
    for (std::size_t i = 0; i < census.words.size(); ++i)
      CHECK(threaded.words[i] == census.words[i]);
  }
}
