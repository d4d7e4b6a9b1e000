#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "stopred/errors.hpp"
#include "stopred/gf2.hpp"

namespace stopred::codes {

// A binary [n, k] linear code presented by a full-rank parity-check matrix.
// Instances are value types, immutable by convention after construction and
// safe to share read-only across threads.
struct LinearCode {
  int n = 0;
  int k = 0;
  gf2::BitMatrix parity;  // (n-k) x n, full rank

  std::optional<int> min_distance;                     // d
  std::optional<int> dual_min_weight;                  // weight of the lightest nonzero dual word
  std::optional<std::uint64_t> dual_min_weight_count;  // how many of them

  int redundancy() const { return n - k; }

  // Generator matrix: basis of the null space of `parity`.
  gf2::BitMatrix generator() const { return gf2::nullspace_basis(parity); }

  // Census of the dual code (the row space of `parity`). Computed on demand;
  // requires redundancy() <= gf2::kMaxSpanRows.
  gf2::WeightCensus dual_census(std::size_t word_cap = 1u << 16, int threads = 0) const {
    return gf2::min_weight_census(parity, word_cap, threads);
  }

  bool is_self_dual() const;
};

// Extended [24,12,8] binary Golay code with its conventional parity-check
// matrix (rows 1-11 of weight 8, row 12 of weight 12).
LinearCode golay24();

// Extended [48,24,12] binary quadratic-residue code, built from the length-47
// cyclic code whose generator polynomial divides x^47+1 with the quadratic
// residues mod 47 as root exponents, plus an overall parity column.
LinearCode extended_qr48();

// Wraps an arbitrary parity-check matrix: reduces it to a full-rank basis and
// determines d and the dual weight census by span enumeration. Throws
// BudgetError when either span is larger than 2^kMaxSpanRows.
LinearCode code_from_parity_check(const gf2::BitMatrix& m, int threads = 0);

// Sparse matrix text format:
//   line 1: "n m"                     (columns, rows)
//   line 2: "max_col_degree max_row_degree"
//   line 3: n column degrees          line 4: m row degrees
//   then n lines of 1-based row indices per column, 0-padded to max_col_degree,
//   then m lines of 1-based column indices per row, 0-padded to max_row_degree.
// Single spaces, LF line endings. save_alist emits index lists ascending;
// load_alist accepts any order but rejects duplicates and cross-checks the
// column lists against the row lists.
gf2::BitMatrix load_alist(const std::string& text);
std::string save_alist(const gf2::BitMatrix& m);

// Dense text format: one row of '0'/'1' characters per line. Whitespace is
// ignored on input and never emitted.
gf2::BitMatrix load_plain(const std::string& text);
std::string save_plain(const gf2::BitMatrix& m);

}  // namespace stopred::codes
