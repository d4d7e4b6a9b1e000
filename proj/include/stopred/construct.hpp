#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "stopred/bitvec.hpp"
#include "stopred/codes.hpp"
#include "stopred/cover.hpp"

namespace stopred::construct {

enum class Strategy { lexicographic, max_coverage };

// One appended row's effect on the residual potential.
struct BuildStep {
  std::uint64_t delta = 0;   // uncovered sets + rank deficit after the row
  int rank_deficiency = 0;   // r - rank after the row
};

struct StoppingReport {
  gf2::BitMatrix rows{0};
  int rank = 0;
  cover::StoppingDistance stopping_distance{0, cover::DistanceKind::exact};
  bool all_rows_in_dual = false;
  int target_l = 0;
  Strategy strategy = Strategy::max_coverage;
  std::optional<std::uint64_t> seed;
  int required_rank = 0;
  // Randomized build only: residual potential right after the sampling stage.
  std::optional<std::uint64_t> delta_after_sampling;
  std::vector<BuildStep> steps;  // one entry per row added after any sampling

  // True when the matrix has full rank, all rows in the dual code, and
  // verified stopping distance at least target_l.
  bool ok() const {
    return rank == required_rank && all_rows_in_dual && stopping_distance.value >= target_l;
  }
};

// Greedy construction of a parity-check matrix with stopping distance >= l.
// Starts from the empty matrix and appends dual codewords until every i-set,
// i = 1..l-1, is covered and the rank reaches r. Strategy::max_coverage picks
// the candidate covering the most uncovered sets, a rank increase counting as
// one more, ties going to the smaller span-enumeration index;
// Strategy::lexicographic walks the span in enumeration order and keeps every
// row with positive gain. Candidates come from the full dual span when it is
// small enough, otherwise from the minimum-weight dual words plus a seeded
// random sample (the seed has no other effect). Requires 4 <= l <= d; codes
// with d <= 3 (and targets l <= 3) short-circuit to a plain full-rank basis,
// which already has the best reachable stopping distance. The budget caps the
// number of tracked i-sets.
StoppingReport greedy_extend(const codes::LinearCode& code, int l,
                             Strategy strategy = Strategy::max_coverage,
                             std::uint64_t seed = 0,
                             std::uint64_t budget = cover::kDefaultBudget, int threads = 0);

// Two-stage randomized construction mirroring the probabilistic argument:
// t dual codewords sampled uniformly without replacement (reproducible from
// the seed), then greedy completion rows until the residual potential
// (uncovered i-sets for i = 3..l-1, plus the rank deficit) reaches zero. Each
// completion row must shrink the potential; when the candidate pool is the
// full dual span and (r-1)(l-1) <= 2^{l-1}, the per-step decrease is checked
// against the analytic contraction factor. Requires 4 <= l <= d and
// r <= t < 2^r - 1.
StoppingReport randomized_extend(const codes::LinearCode& code, int l, int t, std::uint64_t seed,
                                 std::uint64_t budget = cover::kDefaultBudget, int threads = 0);

// Independent check of a finished matrix: rows lie in the dual (orthogonal to
// the generator), rank equals r, and no stopping set of size < l exists (an
// exhaustive search over the sizes 1..l-1).
StoppingReport verify(const gf2::BitMatrix& rows, const codes::LinearCode& code, int l,
                      std::uint64_t budget = cover::kDefaultBudget, int threads = 0);

}  // namespace stopred::construct
