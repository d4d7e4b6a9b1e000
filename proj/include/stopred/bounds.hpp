#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "stopred/bigint.hpp"
#include "stopred/codes.hpp"
#include "stopred/cover.hpp"

namespace stopred::bounds {

// C(n, k) with combinatorial semantics: 0 whenever k < 0 or n < k (negative
// tops included), exact otherwise.
BigInt binom(long long n, long long k);

// Sum of C(r, i) for i = 1..m. The classical redundant-row upper bound:
// with m = d-2 it bounds the full stopping redundancy, with m = l-2 the
// l-th hierarchy value.
BigInt partial_binom_sum(int r, int m);

// Checks b - (2^r - 2^{r-b}) / (2^r - x) <= b * (1 - (d-1) 2^{r-d+1} / (2^r - x)),
// the inequality behind the per-row rank-deficit decrease. Preconditions:
// r >= 3, 1 <= b <= r-2, (r-1)(d-1) <= 2^{d-1}, x < 2^r. For non-integer b the
// irrational 2^{r-b} is replaced by a dyadic upper bound (exact integer
// root isolation), so a `true` verdict is conservative.
bool rank_decrease_inequality_holds(int r, int d, const BigRational& b, const BigRational& x);

// i-sets left uncovered by one fixed dual row of weight w:
// C(n, i) - w C(n-w, i-1).
BigInt uncovered_single(int n, int w, int i);

// i-sets covered by a specific pair of weight-w dual rows whose supports
// overlap in `delta` positions:
// 2w C(n-w, i-1) - delta C(n-2w+delta, i-1) - (w-delta)^2 C(n-2w+delta, i-2).
BigInt pair_coverage(int n, int w, int delta, int i);

// Guaranteed coverage of any two distinct weight-w dual rows: the minimum of
// pair_coverage over delta in [0, floor(w/2)] (supports of two distinct
// minimum-weight dual words overlap in at most floor(w/2) positions).
BigInt min_pair_coverage(int n, int w, int i);

// Closed-form coverage profiles for the analytic bound modes.
cover::CoverageProfile full_profile(int n, int i_lo, int i_hi);                 // tau = 0
cover::CoverageProfile single_row_profile(int n, int dual_w, int i_lo, int i_hi);
cover::CoverageProfile pair_profile(int n, int dual_w, int i_lo, int i_hi);

struct BoundQuery {
  int n = 0;
  int r = 0;       // redundancy
  int target = 0;  // stopping distance the bound aims at (d, or l for hierarchy work)
  int tau = 0;     // rows fixed up front
  cover::CoverageProfile u;  // i range must be [3, target-1]
};

// Expected residual potential (uncovered sets plus rank deficit) after tau
// fixed rows and t random distinct dual rows: the set terms
// u_i * prod_{j=tau+1}^{tau+t} (1 - i 2^{r-i} / (2^r - j)), any term whose
// factor goes negative clamped to zero, plus the rank term
// 2^{-(t-r)} (1 + (2/3) / (2^{t-r+1} - 1)). Exact rational; requires t >= r.
BigRational expected_potential(const BoundQuery& q, int t);

// Smallest k such that k refinement steps drive `potential_floor` to zero,
// each step x -> floor(x * (1 - (target-1) 2^{r-target+1} / (2^r - (tau+t+j)))),
// a non-positive factor clamping x to zero. Throws BudgetError if the row
// count tau+t+k would reach 2^r - 1 first.
int refinement_rows(const BigInt& potential_floor, int r, int target, int tau, int t);

enum class Variant { general, rank_completion, conditional, baseline };

struct TraceEntry {
  int t = 0;
  BigInt potential_floor;  // floor of the expected potential at this t
  int extra_rows = 0;      // refinement rows needed from it
};

struct BoundResult {
  long long total = 0;
  int t_star = 0;      // t achieving the minimum (smallest such t)
  int extra_rows = 0;  // refinement rows at t_star
  Variant variant = Variant::general;
  std::vector<TraceEntry> trace;  // one entry per evaluated t, ascending
};

// Full-target bound: tau + min_{t >= r} { t + refinement rows }. Requires
// (r-1)(target-1) <= 2^{target-1}. The scan stops at the first t that cannot
// improve on the best total seen (t >= best).
BoundResult redundancy_bound(const BoundQuery& q);

// Hierarchy bound for 4 <= l <= d with tau fixed minimum-weight dual rows
// (two by default, matching the analytic pair profile). Always computes the
// rank-completion variant tau + min_t{t + kappa} + (r - l + 1) whose
// potential has no rank term; additionally computes the conditional variant
// tau + min_t{t + kappa} (rank term included) when (r-1)(l-1) <= 2^{l-1},
// and returns the smaller. `u_override` replaces the analytic pair profile
// (used by the hybrid mode).
BoundResult hierarchy_bound(int n, int r, int dual_w, int l,
                            const std::optional<cover::CoverageProfile>& u_override = {},
                            int tau = 2);

// Hybrid bound: exact uncovered counts of the first tau rows of the code's
// parity-check matrix feed the hierarchy variants. Requires those rows to be
// linearly independent.
BoundResult hybrid_bound(const codes::LinearCode& code, int tau, int l,
                         std::uint64_t budget = cover::kDefaultBudget, int threads = 0);

}  // namespace stopred::bounds
