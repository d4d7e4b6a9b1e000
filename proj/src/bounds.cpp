#include "stopred/bounds.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bigbinom.hpp"

namespace stopred::bounds {

namespace {

BigInt pow2(int e) { return BigInt(1) << e; }

// Numerator and denominator of the rank-deficit term
// 2^{-s} (1 + (2/3) / (2^{s+1} - 1)) for s = t - r >= 0.
std::pair<BigInt, BigInt> rank_term(int s) {
  BigInt num = 3 * pow2(s + 1) - 1;
  BigInt den = 3 * pow2(s) * (pow2(s + 1) - 1);
  return {std::move(num), std::move(den)};
}

void validate_query(const BoundQuery& q) {
  if (q.n < 1) throw std::invalid_argument("bound query: n must be positive");
  if (q.r < 1 || q.r > q.n) throw std::invalid_argument("bound query: r out of range");
  if (q.target < 4 || q.target > q.r + 1)
    throw std::invalid_argument("bound query: target stopping distance must be in [4, r+1]");
  if (q.tau < 0) throw std::invalid_argument("bound query: tau must be nonnegative");
  if (q.u.n != q.n) throw std::invalid_argument("bound query: profile is for a different n");
  if (q.u.i_lo > 3 || q.u.i_hi < q.target - 1)
    throw std::invalid_argument("bound query: profile must cover sizes 3 through target-1");
  for (int i = 3; i <= q.target - 1; ++i)
    if (q.u.at(i) < 0) throw std::invalid_argument("bound query: negative uncovered count");
}

// Shared minimisation over t >= r of t + refinement_rows(floor(potential)).
// The potential's set terms are maintained incrementally: per size i a running
// numerator product and one denominator common to all sizes, every factor
// scaled by 2^{target-1} so the denominators agree across sizes.
struct ScanOutcome {
  long long best = 0;
  int t_star = 0;
  int extra = 0;
  std::vector<TraceEntry> trace;
};

ScanOutcome scan_best_t(const BoundQuery& q, bool include_rank_term) {
  const int r = q.r, tau = q.tau, target = q.target;
  const BigInt two_r = pow2(r);
  const int imax = target - 1;
  const BigInt scale = pow2(imax);

  std::vector<BigInt> weights, nums, offsets;
  for (int i = 3; i <= imax; ++i) {
    const BigInt& u = q.u.at(i);
    if (u == 0) continue;
    weights.push_back(u);
    nums.push_back(1);
    // Scaled constant subtracted from each factor's numerator:
    // i 2^{r-i} / (2^r - j) == (i 2^{imax-i} 2^r) / (2^{imax} (2^r - j)).
    offsets.push_back(BigInt(i) * pow2(imax - i) * two_r);
  }

  BigInt common_den = 1;
  auto push_factor = [&](int j) {
    if (BigInt(j) >= two_r)
      throw BudgetError("bound scan: row index " + std::to_string(j) +
                        " reached the dual span size");
    BigInt base = scale * (two_r - j);
    common_den *= base;
    for (std::size_t p = 0; p < nums.size(); ++p) {
      if (nums[p] == 0) continue;
      BigInt f = base - offsets[p];
      if (f <= 0)
        nums[p] = 0;  // the factor chain went nonpositive, the term stays dead
      else
        nums[p] *= f;
    }
  };
  for (int j = tau + 1; j <= tau + r; ++j) push_factor(j);

  ScanOutcome out;
  out.best = std::numeric_limits<long long>::max();
  for (int t = r;; ++t) {
    if (t > r) push_factor(tau + t);
    if (static_cast<long long>(t) >= out.best) break;

    BigInt weighted = 0;
    for (std::size_t p = 0; p < nums.size(); ++p)
      if (nums[p] != 0) weighted += weights[p] * nums[p];

    BigInt floor_val;
    if (include_rank_term) {
      auto [rnum, rden] = rank_term(t - r);
      floor_val = (weighted * rden + rnum * common_den) / (common_den * rden);
    } else {
      floor_val = weighted / common_den;
    }

    int extra = refinement_rows(floor_val, r, target, tau, t);
    out.trace.push_back(TraceEntry{t, floor_val, extra});
    long long total = static_cast<long long>(t) + extra;
    if (total < out.best) {
      out.best = total;
      out.t_star = t;
      out.extra = extra;
    }
  }
  return out;
}

BoundResult result_from_scan(ScanOutcome&& scan, int tau, int completion_rows, Variant variant) {
  BoundResult res;
  res.total = tau + scan.best + completion_rows;
  res.t_star = scan.t_star;
  res.extra_rows = scan.extra;
  res.variant = variant;
  res.trace = std::move(scan.trace);
  return res;
}

}  // namespace

BigInt binom(long long n, long long k) { return detail::big_binom(n, k); }

BigInt partial_binom_sum(int r, int m) {
  BigInt total = 0;
  for (int i = 1; i <= m; ++i) total += detail::big_binom(r, i);
  return total;
}

bool rank_decrease_inequality_holds(int r, int d, const BigRational& b, const BigRational& x) {
  if (r < 3) throw std::invalid_argument("rank decrease check: r must be at least 3");
  if (BigInt(r - 1) * (d - 1) > pow2(d - 1))
    throw std::invalid_argument("rank decrease check: (r-1)(d-1) <= 2^{d-1} violated");
  if (b < 1 || b > r - 2)
    throw std::invalid_argument("rank decrease check: b must lie in [1, r-2]");
  if (x < 0 || x >= pow2(r))
    throw std::invalid_argument("rank decrease check: x must lie in [0, 2^r)");

  // The row-count variable cancels: with 2^r - x > 0 both sides reduce to
  // 2^r - 2^{r-b} >= b (d-1) 2^{r-d+1}. When d exceeds r+1 the power of two
  // on the right is fractional, so keep it as rhs_num / rhs_den.
  const BigInt p = numerator(b), q = denominator(b);
  const int e = r - d + 1;
  const BigInt rhs_num = e >= 0 ? BigInt(d - 1) * pow2(e) : BigInt(d - 1);
  const BigInt rhs_den = e >= 0 ? BigInt(1) : pow2(-e);

  if (q == 1) {
    int bi = static_cast<int>(p);
    return (pow2(r) - pow2(r - bi)) * rhs_den >= p * rhs_num;
  }

  // Non-integer b: replace 2^{r-b} with the dyadic upper bound m / 2^s where
  // m is the least integer with m^q >= 2^{q(r+s)-p}. A verdict of `true` is
  // then conservative.
  if (q > 1024) throw std::invalid_argument("rank decrease check: denominator of b too large");
  const int s = 192;
  BigInt exponent = q * (r + s) - p;  // positive: b <= r - 2
  unsigned qi = static_cast<unsigned>(q);
  BigInt threshold = BigInt(1) << static_cast<unsigned>(exponent);
  BigInt lo = 1, hi = BigInt(1) << static_cast<unsigned>((exponent + q - 1) / q + 1);
  while (lo < hi) {
    BigInt mid = (lo + hi) / 2;
    if (boost::multiprecision::pow(mid, qi) >= threshold)
      hi = mid;
    else
      lo = mid + 1;
  }
  // Compare 2^r - m/2^s >= (p/q) rhs_num/rhs_den, all scaled by q 2^s rhs_den.
  return q * (pow2(r + s) - lo) * rhs_den >= p * rhs_num * pow2(s);
}

BigInt uncovered_single(int n, int w, int i) {
  return detail::big_binom(n, i) - BigInt(w) * detail::big_binom(n - w, i - 1);
}

BigInt pair_coverage(int n, int w, int delta, int i) {
  return BigInt(2) * w * detail::big_binom(n - w, i - 1) -
         BigInt(delta) * detail::big_binom(n - 2 * w + delta, i - 1) -
         BigInt(w - delta) * (w - delta) * detail::big_binom(n - 2 * w + delta, i - 2);
}

BigInt min_pair_coverage(int n, int w, int i) {
  BigInt best = pair_coverage(n, w, 0, i);
  for (int delta = 1; delta <= w / 2; ++delta) best = std::min(best, pair_coverage(n, w, delta, i));
  return best;
}

namespace {

cover::CoverageProfile make_profile(int n, int i_lo, int i_hi) {
  if (n < 1 || i_lo < 0 || i_lo > i_hi || i_hi > n)
    throw std::invalid_argument("coverage profile: bad size range");
  cover::CoverageProfile p;
  p.n = n;
  p.i_lo = i_lo;
  p.i_hi = i_hi;
  p.source_rows = gf2::BitMatrix(n);
  p.exact = false;
  return p;
}

}  // namespace

cover::CoverageProfile full_profile(int n, int i_lo, int i_hi) {
  cover::CoverageProfile p = make_profile(n, i_lo, i_hi);
  for (int i = i_lo; i <= i_hi; ++i) p.u.push_back(detail::big_binom(n, i));
  return p;
}

cover::CoverageProfile single_row_profile(int n, int dual_w, int i_lo, int i_hi) {
  cover::CoverageProfile p = make_profile(n, i_lo, i_hi);
  for (int i = i_lo; i <= i_hi; ++i) p.u.push_back(uncovered_single(n, dual_w, i));
  return p;
}

cover::CoverageProfile pair_profile(int n, int dual_w, int i_lo, int i_hi) {
  cover::CoverageProfile p = make_profile(n, i_lo, i_hi);
  for (int i = i_lo; i <= i_hi; ++i)
    p.u.push_back(detail::big_binom(n, i) - min_pair_coverage(n, dual_w, i));
  return p;
}

BigRational expected_potential(const BoundQuery& q, int t) {
  validate_query(q);
  if (t < q.r) throw std::invalid_argument("expected_potential: t must be at least r");

  const BigInt two_r = pow2(q.r);
  const int imax = q.target - 1;
  const BigInt scale = pow2(imax);

  std::vector<BigInt> weights, nums, offsets;
  for (int i = 3; i <= imax; ++i) {
    const BigInt& u = q.u.at(i);
    if (u == 0) continue;
    weights.push_back(u);
    nums.push_back(1);
    offsets.push_back(BigInt(i) * pow2(imax - i) * two_r);
  }
  BigInt common_den = 1;
  for (int j = q.tau + 1; j <= q.tau + t; ++j) {
    if (BigInt(j) >= two_r)
      throw BudgetError("expected_potential: row index reached the dual span size");
    BigInt base = scale * (two_r - j);
    common_den *= base;
    for (std::size_t p = 0; p < nums.size(); ++p) {
      if (nums[p] == 0) continue;
      BigInt f = base - offsets[p];
      if (f <= 0)
        nums[p] = 0;
      else
        nums[p] *= f;
    }
  }
  BigInt weighted = 0;
  for (std::size_t p = 0; p < nums.size(); ++p)
    if (nums[p] != 0) weighted += weights[p] * nums[p];

  auto [rnum, rden] = rank_term(t - q.r);
  return BigRational(weighted, common_den) + BigRational(rnum, rden);
}

int refinement_rows(const BigInt& potential_floor, int r, int target, int tau, int t) {
  if (potential_floor < 0) throw std::invalid_argument("refinement_rows: negative potential");
  if (target < 4 || target > r + 1)
    throw std::invalid_argument("refinement_rows: target must lie in [4, r+1]");
  const BigInt two_r = pow2(r);
  const BigInt shrink = BigInt(target - 1) * pow2(r - target + 1);
  BigInt x = potential_floor;
  int k = 0;
  while (x > 0) {
    if (BigInt(tau) + t + k >= two_r - 1)
      throw BudgetError("refinement_rows: every nonzero dual word is already in use");
    ++k;
    BigInt den = two_r - (tau + t + k);
    BigInt num = den - shrink;
    if (num <= 0) {
      // A non-positive factor means some row wipes out the rest at once.
      x = 0;
      break;
    }
    x = x * num / den;  // floor: all quantities nonnegative
  }
  return k;
}

BoundResult redundancy_bound(const BoundQuery& q) {
  validate_query(q);
  if (BigInt(q.r - 1) * (q.target - 1) > pow2(q.target - 1))
    throw std::invalid_argument("redundancy_bound: (r-1)(d-1) <= 2^{d-1} violated");
  return result_from_scan(scan_best_t(q, true), q.tau, 0, Variant::general);
}

BoundResult hierarchy_bound(int n, int r, int dual_w, int l,
                            const std::optional<cover::CoverageProfile>& u_override, int tau) {
  if (l < 4 || l > r + 1)
    throw std::invalid_argument("hierarchy_bound: l must lie in [4, r+1]");
  if (!u_override && tau != 2)
    throw std::invalid_argument(
        "hierarchy_bound: the built-in profile assumes two fixed rows; pass a profile for "
        "other tau");
  if (!u_override && (dual_w < 1 || dual_w > n))
    throw std::invalid_argument("hierarchy_bound: dual minimum weight out of range");

  BoundQuery q;
  q.n = n;
  q.r = r;
  q.target = l;
  q.tau = tau;
  q.u = u_override ? *u_override : pair_profile(n, dual_w, 3, l - 1);
  validate_query(q);

  BoundResult completion =
      result_from_scan(scan_best_t(q, false), tau, r - l + 1, Variant::rank_completion);

  if (BigInt(r - 1) * (l - 1) <= pow2(l - 1)) {
    BoundResult conditional = result_from_scan(scan_best_t(q, true), tau, 0, Variant::conditional);
    if (conditional.total <= completion.total) return conditional;
  }
  return completion;
}

BoundResult hybrid_bound(const codes::LinearCode& code, int tau, int l, std::uint64_t budget,
                         int threads) {
  if (tau < 1 || tau > code.parity.row_count())
    throw std::invalid_argument("hybrid_bound: tau must select a prefix of the parity rows");
  if (code.min_distance && l > *code.min_distance)
    throw std::invalid_argument("hybrid_bound: l exceeds the code's minimum distance");

  gf2::BitMatrix prefix(code.n);
  for (int i = 0; i < tau; ++i) prefix.append_row(code.parity.row(i));
  if (gf2::rank(prefix) != tau)
    throw std::invalid_argument("hybrid_bound: the selected rows are linearly dependent");

  cover::CoverageProfile u = cover::uncovered_counts(prefix, 3, l - 1, budget, threads);
  return hierarchy_bound(code.n, code.redundancy(), code.dual_min_weight.value_or(0), l, u, tau);
}

}  // namespace stopred::bounds
