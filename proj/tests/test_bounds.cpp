#include <algorithm>
#include <random>
#include <vector>

#include "doctest.h"
#include "stopred/bounds.hpp"
#include "stopred/codes.hpp"
#include "stopred/cover.hpp"
#include "stopred/errors.hpp"

using stopred::BigInt;
using stopred::BigRational;
using stopred::BudgetError;
using namespace stopred::bounds;

namespace {

// Counts i-sets over {0..n-1} whose projection on each given row has weight
// one for no row (brute-force "uncovered" oracle).
BigInt brute_uncovered(const stopred::gf2::BitMatrix& rows, int n, int i) {
  BigInt misses = 0;
  stopred::cover::ISetEnumerator e(n, i);
  while (!e.done()) {
    bool covered = false;
    for (const auto& row : rows.rows())
      if (overlap(row, e.mask()) == 1) covered = true;
    if (!covered) ++misses;
    e.next();
  }
  return misses;
}

stopred::gf2::BitVector window_row(int n, int lo, int len) {
  stopred::gf2::BitVector v(n);
  for (int i = 0; i < len; ++i) v.set(lo + i);
  return v;
}

BigRational rank_tail(int s) {
  BigRational half_power(BigInt(1), BigInt(1) << s);
  BigRational tail = BigRational(BigInt(2), BigInt(3)) / BigRational((BigInt(1) << (s + 1)) - 1);
  return half_power * (BigRational(1) + tail);
}

}  // namespace

TEST_CASE("binomials") {
  CHECK(binom(24, 3) == 2024);
  CHECK(binom(17, 0) == 1);
  CHECK(binom(48, 11) == BigInt("22595200368"));
  CHECK(binom(5, 9) == 0);
  CHECK(binom(-2, 1) == 0);
  CHECK(binom(7, -1) == 0);

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    int n = 1 + static_cast<int>(rng() % 40);
    int k = static_cast<int>(rng() % (static_cast<unsigned>(n) + 1));
    CHECK(binom(n, k) == binom(n - 1, k - 1) + binom(n - 1, k));
  }
}

TEST_CASE("partial binomial sums hit every published baseline") {
  const long long golay[] = {78, 298, 793, 1585, 2509};
  for (int l = 4; l <= 8; ++l) CHECK(partial_binom_sum(12, l - 2) == golay[l - 4]);

  const long long qr[] = {300,    2324,    12950,   55454,  190050,
                          536154, 1271625, 2579129, 4540385};
  for (int l = 4; l <= 12; ++l) CHECK(partial_binom_sum(24, l - 2) == qr[l - 4]);

  CHECK(partial_binom_sum(12, 0) == 0);
  CHECK(partial_binom_sum(3, 10) == 7);  // saturates at 2^r - 1
}

TEST_CASE("single-row uncovered counts") {
  CHECK(uncovered_single(24, 8, 3) == 1064);
  CHECK(uncovered_single(48, 12, 3) == 9736);

  // An all-ones dual word covers nothing of size two or more.
  for (int i = 2; i <= 5; ++i) CHECK(uncovered_single(10, 10, i) == binom(10, i));
  CHECK(uncovered_single(10, 10, 1) == 0);

  const int n = 11, w = 4;
  stopred::gf2::BitMatrix one_row(n);
  one_row.append_row(window_row(n, 0, w));
  for (int i = 1; i <= 5; ++i) CHECK(uncovered_single(n, w, i) == brute_uncovered(one_row, n, i));
}

TEST_CASE("pair coverage matches brute force at every overlap") {
  CHECK(min_pair_coverage(24, 8, 3) == 1408);
  CHECK(pair_coverage(24, 8, 0, 3) == 1408);
  CHECK(min_pair_coverage(48, 12, 3) == 11430);
  CHECK(pair_coverage(48, 12, 6, 3) == 11430);

  const int n = 12, w = 4;
  for (int delta = 0; delta <= w / 2; ++delta) {
    stopred::gf2::BitVector h1 = window_row(n, 0, w);
    stopred::gf2::BitVector h2 = window_row(n, w - delta, w);
    REQUIRE(overlap(h1, h2) == delta);
    for (int i = 2; i <= 4; ++i) {
      BigInt covered = 0;
      stopred::cover::ISetEnumerator e(n, i);
      while (!e.done()) {
        if (overlap(h1, e.mask()) == 1 || overlap(h2, e.mask()) == 1) ++covered;
        e.next();
      }
      CHECK(pair_coverage(n, w, delta, i) == covered);
    }
  }

  for (int i = 2; i <= 4; ++i) {
    BigInt best = pair_coverage(n, w, 0, i);
    for (int delta = 1; delta <= w / 2; ++delta)
      best = std::min(best, pair_coverage(n, w, delta, i));
    CHECK(min_pair_coverage(n, w, i) == best);
    CHECK(min_pair_coverage(n, w, i) <= BigInt(2) * w * binom(n - w, i - 1));
  }
}

TEST_CASE("rank decrease inequality") {
  CHECK(rank_decrease_inequality_holds(12, 8, BigRational(1), BigRational(100)));
  CHECK(rank_decrease_inequality_holds(12, 8, BigRational(10), BigRational(0)));
  CHECK(rank_decrease_inequality_holds(3, 4, BigRational(1), BigRational(7)));
  CHECK(rank_decrease_inequality_holds(12, 8, BigRational(7, 2), BigRational(100)));

  CHECK_THROWS_AS(rank_decrease_inequality_holds(2, 3, BigRational(1), BigRational(0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(rank_decrease_inequality_holds(12, 8, BigRational(11), BigRational(0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(rank_decrease_inequality_holds(12, 8, BigRational(1), BigRational(4096)),
                  std::invalid_argument);
  // (r-1)(d-1) too large for the precondition region.
  CHECK_THROWS_AS(rank_decrease_inequality_holds(24, 8, BigRational(1), BigRational(0)),
                  std::invalid_argument);
}

TEST_CASE("expected potential closed forms") {
  BoundQuery zeros;
  zeros.n = 24;
  zeros.r = 12;
  zeros.target = 8;
  zeros.tau = 0;
  stopred::cover::CoverageProfile empty_u;
  empty_u.n = 24;
  empty_u.i_lo = 3;
  empty_u.i_hi = 7;
  empty_u.u.assign(5, BigInt(0));
  zeros.u = empty_u;
  CHECK(expected_potential(zeros, 12) == BigRational(5, 3));

  // A factor that hits zero removes its whole term.
  BoundQuery vanish;
  vanish.n = 10;
  vanish.r = 3;
  vanish.target = 4;
  vanish.tau = 4;
  stopred::cover::CoverageProfile one;
  one.n = 10;
  one.i_lo = 3;
  one.i_hi = 3;
  one.u = {BigInt(1)};
  vanish.u = one;
  CHECK(expected_potential(vanish, 3) == BigRational(5, 3));

  // Negative factors clamp the term to zero rather than going below it.
  BoundQuery neg;
  neg.n = 10;
  neg.r = 4;
  neg.target = 5;
  neg.tau = 0;
  stopred::cover::CoverageProfile seven;
  seven.n = 10;
  seven.i_lo = 3;
  seven.i_hi = 4;
  seven.u = {BigInt(7), BigInt(0)};
  neg.u = seven;
  CHECK(expected_potential(neg, 11) == rank_tail(7));
}

TEST_CASE("expected potential against a direct rational recomputation") {
  BoundQuery q;
  q.n = 20;
  q.r = 6;
  q.target = 5;
  q.tau = 1;
  stopred::cover::CoverageProfile u;
  u.n = 20;
  u.i_lo = 3;
  u.i_hi = 4;
  u.u = {BigInt(50), BigInt(30)};
  q.u = u;

  const int t = 7;
  BigRational expected = rank_tail(t - q.r);
  for (int i = 3; i <= 4; ++i) {
    BigRational term = i == 3 ? BigRational(50) : BigRational(30);
    for (int j = q.tau + 1; j <= q.tau + t; ++j)
      term *= BigRational(BigInt(64 - j) - BigInt(i) * (BigInt(1) << (6 - i)), BigInt(64 - j));
    expected += term;
  }
  CHECK(expected_potential(q, t) == expected);
}

TEST_CASE("refinement rows") {
  CHECK(refinement_rows(BigInt(0), 12, 8, 2, 12) == 0);
  CHECK(refinement_rows(BigInt(1), 12, 8, 2, 12) == 1);

  // Hand-iterated chain: 10 -> 5 -> 2 -> 1 -> 0.
  CHECK(refinement_rows(BigInt(10), 5, 4, 0, 5) == 4);

  // A non-positive shrink factor ends the chain at that step.
  CHECK(refinement_rows(BigInt(1) << 40, 5, 6, 0, 26) == 1);

  // All 2^r - 1 nonzero words used up before the potential dies.
  CHECK_THROWS_AS(refinement_rows(BigInt(1), 5, 6, 0, 31), BudgetError);

  for (int d1 = 0; d1 < 200; ++d1)
    CHECK(refinement_rows(BigInt(d1), 12, 8, 2, 12) <=
          refinement_rows(BigInt(d1 + 1), 12, 8, 2, 12));
}

TEST_CASE("redundancy bound validation and reproduction") {
  BoundQuery q;
  q.n = 24;
  q.r = 12;
  q.target = 8;
  q.tau = 0;
  q.u = full_profile(24, 3, 7);

  BoundResult res = redundancy_bound(q);
  CHECK(res.total == 182);
  CHECK(res.variant == Variant::general);
  CHECK(res.total == q.tau + res.t_star + res.extra_rows);
  CHECK_FALSE(res.trace.empty());
  bool saw_star = false;
  for (const auto& entry : res.trace)
    if (entry.t == res.t_star && entry.extra_rows == res.extra_rows) saw_star = true;
  CHECK(saw_star);

  BoundQuery bad = q;
  bad.r = 24;
  bad.n = 48;
  bad.u = full_profile(48, 3, 7);
  CHECK_THROWS_AS(redundancy_bound(bad), std::invalid_argument);

  BoundQuery bad_target = q;
  bad_target.target = 3;
  CHECK_THROWS_AS(redundancy_bound(bad_target), std::invalid_argument);

  BoundQuery short_profile = q;
  short_profile.u = full_profile(24, 4, 7);
  CHECK_THROWS_AS(redundancy_bound(short_profile), std::invalid_argument);
}

TEST_CASE("hierarchy bound variants") {
  BoundResult l8 = hierarchy_bound(24, 12, 8, 8);
  CHECK(l8.total == 177);
  CHECK(l8.variant == Variant::conditional);

  BoundResult l4 = hierarchy_bound(24, 12, 8, 4);
  CHECK(l4.total == 25);
  CHECK(l4.variant == Variant::rank_completion);

  // Same engine as the two-fixed-rows redundancy query at l = d.
  BoundQuery cor2;
  cor2.n = 24;
  cor2.r = 12;
  cor2.target = 8;
  cor2.tau = 2;
  cor2.u = pair_profile(24, 8, 3, 7);
  CHECK(redundancy_bound(cor2).total == l8.total);

  // All-covered override: only rank completion is left to pay for.
  stopred::cover::CoverageProfile zero;
  zero.n = 24;
  zero.i_lo = 3;
  zero.i_hi = 3;
  zero.u = {BigInt(0)};
  BoundResult covered = hierarchy_bound(24, 12, 8, 4, zero);
  CHECK(covered.total == 23);
  CHECK(covered.t_star == 12);
  CHECK(covered.extra_rows == 0);

  CHECK_THROWS_AS(hierarchy_bound(24, 12, 8, 3), std::invalid_argument);
  CHECK_THROWS_AS(hierarchy_bound(24, 12, 0, 4), std::invalid_argument);
}

TEST_CASE("kappa grows with the potential") {
  int prev = 0;
  for (int d = 0; d <= 300; ++d) {
    int k = refinement_rows(BigInt(d), 12, 8, 2, 14);
    CHECK(k >= prev);
    prev = k;
  }
}

TEST_CASE("hybrid bound") {
  stopred::codes::LinearCode golay = stopred::codes::golay24();

  CHECK(hybrid_bound(golay, 12, 4).total == 33);
  CHECK(hybrid_bound(golay, 2, 8).total <= hierarchy_bound(24, 12, 8, 8).total);

  CHECK_THROWS_AS(hybrid_bound(golay, 0, 4), std::invalid_argument);
  CHECK_THROWS_AS(hybrid_bound(golay, 13, 4), std::invalid_argument);
  CHECK_THROWS_AS(hybrid_bound(golay, 2, 9), std::invalid_argument);
  CHECK_THROWS_AS(hybrid_bound(golay, 2, 8, 10), BudgetError);
}
