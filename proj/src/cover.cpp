#include "stopred/cover.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bigbinom.hpp"
#include "parallel.hpp"

namespace stopred::cover {

namespace {

// C(n, k) in uint64, throwing once the value leaves the enumerable range.
std::uint64_t binom_u64(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  constexpr std::uint64_t kCap = std::uint64_t(1) << 63;
  unsigned __int128 result = 1;
  for (int i = 1; i <= k; ++i) {
    result = result * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    if (result >= kCap)
      throw BudgetError("C(" + std::to_string(n) + ", " + std::to_string(k) +
                        ") exceeds the enumerable range");
  }
  return static_cast<std::uint64_t>(result);
}

}  // namespace

ISet ISet::of(std::vector<int> indices, int n) {
  for (std::size_t p = 0; p < indices.size(); ++p) {
    if (indices[p] < 1 || indices[p] > n)
      throw std::invalid_argument("ISet: index " + std::to_string(indices[p]) +
                                  " out of range [1, " + std::to_string(n) + "]");
    if (p > 0 && indices[p] <= indices[p - 1])
      throw std::invalid_argument("ISet: indices must be strictly increasing");
  }
  return ISet{std::move(indices)};
}

bool covers(const gf2::BitVector& h, const ISet& s) {
  int hits = 0;
  for (int idx : s.indices) {
    if (h.get(idx - 1) && ++hits > 1) return false;
  }
  return hits == 1;
}

bool is_stopping_set(const gf2::BitMatrix& m, const ISet& s) {
  for (const auto& row : m.rows())
    if (covers(row, s)) return false;
  return true;
}

const BigInt& CoverageProfile::at(int i) const {
  if (i < i_lo || i > i_hi)
    throw std::out_of_range("CoverageProfile: size " + std::to_string(i) +
                            " outside [" + std::to_string(i_lo) + ", " + std::to_string(i_hi) +
                            "]");
  return u[static_cast<std::size_t>(i - i_lo)];
}

CoverageProfile uncovered_counts(const gf2::BitMatrix& m, int i_lo, int i_hi,
                                 std::uint64_t budget, int threads) {
  int n = m.col_count();
  if (i_lo < 0 || i_lo > i_hi || i_hi > n)
    throw std::invalid_argument("uncovered_counts: bad size range [" + std::to_string(i_lo) +
                                ", " + std::to_string(i_hi) + "] for " + std::to_string(n) +
                                " columns");

  CoverageProfile profile;
  profile.n = n;
  profile.i_lo = i_lo;
  profile.i_hi = i_hi;
  profile.source_rows = m;
  profile.exact = true;

  if (m.row_count() == 0) {
    for (int i = i_lo; i <= i_hi; ++i) profile.u.push_back(detail::big_binom(n, i));
    return profile;
  }

  BigInt worst = 0;
  for (int i = i_lo; i <= i_hi; ++i) worst += detail::big_binom(n, i);
  worst *= m.row_count();
  if (worst > BigInt(budget))
    throw BudgetError("uncovered_counts: worst case needs " + worst.str() +
                      " coverage tests, budget is " + std::to_string(budget));

  int workers = detail::resolve_threads(threads);
  for (int i = i_lo; i <= i_hi; ++i) {
    std::uint64_t total = ISetEnumerator::count(n, i);
    std::vector<std::uint64_t> partial(static_cast<std::size_t>(std::max(1, workers)), 0);
    detail::parallel_chunks(total, workers, [&](int chunk, std::uint64_t lo, std::uint64_t hi) {
      ISetEnumerator sets(n, i);
      sets.seek(lo);
      std::uint64_t misses = 0;
      while (!sets.done() && sets.rank() < hi) {
        bool hit = false;
        for (const auto& row : m.rows()) {
          if (overlap(row, sets.mask()) == 1) {
            hit = true;
            break;
          }
        }
        if (!hit) ++misses;
        sets.next();
      }
      partial[static_cast<std::size_t>(chunk)] = misses;
    });
    BigInt u_i = 0;
    for (std::uint64_t p : partial) u_i += p;
    profile.u.push_back(std::move(u_i));
  }
  return profile;
}

StoppingDistance stopping_distance(const gf2::BitMatrix& m, int limit, std::uint64_t budget,
                                   int threads) {
  if (limit < 1) throw std::invalid_argument("stopping_distance: limit must be at least 1");
  int n = m.col_count();
  int top = std::min(limit, n);

  BigInt worst = 0;
  for (int s = 1; s <= top; ++s) worst += detail::big_binom(n, s);
  worst *= std::max(1, m.row_count());
  if (worst > BigInt(budget))
    throw BudgetError("stopping_distance: worst case needs " + worst.str() +
                      " coverage tests, budget is " + std::to_string(budget));

  int workers = detail::resolve_threads(threads);
  for (int s = 1; s <= top; ++s) {
    std::uint64_t total = ISetEnumerator::count(n, s);
    std::atomic<bool> found{false};
    detail::parallel_chunks(total, workers, [&](int, std::uint64_t lo, std::uint64_t hi) {
      ISetEnumerator sets(n, s);
      sets.seek(lo);
      while (!sets.done() && sets.rank() < hi) {
        if (found.load(std::memory_order_relaxed)) return;
        bool hit = false;
        for (const auto& row : m.rows()) {
          if (overlap(row, sets.mask()) == 1) {
            hit = true;
            break;
          }
        }
        if (!hit) {
          found.store(true, std::memory_order_relaxed);
          return;
        }
        sets.next();
      }
    });
    if (found.load()) return {s, DistanceKind::exact};
  }
  return {limit + 1, DistanceKind::at_least};
}

ISetEnumerator::ISetEnumerator(int n, int k) : n_(n), k_(k), mask_(std::max(n, 0)) {
  if (n < 0 || k < 0) throw std::invalid_argument("ISetEnumerator: negative parameters");
  if (k > n) {
    done_ = true;
    return;
  }
  c_.resize(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    c_[static_cast<std::size_t>(i)] = i;
    mask_.set(i);
  }
}

std::uint64_t ISetEnumerator::count(int n, int k) { return binom_u64(n, k); }

void ISetEnumerator::next() {
  if (done_) return;
  ++rank_;
  int j = 0;
  while (j < k_) {
    int bound = (j + 1 < k_) ? c_[static_cast<std::size_t>(j + 1)] : n_;
    if (c_[static_cast<std::size_t>(j)] + 1 < bound) break;
    ++j;
  }
  if (j == k_) {
    done_ = true;
    return;
  }
  // Indices below j collapse to their smallest values; index j moves up one.
  for (int i = 0; i < j; ++i) {
    mask_.set(c_[static_cast<std::size_t>(i)], false);
    c_[static_cast<std::size_t>(i)] = i;
    mask_.set(i);
  }
  mask_.set(c_[static_cast<std::size_t>(j)], false);
  ++c_[static_cast<std::size_t>(j)];
  mask_.set(c_[static_cast<std::size_t>(j)]);
}

void ISetEnumerator::seek(std::uint64_t rank) {
  std::uint64_t total = count(n_, k_);
  if (rank >= total) {
    rank_ = total;
    done_ = true;
    return;
  }
  done_ = false;
  rank_ = rank;
  mask_ = gf2::BitVector(n_);
  std::uint64_t remaining = rank;
  int upper = n_;  // exclusive bound for the next position down
  for (int j = k_ - 1; j >= 0; --j) {
    int c = upper - 1;
    while (binom_u64(c, j + 1) > remaining) --c;
    c_[static_cast<std::size_t>(j)] = c;
    remaining -= binom_u64(c, j + 1);
    upper = c;
  }
  for (int j = 0; j < k_; ++j) mask_.set(c_[static_cast<std::size_t>(j)]);
}

}  // namespace stopred::cover
