#include <algorithm>
#include <random>
#include <vector>

#include "doctest.h"
#include "stopred/codes.hpp"
#include "stopred/cover.hpp"
#include "stopred/errors.hpp"
#include "stopred/gf2.hpp"

using stopred::BigInt;
using stopred::BudgetError;
using stopred::cover::DistanceKind;
using stopred::cover::ISet;
using stopred::cover::ISetEnumerator;
using stopred::gf2::BitMatrix;
using stopred::gf2::BitVector;

namespace {

std::vector<std::vector<int>> brute_subsets(int n, int k) {
  std::vector<std::vector<int>> all;
  std::vector<int> pick(static_cast<std::size_t>(k));
  auto rec = [&](auto&& self, int next, int depth) -> void {
    if (depth == k) {
      all.push_back(pick);
      return;
    }
    for (int v = next; v < n; ++v) {
      pick[static_cast<std::size_t>(depth)] = v;
      self(self, v + 1, depth + 1);
    }
  };
  rec(rec, 0, 0);
  return all;
}

// Colex order: compare the largest differing element.
bool colex_less(const std::vector<int>& a, const std::vector<int>& b) {
  for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i)
    if (a[static_cast<std::size_t>(i)] != b[static_cast<std::size_t>(i)])
      return a[static_cast<std::size_t>(i)] < b[static_cast<std::size_t>(i)];
  return false;
}

}  // namespace

TEST_CASE("covers counts the projection weight") {
  BitVector h = BitVector::from_bits("10110");
  CHECK(stopred::cover::covers(h, ISet::of({1, 2}, 5)));
  CHECK_FALSE(stopred::cover::covers(h, ISet::of({1, 3}, 5)));   // weight 2
  CHECK_FALSE(stopred::cover::covers(h, ISet::of({2, 5}, 5)));   // weight 0
  CHECK(stopred::cover::covers(h, ISet::of({2, 3, 5}, 5)));

  CHECK_THROWS_AS(ISet::of({2, 1}, 5), std::invalid_argument);
  CHECK_THROWS_AS(ISet::of({0, 1}, 5), std::invalid_argument);
  CHECK_THROWS_AS(ISet::of({1, 6}, 5), std::invalid_argument);
}

TEST_CASE("stopping sets by definition") {
  BitMatrix m = BitMatrix::from_strings({"1100", "0110"});
  CHECK_FALSE(stopred::cover::is_stopping_set(m, ISet::of({1, 3}, 4)));
  CHECK(stopred::cover::is_stopping_set(m, ISet::of({1, 2, 3}, 4)));
  CHECK(stopred::cover::is_stopping_set(m, ISet::of({4}, 4)));  // zero column
}

TEST_CASE("iset enumeration is colexicographic") {
  auto expected = brute_subsets(8, 3);
  std::sort(expected.begin(), expected.end(), colex_less);

  ISetEnumerator e(8, 3);
  CHECK(ISetEnumerator::count(8, 3) == expected.size());
  std::size_t at = 0;
  while (!e.done()) {
    REQUIRE(at < expected.size());
    CHECK(e.positions() == expected[at]);
    CHECK(e.rank() == at);
    for (int b = 0; b < 8; ++b) {
      bool member = std::find(expected[at].begin(), expected[at].end(), b) != expected[at].end();
      CHECK(e.mask().get(b) == member);
    }
    e.next();
    ++at;
  }
  CHECK(at == expected.size());

  // seek jumps to an arbitrary rank with the same state as stepping there.
  for (std::uint64_t target : {0u, 1u, 17u, 41u, 55u}) {
    ISetEnumerator s(8, 3);
    s.seek(target);
    CHECK(s.positions() == expected[target]);
    CHECK(s.rank() == target);
  }
  ISetEnumerator past(8, 3);
  past.seek(56);
  CHECK(past.done());
}

TEST_CASE("iset enumeration edge sizes") {
  ISetEnumerator empty(5, 0);
  CHECK(ISetEnumerator::count(5, 0) == 1);
  CHECK_FALSE(empty.done());
  CHECK(empty.positions().empty());
  empty.next();
  CHECK(empty.done());

  ISetEnumerator none(3, 4);
  CHECK(none.done());
  CHECK(ISetEnumerator::count(3, 4) == 0);
}

TEST_CASE("uncovered_counts matches a naive recount") {
  std::mt19937_64 rng(57);
  for (int trial = 0; trial < 15; ++trial) {
    BitMatrix m(9);
    for (int i = 0; i < 4; ++i) {
      BitVector v(9);
      for (int j = 0; j < 9; ++j)
        if (rng() & 1) v.set(j);
      m.append_row(std::move(v));
    }
    auto profile = stopred::cover::uncovered_counts(m, 1, 4);
    CHECK(profile.exact);
    for (int i = 1; i <= 4; ++i) {
      BigInt naive = 0;
      ISetEnumerator e(9, i);
      while (!e.done()) {
        bool covered = false;
        for (const auto& row : m.rows())
          if (overlap(row, e.mask()) == 1) covered = true;
        if (!covered) ++naive;
        e.next();
      }
      CHECK(profile.at(i) == naive);
    }
  }
}

TEST_CASE("uncovered_counts with no rows is a closed form") {
  BitMatrix empty(10);
  auto profile = stopred::cover::uncovered_counts(empty, 1, 3);
  CHECK(profile.at(1) == 10);
  CHECK(profile.at(2) == 45);
  CHECK(profile.at(3) == 120);
  CHECK_THROWS_AS(profile.at(4), std::out_of_range);
  CHECK_THROWS_AS(profile.at(0), std::out_of_range);
}

TEST_CASE("uncovered_counts honours the budget") {
  BitMatrix m = BitMatrix::identity(20);
  CHECK_THROWS_AS(stopred::cover::uncovered_counts(m, 1, 5, 100), BudgetError);
}

TEST_CASE("stopping distance search") {
  CHECK(stopred::cover::stopping_distance(BitMatrix::identity(6), 6).kind ==
        DistanceKind::at_least);
  CHECK(stopred::cover::stopping_distance(BitMatrix::identity(6), 6).value == 7);

  BitMatrix m = BitMatrix::from_strings({"1100", "0110"});
  auto sd = stopred::cover::stopping_distance(m, 4);
  CHECK(sd.kind == DistanceKind::exact);
  CHECK(sd.value == 1);  // the all-zero fourth column

  BitMatrix no_zero = BitMatrix::from_strings({"110", "011"});
  auto sd3 = stopred::cover::stopping_distance(no_zero, 3);
  CHECK(sd3.kind == DistanceKind::exact);
  CHECK(sd3.value == 3);
  auto capped = stopred::cover::stopping_distance(no_zero, 2);
  CHECK(capped.kind == DistanceKind::at_least);
  CHECK(capped.value == 3);

  CHECK_THROWS_AS(stopred::cover::stopping_distance(BitMatrix::identity(24), 10, 50),
                  BudgetError);
  CHECK_THROWS_AS(stopred::cover::stopping_distance(no_zero, 0), std::invalid_argument);
}

TEST_CASE("stopping distance is thread independent") {
  BitMatrix golay = stopred::codes::golay24().parity;
  auto one = stopred::cover::stopping_distance(golay, 4, stopred::cover::kDefaultBudget, 1);
  auto many = stopred::cover::stopping_distance(golay, 4, stopred::cover::kDefaultBudget, 4);
  CHECK(one.value == many.value);
  CHECK((one.kind == many.kind));
}
