#include "stopred/construct.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bigbinom.hpp"
#include "stopred/gf2.hpp"

namespace stopred::construct {

namespace {

using gf2::BitMatrix;
using gf2::BitVector;
using gf2::SpanEnumerator;

// Spans up to this size enumerate every nonzero word as a candidate; larger
// spans fall back to the minimum-weight words plus a seeded random sample.
constexpr std::uint64_t kFullPoolCap = std::uint64_t(1) << 16;
constexpr std::size_t kCensusPoolCap = std::size_t(1) << 15;
constexpr std::uint64_t kSamplePoolCount = std::uint64_t(1) << 13;

bool covers_mask(const std::uint64_t* h, const std::uint64_t* s, int words) {
  int hits = 0;
  for (int w = 0; w < words; ++w) {
    hits += std::popcount(h[w] & s[w]);
    if (hits > 1) return false;
  }
  return hits == 1;
}

// Incremental rank bookkeeping: a reduced independent row per pivot column.
class RankTracker {
 public:
  int rank() const { return static_cast<int>(rows_.size()); }

  bool would_increase(const BitVector& v) const { return !reduce(v).is_zero(); }

  bool add(const BitVector& v) {
    BitVector w = reduce(v);
    if (w.is_zero()) return false;
    rows_.push_back(std::move(w));
    return true;
  }

 private:
  BitVector reduce(BitVector w) const {
    for (bool progressed = true; progressed && !w.is_zero();) {
      progressed = false;
      int lead = w.leading_bit();
      for (const auto& row : rows_) {
        if (row.leading_bit() == lead) {
          w ^= row;
          progressed = true;
          break;
        }
      }
    }
    return w;
  }

  std::vector<BitVector> rows_;
};

// Uniform draws via rejection so every value below the bound is equally
// likely regardless of the bound.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t below(std::uint64_t bound) {
    std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      std::uint64_t x = engine_();
      if (x >= threshold) return x % bound;
    }
  }

 private:
  std::mt19937_64 engine_;
};

// count distinct values from {1, ..., n_values}, uniformly, in draw order.
// Sparse in-place shuffle: only displaced slots are materialized.
std::vector<std::uint64_t> sample_without_replacement(Rng& rng, std::uint64_t n_values,
                                                      std::uint64_t count) {
  std::unordered_map<std::uint64_t, std::uint64_t> displaced;
  std::vector<std::uint64_t> out;
  out.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    std::uint64_t j = i + rng.below(n_values - i);
    auto at = [&](std::uint64_t pos) {
      auto it = displaced.find(pos);
      return it == displaced.end() ? pos + 1 : it->second;
    };
    std::uint64_t vi = at(i), vj = at(j);
    out.push_back(vj);
    displaced[j] = vi;
  }
  return out;
}

// Flat store of the still-uncovered index sets, one stride of words per set.
class CoverTracker {
 public:
  CoverTracker(int n, int i_lo, int i_hi, std::uint64_t budget)
      : n_(n), i_lo_(i_lo), i_hi_(i_hi), stride_((n + 63) / 64) {
    BigInt total = 0;
    for (int i = i_lo; i <= i_hi; ++i) total += detail::big_binom(n, i);
    if (total > BigInt(budget) || total > (BigInt(1) << 62))
      throw BudgetError("cover tracking over " + total.str() + " sets exceeds the budget of " +
                        std::to_string(budget));
    masks_.reserve(static_cast<std::size_t>(total) * static_cast<std::size_t>(stride_));
  }

  int stride() const { return stride_; }
  std::uint64_t size() const { return masks_.size() / static_cast<std::size_t>(stride_); }
  const std::uint64_t* set_at(std::uint64_t p) const {
    return masks_.data() + p * static_cast<std::size_t>(stride_);
  }

  void populate_all() {
    populate([](const BitVector&) { return true; });
  }

  void populate_uncovered(const BitMatrix& rows) {
    populate([&rows](const BitVector& mask) {
      for (const auto& row : rows.rows())
        if (overlap(row, mask) == 1) return false;
      return true;
    });
  }

  // Removes every set the row covers; cb sees each removed set's words before
  // it is dropped. Returns the number removed.
  template <typename Cb>
  std::uint64_t remove_covered(const BitVector& row, Cb&& cb) {
    const std::uint64_t* h = row.words().data();
    std::size_t w = static_cast<std::size_t>(stride_);
    std::size_t count = masks_.size() / w;
    std::uint64_t removed = 0;
    for (std::size_t p = 0; p < count;) {
      std::uint64_t* set = masks_.data() + p * w;
      if (covers_mask(h, set, stride_)) {
        cb(static_cast<const std::uint64_t*>(set));
        std::copy(masks_.data() + (count - 1) * w, masks_.data() + count * w, set);
        --count;
        ++removed;
      } else {
        ++p;
      }
    }
    masks_.resize(count * w);
    return removed;
  }

 private:
  template <typename Keep>
  void populate(Keep&& keep) {
    for (int i = i_lo_; i <= i_hi_; ++i) {
      cover::ISetEnumerator sets(n_, i);
      while (!sets.done()) {
        if (keep(sets.mask())) {
          auto words = sets.mask().words();
          masks_.insert(masks_.end(), words.begin(), words.end());
        }
        sets.next();
      }
    }
  }

  int n_, i_lo_, i_hi_, stride_;
  std::vector<std::uint64_t> masks_;
};

// Candidate rows, ascending by span-enumeration index (the tie-break order).
struct Pool {
  int stride = 0;
  std::vector<BitVector> words;
  std::vector<std::uint64_t> flat;   // the same words, stride words each
  std::vector<std::uint64_t> index;  // enumeration indices
  std::vector<std::int64_t> gain;    // uncovered sets each word would cover
  std::vector<char> used;
  bool full_span = false;

  std::size_t size() const { return index.size(); }

  void push(std::uint64_t idx, const BitVector& w) {
    index.push_back(idx);
    words.push_back(w);
    auto ws = w.words();
    flat.insert(flat.end(), ws.begin(), ws.end());
  }
};

// Expresses a span word in the enumerator's basis and folds the selection
// back into the enumeration index.
class IndexSolver {
 public:
  explicit IndexSolver(const BitMatrix& basis) {
    for (int i = 0; i < basis.row_count(); ++i) {
      BitVector row = basis.row(i);
      std::uint64_t combo = std::uint64_t(1) << i;
      reduce(row, combo);
      rows_.emplace_back(std::move(row), combo);
    }
  }

  std::uint64_t index_of(const BitVector& w) const {
    BitVector v = w;
    std::uint64_t combo = 0;
    reduce(v, combo);
    if (!v.is_zero()) throw std::invalid_argument("IndexSolver: word outside the span");
    // combo selects basis rows; the enumeration index is its Gray preimage.
    std::uint64_t m = combo;
    for (int shift = 1; shift < 64; shift <<= 1) m ^= m >> shift;
    return m;
  }

 private:
  void reduce(BitVector& v, std::uint64_t& combo) const {
    for (bool progressed = true; progressed && !v.is_zero();) {
      progressed = false;
      int lead = v.leading_bit();
      for (const auto& [row, row_combo] : rows_) {
        if (row.leading_bit() == lead) {
          v ^= row;
          combo ^= row_combo;
          progressed = true;
          break;
        }
      }
    }
  }

  std::vector<std::pair<BitVector, std::uint64_t>> rows_;
};

Pool build_pool(const SpanEnumerator& span, std::uint64_t seed) {
  Pool pool;
  pool.stride = (span.basis().col_count() + 63) / 64;
  std::uint64_t nonzero = span.size() - 1;

  if (nonzero <= kFullPoolCap) {
    pool.full_span = true;
    pool.words.reserve(nonzero);
    span.visit(1, span.size(), [&](std::uint64_t idx, const BitVector& w) { pool.push(idx, w); });
  } else {
    gf2::WeightCensus census = gf2::min_weight_census(span.basis(), kCensusPoolCap);
    IndexSolver solver(span.basis());
    std::vector<std::pair<std::uint64_t, BitVector>> entries;
    entries.reserve(census.words.size() + kSamplePoolCount);
    for (const auto& w : census.words) entries.emplace_back(solver.index_of(w), w);
    Rng rng(seed);
    for (std::uint64_t idx : sample_without_replacement(rng, nonzero, kSamplePoolCount))
      entries.emplace_back(idx, span.word_at(idx));
    std::sort(entries.begin(), entries.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    entries.erase(std::unique(entries.begin(), entries.end(),
                              [](const auto& a, const auto& b) { return a.first == b.first; }),
                  entries.end());
    for (auto& [idx, w] : entries) pool.push(idx, w);
  }
  pool.gain.assign(pool.size(), 0);
  pool.used.assign(pool.size(), 0);
  return pool;
}

// Shared build state and the append/removal bookkeeping.
struct Builder {
  const codes::LinearCode& code;
  int l;
  CoverTracker tracker;
  Pool pool;
  const SpanEnumerator& span;
  BitMatrix rows;
  RankTracker rank_tracker;
  std::vector<BuildStep> steps;

  Builder(const codes::LinearCode& c, int target_l, int i_lo, std::uint64_t budget, Pool p,
          const SpanEnumerator& s)
      : code(c),
        l(target_l),
        tracker(c.n, i_lo, target_l - 1, budget),
        pool(std::move(p)),
        span(s),
        rows(c.n) {}

  std::uint64_t delta() const {
    return tracker.size() + static_cast<std::uint64_t>(code.redundancy() - rank_tracker.rank());
  }

  void append(const BitVector& word, std::size_t pool_pos) {
    tracker.remove_covered(word, [&](const std::uint64_t* set) {
      for (std::size_t q = 0; q < pool.size(); ++q) {
        if (!pool.used[q] &&
            covers_mask(pool.flat.data() + q * static_cast<std::size_t>(pool.stride), set,
                        pool.stride))
          --pool.gain[q];
      }
    });
    if (pool_pos != npos) pool.used[pool_pos] = 1;
    rank_tracker.add(word);
    rows.append_row(word);
    steps.push_back(BuildStep{delta(), code.redundancy() - rank_tracker.rank()});
  }

  // Best candidate by covered sets plus a pending rank increase, smallest
  // enumeration index first. Returns npos when nothing helps.
  std::size_t pick_max_gain() {
    bool rank_open = rank_tracker.rank() < code.redundancy();
    std::int64_t best_gain = 0;
    std::size_t best = npos;
    for (std::size_t q = 0; q < pool.size(); ++q) {
      if (pool.used[q]) continue;
      std::int64_t g = pool.gain[q];
      if (rank_open && g + 1 > best_gain && rank_tracker.would_increase(pool.words[q])) ++g;
      if (g > best_gain) {
        best_gain = g;
        best = q;
      }
    }
    return best;
  }

  // Pool exhausted but sets remain: scan the whole span for a word covering
  // the first remaining set.
  void cover_by_span_walk() {
    const std::uint64_t* target = tracker.set_at(0);
    BitVector target_mask(code.n);
    for (int b = 0; b < code.n; ++b)
      if ((target[b >> 6] >> (b & 63)) & 1) target_mask.set(b);
    bool found = false;
    // visit() has no early exit; scan in blocks so a hit stops the walk soon.
    for (std::uint64_t lo = 1; lo < span.size() && !found; lo += kFullPoolCap) {
      std::uint64_t hi = std::min(span.size(), lo + kFullPoolCap);
      span.visit(lo, hi, [&](std::uint64_t, const BitVector& w) {
        if (!found && overlap(w, target_mask) == 1) {
          found = true;
          append(w, npos);
        }
      });
    }
    if (!found)
      throw std::invalid_argument(
          "construction: an index set admits no covering dual word; the target exceeds the "
          "code's minimum distance");
  }

  // Sets are done; finish the rank with basis rows.
  void complete_rank() {
    for (int i = 0; i < code.parity.row_count() && rank_tracker.rank() < code.redundancy(); ++i) {
      const BitVector& row = code.parity.row(i);
      if (rank_tracker.would_increase(row)) append(row, npos);
    }
  }

  void run_fallbacks() {
    while (tracker.size() > 0) cover_by_span_walk();
    if (rank_tracker.rank() < code.redundancy()) complete_rank();
  }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

void init_gains_from_scratch(Builder& b) {
  for (std::size_t q = 0; q < b.pool.size(); ++q) {
    const std::uint64_t* w = b.pool.flat.data() + q * static_cast<std::size_t>(b.pool.stride);
    std::int64_t g = 0;
    for (std::uint64_t p = 0; p < b.tracker.size(); ++p)
      if (covers_mask(w, b.tracker.set_at(p), b.pool.stride)) ++g;
    b.pool.gain[q] = g;
  }
}

// Every set is still uncovered, so each word's coverage has a closed form:
// a weight-w row covers w * C(n-w, i-1) sets of size i.
void init_gains_full_universe(Builder& b, int i_lo, int i_hi) {
  int n = b.code.n;
  std::vector<std::int64_t> by_weight(static_cast<std::size_t>(n) + 1, 0);
  for (int w = 1; w <= n; ++w) {
    BigInt total = 0;
    for (int i = i_lo; i <= i_hi; ++i) total += BigInt(w) * detail::big_binom(n - w, i - 1);
    by_weight[static_cast<std::size_t>(w)] = static_cast<std::int64_t>(total);
  }
  for (std::size_t q = 0; q < b.pool.size(); ++q)
    b.pool.gain[q] = by_weight[static_cast<std::size_t>(b.pool.words[q].weight())];
}

void validate_target(const codes::LinearCode& code, int l) {
  if (l < 1) throw std::invalid_argument("construction: l must be positive");
  if (code.min_distance && l > *code.min_distance)
    throw std::invalid_argument("construction: no parity-check matrix can reach stopping "
                                "distance beyond the minimum distance");
}

StoppingReport basis_report(const codes::LinearCode& code, int l, Strategy strategy,
                            std::uint64_t budget, int threads) {
  gf2::RrefResult rr = gf2::rref(code.parity);
  BitMatrix basis(code.n);
  for (int i = 0; i < static_cast<int>(rr.pivot_cols.size()); ++i)
    basis.append_row(rr.matrix.row(i));
  StoppingReport rep = verify(basis, code, l, budget, threads);
  rep.strategy = strategy;
  return rep;
}

}  // namespace

StoppingReport greedy_extend(const codes::LinearCode& code, int l, Strategy strategy,
                             std::uint64_t seed, std::uint64_t budget, int threads) {
  validate_target(code, l);
  // Below stopping distance 4 (and for codes that cannot get past it), any
  // full-rank basis is already as good as it gets.
  if (l <= 3 || (code.min_distance && *code.min_distance <= 3))
    return basis_report(code, l, strategy, budget, threads);

  SpanEnumerator span(code.parity);
  Builder b(code, l, 1, budget, build_pool(span, seed), span);
  b.tracker.populate_all();
  init_gains_full_universe(b, 1, l - 1);

  if (strategy == Strategy::lexicographic) {
    for (std::size_t q = 0; q < b.pool.size(); ++q) {
      if (b.delta() == 0) break;
      bool rank_open = b.rank_tracker.rank() < code.redundancy();
      if (b.pool.gain[q] > 0 || (rank_open && b.rank_tracker.would_increase(b.pool.words[q])))
        b.append(b.pool.words[q], q);
    }
  } else {
    while (b.delta() > 0) {
      std::size_t q = b.pick_max_gain();
      if (q == Builder::npos) break;
      b.append(b.pool.words[q], q);
    }
  }
  b.run_fallbacks();

  StoppingReport rep = verify(b.rows, code, l, budget, threads);
  rep.strategy = strategy;
  if (!b.pool.full_span) rep.seed = seed;
  rep.steps = std::move(b.steps);
  return rep;
}

StoppingReport randomized_extend(const codes::LinearCode& code, int l, int t, std::uint64_t seed,
                                 std::uint64_t budget, int threads) {
  validate_target(code, l);
  if (l < 4)
    throw std::invalid_argument("randomized construction targets stopping distance at least 4");
  const int r = code.redundancy();
  SpanEnumerator span(code.parity);
  if (t < r) throw std::invalid_argument("randomized construction needs at least r sampled rows");
  if (static_cast<std::uint64_t>(t) >= span.size() - 1)
    throw std::invalid_argument("randomized construction: t must stay below 2^r - 1");

  Builder b(code, l, 3, budget, build_pool(span, seed), span);

  Rng rng(seed);
  for (std::uint64_t idx : sample_without_replacement(rng, span.size() - 1, t))
    b.rows.append_row(span.word_at(idx));
  for (const auto& row : b.rows.rows()) b.rank_tracker.add(row);
  b.tracker.populate_uncovered(b.rows);

  std::uint64_t delta_sampled = b.delta();
  init_gains_from_scratch(b);

  // Completion must make progress every step; with the full span as the pool
  // the decrease is also held to the analytic contraction factor.
  const bool check_contraction = b.pool.full_span && l <= r + 1 &&
                                 BigInt(r - 1) * (l - 1) <= (BigInt(1) << (l - 1));
  const std::uint64_t two_r = std::uint64_t(1) << r;
  const std::uint64_t shrink =
      check_contraction ? std::uint64_t(l - 1) << (r - l + 1) : 0;

  int completion = 0;
  while (b.delta() > 0) {
    std::uint64_t before = b.delta();
    std::size_t q = b.pick_max_gain();
    if (q == Builder::npos) {
      b.run_fallbacks();
      break;
    }
    b.append(b.pool.words[q], q);
    ++completion;
    std::uint64_t after = b.delta();
    if (after >= before)
      throw std::logic_error("randomized construction: a completion row failed to help");
    std::uint64_t row_count = static_cast<std::uint64_t>(t) + completion;
    if (check_contraction && row_count < two_r) {
      std::uint64_t den = two_r - row_count;
      if (den > shrink) {
        unsigned __int128 lhs = static_cast<unsigned __int128>(after) * den;
        unsigned __int128 rhs = static_cast<unsigned __int128>(before) * (den - shrink);
        if (lhs > rhs)
          throw std::logic_error("randomized construction: decrease fell short of the "
                                 "guaranteed contraction");
      }
    }
  }

  StoppingReport rep = verify(b.rows, code, l, budget, threads);
  rep.seed = seed;
  rep.delta_after_sampling = delta_sampled;
  rep.steps = std::move(b.steps);
  return rep;
}

StoppingReport verify(const BitMatrix& rows, const codes::LinearCode& code, int l,
                      std::uint64_t budget, int threads) {
  StoppingReport rep;
  rep.rows = rows;
  rep.target_l = l;
  rep.required_rank = code.redundancy();
  rep.rank = gf2::rank(rows);

  BitMatrix gen = code.generator();
  rep.all_rows_in_dual = true;
  for (const auto& row : rows.rows()) {
    for (const auto& g : gen.rows()) {
      if (!orthogonal(row, g)) {
        rep.all_rows_in_dual = false;
        break;
      }
    }
    if (!rep.all_rows_in_dual) break;
  }

  rep.stopping_distance = cover::stopping_distance(rows, std::max(1, l - 1), budget, threads);
  return rep;
}

}  // namespace stopred::construct
