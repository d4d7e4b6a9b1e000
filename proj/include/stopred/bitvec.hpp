#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace stopred::gf2 {

// Bit-packed row vector over GF(2). Bits beyond size() are kept zero so that
// word-level operations (weight, overlap, equality) never see garbage.
class BitVector {
 public:
  BitVector() = default;

  explicit BitVector(int n) : n_(n), words_(word_count(n), 0) {
    if (n < 0) throw std::invalid_argument("BitVector: negative length");
  }

  static BitVector from_bits(std::string_view bits) {
    BitVector v(static_cast<int>(bits.size()));
    for (int i = 0; i < v.n_; ++i) {
      char c = bits[static_cast<std::size_t>(i)];
      if (c == '1')
        v.set(i);
      else if (c != '0')
        throw std::invalid_argument("BitVector: expected '0' or '1'");
    }
    return v;
  }

  int size() const { return n_; }
  bool empty() const { return n_ == 0; }

  bool get(int i) const {
    check_index(i);
    return (words_[static_cast<std::size_t>(i >> 6)] >> (i & 63)) & 1u;
  }

  void set(int i, bool value = true) {
    check_index(i);
    std::uint64_t mask = std::uint64_t(1) << (i & 63);
    if (value)
      words_[static_cast<std::size_t>(i >> 6)] |= mask;
    else
      words_[static_cast<std::size_t>(i >> 6)] &= ~mask;
  }

  void flip(int i) {
    check_index(i);
    words_[static_cast<std::size_t>(i >> 6)] ^= std::uint64_t(1) << (i & 63);
  }

  int weight() const {
    int w = 0;
    for (std::uint64_t word : words_) w += std::popcount(word);
    return w;
  }

  bool is_zero() const {
    for (std::uint64_t word : words_)
      if (word) return false;
    return true;
  }

  // Column of the first set bit, or -1 when zero.
  int leading_bit() const {
    for (std::size_t w = 0; w < words_.size(); ++w)
      if (words_[w]) return static_cast<int>(w) * 64 + std::countr_zero(words_[w]);
    return -1;
  }

  BitVector& operator^=(const BitVector& o) {
    check_same_size(o);
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= o.words_[w];
    return *this;
  }

  friend BitVector operator^(BitVector a, const BitVector& b) {
    a ^= b;
    return a;
  }

  friend bool operator==(const BitVector&, const BitVector&) = default;

  // popcount(a & b)
  friend int overlap(const BitVector& a, const BitVector& b) {
    a.check_same_size(b);
    int w = 0;
    for (std::size_t i = 0; i < a.words_.size(); ++i)
      w += std::popcount(a.words_[i] & b.words_[i]);
    return w;
  }

  friend bool orthogonal(const BitVector& a, const BitVector& b) {
    return (overlap(a, b) & 1) == 0;
  }

  std::span<const std::uint64_t> words() const { return words_; }

  std::string to_string() const {
    std::string s(static_cast<std::size_t>(n_), '0');
    for (int i = 0; i < n_; ++i)
      if (get(i)) s[static_cast<std::size_t>(i)] = '1';
    return s;
  }

 private:
  static std::size_t word_count(int n) { return static_cast<std::size_t>((n + 63) / 64); }

  void check_index(int i) const {
    if (i < 0 || i >= n_) throw std::out_of_range("BitVector: index out of range");
  }

  void check_same_size(const BitVector& o) const {
    if (n_ != o.n_) throw std::invalid_argument("BitVector: length mismatch");
  }

  int n_ = 0;
  std::vector<std::uint64_t> words_;
};

// Row-major matrix over GF(2). The column count is fixed at construction;
// rows may be appended freely (row count above the column count is fine,
// redundant parity-check matrices rely on it).
class BitMatrix {
 public:
  BitMatrix() = default;
  explicit BitMatrix(int cols) : cols_(cols) {
    if (cols < 0) throw std::invalid_argument("BitMatrix: negative column count");
  }

  static BitMatrix from_rows(std::vector<BitVector> rows) {
    if (rows.empty()) throw std::invalid_argument("BitMatrix: no rows");
    BitMatrix m(rows.front().size());
    for (auto& r : rows) m.append_row(std::move(r));
    return m;
  }

  static BitMatrix from_strings(std::span<const std::string_view> rows) {
    if (rows.empty()) throw std::invalid_argument("BitMatrix: no rows");
    BitMatrix m(static_cast<int>(rows.front().size()));
    for (auto s : rows) m.append_row(BitVector::from_bits(s));
    return m;
  }

  static BitMatrix from_strings(std::initializer_list<std::string_view> rows) {
    std::vector<std::string_view> v(rows);
    return from_strings(std::span<const std::string_view>(v));
  }

  static BitMatrix identity(int n) {
    BitMatrix m(n);
    for (int i = 0; i < n; ++i) {
      BitVector v(n);
      v.set(i);
      m.append_row(std::move(v));
    }
    return m;
  }

  int col_count() const { return cols_; }
  int row_count() const { return static_cast<int>(rows_.size()); }

  const BitVector& row(int i) const { return rows_.at(static_cast<std::size_t>(i)); }
  std::span<const BitVector> rows() const { return rows_; }

  void append_row(BitVector v) {
    if (v.size() != cols_) throw std::invalid_argument("BitMatrix: row length mismatch");
    rows_.push_back(std::move(v));
  }

  void swap_rows(int a, int b) {
    std::swap(rows_.at(static_cast<std::size_t>(a)), rows_.at(static_cast<std::size_t>(b)));
  }

  // rows[dst] ^= rows[src]
  void xor_row(int dst, int src) {
    rows_.at(static_cast<std::size_t>(dst)) ^= rows_.at(static_cast<std::size_t>(src));
  }

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

 private:
  int cols_ = 0;
  std::vector<BitVector> rows_;
};

}  // namespace stopred::gf2
