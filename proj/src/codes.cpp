#include "stopred/codes.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace stopred::codes {

namespace {

using gf2::BitMatrix;
using gf2::BitVector;

constexpr std::string_view kGolayRows[12] = {
    "110000000000011011100010",
    "101000000000001101110001",
    "100100000000010110111000",
    "100010000000001011011100",
    "100001000000000101101110",
    "100000100000000010110111",
    "100000010000010001011011",
    "100000001000011000101101",
    "100000000100011100010110",
    "100000000010001110001011",
    "100000000001010111000101",
    "000000000000111111111111",
};

// --- GF(2)[x] on uint64 coefficient masks (degree < 64) ---

int poly_degree(std::uint64_t p) { return p ? 63 - std::countl_zero(p) : -1; }

std::uint64_t poly_rem(std::uint64_t a, std::uint64_t b) {
  int db = poly_degree(b);
  for (int da = poly_degree(a); da >= db; da = poly_degree(a)) a ^= b << (da - db);
  return a;
}

std::uint64_t poly_gcd(std::uint64_t a, std::uint64_t b) {
  while (b) {
    std::uint64_t t = poly_rem(a, b);
    a = b;
    b = t;
  }
  return a;
}

bool rows_pairwise_orthogonal(const BitMatrix& m) {
  for (int i = 0; i < m.row_count(); ++i)
    for (int j = i; j < m.row_count(); ++j)
      if (!orthogonal(m.row(i), m.row(j))) return false;
  return true;
}

// --- parsing helpers ---

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string line = text.substr(pos, nl == std::string::npos ? nl : nl - pos);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
    if (nl == std::string::npos) break;
    pos = nl + 1;
  }
  while (!lines.empty() && lines.back().find_first_not_of(" \t") == std::string::npos)
    lines.pop_back();
  return lines;
}

std::vector<std::string_view> split_fields(const std::string& line) {
  std::vector<std::string_view> out;
  std::string_view s = line;
  std::size_t pos = 0;
  while (pos < s.size()) {
    std::size_t start = s.find_first_not_of(" \t", pos);
    if (start == std::string_view::npos) break;
    std::size_t end = s.find_first_of(" \t", start);
    if (end == std::string_view::npos) end = s.size();
    out.push_back(s.substr(start, end - start));
    pos = end;
  }
  return out;
}

int parse_int(std::string_view tok, int line_no, int field_no) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError("expected an integer, got '" + std::string(tok) + "'", line_no, field_no);
  return value;
}

// One padded index line: `count` strictly positive entries in [1, limit],
// no duplicates, optional trailing zero padding up to `padded_len` fields.
std::vector<int> parse_index_line(const std::string& line, int line_no, int count,
                                  int padded_len, int limit) {
  auto toks = split_fields(line);
  if (static_cast<int>(toks.size()) != count && static_cast<int>(toks.size()) != padded_len)
    throw ParseError("expected " + std::to_string(count) + " indices (optionally padded to " +
                         std::to_string(padded_len) + "), got " + std::to_string(toks.size()),
                     line_no);
  std::vector<int> out;
  std::vector<bool> seen(static_cast<std::size_t>(limit) + 1, false);
  for (std::size_t f = 0; f < toks.size(); ++f) {
    int v = parse_int(toks[f], line_no, static_cast<int>(f) + 1);
    if (v == 0) {
      if (static_cast<int>(f) < count)
        throw ParseError("padding zero before the declared " + std::to_string(count) +
                             " indices",
                         line_no, static_cast<int>(f) + 1);
      continue;
    }
    if (static_cast<int>(f) >= count)
      throw ParseError("nonzero entry in the padding region", line_no, static_cast<int>(f) + 1);
    if (v < 1 || v > limit)
      throw ParseError("index " + std::to_string(v) + " out of range [1, " +
                           std::to_string(limit) + "]",
                       line_no, static_cast<int>(f) + 1);
    if (seen[static_cast<std::size_t>(v)])
      throw ParseError("duplicate index " + std::to_string(v), line_no,
                       static_cast<int>(f) + 1);
    seen[static_cast<std::size_t>(v)] = true;
    out.push_back(v);
  }
  return out;
}

}  // namespace

bool LinearCode::is_self_dual() const {
  if (n != 2 * k) return false;
  return gf2::rref(parity).matrix == gf2::rref(generator()).matrix;
}

LinearCode golay24() {
  LinearCode c;
  c.n = 24;
  c.k = 12;
  c.parity = BitMatrix::from_strings(std::span<const std::string_view>(kGolayRows));
  c.min_distance = 8;
  c.dual_min_weight = 8;  // self-dual
  c.dual_min_weight_count = 759;
  return c;
}

LinearCode extended_qr48() {
  // Quadratic residues mod 47 as exponent masks.
  bool is_residue[47] = {};
  for (int i = 1; i < 47; ++i) is_residue[(i * i) % 47] = true;
  std::uint64_t residue_poly = 0, nonresidue_poly = 0;
  for (int e = 1; e < 47; ++e) (is_residue[e] ? residue_poly : nonresidue_poly) |= std::uint64_t(1) << e;

  const std::uint64_t modulus = (std::uint64_t(1) << 47) | 1;  // x^47 + 1
  const std::uint64_t candidates[] = {residue_poly, nonresidue_poly, residue_poly | 1,
                                      nonresidue_poly | 1};
  for (std::uint64_t cand : candidates) {
    std::uint64_t g = poly_gcd(modulus, cand);
    if (poly_degree(g) != 23) continue;
    // Rows x^i g, i = 0..23, each closed with an overall parity bit.
    BitMatrix h(48);
    for (int i = 0; i < 24; ++i) {
      std::uint64_t row_poly = g << i;
      BitVector row(48);
      for (int s = 0; s < 47; ++s)
        if ((row_poly >> s) & 1) row.set(s);
      if (row.weight() & 1) row.set(47);
      h.append_row(std::move(row));
    }
    if (gf2::rank(h) != 24 || !rows_pairwise_orthogonal(h)) continue;
    LinearCode c;
    c.n = 48;
    c.k = 24;
    c.parity = std::move(h);
    c.min_distance = 12;
    c.dual_min_weight = 12;  // self-dual
    c.dual_min_weight_count = 17296;
    return c;
  }
  throw std::logic_error("quadratic residue construction failed its self-checks");
}

LinearCode code_from_parity_check(const gf2::BitMatrix& m, int threads) {
  gf2::RrefResult rr = gf2::rref(m);
  int r = static_cast<int>(rr.pivot_cols.size());
  int n = m.col_count();

  LinearCode c;
  c.n = n;
  c.k = n - r;
  c.parity = BitMatrix(n);
  for (int i = 0; i < r; ++i) c.parity.append_row(rr.matrix.row(i));

  if (r > gf2::kMaxSpanRows)
    throw BudgetError("dual span of " + std::to_string(r) + " rows is too large to enumerate");
  if (c.k > gf2::kMaxSpanRows)
    throw BudgetError("code span of " + std::to_string(c.k) + " rows is too large to enumerate");

  if (r > 0) {
    gf2::WeightCensus dual = gf2::min_weight_census(c.parity, 0, threads);
    c.dual_min_weight = dual.min_weight;
    c.dual_min_weight_count = dual.count;
  }
  if (c.k > 0) {
    gf2::WeightCensus own = gf2::min_weight_census(c.generator(), 0, threads);
    c.min_distance = own.min_weight;
  }
  return c;
}

gf2::BitMatrix load_alist(const std::string& text) {
  auto lines = split_lines(text);
  auto field_count_check = [&lines](std::size_t idx, std::size_t want) {
    auto toks = split_fields(lines[idx]);
    if (toks.size() != want)
      throw ParseError("expected " + std::to_string(want) + " fields, got " +
                           std::to_string(toks.size()),
                       static_cast<int>(idx) + 1);
    return toks;
  };

  if (lines.size() < 4) throw ParseError("truncated header", static_cast<int>(lines.size()) + 1);
  auto head = field_count_check(0, 2);
  int n = parse_int(head[0], 1, 1);
  int m = parse_int(head[1], 1, 2);
  if (n <= 0) throw ParseError("column count must be positive", 1, 1);
  if (m <= 0) throw ParseError("row count must be positive", 1, 2);

  auto maxima = field_count_check(1, 2);
  int max_col_deg = parse_int(maxima[0], 2, 1);
  int max_row_deg = parse_int(maxima[1], 2, 2);
  if (max_col_deg < 0 || max_col_deg > m)
    throw ParseError("maximum column degree out of range [0, " + std::to_string(m) + "]", 2, 1);
  if (max_row_deg < 0 || max_row_deg > n)
    throw ParseError("maximum row degree out of range [0, " + std::to_string(n) + "]", 2, 2);

  auto read_degrees = [&](std::size_t idx, int count, int max_deg) {
    auto toks = field_count_check(idx, static_cast<std::size_t>(count));
    std::vector<int> deg(static_cast<std::size_t>(count));
    for (int j = 0; j < count; ++j) {
      int v = parse_int(toks[static_cast<std::size_t>(j)], static_cast<int>(idx) + 1, j + 1);
      if (v < 0 || v > max_deg)
        throw ParseError("degree " + std::to_string(v) + " exceeds the declared maximum " +
                             std::to_string(max_deg),
                         static_cast<int>(idx) + 1, j + 1);
      deg[static_cast<std::size_t>(j)] = v;
    }
    return deg;
  };
  std::vector<int> col_deg = read_degrees(2, n, max_col_deg);
  std::vector<int> row_deg = read_degrees(3, m, max_row_deg);

  std::size_t want_lines = 4 + static_cast<std::size_t>(n) + static_cast<std::size_t>(m);
  if (lines.size() != want_lines)
    throw ParseError("expected " + std::to_string(want_lines) + " lines, got " +
                         std::to_string(lines.size()),
                     static_cast<int>(std::min(lines.size(), want_lines)) + 1);

  BitMatrix by_cols(n);
  {
    std::vector<BitVector> rows(static_cast<std::size_t>(m), BitVector(n));
    for (int j = 0; j < n; ++j) {
      int line_no = 5 + j;
      std::vector<int> entries = parse_index_line(lines[static_cast<std::size_t>(line_no - 1)],
                                                  line_no, col_deg[static_cast<std::size_t>(j)],
                                                  max_col_deg, m);
      for (int v : entries) rows[static_cast<std::size_t>(v - 1)].set(j);
    }
    for (auto& r : rows) by_cols.append_row(std::move(r));
  }

  BitMatrix by_rows(n);
  for (int i = 0; i < m; ++i) {
    int line_no = 5 + n + i;
    BitVector row(n);
    for (int v : parse_index_line(lines[static_cast<std::size_t>(line_no - 1)], line_no,
                                  row_deg[static_cast<std::size_t>(i)], max_row_deg, n))
      row.set(v - 1);
    by_rows.append_row(std::move(row));
  }

  for (int i = 0; i < m; ++i) {
    if (by_rows.row(i) == by_cols.row(i)) continue;
    throw ParseError("row list disagrees with the column lists for row " + std::to_string(i + 1),
                     5 + n + i);
  }
  return by_rows;
}

std::string save_alist(const gf2::BitMatrix& m) {
  int rows = m.row_count(), cols = m.col_count();
  if (rows == 0 || cols == 0) throw std::invalid_argument("save_alist: empty matrix");

  std::vector<std::vector<int>> col_lists(static_cast<std::size_t>(cols));
  std::vector<std::vector<int>> row_lists(static_cast<std::size_t>(rows));
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      if (m.row(i).get(j)) {
        col_lists[static_cast<std::size_t>(j)].push_back(i + 1);
        row_lists[static_cast<std::size_t>(i)].push_back(j + 1);
      }
  std::size_t max_col = 0, max_row = 0;
  for (const auto& l : col_lists) max_col = std::max(max_col, l.size());
  for (const auto& l : row_lists) max_row = std::max(max_row, l.size());

  std::string out;
  auto emit = [&out](const std::vector<int>& values, std::size_t pad_to) {
    for (std::size_t f = 0; f < pad_to; ++f) {
      if (f) out += ' ';
      out += std::to_string(f < values.size() ? values[f] : 0);
    }
    out += '\n';
  };
  out += std::to_string(cols) + ' ' + std::to_string(rows) + '\n';
  out += std::to_string(max_col) + ' ' + std::to_string(max_row) + '\n';
  std::vector<int> degs;
  for (const auto& l : col_lists) degs.push_back(static_cast<int>(l.size()));
  emit(degs, degs.size());
  degs.clear();
  for (const auto& l : row_lists) degs.push_back(static_cast<int>(l.size()));
  emit(degs, degs.size());
  for (const auto& l : col_lists) emit(l, max_col);
  for (const auto& l : row_lists) emit(l, max_row);
  return out;
}

gf2::BitMatrix load_plain(const std::string& text) {
  auto lines = split_lines(text);
  std::vector<BitVector> rows;
  int width = -1;
  for (std::size_t idx = 0; idx < lines.size(); ++idx) {
    std::string compact;
    for (char c : lines[idx])
      if (c != ' ' && c != '\t') compact += c;
    if (compact.empty()) continue;
    for (std::size_t f = 0; f < compact.size(); ++f)
      if (compact[f] != '0' && compact[f] != '1')
        throw ParseError(std::string("expected '0' or '1', got '") + compact[f] + "'",
                         static_cast<int>(idx) + 1, static_cast<int>(f) + 1);
    if (width < 0)
      width = static_cast<int>(compact.size());
    else if (static_cast<int>(compact.size()) != width)
      throw ParseError("row length " + std::to_string(compact.size()) +
                           " differs from the first row's " + std::to_string(width),
                       static_cast<int>(idx) + 1);
    rows.push_back(BitVector::from_bits(compact));
  }
  if (rows.empty()) throw ParseError("no matrix rows found", 1);
  return BitMatrix::from_rows(std::move(rows));
}

std::string save_plain(const gf2::BitMatrix& m) {
  std::string out;
  for (int i = 0; i < m.row_count(); ++i) {
    out += m.row(i).to_string();
    out += '\n';
  }
  return out;
}

}  // namespace stopred::codes
