// Command-line front end. Every subcommand is a thin adapter over the
// library; results go to stdout, diagnostics to stderr.
//
// Exit codes: 0 success, 1 domain error (a precondition was violated or a
// budget ran out), 2 I/O or parse error.

#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "stopred/bounds.hpp"
#include "stopred/codes.hpp"
#include "stopred/construct.hpp"
#include "stopred/cover.hpp"
#include "stopred/errors.hpp"

namespace {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("cannot read " + path);
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << text;
  if (!out) throw IoError("cannot write " + path);
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

stopred::gf2::BitMatrix load_matrix_file(const std::string& path) {
  std::string text = read_file(path);
  return ends_with(path, ".alist") ? stopred::codes::load_alist(text)
                                   : stopred::codes::load_plain(text);
}

// golay24 and qr48 are built in; anything else is a parity-check file whose
// distances are then measured outright.
stopred::codes::LinearCode resolve_code(const std::string& name, int threads) {
  if (name == "golay24") return stopred::codes::golay24();
  if (name == "qr48") return stopred::codes::extended_qr48();
  return stopred::codes::code_from_parity_check(load_matrix_file(name), threads);
}

std::uint64_t budget_from_env() {
  const char* raw = std::getenv("STOPRED_BUDGET");
  if (raw == nullptr) return stopred::cover::kDefaultBudget;
  std::string s(raw);
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || value == 0)
    throw IoError("STOPRED_BUDGET must be a positive integer, got \"" + s + "\"");
  return value;
}

std::pair<int, int> parse_l_range(const std::string& spec) {
  auto to_int = [&](const std::string& part) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (ec != std::errc() || ptr != part.data() + part.size())
      throw std::invalid_argument("--l expects an integer or a range, got \"" + spec + "\"");
    return v;
  };
  std::size_t sep = spec.find("..");
  std::size_t len = 2;
  if (sep == std::string::npos) {
    sep = spec.find('-', 1);
    len = 1;
  }
  if (sep == std::string::npos) {
    int l = to_int(spec);
    return {l, l};
  }
  int lo = to_int(spec.substr(0, sep));
  int hi = to_int(spec.substr(sep + len));
  if (lo > hi) throw std::invalid_argument("--l range is empty: \"" + spec + "\"");
  return {lo, hi};
}

int required_meta(const std::optional<int>& field, const char* what) {
  if (!field) throw std::invalid_argument(std::string("code metadata lacks ") + what);
  return *field;
}

bool conditional_variant_available(int r, int l) {
  return stopred::BigInt(r - 1) * (l - 1) <= (stopred::BigInt(1) << (l - 1));
}

void warn_if_unconditional_only(int r, int l) {
  if (!conditional_variant_available(r, l))
    std::cerr << "(r-1)(l-1) > 2^(l-1): conditional variant unavailable, using "
                 "rank-completion variant\n";
}

std::string format_distance(const stopred::cover::StoppingDistance& sd) {
  std::string prefix = sd.kind == stopred::cover::DistanceKind::at_least ? "≥" : "";
  return prefix + std::to_string(sd.value);
}

void print_grid(const std::string& format, const std::vector<std::string>& header,
                const std::vector<std::vector<std::string>>& rows) {
  if (format == "markdown") {
    auto line = [](const std::vector<std::string>& cells) {
      std::string out = "|";
      for (const auto& c : cells) out += " " + c + " |";
      return out;
    };
    std::cout << line(header) << "\n|";
    for (std::size_t i = 0; i < header.size(); ++i) std::cout << " --- |";
    std::cout << "\n";
    for (const auto& row : rows) std::cout << line(row) << "\n";
    return;
  }
  auto line = [](const std::vector<std::string>& cells) {
    std::string out;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ",";
      out += cells[i];
    }
    return out;
  };
  std::cout << line(header) << "\n";
  for (const auto& row : rows) std::cout << line(row) << "\n";
}

long long bound_by_method(const stopred::codes::LinearCode& code, const std::string& method) {
  using namespace stopred;
  const int n = code.n;
  const int r = code.redundancy();
  const int d = required_meta(code.min_distance, "the minimum distance");
  bounds::BoundQuery q;
  q.n = n;
  q.r = r;
  q.target = d;
  if (method == "tau0") {
    q.tau = 0;
    q.u = bounds::full_profile(n, 3, d - 1);
  } else {
    const int dw = required_meta(code.dual_min_weight, "the dual minimum weight");
    if (method == "cor1") {
      q.tau = 1;
      q.u = bounds::single_row_profile(n, dw, 3, d - 1);
    } else {
      if (required_meta(code.dual_min_weight_count, "the dual minimum-weight count") < 2)
        throw std::invalid_argument("method cor2 needs at least two minimum-weight dual words");
      q.tau = 2;
      q.u = bounds::pair_profile(n, dw, 3, d - 1);
    }
  }
  return bounds::redundancy_bound(q).total;
}

int run_info(const std::string& name, int threads) {
  stopred::codes::LinearCode code = resolve_code(name, threads);
  std::cout << "n " << code.n << "\n";
  std::cout << "k " << code.k << "\n";
  std::cout << "r " << code.redundancy() << "\n";
  std::cout << "d " << required_meta(code.min_distance, "the minimum distance") << "\n";
  std::cout << "d_dual " << required_meta(code.dual_min_weight, "the dual minimum weight") << "\n";
  std::cout << "d_dual_count "
            << required_meta(code.dual_min_weight_count, "the dual minimum-weight count") << "\n";
  std::cout << "self_dual " << (code.is_self_dual() ? "yes" : "no") << "\n";
  return 0;
}

int run_bound(const std::string& name, const std::string& method, int threads) {
  std::cout << bound_by_method(resolve_code(name, threads), method) << "\n";
  return 0;
}

int run_hierarchy(const std::string& name, const std::string& l_spec, int threads) {
  stopred::codes::LinearCode code = resolve_code(name, threads);
  const int r = code.redundancy();
  const int d = required_meta(code.min_distance, "the minimum distance");
  const int dw = required_meta(code.dual_min_weight, "the dual minimum weight");
  if (required_meta(code.dual_min_weight_count, "the dual minimum-weight count") < 2)
    throw std::invalid_argument("hierarchy bounds need at least two minimum-weight dual words");
  auto [lo, hi] = parse_l_range(l_spec);
  if (lo < 4 || hi > d)
    throw std::invalid_argument("hierarchy bounds cover 4 <= l <= d = " + std::to_string(d));
  std::vector<std::vector<std::string>> rows;
  for (int l = lo; l <= hi; ++l) {
    warn_if_unconditional_only(r, l);
    long long total = stopred::bounds::hierarchy_bound(code.n, r, dw, l).total;
    if (lo == hi) {
      std::cout << total << "\n";
      return 0;
    }
    rows.push_back({std::to_string(l), std::to_string(total)});
  }
  print_grid("csv", {"l", "value"}, rows);
  return 0;
}

int run_hybrid(const std::string& name, int tau, int l, std::uint64_t budget, int threads) {
  stopred::codes::LinearCode code = resolve_code(name, threads);
  warn_if_unconditional_only(code.redundancy(), l);
  std::cout << stopred::bounds::hybrid_bound(code, tau, l, budget, threads).total << "\n";
  return 0;
}

int run_stopdist(const std::string& path, std::optional<int> limit, std::uint64_t budget,
                 int threads) {
  stopred::gf2::BitMatrix m = load_matrix_file(path);
  int cap = limit.value_or(m.col_count());
  std::cout << format_distance(stopred::cover::stopping_distance(m, cap, budget, threads)) << "\n";
  return 0;
}

int run_construct(const std::string& name, int l, const std::string& strategy, std::uint64_t seed,
                  std::optional<int> t, const std::string& out_path, std::uint64_t budget,
                  int threads) {
  using namespace stopred;
  codes::LinearCode code = resolve_code(name, threads);
  construct::StoppingReport rep;
  if (strategy == "randomized") {
    int draws = t.value_or(2 * code.redundancy());
    rep = construct::randomized_extend(code, l, draws, seed, budget, threads);
  } else {
    if (t) throw std::invalid_argument("--t applies to the randomized strategy only");
    auto strat = strategy == "lexicographic" ? construct::Strategy::lexicographic
                                             : construct::Strategy::max_coverage;
    rep = construct::greedy_extend(code, l, strat, seed, budget, threads);
  }
  std::cout << "rows " << rep.rows.row_count() << "\n";
  std::cout << "rank " << rep.rank << "\n";
  std::cout << "stopping_distance " << format_distance(rep.stopping_distance) << "\n";
  if (rep.delta_after_sampling)
    std::cout << "delta_after_sampling " << *rep.delta_after_sampling << "\n";
  std::cout << "ok " << (rep.ok() ? "yes" : "no") << "\n";
  if (!rep.ok()) {
    std::cerr << "construction failed verification\n";
    return 1;
  }
  std::string text = ends_with(out_path, ".alist") ? codes::save_alist(rep.rows)
                                                   : codes::save_plain(rep.rows);
  write_file(out_path, text);
  return 0;
}

int run_tables(int which, const std::string& format, std::uint64_t budget, int threads) {
  using namespace stopred;
  std::vector<std::vector<std::string>> rows;
  if (which == 2) {
    codes::LinearCode golay = codes::golay24();
    codes::LinearCode qr = codes::extended_qr48();
    auto cell = [&](const codes::LinearCode& c, const std::string& m) {
      return std::to_string(bound_by_method(c, m));
    };
    rows.push_back({"baseline", bounds::partial_binom_sum(12, 6).str(),
                    bounds::partial_binom_sum(24, 10).str()});
    for (const std::string m : {"tau0", "cor1", "cor2"})
      rows.push_back({m, cell(golay, m), cell(qr, m)});
    print_grid(format, {"method", "golay24", "qr48"}, rows);
    return 0;
  }
  if (which == 3 || which == 4) {
    codes::LinearCode code = which == 3 ? codes::golay24() : codes::extended_qr48();
    const int d = *code.min_distance;
    for (int l = 4; l <= d; ++l) {
      long long v =
          bounds::hierarchy_bound(code.n, code.redundancy(), *code.dual_min_weight, l).total;
      rows.push_back({std::to_string(l), std::to_string(v)});
    }
    print_grid(format, {"l", "value"}, rows);
    return 0;
  }
  codes::LinearCode golay = codes::golay24();
  for (int tau = 1; tau <= golay.redundancy(); ++tau) {
    std::vector<std::string> row{std::to_string(tau)};
    for (int l = 4; l <= *golay.min_distance; ++l)
      row.push_back(std::to_string(bounds::hybrid_bound(golay, tau, l, budget, threads).total));
    rows.push_back(row);
  }
  print_grid(format, {"tau", "l4", "l5", "l6", "l7", "l8"}, rows);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stopping redundancy bounds and verified parity-check constructions"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "worker threads (0 = all cores)")
      ->capture_default_str();

  std::string info_code;
  auto* info = app.add_subcommand("info", "print code parameters");
  info->add_option("code", info_code, "golay24, qr48, or a parity-check file")->required();

  std::string bound_code, bound_method;
  auto* bound = app.add_subcommand("bound", "stopping redundancy upper bound");
  bound->add_option("--code", bound_code)->required();
  bound->add_option("--method", bound_method)
      ->required()
      ->check(CLI::IsMember({"tau0", "cor1", "cor2"}));

  std::string hier_code, hier_l;
  auto* hier = app.add_subcommand("hierarchy", "stopping redundancy hierarchy upper bounds");
  hier->add_option("--code", hier_code)->required();
  hier->add_option("--l", hier_l, "target stopping distance, int or range like 4..8")->required();

  std::string hyb_code;
  int hyb_tau = 0, hyb_l = 0;
  auto* hyb = app.add_subcommand("hybrid", "hierarchy bound from tau measured rows");
  hyb->add_option("--code", hyb_code)->required();
  hyb->add_option("--tau", hyb_tau, "rows taken from the code's parity-check matrix")->required();
  hyb->add_option("--l", hyb_l)->required();

  std::string sd_matrix;
  std::optional<int> sd_limit;
  auto* sd = app.add_subcommand("stopdist", "stopping distance of a matrix file");
  sd->add_option("--matrix", sd_matrix)->required();
  sd->add_option("--limit", sd_limit, "largest set size to search (default: n)");

  std::string con_code, con_strategy = "max_coverage", con_out;
  int con_l = 0;
  std::optional<int> con_t;
  std::uint64_t con_seed = 0;
  auto* con = app.add_subcommand("construct", "build a verified parity-check matrix");
  con->add_option("--code", con_code)->required();
  con->add_option("--l", con_l, "target stopping distance")->required();
  con->add_option("--strategy", con_strategy)
      ->check(CLI::IsMember({"lexicographic", "max_coverage", "randomized"}))
      ->capture_default_str();
  con->add_option("--seed", con_seed)->capture_default_str();
  con->add_option("--t", con_t, "sampled rows for the randomized strategy (default 2r)");
  con->add_option("--out", con_out, "output file; .alist extension selects alist format")
      ->required();

  int tab_which = 0;
  std::string tab_format = "csv";
  auto* tab = app.add_subcommand("tables", "reproduce the published bound tables");
  tab->add_option("--which", tab_which)->required()->check(CLI::IsMember({2, 3, 4, 5}));
  tab->add_option("--format", tab_format)
      ->check(CLI::IsMember({"csv", "markdown"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    std::uint64_t budget = budget_from_env();
    if (*info) return run_info(info_code, threads);
    if (*bound) return run_bound(bound_code, bound_method, threads);
    if (*hier) return run_hierarchy(hier_code, hier_l, threads);
    if (*hyb) return run_hybrid(hyb_code, hyb_tau, hyb_l, budget, threads);
    if (*sd) return run_stopdist(sd_matrix, sd_limit, budget, threads);
    if (*con)
      return run_construct(con_code, con_l, con_strategy, con_seed, con_t, con_out, budget,
                           threads);
    if (*tab) return run_tables(tab_which, tab_format, budget, threads);
    std::cerr << "no subcommand selected\n";
    return 2;
  } catch (const stopred::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const IoError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
}
