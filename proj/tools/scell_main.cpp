#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "scell/cell_table.hpp"
#include "scell/error.hpp"
#include "scell/finite_cells.hpp"

namespace {

using namespace scell;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUncertified = 2;
constexpr int kExitUsage = 64;

struct CommonOpts {
  std::string mode = "sl";
  std::int64_t charge = 0;
  SampleConfig cfg;
  int threads = 0;
  std::string cache_dir;
  bool no_cache = false;

  Mode parsed_mode() const { return mode == "gl" ? Mode::GL : Mode::SL; }

  std::string resolved_cache() const {
    if (no_cache) return "";
    if (!cache_dir.empty()) return cache_dir;
    if (const char* env = std::getenv("SCELL_CACHE_DIR")) return env;
    return ".scell-cache";
  }
};

void add_common(CLI::App* sub, CommonOpts& o) {
  sub->add_option("--mode", o.mode, "sl or gl")->check(CLI::IsMember({"sl", "gl"}));
  sub->add_option("--charge", o.charge, "translation charge of the gl coset");
  sub->add_option("-p,--prime", o.cfg.prime, "base prime");
  sub->add_option("--extra-prime", o.cfg.extra_primes, "additional cross-check primes");
  sub->add_option("-N,--precision", o.cfg.precision, "t-adic working precision (0 = 16n)");
  sub->add_option("--trials", o.cfg.trials, "independent samples per prime");
  sub->add_option("--seed", o.cfg.seed, "master seed");
  sub->add_option("--resample-limit", o.cfg.resample_limit, "degenerate draws tolerated");
  sub->add_option("--max-precision", o.cfg.max_precision, "cap for adaptive precision doubling");
  sub->add_option("--max-field-degree", o.cfg.max_field_degree, "residue extension budget");
  sub->add_option("--threads", o.threads, "worker threads (0 = auto)");
  sub->add_option("--cache-dir", o.cache_dir,
                  "cache directory (default $SCELL_CACHE_DIR, then ./.scell-cache)");
  sub->add_flag("--no-cache", o.no_cache, "disable the on-disk cache");
}

std::vector<std::int64_t> parse_int_list(const std::string& text) {
  std::vector<std::int64_t> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string tok = text.substr(pos, comma == std::string::npos ? comma : comma - pos);
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      fail(Err::NonBijective, "cannot parse '" + tok + "' as an integer");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

int run_pi(const CommonOpts& o, const std::string& window_text) {
  auto window = parse_int_list(window_text);
  auto x = AffinePermutation::from_window(static_cast<int>(window.size()), window,
                                          o.parsed_mode());
  PiResult r;
  std::string cache_dir = o.resolved_cache();
  if (!cache_dir.empty()) {
    std::filesystem::create_directories(cache_dir);
    PiCache cache((std::filesystem::path(cache_dir) / "pi-cache.jsonl").string());
    std::string key = cache_key(x, o.cfg);
    if (auto hit = cache.get(key)) {
      r = std::move(*hit);
    } else {
      r = pi(x, o.cfg);
      cache.put(key, r);
    }
  } else {
    r = pi(x, o.cfg);
  }
  nlohmann::ordered_json j;
  j["x"] = x.encode();
  j["length"] = length(x);
  j["pibar"] = r.value.cycle_type;
  j["delta"] = delta(r.value);
  j["pi"] = pi_result_to_json(r);
  std::cout << j.dump(2) << "\n";
  return r.certified ? kExitPass : kExitUncertified;
}

int run_cells(const CommonOpts& o, int n, std::int64_t max_length, const std::string& out_path,
              const std::string& csv_path) {
  CellTable t = build_cell_table(n, max_length, o.parsed_mode(), o.charge, o.cfg, o.threads,
                                 o.resolved_cache());
  std::string json_text = cell_table_to_json(t).dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << json_text;
  } else {
    std::ofstream out(out_path);
    out << json_text;
  }
  if (!csv_path.empty()) {
    std::ofstream out(csv_path);
    out << cell_table_csv(t);
  }
  for (const auto& row : t.rows)
    if (!row.pi.certified) return kExitUncertified;
  return kExitPass;
}

int print_report(const CheckReport& rep) {
  bool fail_hard = false, uncertified = false;
  for (const auto& c : rep.checks) {
    std::cout << (c.pass ? "ok   " : "FAIL ") << c.name
              << (c.detail.empty() ? "" : "  (" + c.detail + ")") << "\n";
    if (!c.pass) {
      if (c.name == "all-certified")
        uncertified = true;
      else
        fail_hard = true;
    }
  }
  if (fail_hard) return kExitFail;
  return uncertified ? kExitUncertified : kExitPass;
}

int run_verify(const CommonOpts& o, int n, std::vector<std::int64_t> lengths) {
  std::sort(lengths.begin(), lengths.end());
  lengths.erase(std::unique(lengths.begin(), lengths.end()), lengths.end());
  if (lengths.empty()) fail(Err::InconsistentInput, "no ball radii given");
  CellTable big = build_cell_table(n, lengths.back(), o.parsed_mode(), o.charge, o.cfg,
                                   o.threads, o.resolved_cache());
  CheckReport rep = verify_cell_table(big);
  if (lengths.size() >= 2) {
    std::vector<CellTable> nested;
    nested.reserve(lengths.size());
    for (auto L : lengths) nested.push_back(restrict_table(big, L));
    auto dich = verify_dichotomy(nested);
    rep.checks.insert(rep.checks.end(), dich.checks.begin(), dich.checks.end());
  }
  return print_report(rep);
}

int run_finite(const CommonOpts& o, int n) {
  bool all_ok = true;
  for (const auto& w : all_permutations(n)) {
    Partition a = finite_scell(w, o.cfg.prime, o.cfg.trials, o.cfg.seed);
    Partition b = rs_shape(w);
    bool ok = (a == b);
    all_ok = all_ok && ok;
    std::cout << (ok ? "ok   " : "FAIL ") << "w=";
    for (std::size_t i = 0; i < w.size(); ++i) std::cout << (i ? "," : "") << w[i];
    std::cout << "  jordan=";
    for (std::size_t i = 0; i < a.size(); ++i) std::cout << (i ? "+" : "") << a[i];
    std::cout << "  insertion=";
    for (std::size_t i = 0; i < b.size(); ++i) std::cout << (i ? "+" : "") << b[i];
    std::cout << "\n";
  }
  return all_ok ? kExitPass : kExitFail;
}

int run_minimal(const std::string& type_text) {
  auto parts64 = parse_int_list(type_text);
  Partition parts;
  for (auto v : parts64) parts.push_back(static_cast<int>(v));
  GkmClass g = minimal_gkm(parts);
  nlohmann::ordered_json j;
  j["minimal"] = gkm_to_json(g);
  j["delta"] = delta(g);
  j["elliptic"] = is_elliptic(g);
  std::cout << j.dump(2) << "\n";
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"affine Weyl group cell invariants from exact generic spectra"};
  app.require_subcommand(1);

  CommonOpts opts;

  std::string window_text;
  auto* pi_cmd = app.add_subcommand("pi", "spectral class of one element");
  pi_cmd->add_option("window", window_text, "window u(1),...,u(n), e.g. 0,3")->required();
  add_common(pi_cmd, opts);

  int n = 2;
  std::int64_t max_length = 4;
  std::string out_path, csv_path;
  auto* cells_cmd = app.add_subcommand("cells", "pi over a whole length ball");
  cells_cmd->add_option("-n,--rank", n, "window size n")->required();
  cells_cmd->add_option("-L,--max-length", max_length, "ball radius")->required();
  cells_cmd->add_option("--out", out_path, "write the table JSON here instead of stdout");
  cells_cmd->add_option("--csv", csv_path, "also write a CSV summary");
  add_common(cells_cmd, opts);

  int vn = 2;
  std::vector<std::int64_t> lengths;
  auto* verify_cmd = app.add_subcommand("verify", "check table invariants over nested balls");
  verify_cmd->add_option("-n,--rank", vn, "window size n")->required();
  verify_cmd->add_option("-L,--lengths", lengths, "ball radii (two or more check growth)")
      ->required();
  add_common(verify_cmd, opts);

  int fn = 3;
  auto* finite_cmd =
      app.add_subcommand("finite-cells", "generic Jordan type vs row insertion over S_n");
  finite_cmd->add_option("-n,--rank", fn, "symmetric group size")->required();
  add_common(finite_cmd, opts);

  std::string type_text;
  auto* minimal_cmd = app.add_subcommand("minimal", "minimal class of a cycle type");
  minimal_cmd->add_option("type", type_text, "partition, e.g. 3,2,1")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (pi_cmd->parsed()) return run_pi(opts, window_text);
    if (cells_cmd->parsed()) return run_cells(opts, n, max_length, out_path, csv_path);
    if (verify_cmd->parsed()) return run_verify(opts, vn, lengths);
    if (finite_cmd->parsed()) return run_finite(opts, fn);
    if (minimal_cmd->parsed()) return run_minimal(type_text);
  } catch (const ScellError& e) {
    std::cerr << err_name(e.code()) << ": " << e.what() << "\n";
    switch (e.code()) {
      case Err::NonBijective:
      case Err::WeightNotZero:
      case Err::ModeMismatch:
      case Err::InconsistentInput:
        return kExitUsage;
      case Err::Uncertified:
        return kExitUncertified;
      default:
        return kExitFail;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitUsage;
}
