#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "scell/pi_map.hpp"

namespace scell {

struct CellRow {
  AffinePermutation x;
  std::int64_t length = 0;  // breadth-first word length
  PiResult pi;
};

// Every element of a length ball together with its spectral class.
// Rows are in breadth-first order: by length, then window lexicographic.
struct CellTable {
  int n = 0;
  Mode mode = Mode::SL;
  std::int64_t gl_charge = 0;
  std::int64_t max_length = 0;
  SampleConfig config;
  std::vector<CellRow> rows;
};

// Compute pi over the whole ball. Rows are computed concurrently and
// merged by index, so the output is independent of the thread count.
// An empty cache_dir disables the on-disk cache.
CellTable build_cell_table(int n, std::int64_t max_length, Mode mode, std::int64_t gl_charge,
                           const SampleConfig& cfg, int threads = 0,
                           const std::string& cache_dir = "");

// Rows with length <= cutoff, as a table in its own right.
CellTable restrict_table(const CellTable& t, std::int64_t cutoff);

struct CheckReport {
  struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
  };
  std::vector<Check> checks;
  bool all_pass() const;
};

// Invariants of a single table: stored lengths match the inversion
// formula, threshold excess equals length, every result certified, every
// class minimal with integral non-negative defect, and the cycle-type
// map hits every partition of n.
CheckReport verify_cell_table(const CellTable& t);

// Growth across nested balls of the fibers of the cycle-type map:
// one-block fibers must stop growing, and some multi-block fiber must
// keep growing.
CheckReport verify_dichotomy(const std::vector<CellTable>& nested);

nlohmann::ordered_json gkm_to_json(const GkmClass& g);
GkmClass gkm_from_json(const nlohmann::ordered_json& j);
nlohmann::ordered_json pi_result_to_json(const PiResult& r);
PiResult pi_result_from_json(const nlohmann::ordered_json& j);
nlohmann::ordered_json cell_table_to_json(const CellTable& t);
std::string cell_table_csv(const CellTable& t);

// Append-only JSON-lines store of pi results keyed by the exact
// computation inputs. Malformed lines raise CacheCorrupt.
class PiCache {
 public:
  explicit PiCache(std::string path);

  std::optional<PiResult> get(const std::string& key) const;
  void put(const std::string& key, const PiResult& r);

  const std::string& path() const { return path_; }

 private:
  std::string path_;
  std::map<std::string, nlohmann::ordered_json> entries_;
};

std::string cache_key(const AffinePermutation& x, const SampleConfig& cfg);

}  // namespace scell
