#include "scell/cell_table.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <memory>
#include <mutex>
#include <sstream>
#include <thread>

#include "scell/error.hpp"

namespace scell {

namespace {

using ojson = nlohmann::ordered_json;

constexpr const char* kCacheVersion = "1";

std::string primes_key(const SampleConfig& cfg) {
  std::string s = std::to_string(cfg.prime);
  for (auto p : cfg.extra_primes) s += "+" + std::to_string(p);
  return s;
}

std::string partition_str(const Partition& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(p[i]);
  }
  return s + ")";
}

}  // namespace

CellTable build_cell_table(int n, std::int64_t max_length, Mode mode, std::int64_t gl_charge,
                           const SampleConfig& cfg, int threads, const std::string& cache_dir) {
  CellTable t;
  t.n = n;
  t.mode = mode;
  t.gl_charge = gl_charge;
  t.max_length = max_length;
  t.config = cfg;

  auto ball = enumerate_ball_bfs(n, max_length, mode, gl_charge);
  t.rows.resize(ball.size());
  for (std::size_t i = 0; i < ball.size(); ++i) {
    t.rows[i].x = ball[i].first;
    t.rows[i].length = ball[i].second;
  }

  std::unique_ptr<PiCache> cache;
  if (!cache_dir.empty()) {
    std::filesystem::create_directories(cache_dir);
    cache = std::make_unique<PiCache>((std::filesystem::path(cache_dir) / "pi-cache.jsonl").string());
  }

  std::vector<std::size_t> todo;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    if (cache) {
      auto hit = cache->get(cache_key(t.rows[i].x, cfg));
      if (hit) {
        t.rows[i].pi = std::move(*hit);
        continue;
      }
    }
    todo.push_back(i);
  }

  int nthreads = threads > 0 ? threads
                             : static_cast<int>(std::min<unsigned>(
                                   std::max(1u, std::thread::hardware_concurrency()), 8u));
  nthreads = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(nthreads),
                                                    std::max<std::size_t>(todo.size(), 1)));
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      std::size_t k = next.fetch_add(1);
      if (k >= todo.size()) return;
      try {
        t.rows[todo[k]].pi = pi(t.rows[todo[k]].x, cfg);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };
  if (nthreads <= 1 || todo.size() <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nthreads));
    for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  if (cache)
    for (std::size_t i : todo) cache->put(cache_key(t.rows[i].x, cfg), t.rows[i].pi);
  return t;
}

CellTable restrict_table(const CellTable& t, std::int64_t cutoff) {
  CellTable out = t;
  out.max_length = cutoff;
  out.rows.clear();
  for (const auto& row : t.rows)
    if (row.length <= cutoff) out.rows.push_back(row);
  return out;
}

bool CheckReport::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

CheckReport verify_cell_table(const CellTable& t) {
  CheckReport rep;
  auto add = [&](std::string name, bool pass, std::string detail) {
    rep.checks.push_back({std::move(name), pass, std::move(detail)});
  };

  std::string bad;
  for (const auto& row : t.rows)
    if (length(row.x) != row.length) {
      bad = row.x.encode() + ": formula " + std::to_string(length(row.x)) + " vs stored " +
            std::to_string(row.length);
      break;
    }
  add("length-formula-vs-bfs", bad.empty(), bad.empty() ? std::to_string(t.rows.size()) + " rows" : bad);

  bad.clear();
  for (const auto& row : t.rows) {
    auto ex = threshold_matrix(row.x).excess();
    if (ex != row.length) {
      bad = row.x.encode() + ": excess " + std::to_string(ex) + " vs length " +
            std::to_string(row.length);
      break;
    }
  }
  add("threshold-excess-equals-length", bad.empty(), bad);

  bad.clear();
  for (const auto& row : t.rows)
    if (!row.pi.certified) {
      bad = row.x.encode() + " uncertified";
      break;
    }
  add("all-certified", bad.empty(), bad);

  bad.clear();
  for (const auto& row : t.rows) {
    try {
      if (!is_minimal(row.pi.value)) {
        bad = row.x.encode() + " maps to a non-minimal class";
        break;
      }
    } catch (const ScellError& e) {
      bad = row.x.encode() + ": " + e.what();
      break;
    }
  }
  add("values-minimal", bad.empty(), bad);

  bad.clear();
  for (const auto& row : t.rows) {
    try {
      (void)delta(row.pi.value);
    } catch (const ScellError& e) {
      bad = row.x.encode() + ": " + e.what();
      break;
    }
  }
  add("defect-integral", bad.empty(), bad);

  std::string missing;
  for (const auto& p : partitions_of(t.n)) {
    bool found = false;
    for (const auto& row : t.rows)
      if (row.pi.value.cycle_type == p) {
        found = true;
        break;
      }
    if (!found) missing += (missing.empty() ? "" : " ") + partition_str(p);
  }
  add("cycle-types-surjective", missing.empty(),
      missing.empty() ? "" : "never hit: " + missing);

  return rep;
}

CheckReport verify_dichotomy(const std::vector<CellTable>& nested) {
  CheckReport rep;
  auto add = [&](std::string name, bool pass, std::string detail) {
    rep.checks.push_back({std::move(name), pass, std::move(detail)});
  };
  if (nested.size() < 2) {
    add("nesting", false, "need at least two balls");
    return rep;
  }
  int n = nested[0].n;
  bool ok = true;
  for (std::size_t k = 1; k < nested.size(); ++k)
    if (nested[k].n != n || nested[k].max_length <= nested[k - 1].max_length) ok = false;
  add("nesting", ok, ok ? "" : "balls are not nested over one group");
  if (!ok) return rep;

  auto fiber_count = [&](const CellTable& t, const Partition& p) {
    std::int64_t c = 0;
    for (const auto& row : t.rows)
      if (row.pi.value.cycle_type == p) ++c;
    return c;
  };

  for (const auto& p : partitions_of(n)) {
    std::vector<std::int64_t> counts;
    counts.reserve(nested.size());
    for (const auto& t : nested) counts.push_back(fiber_count(t, p));
    std::string series;
    for (std::size_t k = 0; k < counts.size(); ++k)
      series += (k ? "," : "") + std::to_string(counts[k]);
    if (p.size() == 1) {
      bool stable = counts.front() > 0;
      for (auto c : counts)
        if (c != counts.front()) stable = false;
      add("one-block-fiber-stable-" + partition_str(p), stable, "counts " + series);
    } else {
      add("multi-block-fiber-counts-" + partition_str(p), true, "counts " + series);
    }
  }

  bool some_growing = false;
  for (const auto& p : partitions_of(n)) {
    if (p.size() == 1) continue;
    bool growing = true;
    std::int64_t prev = -1;
    for (const auto& t : nested) {
      auto c = fiber_count(t, p);
      if (c <= prev) growing = false;
      prev = c;
    }
    if (growing && prev > 0) some_growing = true;
  }
  add("some-multi-block-fiber-grows", some_growing, "");
  return rep;
}

ojson gkm_to_json(const GkmClass& g) {
  ojson j;
  j["cycle_type"] = g.cycle_type;
  ojson rv = ojson::array();
  int n = g.n();
  for (int i = 0; i < n; ++i)
    for (int k = i + 1; k < n; ++k)
      rv.push_back({std::to_string(i + 1), std::to_string(k + 1),
                    g.rvals[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)].str()});
  j["rvals"] = std::move(rv);
  return j;
}

namespace {

Rational rational_from_str(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(std::stoll(s));
  return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
}

}  // namespace

GkmClass gkm_from_json(const ojson& j) {
  GkmClass g;
  g.cycle_type = j.at("cycle_type").get<std::vector<int>>();
  int n = 0;
  for (int d : g.cycle_type) n += d;
  g.rvals.assign(static_cast<std::size_t>(n),
                 std::vector<Rational>(static_cast<std::size_t>(n), Rational(0)));
  for (const auto& e : j.at("rvals")) {
    int a = std::stoi(e.at(0).get<std::string>()) - 1;
    int b = std::stoi(e.at(1).get<std::string>()) - 1;
    if (a < 0 || b < 0 || a >= n || b >= n)
      fail(Err::CacheCorrupt, "valuation index out of range");
    Rational r = rational_from_str(e.at(2).get<std::string>());
    g.rvals[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = r;
    g.rvals[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] = r;
  }
  return g;
}

ojson pi_result_to_json(const PiResult& r) {
  ojson j;
  j["value"] = gkm_to_json(r.value);
  j["certified"] = r.certified;
  j["trials"] = r.trials_used;
  j["resamples"] = r.resamples;
  j["precision"] = r.precision_used;
  ojson votes = ojson::array();
  for (const auto& [key, count] : r.votes) votes.push_back({key, count});
  j["votes"] = std::move(votes);
  return j;
}

PiResult pi_result_from_json(const ojson& j) {
  PiResult r;
  r.value = gkm_from_json(j.at("value"));
  r.certified = j.at("certified").get<bool>();
  r.trials_used = j.at("trials").get<int>();
  r.resamples = j.at("resamples").get<int>();
  r.precision_used = j.at("precision").get<std::int64_t>();
  for (const auto& v : j.at("votes"))
    r.votes.emplace_back(v.at(0).get<std::string>(), v.at(1).get<int>());
  return r;
}

ojson cell_table_to_json(const CellTable& t) {
  ojson j;
  j["version"] = kCacheVersion;
  j["n"] = t.n;
  j["mode"] = mode_name(t.mode);
  j["charge"] = t.gl_charge;
  j["max_length"] = t.max_length;
  ojson cfg;
  cfg["prime"] = t.config.prime;
  cfg["extra_primes"] = t.config.extra_primes;
  cfg["precision"] = t.config.precision;
  cfg["trials"] = t.config.trials;
  cfg["seed"] = t.config.seed;
  cfg["resample_limit"] = t.config.resample_limit;
  cfg["max_precision"] = t.config.max_precision;
  cfg["max_field_degree"] = t.config.max_field_degree;
  j["config"] = std::move(cfg);
  ojson rows = ojson::array();
  for (const auto& row : t.rows) {
    ojson r;
    r["x"] = row.x.encode();
    r["length"] = row.length;
    r["pibar"] = row.pi.value.cycle_type;
    r["delta"] = delta(row.pi.value);
    r["pi"] = pi_result_to_json(row.pi);
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  return j;
}

std::string cell_table_csv(const CellTable& t) {
  std::ostringstream out;
  out << "x,length,pibar,delta,certified\n";
  for (const auto& row : t.rows) {
    out << row.x.encode() << "," << row.length << ",";
    const auto& ct = row.pi.value.cycle_type;
    for (std::size_t i = 0; i < ct.size(); ++i) out << (i ? "+" : "") << ct[i];
    out << "," << delta(row.pi.value) << "," << (row.pi.certified ? "yes" : "no") << "\n";
  }
  return out.str();
}

PiCache::PiCache(std::string path) : path_(std::move(path)) {
  std::ifstream in(path_);
  if (!in.good()) return;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    ojson j = ojson::parse(line, nullptr, false);
    if (j.is_discarded() || !j.contains("k") || !j.contains("v"))
      fail(Err::CacheCorrupt, path_ + ":" + std::to_string(lineno) + " is not a cache line");
    entries_[j.at("k").get<std::string>()] = j.at("v");
  }
}

std::optional<PiResult> PiCache::get(const std::string& key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  try {
    return pi_result_from_json(it->second);
  } catch (const std::exception& e) {
    fail(Err::CacheCorrupt, path_ + ": bad entry for " + key + ": " + e.what());
  }
}

void PiCache::put(const std::string& key, const PiResult& r) {
  if (entries_.count(key)) return;
  ojson line;
  line["k"] = key;
  line["v"] = pi_result_to_json(r);
  std::ofstream out(path_, std::ios::app);
  if (!out.good()) fail(Err::CacheCorrupt, "cannot append to " + path_);
  out << line.dump() << "\n";
  entries_[key] = line["v"];
}

std::string cache_key(const AffinePermutation& x, const SampleConfig& cfg) {
  std::ostringstream k;
  k << "v" << kCacheVersion << "|x=" << x.encode() << "|p=" << primes_key(cfg)
    << "|N=" << cfg.precision << "|trials=" << cfg.trials << "|seed=" << cfg.seed
    << "|rl=" << cfg.resample_limit << "|mp=" << cfg.max_precision
    << "|mfd=" << cfg.max_field_degree;
  return k.str();
}

}  // namespace scell
