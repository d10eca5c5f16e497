// Gate suite: one line per criterion, nonzero exit when any line fails.
// Every check here is against an independent oracle: closed-form classes,
// breadth-first lengths, row insertion, or direct series arithmetic.

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "scell/cell_table.hpp"
#include "scell/error.hpp"
#include "scell/finite_cells.hpp"
#include "scell/hashing.hpp"
#include "scell/puiseux.hpp"

using namespace scell;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

Outcome ok(std::string detail) { return {true, std::move(detail)}; }
Outcome bad(std::string detail) { return {false, std::move(detail)}; }

int g_failures = 0;

void criterion(int k, const std::function<Outcome()>& body) {
  auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = bad(std::string("exception: ") + e.what());
  }
  auto secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!out.pass) ++g_failures;
  std::cout << "CRITERION " << k << ": " << (out.pass ? "PASS" : "FAIL") << " (" << out.detail
            << ") [" << static_cast<int>(secs * 10) / 10.0 << "s]\n";
  std::cout.flush();
}

std::string part_str(const Partition& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + std::to_string(p[i]);
  return s + ")";
}

std::int64_t fiber_count(const CellTable& t, const Partition& p) {
  std::int64_t c = 0;
  for (const auto& row : t.rows)
    if (row.pi.value.cycle_type == p) ++c;
  return c;
}

const std::int64_t kExact = std::int64_t(1) << 30;

SeriesPoly from_roots(const std::vector<Series>& roots) {
  const Ctx& F = roots.at(0).ctx();
  std::int64_t ram = roots[0].ram();
  SeriesPoly f;
  f.c = {Series::monomial(F, Fq::one(F), 0, ram, kExact)};
  for (const auto& r : roots) {
    SeriesPoly g;
    g.c.assign(f.c.size() + 1, Series::zero(F, ram, kExact));
    for (std::size_t k = 0; k < f.c.size(); ++k) {
      g.c[k + 1] += f.c[k];
      g.c[k] -= r * f.c[k];
    }
    f = std::move(g);
  }
  return f;
}

bool poly_matches(const SeriesPoly& a, const SeriesPoly& b, std::int64_t cap) {
  if (a.degree() != b.degree()) return false;
  for (std::size_t k = 0; k < a.c.size(); ++k) {
    Series d = a.c[k] - b.c[k];
    auto v = d.valuation();
    if (v && *v < cap) return false;
  }
  return true;
}

}  // namespace

int main() {
  auto suite_start = std::chrono::steady_clock::now();

  std::vector<GkmClass> produced;  // classes seen in criteria 1-3
  std::optional<CellTable> tab2, tab3;

  // 1: the identity maps to the single-block class with every pairwise
  // valuation 1/n, certified across two primes
  criterion(1, [&]() -> Outcome {
    SampleConfig cfg;
    cfg.extra_primes = {32003};
    for (int n : {2, 3, 4}) {
      auto r = pi(AffinePermutation::identity(n), cfg);
      std::string tag = "identity n=" + std::to_string(n);
      if (!r.certified) return bad(tag + " uncertified");
      if (r.value.cycle_type != Partition{n})
        return bad(tag + " has cycle type " + part_str(r.value.cycle_type));
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          if (r.value.rvals[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] !=
              Rational(1, n))
            return bad(tag + " has a pairwise valuation away from 1/" + std::to_string(n));
      if (delta(r.value) != 0) return bad(tag + " has nonzero defect");
      produced.push_back(r.value);
    }
    return ok("pi(identity) = ((n), 1/n) certified for n=2,3,4 at p=10007 and 32003");
  });

  // 2: every class over two whole balls is minimal and certified
  criterion(2, [&]() -> Outcome {
    SampleConfig cfg;
    tab2 = build_cell_table(2, 10, Mode::SL, 0, cfg);
    tab3 = build_cell_table(3, 6, Mode::SL, 0, cfg);
    std::int64_t total = 0;
    for (const CellTable* t : {&*tab2, &*tab3})
      for (const auto& row : t->rows) {
        ++total;
        if (!row.pi.certified) return bad(row.x.encode() + " uncertified");
        if (!is_minimal(row.pi.value)) return bad(row.x.encode() + " maps to a non-minimal class");
        produced.push_back(row.pi.value);
      }
    return ok("all " + std::to_string(total) +
              " classes minimal and certified over length 10 (n=2) and 6 (n=3)");
  });

  // 3: the cycle-type map covers every partition inside those balls
  criterion(3, [&]() -> Outcome {
    if (!tab2 || !tab3) return bad("prerequisite tables unavailable");
    for (const CellTable* t : {&*tab2, &*tab3})
      for (const auto& p : partitions_of(t->n))
        if (fiber_count(*t, p) == 0)
          return bad("partition " + part_str(p) + " never realized for n=" +
                     std::to_string(t->n));
    return ok("every partition of 2 and 3 realized as a cycle type");
  });

  // 4: elliptic fibers freeze while some non-elliptic fiber keeps growing
  criterion(4, [&]() -> Outcome {
    if (!tab2 || !tab3) return bad("prerequisite tables unavailable");
    std::string detail;

    std::vector<std::int64_t> ell2, non2;
    for (std::int64_t L : {6, 8, 10}) {
      auto t = restrict_table(*tab2, L);
      ell2.push_back(fiber_count(t, {2}));
      non2.push_back(fiber_count(t, {1, 1}));
    }
    if (ell2[0] <= 0 || ell2[0] != ell2[1] || ell2[1] != ell2[2])
      return bad("n=2 elliptic fiber not stable across L=6,8,10");
    if (!(non2[0] < non2[1] && non2[1] < non2[2]))
      return bad("n=2 split fiber not strictly growing");
    detail += "n=2 (2):" + std::to_string(ell2[0]) + " frozen, (1,1):" +
              std::to_string(non2[0]) + "<" + std::to_string(non2[1]) + "<" +
              std::to_string(non2[2]);

    std::vector<std::int64_t> ell3;
    std::vector<std::vector<std::int64_t>> non3;
    for (const auto& p : partitions_of(3))
      if (p.size() > 1) non3.push_back({});
    for (std::int64_t L : {4, 5, 6}) {
      auto t = restrict_table(*tab3, L);
      ell3.push_back(fiber_count(t, {3}));
      std::size_t k = 0;
      for (const auto& p : partitions_of(3))
        if (p.size() > 1) non3[k++].push_back(fiber_count(t, p));
    }
    if (ell3[0] <= 0 || ell3[0] != ell3[1] || ell3[1] != ell3[2])
      return bad("n=3 elliptic fiber not stable across L=4,5,6");
    bool some_grow = false;
    for (const auto& counts : non3)
      if (counts[0] < counts[1] && counts[1] < counts[2] && counts[2] > 0) some_grow = true;
    if (!some_grow) return bad("no n=3 non-elliptic fiber strictly grows across L=4,5,6");
    detail += "; n=3 (3):" + std::to_string(ell3[0]) + " frozen, some split fiber grows";
    return ok(detail);
  });

  // 5: generic Jordan type equals the insertion shape on all of S_1..S_5
  criterion(5, [&]() -> Outcome {
    int total = 0;
    for (int n = 1; n <= 5; ++n)
      for (const auto& w : all_permutations(n)) {
        ++total;
        if (finite_scell(w, 10007, 5, 2024) != rs_shape(w)) {
          std::string ws;
          for (std::size_t i = 0; i < w.size(); ++i) ws += (i ? "," : "") + std::to_string(w[i]);
          return bad("disagreement at w=" + ws);
        }
      }
    if (total != 153) return bad("expected 153 permutations, saw " + std::to_string(total));
    return ok("Jordan type equals insertion shape on all 153 permutations, n<=5");
  });

  // 6: defect formula spot values and integrality of every produced class
  criterion(6, [&]() -> Outcome {
    for (int n = 1; n <= 6; ++n) {
      if (delta(minimal_gkm({n})) != 0)
        return bad("one-block class for n=" + std::to_string(n) + " has nonzero defect");
      Partition ones(static_cast<std::size_t>(n), 1);
      if (delta(minimal_gkm(ones)) != n * (n - 1) / 2)
        return bad("split class for n=" + std::to_string(n) + " misses n(n-1)/2");
    }
    for (const auto& g : produced) {
      try {
        (void)delta(g);
      } catch (const ScellError& e) {
        return bad(std::string("non-integral defect: ") + e.what());
      }
    }
    return ok("spot values for n<=6 and integral defect on all " +
              std::to_string(produced.size()) + " produced classes");
  });

  // 7: threshold excess equals breadth-first word length
  criterion(7, [&]() -> Outcome {
    std::int64_t total = 0;
    for (int n : {2, 3})
      for (const auto& [x, len] : enumerate_ball_bfs(n, 8, Mode::SL, 0)) {
        ++total;
        auto ex = threshold_matrix(x).excess();
        if (ex != len)
          return bad(x.encode() + ": excess " + std::to_string(ex) + " vs BFS length " +
                     std::to_string(len));
      }
    return ok("excess equals BFS length on all " + std::to_string(total) +
              " elements with length <= 8, n=2,3");
  });

  // 8: the series-root engine reproduces its input and its polygon
  criterion(8, [&]() -> Outcome {
    auto F = make_field(10007, 1);
    SplitMix64 rng(20240816);
    const std::int64_t N = 48;
    int done = 0, draws = 0, rejected = 0;
    while (done < 200) {
      if (++draws > 300) return bad("too many rejected draws: " + std::to_string(rejected));
      int d = 1 + static_cast<int>(rng.below(4));
      SeriesPoly f;
      f.c.assign(static_cast<std::size_t>(d) + 1, Series());
      f.c[static_cast<std::size_t>(d)] = Series::monomial(F, Fq::one(F), 0, 1, kExact);
      for (int i = 0; i < d; ++i) {
        Series s = Series::zero(F, 1, N);
        for (std::int64_t e = 1 + static_cast<std::int64_t>(rng.below(4)); e < N; ++e)
          s.set_coeff(e, Fq::from_int(F, rng.below(F->p)));
        f.c[static_cast<std::size_t>(i)] = s;
      }
      PuiseuxExpansion ex;
      try {
        ex = puiseux_expand(f, N, rng.next());
      } catch (const ScellError& e) {
        if (e.code() == Err::NotSquarefreeToPrecision || e.code() == Err::LiftDiverged) {
          ++rejected;  // genuinely inseparable draw
          continue;
        }
        throw;
      }

      auto prod = from_roots(ex.roots);
      auto fe = f.embed_into(ex.field).refine_grid(ex.grid);
      if (!poly_matches(prod, fe, (N / 2) * ex.grid))
        return bad("branch product disagrees with the input below t^" + std::to_string(N / 2));

      auto slopes = newton_polygon(f).valuations();
      std::vector<Rational> root_vals;
      for (const auto& r : ex.roots) {
        auto v = r.valuation();
        if (!v) return bad("a root is zero to precision");
        root_vals.push_back(Rational(*v, ex.grid));
      }
      std::sort(root_vals.begin(), root_vals.end());
      if (root_vals != slopes) return bad("polygon slopes differ from root valuations");

      auto pv = pairwise_valuations(ex, N);
      if (!pv.certified) return bad("a valuation matrix failed to certify at N=48");
      int m = static_cast<int>(pv.Q.size());
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
          for (int k = 0; k < m; ++k) {
            if (i == j || j == k || i == k) continue;
            auto lo = rational_min(pv.Q[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)],
                                   pv.Q[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)]);
            if (pv.Q[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] < lo)
              return bad("ultrametric inequality violated");
          }
      ++done;
    }
    return ok("200 random polynomials: roundtrip below t^24, slopes match, ultrametric holds");
  });

  // 9: rebuilding the criterion-2 tables bit-for-bit, across thread counts
  criterion(9, [&]() -> Outcome {
    if (!tab2 || !tab3) return bad("prerequisite tables unavailable");
    SampleConfig cfg;
    auto again2 = build_cell_table(2, 10, Mode::SL, 0, cfg, 3);
    auto again3 = build_cell_table(3, 6, Mode::SL, 0, cfg, 2);
    if (cell_table_to_json(*tab2).dump() != cell_table_to_json(again2).dump())
      return bad("n=2 table is not byte-identical on rebuild");
    if (cell_table_to_json(*tab3).dump() != cell_table_to_json(again3).dump())
      return bad("n=3 table is not byte-identical on rebuild");
    return ok("both tables byte-identical when rebuilt with other thread counts");
  });

  auto secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - suite_start).count();
  if (g_failures == 0) {
    std::cout << "ACCEPTANCE: 9/9 PASS [" << static_cast<int>(secs) << "s total]\n";
    return 0;
  }
  std::cout << "ACCEPTANCE: " << g_failures << " criterion(s) FAILED [" << static_cast<int>(secs)
            << "s total]\n";
  return 1;
}
