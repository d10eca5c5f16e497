#include "scell/pi_map.hpp"

#include <map>

#include "scell/error.hpp"
#include "scell/hashing.hpp"
#include "scell/puiseux.hpp"

namespace scell {

namespace {

std::vector<std::vector<Series>> sample_matrix(const ThresholdMatrix& T, const Ctx& ctx,
                                               std::int64_t prec, std::uint64_t seed) {
  int n = T.n;
  std::vector<std::vector<Series>> M(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    M[static_cast<std::size_t>(i)].reserve(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
      SplitMix64 rng(StableHash().u64(seed).i64(i).i64(j).get());
      Series s = Series::zero(ctx, 1, prec);
      for (std::int64_t e = T.K[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
           e < prec; ++e)
        s.set_coeff(e, Fq::from_int(ctx, rng.below(ctx->p)));
      M[static_cast<std::size_t>(i)].push_back(std::move(s));
    }
  }
  return M;
}

}  // namespace

GkmClass gkm_of_element(const AffinePermutation& x, std::uint64_t prime, std::int64_t precision,
                        std::uint64_t seed, int max_field_degree) {
  if (precision <= 0) fail(Err::PrecisionZero, "sampling needs positive precision");
  Ctx ctx = make_field(prime, 1);
  ThresholdMatrix T = threshold_matrix(x);
  auto M = sample_matrix(T, ctx, precision, seed);
  SeriesPoly f = char_poly(M);

  PuiseuxExpansion ex;
  try {
    ex = puiseux_expand(f, precision, StableHash().u64(seed).str("expand").get(),
                        max_field_degree);
  } catch (const ScellError& e) {
    if (e.code() == Err::NotSquarefreeToPrecision || e.code() == Err::LiftDiverged)
      fail(Err::NotRegularSemisimple, e.what());
    throw;
  }
  PairwiseValuations pv = pairwise_valuations(ex, precision);
  if (!pv.certified)
    fail(Err::InsufficientPrecision, "pairwise valuations not certified at this precision");

  // Twist orbits become consecutive blocks, each listed along its cycle.
  int n = static_cast<int>(ex.roots.size());
  std::vector<int> order;
  order.reserve(static_cast<std::size_t>(n));
  std::vector<int> sizes;
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int i = 0; i < n; ++i) {
    if (seen[static_cast<std::size_t>(i)]) continue;
    int len = 0;
    for (int v = i; !seen[static_cast<std::size_t>(v)]; v = ex.sigma[static_cast<std::size_t>(v)]) {
      seen[static_cast<std::size_t>(v)] = true;
      order.push_back(v);
      ++len;
    }
    sizes.push_back(len);
  }

  GkmClass g;
  g.cycle_type = std::move(sizes);
  g.rvals.assign(static_cast<std::size_t>(n),
                 std::vector<Rational>(static_cast<std::size_t>(n), Rational(0)));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      g.rvals[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
          pv.Q[static_cast<std::size_t>(order[static_cast<std::size_t>(a)])]
              [static_cast<std::size_t>(order[static_cast<std::size_t>(b)])];
  return canonicalize(g);
}

PiResult pi(const AffinePermutation& x, const SampleConfig& cfg) {
  std::vector<std::uint64_t> primes{cfg.prime};
  for (auto p : cfg.extra_primes) primes.push_back(p);
  std::int64_t N = cfg.precision > 0 ? cfg.precision : 16 * x.n();
  int resamples = 0;
  std::map<std::string, std::pair<GkmClass, int>> tally;
  int total = 0;

  for (int trial = 0; trial < cfg.trials; ++trial) {
    for (std::uint64_t p : primes) {
      for (;;) {
        std::uint64_t s = StableHash()
                              .u64(cfg.seed)
                              .str(x.encode())
                              .u64(p)
                              .i64(trial)
                              .i64(resamples)
                              .get();
        try {
          GkmClass g = gkm_of_element(x, p, N, s, cfg.max_field_degree);
          auto& slot = tally[gkm_key(g)];
          if (slot.second == 0) slot.first = g;
          ++slot.second;
          ++total;
          break;
        } catch (const ScellError& e) {
          if (e.code() == Err::NotRegularSemisimple) {
            if (++resamples > cfg.resample_limit)
              fail(Err::ResampleLimit,
                   "too many degenerate draws for " + x.encode() + " at p=" + std::to_string(p));
            // Genuinely degenerate draws are rare, so persistent failures
            // usually mean the roots collide below the working precision.
            if (resamples % 3 == 0 && 2 * N <= cfg.max_precision) N *= 2;
            continue;
          }
          if (e.code() == Err::InsufficientPrecision ||
              e.code() == Err::IndeterminateValuation) {
            N *= 2;
            if (N > cfg.max_precision)
              fail(Err::Uncertified, "hit the precision cap without certification for " +
                                         x.encode() + ": " + std::string(e.what()));
            continue;
          }
          throw;
        }
      }
    }
  }

  const std::pair<const std::string, std::pair<GkmClass, int>>* best = nullptr;
  for (const auto& kv : tally)
    if (!best || kv.second.second > best->second.second) best = &kv;

  PiResult r;
  r.value = best->second.first;
  r.certified = (best->second.second == total);
  r.trials_used = total;
  r.resamples = resamples;
  r.precision_used = N;
  for (const auto& kv : tally) r.votes.emplace_back(kv.first, kv.second.second);
  return r;
}

Partition pibar(const AffinePermutation& x, const SampleConfig& cfg) {
  return pi(x, cfg).value.cycle_type;
}

}  // namespace scell
