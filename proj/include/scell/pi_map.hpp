#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "scell/affine_perm.hpp"
#include "scell/gkm.hpp"
#include "scell/series.hpp"

namespace scell {

struct SampleConfig {
  std::uint64_t prime = 10007;              // base coefficient characteristic
  std::vector<std::uint64_t> extra_primes;  // cross-checked independently
  std::int64_t precision = 0;               // t-adic working precision; 0 = 16n
  int trials = 5;                           // independent samples per prime
  std::uint64_t seed = 2024;
  int resample_limit = 8;       // non-regular draws tolerated per invocation
  std::int64_t max_precision = 256;  // adaptive doubling stops here
  int max_field_degree = 12;    // residue extension budget over F_p
};

struct PiResult {
  GkmClass value;          // canonical spectral datum
  bool certified = false;  // every trial agreed and was itself certified
  int trials_used = 0;
  int resamples = 0;
  std::int64_t precision_used = 0;
  // Tally of canonical keys seen across primes and trials, key-sorted.
  std::vector<std::pair<std::string, int>> votes;
};

// Spectral datum of one generic draw from the stratum of x: sample every
// matrix entry as a random series with valuation bounds from the
// threshold matrix, then expand the characteristic polynomial's roots
// and read off twist orbits and pairwise valuations. Throws
// NotRegularSemisimple for a degenerate draw and InsufficientPrecision
// when the requested precision cannot separate or certify the roots.
GkmClass gkm_of_element(const AffinePermutation& x, std::uint64_t prime,
                        std::int64_t precision, std::uint64_t seed,
                        int max_field_degree = 12);

// The generic spectral datum of the stratum of x, computed by repeated
// sampling with majority vote. Certified when all primes and trials
// agree; degenerate draws are resampled, precision escalates by doubling.
PiResult pi(const AffinePermutation& x, const SampleConfig& cfg = {});

// Just the cycle type (a partition of n) of pi(x).
Partition pibar(const AffinePermutation& x, const SampleConfig& cfg = {});

}  // namespace scell
