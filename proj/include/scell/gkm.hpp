#pragma once

#include <string>
#include <vector>

#include "scell/rational.hpp"

namespace scell {

// Spectral valuation datum of a regular semisimple topologically
// nilpotent element: the twist-orbit sizes of its eigenvalues (a
// composition of n, stored as consecutive blocks) together with the
// full matrix of pairwise valuations val(lambda_i - lambda_j) in
// t-units. Roots inside one block are consecutive and the twist acts
// on each block by a cyclic shift.
struct GkmClass {
  std::vector<int> cycle_type;
  std::vector<std::vector<Rational>> rvals;

  int n() const;
  bool operator==(const GkmClass& o) const;
  bool operator!=(const GkmClass& o) const { return !(*this == o); }
};

// Validate a datum (block sizes sum to n, matrix symmetric with zero
// diagonal and positive off-diagonal entries, invariant under the
// simultaneous block shift) and relabel it canonically: parts sorted
// decreasing, then the lexicographically least flattened upper triangle
// over all same-length block swaps and per-block rotations.
GkmClass canonicalize(const GkmClass& g);

// The unique datum with the given cycle type whose pairwise valuations
// are as small as possible: r_ij = min(1/d(i), 1/d(j)) where d(i) is
// the size of the block containing i.
GkmClass minimal_gkm(std::vector<int> cycle_type);

Rational total_rvalue(const GkmClass& g);  // 2 * sum over i<j of r_ij
int codim_base(const GkmClass& g);         // n minus the number of blocks

// Defect (total_rvalue - codim_base) / 2. Always a non-negative integer
// for data coming from actual elements; throws NonIntegral otherwise.
std::int64_t delta(const GkmClass& g);

bool is_minimal(const GkmClass& g);
bool is_elliptic(const GkmClass& g);

// Compact deterministic key, used for vote tallies and cache lines.
std::string gkm_key(const GkmClass& g);

}  // namespace scell
