#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "scell/rational.hpp"
#include "scell/series.hpp"

namespace scell {

// One Galois orbit of Puiseux roots. The orbit has e * residual_degree
// elements: e from the ramification (the grid-variable twist) and
// residual_degree from Frobenius on coefficients that is not already
// accounted for by the twist.
struct PuiseuxBranch {
  Series expansion;        // representative on its reduced grid (ram = e)
  std::int64_t e = 1;      // ramification = twist-orbit size
  int residual_degree = 1; // orbit size under twist and Frobenius, over e
  int multiplicity = 1;    // root multiplicity (inputs here are squarefree)
  int coeff_degree = 1;    // [F_p(coefficients) : F_p]
};

// Complete expansion data for a monic squarefree polynomial whose roots
// all have positive valuation: every root as a truncated series on the
// common grid, the twist and Frobenius actions as permutations, and the
// per-orbit branch records.
struct PuiseuxExpansion {
  Ctx field;                  // smallest field carrying all data
  std::int64_t grid = 1;      // common ramification L = lcm of branch e
  std::vector<Series> roots;  // all deg(f) expansions, canonically sorted
  std::vector<int> sigma;     // twist action t^{1/L} -> xi_L t^{1/L}
  std::vector<int> frob;      // coefficientwise Frobenius action
  std::vector<PuiseuxBranch> branches;
  std::int64_t cert_prec = 0; // min root precision, grid units
};

// Expand all roots of f to t-adic precision `target`. f must be monic
// with every Newton slope positive, and squarefree to the working
// precision. Root isolation switches to Newton lifting as soon as a root
// is alone on its polygon segment and needs no further grid refinement.
// Field growth is capped at max_field_degree over the prime field.
PuiseuxExpansion puiseux_expand(const SeriesPoly& f, std::int64_t target, std::uint64_t seed,
                                int max_field_degree = 12);

struct PairwiseValuations {
  std::vector<std::vector<Rational>> Q;  // val(root_i - root_j), diagonal 0
  bool certified = false;                // every off-diagonal entry witnessed
  Rational witness_bound{0};             // entries must be < this to certify
};

// Valuations of pairwise differences of the expanded roots. Certified
// when every off-diagonal valuation is witnessed by a nonzero coefficient
// strictly below target/2 in t-units.
PairwiseValuations pairwise_valuations(const PuiseuxExpansion& expansion, std::int64_t target);

// Squarefree-to-precision test via the Euclidean remainder sequence of
// (f, f'). Throws NotSquarefreeToPrecision when the sequence degenerates
// before reaching a remainder with determinable valuation.
void require_squarefree(const SeriesPoly& f);

// Polynomial long division over series coefficients (exposed for tests).
std::pair<SeriesPoly, SeriesPoly> spoly_divmod(const SeriesPoly& a, const SeriesPoly& b);

}  // namespace scell
