#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace scell {

// SL: weight-zero periodic bijections (the affine Weyl group proper).
// GL: all periodic bijections; the rotation i -> i+1 has length zero and
// splits the group into translation-charge cosets of the SL part.
enum class Mode { SL, GL };

inline const char* mode_name(Mode m) { return m == Mode::SL ? "SL" : "GL"; }

// Weakly decreasing positive parts.
using Partition = std::vector<int>;

// All partitions of n, in decreasing lexicographic order: (n) first,
// (1,...,1) last.
std::vector<Partition> partitions_of(int n);

// A bijection u: Z -> Z with u(i+n) = u(i)+n, stored by its window
// (u(1), ..., u(n)). Residues of the window entries mod n are a complete
// system, which is exactly the bijectivity condition.
class AffinePermutation {
 public:
  AffinePermutation() = default;

  static AffinePermutation identity(int n, Mode mode = Mode::SL);
  // k = 0 gives the affine reflection, 1..n-1 the finite ones.
  static AffinePermutation simple_reflection(int n, int k, Mode mode = Mode::SL);
  // The length-zero rotation i -> i+1 (GL mode only).
  static AffinePermutation rotation(int n);
  static AffinePermutation from_window(int n, const std::vector<std::int64_t>& window,
                                       Mode mode = Mode::SL);

  int n() const { return n_; }
  Mode mode() const { return mode_; }
  const std::vector<std::int64_t>& window() const { return window_; }

  std::int64_t apply(std::int64_t i) const;

  // Sum of u(i)-i over the window; always a multiple of n. Zero in SL mode.
  std::int64_t weight() const;
  std::int64_t charge() const { return weight() / n_; }

  bool is_finite() const;  // window is a permutation of 1..n

  // "n:u(1),...,u(n)" with no spaces; the canonical cache/CLI key.
  std::string encode() const;
  static AffinePermutation decode(const std::string& text, Mode mode = Mode::SL);

  friend bool operator==(const AffinePermutation& a, const AffinePermutation& b) {
    return a.n_ == b.n_ && a.window_ == b.window_;
  }
  friend bool operator!=(const AffinePermutation& a, const AffinePermutation& b) {
    return !(a == b);
  }
  friend bool operator<(const AffinePermutation& a, const AffinePermutation& b) {
    if (a.n_ != b.n_) return a.n_ < b.n_;
    return a.window_ < b.window_;
  }

 private:
  int n_ = 0;
  Mode mode_ = Mode::SL;
  std::vector<std::int64_t> window_;
};

// Coxeter length by the inversion-count formula
//   l(u) = sum_{1 <= i < j <= n} |floor((u(j) - u(i)) / n)|.
// Tests verify this against breadth-first word length.
std::int64_t length(const AffinePermutation& u);

AffinePermutation compose(const AffinePermutation& a, const AffinePermutation& b);
AffinePermutation inverse(const AffinePermutation& a);

// Cycle type of a finite permutation (window inside 1..n), parts sorted
// decreasing. Used to classify the finite Weyl group part.
Partition cycle_type(const AffinePermutation& u);

// Lattice of t-adic valuation lower bounds cutting out the generic
// stratum attached to x inside the Iwahori: entry (i,j) is the least
// allowed valuation of the (i,j) matrix coefficient. The base pattern
// kappa (0 strictly above the diagonal, 1 on and below) describes the
// Iwahori itself; conjugating by the monomial matrix of x and
// intersecting gives K. The excess sum(K - kappa) equals length(x).
struct ThresholdMatrix {
  int n = 0;
  Mode mode = Mode::SL;
  std::string source;                            // encode() of the element
  std::vector<std::vector<std::int64_t>> K;      // n x n, 0-indexed

  std::int64_t excess() const;
};

std::int64_t kappa(int i, int j);  // 1-indexed base Iwahori pattern
ThresholdMatrix threshold_matrix(const AffinePermutation& x);

// All elements with length <= max_length, paired with their BFS word
// length, sorted by (length, window lexicographic). GL mode enumerates
// the single coset with the given translation charge; lengths are
// unchanged by the rotation so the BFS stays within the coset.
std::vector<std::pair<AffinePermutation, std::int64_t>> enumerate_ball_bfs(
    int n, std::int64_t max_length, Mode mode = Mode::SL, std::int64_t gl_charge = 0);

std::vector<AffinePermutation> enumerate_ball(int n, std::int64_t max_length,
                                              Mode mode = Mode::SL,
                                              std::int64_t gl_charge = 0);

}  // namespace scell
