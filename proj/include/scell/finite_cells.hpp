#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "scell/affine_perm.hpp"

namespace scell {

// Positions (i, j), i < j, where a generic upper triangular matrix
// supported on the intersection of the Borel with its w-conjugate may be
// nonzero: exactly the pairs whose order w^{-1} preserves. w is given in
// one-line notation (1-based values).
std::vector<std::pair<int, int>> intersection_support(const std::vector<int>& w);

// Jordan type of a generic nilpotent matrix supported on
// intersection_support(w), computed over F_prime by rank sequences and
// majority vote over independent draws.
Partition finite_scell(const std::vector<int>& w, std::uint64_t prime = 10007, int trials = 5,
                       std::uint64_t seed = 2024);

// Shape of the insertion tableau of w under row insertion. Independent
// combinatorial route to the same partition.
Partition rs_shape(const std::vector<int>& w);

// All n! one-line permutations in lexicographic order.
std::vector<std::vector<int>> all_permutations(int n);

}  // namespace scell
