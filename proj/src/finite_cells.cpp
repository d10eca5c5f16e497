#include "scell/finite_cells.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "scell/error.hpp"
#include "scell/field.hpp"
#include "scell/hashing.hpp"

namespace scell {

namespace {

void check_one_line(const std::vector<int>& w) {
  int n = static_cast<int>(w.size());
  if (n == 0) fail(Err::NonBijective, "empty one-line notation");
  std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
  for (int v : w) {
    if (v < 1 || v > n || seen[static_cast<std::size_t>(v)])
      fail(Err::NonBijective, "not a one-line permutation");
    seen[static_cast<std::size_t>(v)] = true;
  }
}

int matrix_rank(std::vector<std::vector<Fq>> M) {
  int n = static_cast<int>(M.size());
  int rank = 0;
  for (int col = 0; col < n && rank < n; ++col) {
    int pivot = -1;
    for (int r = rank; r < n; ++r)
      if (!M[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)].is_zero()) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(M[static_cast<std::size_t>(pivot)], M[static_cast<std::size_t>(rank)]);
    Fq inv = M[static_cast<std::size_t>(rank)][static_cast<std::size_t>(col)].inv();
    for (int r = rank + 1; r < n; ++r) {
      Fq f = M[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] * inv;
      if (f.is_zero()) continue;
      for (int c = col; c < n; ++c)
        M[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] -=
            f * M[static_cast<std::size_t>(rank)][static_cast<std::size_t>(c)];
    }
    ++rank;
  }
  return rank;
}

Partition conjugate(const Partition& p) {
  Partition out;
  for (int k = 1;; ++k) {
    int cnt = 0;
    for (int part : p)
      if (part >= k) ++cnt;
    if (cnt == 0) break;
    out.push_back(cnt);
  }
  return out;
}

Partition jordan_type(const std::vector<std::vector<Fq>>& M) {
  int n = static_cast<int>(M.size());
  std::vector<std::vector<Fq>> P = M;
  Partition col_counts;  // number of blocks of size >= k
  std::int64_t prev = n;
  for (int k = 1; k <= n; ++k) {
    std::int64_t rk = matrix_rank(P);
    col_counts.push_back(static_cast<int>(prev - rk));
    prev = rk;
    if (rk == 0) break;
    // next power
    std::vector<std::vector<Fq>> Q(static_cast<std::size_t>(n),
                                   std::vector<Fq>(static_cast<std::size_t>(n),
                                                   Fq::zero(M[0][0].ctx())));
    for (int i = 0; i < n; ++i)
      for (int l = 0; l < n; ++l) {
        if (P[static_cast<std::size_t>(i)][static_cast<std::size_t>(l)].is_zero()) continue;
        for (int j = 0; j < n; ++j)
          Q[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] +=
              P[static_cast<std::size_t>(i)][static_cast<std::size_t>(l)] *
              M[static_cast<std::size_t>(l)][static_cast<std::size_t>(j)];
      }
    P = std::move(Q);
  }
  while (!col_counts.empty() && col_counts.back() == 0) col_counts.pop_back();
  return conjugate(col_counts);
}

}  // namespace

std::vector<std::pair<int, int>> intersection_support(const std::vector<int>& w) {
  check_one_line(w);
  int n = static_cast<int>(w.size());
  std::vector<int> winv(static_cast<std::size_t>(n) + 1, 0);
  for (int pos = 1; pos <= n; ++pos) winv[static_cast<std::size_t>(w[static_cast<std::size_t>(pos - 1)])] = pos;
  std::vector<std::pair<int, int>> out;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      if (winv[static_cast<std::size_t>(i)] < winv[static_cast<std::size_t>(j)])
        out.emplace_back(i, j);
  return out;
}

Partition finite_scell(const std::vector<int>& w, std::uint64_t prime, int trials,
                       std::uint64_t seed) {
  auto support = intersection_support(w);
  int n = static_cast<int>(w.size());
  Ctx ctx = make_field(prime, 1);
  std::map<Partition, int> tally;
  for (int trial = 0; trial < trials; ++trial) {
    SplitMix64 rng(StableHash().u64(seed).str("finite").i64(trial).get());
    std::vector<std::vector<Fq>> M(static_cast<std::size_t>(n),
                                   std::vector<Fq>(static_cast<std::size_t>(n), Fq::zero(ctx)));
    for (auto [i, j] : support)
      M[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] =
          Fq::from_int(ctx, 1 + rng.below(ctx->p - 1));
    ++tally[jordan_type(M)];
  }
  const std::pair<const Partition, int>* best = nullptr;
  for (const auto& kv : tally)
    if (!best || kv.second > best->second) best = &kv;
  return best->first;
}

Partition rs_shape(const std::vector<int>& w) {
  check_one_line(w);
  std::vector<std::vector<int>> rows;
  for (int x : w) {
    int cur = x;
    for (auto& row : rows) {
      auto it = std::upper_bound(row.begin(), row.end(), cur);
      if (it == row.end()) {
        row.push_back(cur);
        cur = 0;
        break;
      }
      std::swap(*it, cur);
    }
    if (cur != 0) rows.push_back({cur});
  }
  Partition shape;
  shape.reserve(rows.size());
  for (const auto& row : rows) shape.push_back(static_cast<int>(row.size()));
  return shape;
}

std::vector<std::vector<int>> all_permutations(int n) {
  std::vector<int> w(static_cast<std::size_t>(n));
  std::iota(w.begin(), w.end(), 1);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(w);
  } while (std::next_permutation(w.begin(), w.end()));
  return out;
}

}  // namespace scell
