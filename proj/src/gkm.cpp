#include "scell/gkm.hpp"

#include <algorithm>
#include <numeric>

#include "scell/error.hpp"

namespace scell {

namespace {

void validate(const GkmClass& g) {
  int n = g.n();
  if (n <= 0) fail(Err::InconsistentInput, "empty spectral datum");
  int sum = 0;
  for (int d : g.cycle_type) {
    if (d <= 0) fail(Err::InconsistentInput, "non-positive block size");
    sum += d;
  }
  if (sum != n) fail(Err::InconsistentInput, "block sizes do not sum to the matrix size");
  if (static_cast<int>(g.rvals.size()) != n)
    fail(Err::InconsistentInput, "valuation matrix has wrong size");
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(g.rvals[i].size()) != n)
      fail(Err::InconsistentInput, "valuation matrix is not square");
    if (!(g.rvals[i][i] == Rational(0)))
      fail(Err::InconsistentInput, "valuation matrix has nonzero diagonal");
    for (int j = 0; j < n; ++j) {
      if (!(g.rvals[i][j] == g.rvals[j][i]))
        fail(Err::InconsistentInput, "valuation matrix is not symmetric");
      if (i != j && !(Rational(0) < g.rvals[i][j]))
        fail(Err::InconsistentInput, "off-diagonal valuation not positive");
    }
  }
  // The twist shifts every block simultaneously by one step; the matrix
  // must not see the relabeling.
  std::vector<int> tw(n);
  int off = 0;
  for (int d : g.cycle_type) {
    for (int t = 0; t < d; ++t) tw[off + t] = off + (t + 1) % d;
    off += d;
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!(g.rvals[tw[i]][tw[j]] == g.rvals[i][j]))
        fail(Err::InconsistentInput, "valuations are not twist-invariant");
}

std::vector<Rational> upper_triangle(const GkmClass& g, const std::vector<int>& map) {
  int n = g.n();
  std::vector<Rational> out;
  out.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) out.push_back(g.rvals[map[i]][map[j]]);
  return out;
}

bool tri_less(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] < b[k]) return true;
    if (b[k] < a[k]) return false;
  }
  return false;
}

}  // namespace

int GkmClass::n() const { return static_cast<int>(rvals.size()); }

bool GkmClass::operator==(const GkmClass& o) const {
  return cycle_type == o.cycle_type && rvals == o.rvals;
}

GkmClass canonicalize(const GkmClass& g) {
  validate(g);
  int n = g.n();
  int k = static_cast<int>(g.cycle_type.size());

  std::vector<int> offsets(static_cast<std::size_t>(k), 0);
  for (int b = 1; b < k; ++b) offsets[b] = offsets[b - 1] + g.cycle_type[b - 1];

  // Block order: sizes decreasing; same-size blocks may be swapped freely,
  // and each block may start at any of its rotations.
  std::vector<int> order(static_cast<std::size_t>(k));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return g.cycle_type[a] > g.cycle_type[b]; });

  std::vector<std::pair<int, int>> groups;  // [first, last) runs of equal size
  for (int b = 0; b < k;) {
    int e = b;
    while (e < k && g.cycle_type[order[e]] == g.cycle_type[order[b]]) ++e;
    groups.emplace_back(b, e);
    b = e;
  }

  std::vector<Rational> best_tri;
  std::vector<int> best_map;

  std::vector<int> rot(static_cast<std::size_t>(k), 0);
  auto consider = [&](const std::vector<int>& ord) {
    std::vector<int> map(static_cast<std::size_t>(n));
    int pos = 0;
    for (int b = 0; b < k; ++b) {
      int ob = ord[b];
      int d = g.cycle_type[ob];
      for (int t = 0; t < d; ++t) map[pos + t] = offsets[ob] + (t + rot[b]) % d;
      pos += d;
    }
    auto tri = upper_triangle(g, map);
    if (best_map.empty() || tri_less(tri, best_tri)) {
      best_tri = std::move(tri);
      best_map = std::move(map);
    }
  };

  auto sweep_rotations = [&](const std::vector<int>& ord) {
    std::fill(rot.begin(), rot.end(), 0);
    for (;;) {
      consider(ord);
      int b = k - 1;
      while (b >= 0) {
        if (++rot[b] < g.cycle_type[ord[b]]) break;
        rot[b] = 0;
        --b;
      }
      if (b < 0) break;
    }
  };

  // Odometer over per-group permutations.
  std::vector<std::vector<int>> perms(groups.size());
  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    perms[gi].assign(order.begin() + groups[gi].first, order.begin() + groups[gi].second);
    std::sort(perms[gi].begin(), perms[gi].end());
  }
  std::vector<std::vector<int>> perm_state = perms;
  for (;;) {
    std::vector<int> ord;
    ord.reserve(static_cast<std::size_t>(k));
    for (const auto& ps : perm_state) ord.insert(ord.end(), ps.begin(), ps.end());
    sweep_rotations(ord);
    std::size_t gi = groups.size();
    while (gi > 0) {
      if (std::next_permutation(perm_state[gi - 1].begin(), perm_state[gi - 1].end())) break;
      --gi;
    }
    if (gi == 0) break;
  }

  GkmClass out;
  out.cycle_type.reserve(static_cast<std::size_t>(k));
  for (int b : order) out.cycle_type.push_back(g.cycle_type[b]);
  out.rvals.assign(static_cast<std::size_t>(n),
                   std::vector<Rational>(static_cast<std::size_t>(n), Rational(0)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.rvals[i][j] = g.rvals[best_map[i]][best_map[j]];
  return out;
}

GkmClass minimal_gkm(std::vector<int> cycle_type) {
  std::sort(cycle_type.begin(), cycle_type.end(), std::greater<int>());
  int n = 0;
  for (int d : cycle_type) {
    if (d <= 0) fail(Err::InconsistentInput, "non-positive block size");
    n += d;
  }
  GkmClass g;
  g.cycle_type = std::move(cycle_type);
  std::vector<int> block_of(static_cast<std::size_t>(n));
  int off = 0;
  for (std::size_t b = 0; b < g.cycle_type.size(); ++b)
    for (int t = 0; t < g.cycle_type[b]; ++t) block_of[off++] = static_cast<int>(b);
  g.rvals.assign(static_cast<std::size_t>(n),
                 std::vector<Rational>(static_cast<std::size_t>(n), Rational(0)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      int di = g.cycle_type[block_of[i]];
      int dj = g.cycle_type[block_of[j]];
      g.rvals[i][j] = rational_min(Rational(1, di), Rational(1, dj));
    }
  return g;
}

Rational total_rvalue(const GkmClass& g) {
  Rational s(0);
  int n = g.n();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) s = s + g.rvals[i][j];
  return s + s;
}

int codim_base(const GkmClass& g) { return g.n() - static_cast<int>(g.cycle_type.size()); }

std::int64_t delta(const GkmClass& g) {
  Rational diff = total_rvalue(g) - Rational(codim_base(g));
  Rational half = diff / Rational(2);
  if (!half.is_integer())
    fail(Err::NonIntegral, "defect " + half.str() + " is not an integer");
  if (half.num < 0) fail(Err::NonIntegral, "defect " + half.str() + " is negative");
  return half.num;
}

bool is_minimal(const GkmClass& g) {
  GkmClass c = canonicalize(g);
  return c == minimal_gkm(c.cycle_type);
}

bool is_elliptic(const GkmClass& g) { return g.cycle_type.size() == 1; }

std::string gkm_key(const GkmClass& g) {
  std::string s = "(";
  for (std::size_t b = 0; b < g.cycle_type.size(); ++b) {
    if (b) s += ",";
    s += std::to_string(g.cycle_type[b]);
  }
  s += ")";
  int n = g.n();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      s += ";";
      s += g.rvals[i][j].str();
    }
  return s;
}

}  // namespace scell
