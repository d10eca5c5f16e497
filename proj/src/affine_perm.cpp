#include "scell/affine_perm.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <sstream>

#include "scell/error.hpp"

namespace scell {

namespace {

std::int64_t floordiv(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t posmod(std::int64_t a, std::int64_t b) { return a - b * floordiv(a, b); }

}  // namespace

AffinePermutation AffinePermutation::identity(int n, Mode mode) {
  std::vector<std::int64_t> w(n);
  std::iota(w.begin(), w.end(), 1);
  return from_window(n, w, mode);
}

AffinePermutation AffinePermutation::simple_reflection(int n, int k, Mode mode) {
  if (k < 0 || k >= n) fail(Err::InconsistentInput, "simple reflection index out of range");
  std::vector<std::int64_t> w(n);
  std::iota(w.begin(), w.end(), 1);
  if (k == 0) {
    w[0] = 1 - 1;      // u(1) = 0
    w[n - 1] = n + 1;  // u(n) = n+1
  } else {
    std::swap(w[k - 1], w[k]);
  }
  return from_window(n, w, mode);
}

AffinePermutation AffinePermutation::rotation(int n) {
  std::vector<std::int64_t> w(n);
  std::iota(w.begin(), w.end(), 2);
  return from_window(n, w, Mode::GL);
}

AffinePermutation AffinePermutation::from_window(int n, const std::vector<std::int64_t>& window,
                                                 Mode mode) {
  if (n < 1 || static_cast<int>(window.size()) != n)
    fail(Err::InconsistentInput, "window size does not match n");
  std::vector<bool> seen(n, false);
  for (std::int64_t v : window) {
    std::int64_t r = posmod(v - 1, n);
    if (seen[r]) fail(Err::NonBijective, "window residues collide mod n");
    seen[r] = true;
  }
  AffinePermutation u;
  u.n_ = n;
  u.mode_ = mode;
  u.window_ = window;
  if (mode == Mode::SL && u.weight() != 0)
    fail(Err::WeightNotZero, "SL-mode window must have weight zero, got " +
                                 std::to_string(u.weight()));
  return u;
}

std::int64_t AffinePermutation::apply(std::int64_t i) const {
  std::int64_t r = posmod(i - 1, n_) + 1;  // in 1..n
  std::int64_t k = (i - r) / n_;
  return window_[r - 1] + k * n_;
}

std::int64_t AffinePermutation::weight() const {
  std::int64_t s = 0;
  for (int i = 0; i < n_; ++i) s += window_[i] - (i + 1);
  return s;
}

bool AffinePermutation::is_finite() const {
  for (std::int64_t v : window_)
    if (v < 1 || v > n_) return false;
  return true;
}

std::string AffinePermutation::encode() const {
  std::ostringstream out;
  out << n_ << ":";
  for (int i = 0; i < n_; ++i) {
    if (i) out << ",";
    out << window_[i];
  }
  return out.str();
}

AffinePermutation AffinePermutation::decode(const std::string& text, Mode mode) {
  auto colon = text.find(':');
  if (colon == std::string::npos) fail(Err::InconsistentInput, "encoding lacks ':'");
  int n = 0;
  try {
    n = std::stoi(text.substr(0, colon));
  } catch (const std::exception&) {
    fail(Err::InconsistentInput, "bad n in encoding");
  }
  std::vector<std::int64_t> w;
  std::string rest = text.substr(colon + 1);
  std::istringstream in(rest);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    try {
      w.push_back(std::stoll(tok));
    } catch (const std::exception&) {
      fail(Err::InconsistentInput, "bad window entry in encoding");
    }
  }
  return from_window(n, w, mode);
}

std::int64_t length(const AffinePermutation& u) {
  const auto& w = u.window();
  int n = u.n();
  std::int64_t total = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      std::int64_t d = floordiv(w[j] - w[i], n);
      total += d < 0 ? -d : d;
    }
  return total;
}

AffinePermutation compose(const AffinePermutation& a, const AffinePermutation& b) {
  if (a.n() != b.n()) fail(Err::InconsistentInput, "compose: size mismatch");
  Mode mode = (a.mode() == Mode::GL || b.mode() == Mode::GL) ? Mode::GL : Mode::SL;
  std::vector<std::int64_t> w(a.n());
  for (int i = 1; i <= a.n(); ++i) w[i - 1] = a.apply(b.apply(i));
  return AffinePermutation::from_window(a.n(), w, mode);
}

AffinePermutation inverse(const AffinePermutation& a) {
  int n = a.n();
  std::vector<std::int64_t> w(n);
  for (int j = 1; j <= n; ++j) {
    std::int64_t uj = a.window()[j - 1];
    std::int64_t r = posmod(uj - 1, n) + 1;   // residue representative in 1..n
    std::int64_t k = (uj - r) / n;            // u(j) = r + k n, so inv(r) = j - k n
    w[r - 1] = j - k * n;
  }
  return AffinePermutation::from_window(n, w, a.mode());
}

Partition cycle_type(const AffinePermutation& u) {
  if (!u.is_finite()) fail(Err::ModeMismatch, "cycle_type requires a finite permutation");
  int n = u.n();
  std::vector<bool> seen(n, false);
  Partition parts;
  for (int i = 0; i < n; ++i) {
    if (seen[i]) continue;
    int len = 0;
    int j = i;
    while (!seen[j]) {
      seen[j] = true;
      j = static_cast<int>(u.window()[j]) - 1;
      ++len;
    }
    parts.push_back(len);
  }
  std::sort(parts.begin(), parts.end(), std::greater<int>());
  return parts;
}

std::int64_t kappa(int i, int j) { return i >= j ? 1 : 0; }

std::int64_t ThresholdMatrix::excess() const {
  std::int64_t s = 0;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) s += K[i - 1][j - 1] - kappa(i, j);
  return s;
}

ThresholdMatrix threshold_matrix(const AffinePermutation& x) {
  int n = x.n();
  // Decompose u(j) = r_j + n q_j with r_j in 1..n; the monomial matrix of
  // x sends the j-th lattice basis line to t^{-q_j} times the r_j-th.
  std::vector<int> r(n + 1);
  std::vector<std::int64_t> q(n + 1);
  for (int j = 1; j <= n; ++j) {
    std::int64_t uj = x.window()[j - 1];
    std::int64_t rr = posmod(uj - 1, n) + 1;
    r[j] = static_cast<int>(rr);
    q[j] = (uj - rr) / n;
  }
  std::vector<int> s(n + 1);  // inverse of j -> r_j
  for (int j = 1; j <= n; ++j) s[r[j]] = j;

  ThresholdMatrix T;
  T.n = n;
  T.mode = x.mode();
  T.source = x.encode();
  T.K.assign(n, std::vector<std::int64_t>(n, 0));
  for (int a = 1; a <= n; ++a)
    for (int b = 1; b <= n; ++b) {
      std::int64_t conj = kappa(s[a], s[b]) + q[s[b]] - q[s[a]];
      T.K[a - 1][b - 1] = std::max(kappa(a, b), conj);
    }
  return T;
}

std::vector<std::pair<AffinePermutation, std::int64_t>> enumerate_ball_bfs(
    int n, std::int64_t max_length, Mode mode, std::int64_t gl_charge) {
  if (mode == Mode::SL && gl_charge != 0)
    fail(Err::ModeMismatch, "charge is a GL-mode parameter");
  std::vector<std::int64_t> start(n);
  std::iota(start.begin(), start.end(), 1);
  if (mode == Mode::GL)
    for (auto& v : start) v += gl_charge;

  std::map<std::vector<std::int64_t>, std::int64_t> dist;
  std::deque<std::vector<std::int64_t>> queue;
  dist[start] = 0;
  queue.push_back(start);
  while (!queue.empty()) {
    auto w = queue.front();
    queue.pop_front();
    std::int64_t d = dist[w];
    if (d == max_length) continue;
    for (int k = 0; k < n; ++k) {
      auto v = w;
      if (k == 0) {
        std::int64_t first = w[0], last = w[n - 1];
        v[0] = last - n;
        v[n - 1] = first + n;
      } else {
        std::swap(v[k - 1], v[k]);
      }
      if (dist.emplace(v, d + 1).second) queue.push_back(v);
    }
  }

  std::vector<std::pair<AffinePermutation, std::int64_t>> out;
  out.reserve(dist.size());
  for (const auto& [w, d] : dist)
    out.emplace_back(AffinePermutation::from_window(n, w, mode), d);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second < b.second;
    return a.first.window() < b.first.window();
  });
  return out;
}

std::vector<AffinePermutation> enumerate_ball(int n, std::int64_t max_length, Mode mode,
                                              std::int64_t gl_charge) {
  auto pairs = enumerate_ball_bfs(n, max_length, mode, gl_charge);
  std::vector<AffinePermutation> out;
  out.reserve(pairs.size());
  for (auto& [x, d] : pairs) out.push_back(std::move(x));
  return out;
}

std::vector<Partition> partitions_of(int n) {
  std::vector<Partition> out;
  Partition cur;
  auto rec = [&](auto&& self, int rest, int max_part) -> void {
    if (rest == 0) {
      out.push_back(cur);
      return;
    }
    for (int part = std::min(rest, max_part); part >= 1; --part) {
      cur.push_back(part);
      self(self, rest - part, part);
      cur.pop_back();
    }
  };
  rec(rec, n, n);
  return out;
}

}  // namespace scell
