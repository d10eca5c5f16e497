#include "scell/field.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include "scell/error.hpp"
#include "scell/hashing.hpp"

namespace scell {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t submod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return a >= b ? a - b : a + p - b;
}

std::uint64_t invmod_u64(std::uint64_t a, std::uint64_t p) {
  if (a % p == 0) fail(Err::DivisionByZero, "inverse of zero residue");
  std::int64_t t0 = 0, t1 = 1;
  std::int64_t r0 = static_cast<std::int64_t>(p), r1 = static_cast<std::int64_t>(a % p);
  while (r1 != 0) {
    std::int64_t q = r0 / r1;
    std::int64_t tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  if (r0 != 1) fail(Err::Internal, "modulus not prime in invmod");
  if (t0 < 0) t0 += static_cast<std::int64_t>(p);
  return static_cast<std::uint64_t>(t0);
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Field contexts

namespace {

std::mutex registry_mutex;
std::map<std::pair<std::uint64_t, int>, Ctx>& field_registry() {
  static std::map<std::pair<std::uint64_t, int>, Ctx> reg;
  return reg;
}

bool modulus_irreducible(std::uint64_t p, const std::vector<std::uint64_t>& mod_coeffs);

std::vector<std::uint64_t> least_irreducible(std::uint64_t p, int m) {
  if (m == 1) return {0, 1};  // z itself
  // Odometer over (c_0, ..., c_{m-1}) in lex order, constant term most
  // significant. Irreducibles have density about 1/m so this ends fast.
  std::vector<std::uint64_t> c(m, 0);
  while (true) {
    int i = m - 1;
    while (i >= 0) {
      if (++c[i] < p) break;
      c[i] = 0;
      --i;
    }
    if (i < 0) fail(Err::NoIrreducible, "exhausted monic polynomials");
    if (c[0] == 0) continue;  // divisible by z
    std::vector<std::uint64_t> full = c;
    full.push_back(1);
    if (modulus_irreducible(p, full)) return full;
  }
}

}  // namespace

Ctx make_field(std::uint64_t p, int m) {
  if (!is_prime_u64(p)) fail(Err::NotPrime, std::to_string(p) + " is not prime");
  if (m < 1) fail(Err::InconsistentInput, "field degree must be positive");
  auto key = std::make_pair(p, m);
  {
    std::lock_guard<std::mutex> lock(registry_mutex);
    auto& reg = field_registry();
    auto it = reg.find(key);
    if (it != reg.end()) return it->second;
  }
  // Build outside the lock: the irreducibility test works over the prime
  // field and re-enters make_field(p, 1).
  auto ctx = std::make_shared<FieldContext>();
  ctx->p = p;
  ctx->m = m;
  ctx->modulus = least_irreducible(p, m);
  std::lock_guard<std::mutex> lock(registry_mutex);
  auto& reg = field_registry();
  return reg.emplace(key, ctx).first->second;
}

// ---------------------------------------------------------------------------
// Elements

Fq Fq::zero(const Ctx& c) {
  Fq x;
  x.ctx_ = c;
  x.c_.assign(c->m, 0);
  return x;
}

Fq Fq::one(const Ctx& c) { return from_int(c, 1); }

Fq Fq::from_int(const Ctx& c, std::uint64_t v) {
  Fq x = zero(c);
  x.c_[0] = v % c->p;
  return x;
}

Fq Fq::gen(const Ctx& c) {
  Fq x = zero(c);
  if (c->m == 1) return x;  // z reduces to 0 in the prime field
  x.c_[1] = 1;
  return x;
}

Fq Fq::from_coeffs(const Ctx& c, std::vector<std::uint64_t> v) {
  if (static_cast<int>(v.size()) > c->m)
    fail(Err::InconsistentInput, "coefficient vector longer than field degree");
  Fq x = zero(c);
  for (std::size_t i = 0; i < v.size(); ++i) x.c_[i] = v[i] % c->p;
  return x;
}

bool Fq::is_zero() const {
  for (auto v : c_)
    if (v) return false;
  return true;
}

namespace {

void check_same_ctx(const Fq& a, const Fq& b) {
  if (a.ctx() != b.ctx()) fail(Err::MixedField, "operands from different fields");
}

}  // namespace

Fq operator+(const Fq& a, const Fq& b) {
  check_same_ctx(a, b);
  Fq r = a;
  std::uint64_t p = a.ctx()->p;
  for (int i = 0; i < a.ctx()->m; ++i) {
    std::uint64_t s = r.c_[i] + b.c_[i];
    r.c_[i] = s >= p ? s - p : s;
  }
  return r;
}

Fq operator-(const Fq& a, const Fq& b) {
  check_same_ctx(a, b);
  Fq r = a;
  std::uint64_t p = a.ctx()->p;
  for (int i = 0; i < a.ctx()->m; ++i) r.c_[i] = submod(r.c_[i], b.c_[i], p);
  return r;
}

Fq Fq::operator-() const {
  Fq r = *this;
  std::uint64_t p = ctx_->p;
  for (auto& v : r.c_) v = v ? p - v : 0;
  return r;
}

Fq operator*(const Fq& a, const Fq& b) {
  check_same_ctx(a, b);
  const auto& ctx = *a.ctx();
  std::uint64_t p = ctx.p;
  int m = ctx.m;
  Fq r = Fq::zero(a.ctx());
  if (m == 1) {
    r.c_[0] = mulmod(a.c_[0], b.c_[0], p);
    return r;
  }
  boost::container::small_vector<std::uint64_t, 8> conv(2 * m - 1, 0);
  for (int k = 0; k < 2 * m - 1; ++k) {
    unsigned __int128 acc = 0;
    int lo = std::max(0, k - m + 1), hi = std::min(k, m - 1);
    for (int i = lo; i <= hi; ++i) acc += static_cast<unsigned __int128>(a.c_[i]) * b.c_[k - i];
    conv[k] = static_cast<std::uint64_t>(acc % p);
  }
  // Fold X^k for k >= m down through the monic modulus.
  for (int k = 2 * m - 2; k >= m; --k) {
    std::uint64_t top = conv[k];
    if (!top) continue;
    conv[k] = 0;
    for (int j = 0; j < m; ++j) {
      std::uint64_t sub = mulmod(top, ctx.modulus[j], p);
      conv[k - m + j] = submod(conv[k - m + j], sub, p);
    }
  }
  for (int i = 0; i < m; ++i) r.c_[i] = conv[i];
  return r;
}

// Extended Euclid in F_p[z] against the modulus.
Fq Fq::inv() const {
  if (is_zero()) fail(Err::DivisionByZero, "inverse of zero");
  const auto& ctx = *ctx_;
  std::uint64_t p = ctx.p;
  if (ctx.m == 1) {
    Fq r = *this;
    r.c_[0] = invmod_u64(c_[0], p);
    return r;
  }
  using V = std::vector<std::uint64_t>;
  auto deg = [](const V& v) {
    for (int i = static_cast<int>(v.size()) - 1; i >= 0; --i)
      if (v[i]) return i;
    return -1;
  };
  auto scale_sub = [&](V& a, const V& b, std::uint64_t f, int shift) {
    // a -= f * z^shift * b
    if (static_cast<int>(a.size()) < static_cast<int>(b.size()) + shift)
      a.resize(b.size() + shift, 0);
    for (std::size_t i = 0; i < b.size(); ++i)
      a[i + shift] = submod(a[i + shift], mulmod(f, b[i], p), p);
  };
  V r0 = ctx.modulus;
  V r1(c_.begin(), c_.end());
  V t0{0}, t1{1};
  while (deg(r1) >= 0) {
    int d0 = deg(r0), d1 = deg(r1);
    if (d0 < d1) {
      std::swap(r0, r1);
      std::swap(t0, t1);
      continue;
    }
    std::uint64_t f = mulmod(r0[d0], invmod_u64(r1[d1], p), p);
    scale_sub(r0, r1, f, d0 - d1);
    scale_sub(t0, t1, f, d0 - d1);
  }
  int d = deg(r0);
  if (d != 0) fail(Err::NotIrreducibleContext, "modulus splits; inverse undefined");
  std::uint64_t s = invmod_u64(r0[0], p);
  Fq out = Fq::zero(ctx_);
  for (std::size_t i = 0; i < t0.size() && i < static_cast<std::size_t>(ctx.m); ++i)
    out.c_[i] = mulmod(t0[i], s, p);
  return out;
}

Fq Fq::pow(std::uint64_t e) const {
  Fq base = *this;
  Fq r = Fq::one(ctx_);
  while (e) {
    if (e & 1) r = r * base;
    base = base * base;
    e >>= 1;
  }
  return r;
}

Fq Fq::frob(int k) const {
  Fq r = *this;
  for (int i = 0; i < k; ++i) r = r.pow(ctx_->p);
  return r;
}

bool operator==(const Fq& a, const Fq& b) {
  return a.ctx() == b.ctx() && a.coeffs() == b.coeffs();
}

std::string Fq::str() const {
  std::ostringstream out;
  out << "[";
  for (int i = 0; i < ctx_->m; ++i) {
    if (i) out << ",";
    out << c_[i];
  }
  out << "]";
  return out.str();
}

bool fq_less(const Fq& a, const Fq& b) {
  if (a.ctx() != b.ctx()) fail(Err::MixedField, "comparing across fields");
  return std::lexicographical_compare(a.coeffs().begin(), a.coeffs().end(), b.coeffs().begin(),
                                      b.coeffs().end());
}

// ---------------------------------------------------------------------------
// Polynomials

Fpoly Fpoly::zero(const Ctx& c) { return Fpoly{c, {}}; }

Fpoly Fpoly::from(const Ctx& ctx, std::vector<Fq> coeffs) {
  Fpoly f{ctx, std::move(coeffs)};
  f.trim();
  return f;
}

int Fpoly::degree() const {
  for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i)
    if (!c[i].is_zero()) return i;
  return -1;
}

void Fpoly::trim() {
  while (!c.empty() && c.back().is_zero()) c.pop_back();
}

Fq Fpoly::eval(const Fq& x) const {
  Fq r = Fq::zero(ctx);
  for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) r = r * x + c[i];
  return r;
}

Fpoly Fpoly::derivative() const {
  Fpoly d = Fpoly::zero(ctx);
  for (std::size_t i = 1; i < c.size(); ++i)
    d.c.push_back(c[i] * Fq::from_int(ctx, static_cast<std::uint64_t>(i % ctx->p)));
  d.trim();
  return d;
}

Fpoly Fpoly::monic() const {
  int d = degree();
  if (d < 0) fail(Err::InconsistentInput, "monic of zero polynomial");
  Fq lead_inv = c[d].inv();
  Fpoly r = *this;
  r.c.resize(d + 1);
  for (auto& x : r.c) x = x * lead_inv;
  return r;
}

Fpoly operator+(const Fpoly& a, const Fpoly& b) {
  if (a.ctx != b.ctx) fail(Err::MixedField, "polynomials over different fields");
  Fpoly r = a;
  if (r.c.size() < b.c.size()) r.c.resize(b.c.size(), Fq::zero(a.ctx));
  for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] = r.c[i] + b.c[i];
  r.trim();
  return r;
}

Fpoly operator-(const Fpoly& a, const Fpoly& b) {
  if (a.ctx != b.ctx) fail(Err::MixedField, "polynomials over different fields");
  Fpoly r = a;
  if (r.c.size() < b.c.size()) r.c.resize(b.c.size(), Fq::zero(a.ctx));
  for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] = r.c[i] - b.c[i];
  r.trim();
  return r;
}

Fpoly operator*(const Fpoly& a, const Fpoly& b) {
  if (a.ctx != b.ctx) fail(Err::MixedField, "polynomials over different fields");
  if (a.c.empty() || b.c.empty()) return Fpoly::zero(a.ctx);
  Fpoly r = Fpoly::zero(a.ctx);
  r.c.assign(a.c.size() + b.c.size() - 1, Fq::zero(a.ctx));
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
  }
  r.trim();
  return r;
}

std::pair<Fpoly, Fpoly> poly_divmod(const Fpoly& a, const Fpoly& b) {
  if (a.ctx != b.ctx) fail(Err::MixedField, "polynomials over different fields");
  int db = b.degree();
  if (db < 0) fail(Err::DivisionByZero, "division by zero polynomial");
  Fpoly rem = a;
  rem.trim();
  Fpoly quo = Fpoly::zero(a.ctx);
  int da = rem.degree();
  if (da < db) return {quo, rem};
  quo.c.assign(da - db + 1, Fq::zero(a.ctx));
  Fq lead_inv = b.c[db].inv();
  for (int k = da; k >= db; --k) {
    if (rem.c.empty() || static_cast<int>(rem.c.size()) <= k || rem.c[k].is_zero()) continue;
    Fq f = rem.c[k] * lead_inv;
    quo.c[k - db] = f;
    for (int j = 0; j <= db; ++j) rem.c[k - db + j] -= f * b.c[j];
  }
  rem.trim();
  quo.trim();
  return {quo, rem};
}

Fpoly poly_mod(const Fpoly& a, const Fpoly& b) { return poly_divmod(a, b).second; }

Fpoly poly_gcd(Fpoly a, Fpoly b) {
  a.trim();
  b.trim();
  while (!b.is_zero()) {
    Fpoly r = poly_mod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  return a.monic();
}

Fpoly poly_powmod(const Fpoly& base, std::uint64_t e, const Fpoly& mod) {
  Fpoly b = poly_mod(base, mod);
  Fpoly r = Fpoly::from(base.ctx, {Fq::one(base.ctx)});
  while (e) {
    if (e & 1) r = poly_mod(r * b, mod);
    b = poly_mod(b * b, mod);
    e >>= 1;
  }
  return r;
}

Fpoly poly_frob_powmod(const Fpoly& base, int k, const Fpoly& mod) {
  Fpoly r = poly_mod(base, mod);
  for (int i = 0; i < k; ++i) r = poly_powmod(r, base.ctx->p, mod);
  return r;
}

namespace {

Fpoly poly_x(const Ctx& ctx) {
  return Fpoly::from(ctx, {Fq::zero(ctx), Fq::one(ctx)});
}

bool modulus_irreducible(std::uint64_t p, const std::vector<std::uint64_t>& mod_coeffs) {
  // Runs over the prime field; safe to call during extension construction.
  Ctx fp = make_field(p, 1);
  std::vector<Fq> c;
  c.reserve(mod_coeffs.size());
  for (auto v : mod_coeffs) c.push_back(Fq::from_int(fp, v));
  Fpoly f = Fpoly::from(fp, std::move(c));
  int m = f.degree();
  Fpoly x = poly_x(fp);
  Fpoly fixed = poly_frob_powmod(x, m, f) - poly_mod(x, f);
  if (!fixed.is_zero()) return false;
  for (int ell = 2; ell <= m; ++ell) {
    if (m % ell != 0) continue;
    bool prime = true;
    for (int d = 2; d * d <= ell; ++d)
      if (ell % d == 0) prime = false;
    if (!prime) continue;
    Fpoly diff = poly_frob_powmod(x, m / ell, f) - poly_mod(x, f);
    if (poly_gcd(diff, f).degree() > 0) return false;
  }
  return true;
}

}  // namespace

// ---------------------------------------------------------------------------
// Embeddings

namespace {

std::mutex embed_mutex;
// (p, m_src, m_dst) -> powers zeta^0..zeta^{m_src-1} in the destination.
std::map<std::tuple<std::uint64_t, int, int>, std::vector<Fq>>& embed_registry() {
  static std::map<std::tuple<std::uint64_t, int, int>, std::vector<Fq>> reg;
  return reg;
}

std::vector<Fq> cz_all_roots(const Fpoly& lin, std::uint64_t seed);

const std::vector<Fq>& embedding_powers(std::uint64_t p, int m_src, int m_dst) {
  std::lock_guard<std::mutex> lock(embed_mutex);
  auto key = std::make_tuple(p, m_src, m_dst);
  auto& reg = embed_registry();
  auto it = reg.find(key);
  if (it != reg.end()) return it->second;

  Ctx src = make_field(p, m_src);
  Ctx dst = make_field(p, m_dst);
  std::vector<Fq> lifted;
  for (auto v : src->modulus) lifted.push_back(Fq::from_int(dst, v));
  Fpoly f = Fpoly::from(dst, std::move(lifted));
  // The small modulus splits completely in the big field; pick the least
  // root so the embedding is canonical.
  std::uint64_t seed = StableHash().str("embedding").u64(p).i64(m_src).i64(m_dst).get();
  std::vector<Fq> roots = cz_all_roots(f, seed);
  if (roots.empty()) fail(Err::Internal, "modulus has no root in extension");
  std::sort(roots.begin(), roots.end(), fq_less);
  Fq zeta = roots.front();
  std::vector<Fq> powers(m_src, Fq::one(dst));
  for (int k = 1; k < m_src; ++k) powers[k] = powers[k - 1] * zeta;
  return reg.emplace(key, std::move(powers)).first->second;
}

}  // namespace

Fq embed(const Fq& a, const Ctx& target) {
  if (!a.valid()) fail(Err::InconsistentInput, "embedding an uninitialized element");
  if (a.ctx() == target) return a;
  if (a.ctx()->p != target->p) fail(Err::MixedField, "embedding across characteristics");
  if (target->m % a.ctx()->m != 0)
    fail(Err::MixedField, "no embedding: source degree does not divide target degree");
  const auto& powers = embedding_powers(target->p, a.ctx()->m, target->m);
  Fq out = Fq::zero(target);
  for (int k = 0; k < a.ctx()->m; ++k)
    out += powers[k] * Fq::from_int(target, a.coeffs()[k]);
  return out;
}

Fpoly embed_poly(const Fpoly& f, const Ctx& target) {
  if (f.ctx == target) return f;
  Fpoly out = Fpoly::zero(target);
  out.c.reserve(f.c.size());
  for (const auto& x : f.c) out.c.push_back(embed(x, target));
  out.trim();
  return out;
}

// ---------------------------------------------------------------------------
// Root finding

namespace {

Fq random_element(const Ctx& ctx, SplitMix64& rng) {
  std::vector<std::uint64_t> c(ctx->m);
  for (auto& v : c) v = rng.below(ctx->p);
  return Fq::from_coeffs(ctx, std::move(c));
}

// lin must be monic, squarefree, and a product of linear factors.
std::vector<Fq> cz_all_roots(const Fpoly& lin, std::uint64_t seed) {
  const Ctx& ctx = lin.ctx;
  std::uint64_t p = ctx->p;
  SplitMix64 rng(seed);
  std::vector<Fq> roots;
  std::vector<Fpoly> stack{lin.monic()};
  while (!stack.empty()) {
    Fpoly g = std::move(stack.back());
    stack.pop_back();
    int d = g.degree();
    if (d <= 0) continue;
    if (d == 1) {
      roots.push_back(-g.c[0]);
      continue;
    }
    bool split = false;
    for (int attempt = 0; attempt < 512 && !split; ++attempt) {
      Fq a = random_element(ctx, rng);
      Fpoly shifted = Fpoly::from(ctx, {a, Fq::one(ctx)});
      // Norm chain: prod = (X+a)^{(q-1)/(p-1)} mod g without big exponents.
      Fpoly term = poly_mod(shifted, g);
      Fpoly prod = term;
      for (int k = 1; k < ctx->m; ++k) {
        term = poly_powmod(term, p, g);
        prod = poly_mod(prod * term, g);
      }
      Fpoly zg = poly_gcd(prod, g);  // roots hitting -a exactly
      if (zg.degree() > 0 && zg.degree() < d) {
        stack.push_back(zg);
        stack.push_back(poly_divmod(g, zg).first);
        split = true;
        break;
      }
      Fpoly w = poly_powmod(prod, (p - 1) / 2, g);
      Fpoly w1 = w - Fpoly::from(ctx, {Fq::one(ctx)});
      Fpoly h = poly_gcd(w1, g);
      if (h.degree() > 0 && h.degree() < d) {
        stack.push_back(h);
        stack.push_back(poly_divmod(g, h).first);
        split = true;
      }
    }
    if (!split) fail(Err::Internal, "equal-degree splitting stalled");
  }
  return roots;
}

}  // namespace

RootsResult roots_with_extension(const Fpoly& f_in, int max_degree_growth, std::uint64_t seed) {
  Fpoly f = f_in;
  f.trim();
  if (f.is_zero()) fail(Err::InconsistentInput, "zero polynomial has every root");
  const Ctx ctx = f.ctx;
  if (f.degree() == 0) return {ctx, {}};
  Fpoly fm = f.monic();

  Fpoly der = fm.derivative();
  if (der.is_zero()) fail(Err::Internal, "derivative vanished (degree >= characteristic)");
  Fpoly sqf = poly_divmod(fm, poly_gcd(fm, der)).first.monic();

  // Distinct-degree factorization pattern of the squarefree part.
  std::vector<int> degrees;
  {
    Fpoly rem = sqf;
    Fpoly x = poly_x(ctx);
    Fpoly h = poly_mod(x, sqf);
    int d = 0;
    while (rem.degree() > 0) {
      ++d;
      if (2 * d > rem.degree()) {
        degrees.push_back(rem.degree());
        break;
      }
      h = poly_frob_powmod(h, ctx->m, sqf);  // h = X^{q^d} mod sqf
      Fpoly part = poly_gcd(h - poly_mod(x, sqf), rem);
      if (part.degree() > 0) {
        degrees.push_back(d);
        rem = poly_divmod(rem, part).first;
      }
    }
  }
  std::int64_t growth = 1;
  for (int d : degrees) growth = std::lcm(growth, static_cast<std::int64_t>(d));
  if (growth > max_degree_growth)
    fail(Err::ExtensionBudgetExceeded,
         "degree growth " + std::to_string(growth) + " exceeds budget " +
             std::to_string(max_degree_growth));

  Ctx big = growth == 1 ? ctx : make_field(ctx->p, ctx->m * static_cast<int>(growth));
  Fpoly fb = embed_poly(fm, big);
  Fpoly derb = fb.derivative();
  Fpoly sqfb = poly_divmod(fb, poly_gcd(fb, derb)).first.monic();
  // Every root now lies in the big field, so the squarefree part is a
  // product of distinct linear factors.
  std::vector<Fq> roots = cz_all_roots(sqfb, seed);
  if (static_cast<int>(roots.size()) != sqfb.degree())
    fail(Err::Internal, "root count mismatch after extension");
  std::sort(roots.begin(), roots.end(), fq_less);

  RootsResult out;
  out.field = big;
  for (const Fq& r : roots) {
    Fpoly lin = Fpoly::from(big, {-r, Fq::one(big)});
    int mult = 0;
    Fpoly rest = fb;
    while (true) {
      auto [q, rem] = poly_divmod(rest, lin);
      if (!rem.is_zero()) break;
      ++mult;
      rest = q;
      if (rest.degree() < 1) break;
    }
    out.roots.emplace_back(r, mult);
  }
  return out;
}

Fq root_of_unity(const Ctx& ctx, std::int64_t e, std::uint64_t seed) {
  if (e < 1) fail(Err::InconsistentInput, "order of root of unity must be positive");
  if (e == 1) return Fq::one(ctx);
  // Need e | p^m - 1; compute p^m mod e without big integers.
  std::uint64_t pm = 1;
  for (int i = 0; i < ctx->m; ++i) pm = (pm * (ctx->p % e)) % e;
  if (pm % e != 1 % e)
    fail(Err::InconsistentInput, "field has no primitive " + std::to_string(e) + "-th root");
  std::vector<Fq> c(e + 1, Fq::zero(ctx));
  c[0] = -Fq::one(ctx);
  c[e] = Fq::one(ctx);
  Fpoly f = Fpoly::from(ctx, std::move(c));
  std::vector<Fq> roots = cz_all_roots(f, seed);
  std::sort(roots.begin(), roots.end(), fq_less);
  for (const Fq& r : roots) {
    bool primitive = true;
    for (std::int64_t ell = 2; ell <= e; ++ell) {
      if (e % ell != 0) continue;
      bool is_p = true;
      for (std::int64_t d = 2; d * d <= ell; ++d)
        if (ell % d == 0) is_p = false;
      if (!is_p) continue;
      if (r.pow(static_cast<std::uint64_t>(e / ell)) == Fq::one(ctx)) {
        primitive = false;
        break;
      }
    }
    if (primitive) return r;
  }
  fail(Err::Internal, "no primitive root of unity found");
}

int multiplicative_order(std::uint64_t p, std::int64_t e) {
  if (e <= 0) fail(Err::InconsistentInput, "order modulus must be positive");
  if (e == 1) return 1;
  std::uint64_t pe = p % static_cast<std::uint64_t>(e);
  if (std::gcd(pe, static_cast<std::uint64_t>(e)) != 1)
    fail(Err::InconsistentInput, "p not invertible mod e");
  std::uint64_t v = pe % e;
  int k = 1;
  while (v != 1 % e) {
    v = (v * pe) % e;
    ++k;
    if (k > e) fail(Err::Internal, "order search overran");
  }
  return k;
}

}  // namespace scell
