#pragma once

#include <boost/container/small_vector.hpp>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace scell {

// F_{p^m} presented as F_p[z]/(modulus), modulus monic irreducible of
// degree m. The modulus is always the lexicographically least irreducible
// by coefficient tuple (c_0, ..., c_{m-1}), constant term first, so the
// same (p, m) names the same field everywhere. For m = 1 the modulus is z
// itself and elements are plain residues.
struct FieldContext {
  std::uint64_t p = 0;
  int m = 0;
  std::vector<std::uint64_t> modulus;  // size m+1, modulus[m] == 1
};

using Ctx = std::shared_ptr<const FieldContext>;

bool is_prime_u64(std::uint64_t n);

// Canonical field for (p, m); memoized, so repeated calls share a context.
Ctx make_field(std::uint64_t p, int m);

// Element of F_{p^m}: dense coefficient vector of length m, entries < p.
class Fq {
 public:
  using Coeffs = boost::container::small_vector<std::uint64_t, 4>;

  Fq() = default;

  static Fq zero(const Ctx& c);
  static Fq one(const Ctx& c);
  static Fq from_int(const Ctx& c, std::uint64_t v);
  static Fq gen(const Ctx& c);  // the class of z
  static Fq from_coeffs(const Ctx& c, std::vector<std::uint64_t> v);

  const Ctx& ctx() const { return ctx_; }
  bool valid() const { return ctx_ != nullptr; }
  bool is_zero() const;
  const Coeffs& coeffs() const { return c_; }

  friend Fq operator+(const Fq& a, const Fq& b);
  friend Fq operator-(const Fq& a, const Fq& b);
  friend Fq operator*(const Fq& a, const Fq& b);
  Fq operator-() const;
  Fq& operator+=(const Fq& o) { return *this = *this + o; }
  Fq& operator-=(const Fq& o) { return *this = *this - o; }
  Fq& operator*=(const Fq& o) { return *this = *this * o; }

  Fq inv() const;
  Fq pow(std::uint64_t e) const;
  Fq frob(int k = 1) const;  // a^(p^k)

  friend bool operator==(const Fq& a, const Fq& b);
  friend bool operator!=(const Fq& a, const Fq& b) { return !(a == b); }

  std::string str() const;  // "[c0,c1,...]"

 private:
  Ctx ctx_;
  Coeffs c_;  // always size m once valid

  friend struct FqAccess;
};

// Total order by coefficient tuple, constant term first. Fixes canonical
// choices (least root, least primitive root of unity) deterministically.
bool fq_less(const Fq& a, const Fq& b);

// Dense univariate polynomial over one field context.
struct Fpoly {
  Ctx ctx;
  std::vector<Fq> c;  // c[i] multiplies X^i

  static Fpoly zero(const Ctx& c);
  static Fpoly from(const Ctx& ctx, std::vector<Fq> coeffs);

  int degree() const;  // -1 for the zero polynomial
  void trim();
  bool is_zero() const { return degree() < 0; }
  Fq eval(const Fq& x) const;
  Fpoly derivative() const;
  Fpoly monic() const;

  friend Fpoly operator+(const Fpoly& a, const Fpoly& b);
  friend Fpoly operator-(const Fpoly& a, const Fpoly& b);
  friend Fpoly operator*(const Fpoly& a, const Fpoly& b);
};

// Remainder and quotient by a divisor with invertible leading coefficient.
std::pair<Fpoly, Fpoly> poly_divmod(const Fpoly& a, const Fpoly& b);
Fpoly poly_mod(const Fpoly& a, const Fpoly& b);
Fpoly poly_gcd(Fpoly a, Fpoly b);  // monic gcd
Fpoly poly_powmod(const Fpoly& base, std::uint64_t e, const Fpoly& mod);
// base^(p^k) mod f via iterated p-th powers; avoids huge exponents.
Fpoly poly_frob_powmod(const Fpoly& base, int k, const Fpoly& mod);

// Canonical embedding F_{p^m} -> F_{p^M} for m | M: the generator maps to
// the least root of the small modulus in the big field. Memoized.
Fq embed(const Fq& a, const Ctx& target);
Fpoly embed_poly(const Fpoly& f, const Ctx& target);

struct RootsResult {
  Ctx field;                              // original or the grown extension
  std::vector<std::pair<Fq, int>> roots;  // (root, multiplicity), sorted
};

// All roots of f over the algebraic closure, realized in the smallest
// extension containing them. Splitting is randomized (seeded) but the
// returned data is deterministic: the extension depends only on the
// factorization pattern and roots are sorted canonically.
// The extension degree over f's field must not exceed max_degree_growth.
RootsResult roots_with_extension(const Fpoly& f, int max_degree_growth, std::uint64_t seed);

// Least primitive e-th root of unity in ctx; requires e | p^m - 1.
Fq root_of_unity(const Ctx& ctx, std::int64_t e, std::uint64_t seed);

// Multiplicative order of p modulo e (the field degree needed for e-th
// roots of unity).
int multiplicative_order(std::uint64_t p, std::int64_t e);

}  // namespace scell
