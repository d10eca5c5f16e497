#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "scell/field.hpp"
#include "scell/rational.hpp"

namespace scell {

// Truncated Laurent series in t^{1/ram} with F_{p^m} coefficients.
// Exponents are integers s on the 1/ram grid, denoting t^{s/ram}.
// Coefficients are known exactly for all s < prec; nothing is claimed at
// or beyond prec. A series that is zero everywhere below prec has no
// determinable valuation ("zero to precision").
class Series {
 public:
  Series() = default;

  static Series zero(const Ctx& ctx, std::int64_t ram, std::int64_t prec);
  static Series monomial(const Ctx& ctx, const Fq& coeff, std::int64_t exp, std::int64_t ram,
                         std::int64_t prec);

  const Ctx& ctx() const { return ctx_; }
  std::int64_t ram() const { return ram_; }
  std::int64_t prec() const { return prec_; }
  bool valid() const { return ctx_ != nullptr; }

  // Valuation in grid units; empty when zero to precision.
  std::optional<std::int64_t> valuation() const;
  bool is_zero_to_prec() const { return !valuation().has_value(); }
  // Valuation if present, otherwise prec: the best lower bound we own.
  std::int64_t val_lower_bound() const;
  // One past the last stored coefficient; everything from here to prec is
  // zero. Equals prec for the zero series.
  std::int64_t support_end() const;

  bool coeff_known(std::int64_t s) const { return s < prec_; }
  Fq coeff(std::int64_t s) const;  // fails beyond precision

  void set_coeff(std::int64_t s, const Fq& v);  // s must be < prec

  friend Series operator+(const Series& a, const Series& b);
  friend Series operator-(const Series& a, const Series& b);
  friend Series operator*(const Series& a, const Series& b);
  Series operator-() const;
  Series& operator+=(const Series& o) { return *this = *this + o; }
  Series& operator-=(const Series& o) { return *this = *this - o; }

  Series scale(const Fq& c) const;          // multiply by a field constant
  Series shift(std::int64_t s) const;       // multiply by t^{s/ram}
  Series truncate(std::int64_t prec) const; // lower the precision
  // Reinterpret on a finer grid: ram *= k, exponents *= k.
  Series refine_grid(std::int64_t k) const;

  // a / b; b must have a determinable valuation.
  friend Series series_div(const Series& a, const Series& b);

  Series map_coeffs_frob(int k) const;  // Frobenius on every coefficient
  // Galois twist of the grid variable: coefficient at s picks up xi^s.
  Series twist(const Fq& xi) const;
  Series embed_into(const Ctx& target) const;

  // Exact agreement of all coefficients below min(prec, cap).
  friend bool series_equal_below(const Series& a, const Series& b, std::int64_t cap);
  // Deterministic total order on coefficients below cap (for canonical
  // sorting of expansions).
  friend bool series_lex_less(const Series& a, const Series& b, std::int64_t cap);

  std::string str() const;

 private:
  Ctx ctx_;
  std::int64_t ram_ = 1;
  std::int64_t prec_ = 0;
  std::int64_t off_ = 0;   // exponent of c_[0]; c_ covers [off_, prec_)
  std::vector<Fq> c_;

  void normalize();
};

// Polynomial in one variable with Series coefficients, all on one grid
// and one field. c[i] multiplies X^i.
struct SeriesPoly {
  std::vector<Series> c;

  int degree() const;
  const Ctx& ctx() const { return c.at(0).ctx(); }
  std::int64_t ram() const { return c.at(0).ram(); }

  Series eval(const Series& x) const;
  SeriesPoly derivative() const;
  SeriesPoly refine_grid(std::int64_t k) const;
  SeriesPoly embed_into(const Ctx& target) const;
  // X -> t^{s/ram} * X (grid monomial substitution).
  SeriesPoly scale_var(std::int64_t s) const;
  // X -> xi + X for a field constant xi.
  SeriesPoly shift_var(const Fq& xi) const;
  // Divide every coefficient by t^{s/ram} (exponent shift by -s).
  SeriesPoly shift_all(std::int64_t s) const;
  std::int64_t min_coeff_prec() const;
};

// Characteristic polynomial det(X·I - M) of an n x n series matrix by
// division-free expansion with column-subset memoization.
SeriesPoly char_poly(const std::vector<std::vector<Series>>& M);

struct PolygonSegment {
  Rational slope;       // root valuation in t-units
  std::int64_t width;   // number of roots (with multiplicity)
  std::int64_t i0;      // abscissa where the segment starts
  std::int64_t v0;      // hull height at i0, in grid units
};

struct NewtonPolygon {
  std::vector<PolygonSegment> segments;  // slopes strictly increasing
  std::int64_t total_width = 0;
  // Root valuations (t-units) repeated by multiplicity, increasing.
  std::vector<Rational> valuations() const;
};

// Lower convex hull of (i, val c_{deg-i}). Points whose valuation is not
// determined must have precision strictly above the hull, otherwise the
// polygon is not certified at this precision.
NewtonPolygon newton_polygon(const SeriesPoly& f);

}  // namespace scell
