#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "scell/error.hpp"
#include "scell/series.hpp"

using namespace scell;

namespace {

const std::int64_t kExact = std::int64_t(1) << 30;

Series mono(const Ctx& F, std::int64_t c, std::int64_t e, std::int64_t ram = 1,
            std::int64_t prec = kExact) {
  return Series::monomial(F, Fq::from_int(F, static_cast<std::uint64_t>(c % 10007)), e, ram, prec);
}

}  // namespace

TEST_CASE("coefficient window semantics") {
  auto F = make_field(10007, 1);
  Series s = Series::zero(F, 1, 5);
  s.set_coeff(2, Fq::from_int(F, 3));
  CHECK(s.valuation().has_value());
  CHECK(*s.valuation() == 2);
  CHECK(s.coeff(1).is_zero());
  CHECK(s.coeff(4).is_zero());
  CHECK_THROWS_AS(s.coeff(5), ScellError);
  s.set_coeff(-1, Fq::from_int(F, 4));  // extends the window downward
  CHECK(*s.valuation() == -1);
  Series z = Series::zero(F, 1, 7);
  CHECK(z.is_zero_to_prec());
  CHECK(z.val_lower_bound() == 7);
}

TEST_CASE("addition and subtraction track precision") {
  auto F = make_field(10007, 1);
  Series a = mono(F, 1, 1, 1, 3);   // t known below t^3
  Series b = mono(F, 5, 2, 1, 10);  // 5t^2 known below t^10
  Series s = a + b;
  CHECK(s.prec() == 3);
  CHECK(s.coeff(1) == Fq::one(F));
  CHECK(s.coeff(2) == Fq::from_int(F, 5));
  Series d = s - b;
  CHECK(series_equal_below(d, a, 3));
}

TEST_CASE("multiplication precision rule") {
  auto F = make_field(10007, 1);
  Series a = mono(F, 1, 1, 1, 3);    // valuation 1, precision 3
  Series b = mono(F, 1, 2, 1, 10);   // valuation 2, precision 10
  Series p = a * b;
  // min(3 + 2, 10 + 1) = 5
  CHECK(p.prec() == 5);
  CHECK(*p.valuation() == 3);
  CHECK(p.coeff(3) == Fq::one(F));
  CHECK(p.coeff(4).is_zero());
}

TEST_CASE("division inverts multiplication") {
  auto F = make_field(10007, 1);
  Series b = mono(F, 1, 0, 1, 12) + mono(F, 1, 1, 1, 12);  // 1 + t
  Series a = mono(F, 1, 1, 1, 12) + mono(F, 1, 3, 1, 12);  // t + t^3
  Series q = series_div(a, b);
  CHECK(series_equal_below(q * b, a, q.prec()));
  CHECK(*q.valuation() == 1);
  CHECK_THROWS_AS(series_div(a, Series::zero(F, 1, 6)), ScellError);
}

TEST_CASE("shift scale refine twist") {
  auto F = make_field(10007, 1);
  Series s = mono(F, 1, 1, 1, 8) + mono(F, 1, 2, 1, 8);  // t + t^2
  Series sh = s.shift(3);
  CHECK(*sh.valuation() == 4);
  Series sc = s.scale(Fq::from_int(F, 2));
  CHECK(sc.coeff(1) == Fq::from_int(F, 2));
  Series rf = s.refine_grid(2);
  CHECK(rf.ram() == 2);
  CHECK(*rf.valuation() == 2);
  CHECK(rf.coeff(2) == Fq::one(F));
  CHECK(rf.coeff(3).is_zero());
  CHECK(rf.coeff(4) == Fq::one(F));
  // twist by -1 flips the sign of odd exponents
  Series tw = s.twist(-Fq::one(F));
  CHECK(tw.coeff(1) == -Fq::one(F));
  CHECK(tw.coeff(2) == Fq::one(F));
}

TEST_CASE("coefficientwise frobenius and embedding") {
  auto F7 = make_field(7, 1);
  auto F49 = make_field(7, 2);
  Series s = Series::zero(F49, 1, 6);
  s.set_coeff(1, Fq::gen(F49));
  Series fr = s.map_coeffs_frob(1);
  CHECK(fr.coeff(1) == Fq::gen(F49).pow(7));
  Series small = mono(make_field(7, 1), 3, 2, 1, 9);
  (void)F7;
  Series up = small.embed_into(F49);
  CHECK(up.ctx() == F49);
  CHECK(up.coeff(2) == embed(Fq::from_int(F7, 3), F49));
}

TEST_CASE("lexicographic order and equality are capped") {
  auto F = make_field(10007, 1);
  Series a = mono(F, 1, 1, 1, 4);
  Series b = mono(F, 1, 1, 1, 4) + mono(F, 2, 5, 1, 9);  // differs beyond cap
  CHECK(series_equal_below(a, b, 4));
  CHECK(!series_lex_less(a, b, 4));
  CHECK(!series_lex_less(b, a, 4));
  Series c = mono(F, 2, 1, 1, 4);
  CHECK(series_lex_less(a, c, 4));  // 1 < 2 at exponent 1
}

TEST_CASE("characteristic polynomial of a 2x2 series matrix") {
  auto F = make_field(10007, 1);
  Series a = mono(F, 1, 1), b = mono(F, 1, 2), c = mono(F, 1, 2);
  Series d = mono(F, 1, 3) + mono(F, 1, 1);
  SeriesPoly f = char_poly({{a, b}, {c, d}});
  REQUIRE(f.degree() == 2);
  Series tr = a + d;
  Series det = a * d - b * c;
  CHECK(series_equal_below(f.c[1], -tr, 20));
  CHECK(series_equal_below(f.c[0], det, 20));
  CHECK(series_equal_below(f.c[2], mono(F, 1, 0), 20));
}

TEST_CASE("characteristic polynomial eigenvalue check 3x3") {
  auto F = make_field(10007, 1);
  // companion-style matrix whose spectrum is the roots of X^3 - t
  Series z = Series::zero(F, 1, 30), one = mono(F, 1, 0, 1, 30), t = mono(F, 1, 1, 1, 30);
  SeriesPoly f = char_poly({{z, one, z}, {z, z, one}, {t, z, z}});
  REQUIRE(f.degree() == 3);
  CHECK(series_equal_below(f.c[0], -t, 28));
  CHECK(f.c[1].is_zero_to_prec());
  CHECK(f.c[2].is_zero_to_prec());
}

TEST_CASE("newton polygon of basic shapes") {
  auto F = make_field(10007, 1);
  // X^2 - t: one segment of slope 1/2 and width 2
  SeriesPoly f;
  f.c = {-mono(F, 1, 1), Series::zero(F, 1, kExact), mono(F, 1, 0)};
  auto np = newton_polygon(f);
  REQUIRE(np.segments.size() == 1);
  CHECK(np.segments[0].slope == Rational(1, 2));
  CHECK(np.segments[0].width == 2);

  // (X - t)(X - t^2): slopes 1 and 2
  SeriesPoly g;
  g.c = {mono(F, 1, 3), -(mono(F, 1, 1) + mono(F, 1, 2)), mono(F, 1, 0)};
  auto npg = newton_polygon(g);
  auto vals = npg.valuations();
  REQUIRE(vals.size() == 2);
  CHECK(vals[0] == Rational(1));
  CHECK(vals[1] == Rational(2));
}

TEST_CASE("newton polygon certification") {
  auto F = make_field(10007, 1);
  // middle coefficient unknown below the hull: cannot certify
  SeriesPoly f;
  f.c = {-mono(F, 1, 1), Series::zero(F, 1, 0), mono(F, 1, 0)};
  CHECK_THROWS_AS(newton_polygon(f), ScellError);
  // middle coefficient vanishing strictly above the hull: certified
  SeriesPoly g;
  g.c = {-mono(F, 1, 1), Series::zero(F, 1, 1), mono(F, 1, 0)};
  auto np = newton_polygon(g);
  CHECK(np.segments.size() == 1);
  CHECK(np.segments[0].slope == Rational(1, 2));
  // unknown constant term: no polygon at all
  SeriesPoly h;
  h.c = {Series::zero(F, 1, 4), mono(F, 1, 0)};
  CHECK_THROWS_AS(newton_polygon(h), ScellError);
}

TEST_CASE("variable substitutions") {
  auto F = make_field(10007, 1);
  SeriesPoly G;
  G.c = {-mono(F, 1, 1, 1, 20), Series::zero(F, 1, 20), mono(F, 1, 0, 1, 20)};  // X^2 - t
  // scale_var: G(tX) has coefficients t^2 and -t
  SeriesPoly S = G.scale_var(1);
  CHECK(*S.c[2].valuation() == 2);
  CHECK(*S.c[0].valuation() == 1);
  // eval consistency: (scale_var G)(x) = G(t x)
  Series x = mono(F, 1, 0, 1, 15) + mono(F, 1, 1, 1, 15);
  Series lhs = S.eval(x);
  Series rhs = G.eval(x.shift(1));
  CHECK(series_equal_below(lhs, rhs, std::min(lhs.prec(), rhs.prec())));
  // shift_var: G(3 + X) = X^2 + 6X + 9 - t
  SeriesPoly H = G.shift_var(Fq::from_int(F, 3));
  CHECK(H.c[1].coeff(0) == Fq::from_int(F, 6));
  CHECK(H.c[0].coeff(0) == Fq::from_int(F, 9));
  CHECK(H.c[0].coeff(1) == -Fq::one(F));
  // shift_all divides out a common monomial
  SeriesPoly W = S.shift_all(1);
  CHECK(*W.c[0].valuation() == 0);
  CHECK(*W.c[2].valuation() == 1);
}
