#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "scell/error.hpp"
#include "scell/hashing.hpp"
#include "scell/puiseux.hpp"

using namespace scell;

namespace {

const std::int64_t kExact = std::int64_t(1) << 30;

Series mono(const Ctx& F, const Fq& c, std::int64_t e, std::int64_t ram = 1,
            std::int64_t prec = kExact) {
  return Series::monomial(F, c, e, ram, prec);
}

Series imono(const Ctx& F, std::int64_t c, std::int64_t e, std::int64_t ram = 1,
             std::int64_t prec = kExact) {
  std::uint64_t cc = static_cast<std::uint64_t>(((c % 10007) + 10007) % 10007);
  return mono(F, Fq::from_int(F, cc), e, ram, prec);
}

SeriesPoly from_roots(const std::vector<Series>& roots) {
  const Ctx& F = roots.at(0).ctx();
  std::int64_t ram = roots[0].ram();
  SeriesPoly f;
  f.c = {mono(F, Fq::one(F), 0, ram)};
  for (const auto& r : roots) {
    SeriesPoly g;
    g.c.assign(f.c.size() + 1, Series::zero(F, ram, kExact));
    for (std::size_t k = 0; k < f.c.size(); ++k) {
      g.c[k + 1] += f.c[k];
      g.c[k] -= r * f.c[k];
    }
    f = std::move(g);
  }
  return f;
}

bool poly_matches(const SeriesPoly& a, const SeriesPoly& b, std::int64_t cap) {
  if (a.degree() != b.degree()) return false;
  for (std::size_t k = 0; k < a.c.size(); ++k) {
    Series d = a.c[k] - b.c[k];
    auto v = d.valuation();
    if (v && *v < cap) return false;
  }
  return true;
}

Fq nonresidue(const Ctx& F) {
  for (std::uint64_t c = 2;; ++c) {
    Fq x = Fq::from_int(F, c);
    if (x.pow((F->p - 1) / 2) != Fq::one(F)) return x;
  }
}

}  // namespace

TEST_CASE("square root branch") {
  auto F = make_field(10007, 1);
  SeriesPoly f;
  f.c = {-imono(F, 1, 1), Series::zero(F, 1, kExact), imono(F, 1, 0)};  // X^2 - t
  auto ex = puiseux_expand(f, 30, 7);
  CHECK(ex.grid == 2);
  CHECK(ex.field->m == 1);
  REQUIRE(ex.roots.size() == 2);
  REQUIRE(ex.branches.size() == 1);
  CHECK(ex.branches[0].e == 2);
  CHECK(ex.branches[0].residual_degree == 1);
  CHECK(ex.branches[0].coeff_degree == 1);
  CHECK(ex.branches[0].expansion.coeff(1) == Fq::one(F));  // t^(1/2), unit coefficient
  CHECK(ex.sigma == std::vector<int>{1, 0});
  CHECK(ex.frob == std::vector<int>{0, 1});

  auto pv = pairwise_valuations(ex, 30);
  CHECK(pv.certified);
  CHECK(pv.Q[0][1] == Rational(1, 2));
}

TEST_CASE("square root of a nonresidue needs the quadratic extension") {
  auto F = make_field(10007, 1);
  Fq c = nonresidue(F);
  SeriesPoly f;
  f.c = {-mono(F, c, 1), Series::zero(F, 1, kExact), imono(F, 1, 0)};  // X^2 - c t
  auto ex = puiseux_expand(f, 30, 7);
  CHECK(ex.field->m == 2);
  REQUIRE(ex.branches.size() == 1);
  CHECK(ex.branches[0].e == 2);
  CHECK(ex.branches[0].residual_degree == 1);
  CHECK(ex.branches[0].coeff_degree == 2);
  auto pv = pairwise_valuations(ex, 30);
  CHECK(pv.Q[0][1] == Rational(1, 2));
}

TEST_CASE("conjugate unramified pair") {
  auto F = make_field(10007, 1);
  auto F2 = make_field(10007, 2);
  Fq u = Fq::gen(F2);
  Fq s2 = u + u.frob();
  Fq q2 = u * u.frob();
  REQUIRE(s2.coeffs()[1] == 0);
  REQUIRE(q2.coeffs()[1] == 0);
  Fq s = Fq::from_int(F, s2.coeffs()[0]);
  Fq q = Fq::from_int(F, q2.coeffs()[0]);
  SeriesPoly f;  // (X - u t)(X - conj(u) t) over the prime field
  f.c = {mono(F, q, 2), -mono(F, s, 1), imono(F, 1, 0)};
  auto ex = puiseux_expand(f, 30, 11);
  CHECK(ex.grid == 1);
  CHECK(ex.field->m == 2);
  REQUIRE(ex.branches.size() == 1);
  CHECK(ex.branches[0].e == 1);
  CHECK(ex.branches[0].residual_degree == 2);
  CHECK(ex.branches[0].coeff_degree == 2);
  CHECK(ex.sigma == std::vector<int>{0, 1});
  CHECK(ex.frob == std::vector<int>{1, 0});
  auto pv = pairwise_valuations(ex, 30);
  CHECK(pv.Q[0][1] == Rational(1));
}

TEST_CASE("mixed ramification and exact branch splitting") {
  auto F = make_field(10007, 1);
  // (X - t)(X^2 - t^3): one unramified branch, one square-root branch
  SeriesPoly f;
  f.c = {imono(F, 1, 4), -imono(F, 1, 3), -imono(F, 1, 1), imono(F, 1, 0)};
  auto ex = puiseux_expand(f, 30, 3);
  CHECK(ex.grid == 2);
  REQUIRE(ex.roots.size() == 3);
  REQUIRE(ex.branches.size() == 2);
  std::vector<std::int64_t> es{ex.branches[0].e, ex.branches[1].e};
  std::sort(es.begin(), es.end());
  CHECK(es == std::vector<std::int64_t>{1, 2});

  auto pv = pairwise_valuations(ex, 30);
  // valuations: within the ramified pair 3/2, across branches 1
  std::vector<Rational> vals{pv.Q[0][1], pv.Q[0][2], pv.Q[1][2]};
  std::sort(vals.begin(), vals.end());
  CHECK(vals[0] == Rational(1));
  CHECK(vals[1] == Rational(1));
  CHECK(vals[2] == Rational(3, 2));

  // roundtrip: the product over all expansions reproduces f
  SeriesPoly big = f.embed_into(ex.field).refine_grid(ex.grid);
  CHECK(poly_matches(from_roots(ex.roots), big, 15 * ex.grid));
}

TEST_CASE("repeated factor is rejected") {
  auto F = make_field(10007, 1);
  SeriesPoly f;  // (X - t)^2
  f.c = {imono(F, 1, 2), -imono(F, 2, 1), imono(F, 1, 0)};
  bool threw = false;
  try {
    puiseux_expand(f, 30, 1);
  } catch (const ScellError& e) {
    threw = true;
    CHECK(e.code() == Err::NotSquarefreeToPrecision);
  }
  CHECK(threw);
}

TEST_CASE("roots indistinguishable at working precision are rejected") {
  auto F = make_field(10007, 1);
  // (X - t)(X - t - t^20) with coefficients only known below t^15
  Series r1 = imono(F, 1, 1, 1, 15);
  Series r2 = imono(F, 1, 1, 1, 15) + imono(F, 1, 20, 1, 15);
  SeriesPoly f = from_roots({r1, r2});
  for (auto& c : f.c) c = c.truncate(15);
  bool threw = false;
  try {
    puiseux_expand(f, 15, 1);
  } catch (const ScellError& e) {
    threw = true;
    CHECK((e.code() == Err::NotSquarefreeToPrecision ||
           e.code() == Err::InsufficientPrecision));
  }
  CHECK(threw);
}

TEST_CASE("certification depends on the target") {
  auto F = make_field(10007, 1);
  Series r1 = imono(F, 1, 1);
  Series r2 = imono(F, 1, 1) + imono(F, 1, 9);
  SeriesPoly f = from_roots({r1, r2});
  auto ex = puiseux_expand(f, 40, 1);
  auto wide = pairwise_valuations(ex, 40);
  CHECK(wide.certified);  // 9 < 20
  CHECK(wide.Q[0][1] == Rational(9));

  auto tight = pairwise_valuations(ex, 17);
  CHECK(!tight.certified);  // 9 >= 17/2
}

TEST_CASE("input validation") {
  auto F = make_field(10007, 1);
  SeriesPoly notmonic;
  notmonic.c = {imono(F, 1, 1), imono(F, 2, 0)};
  CHECK_THROWS_AS(puiseux_expand(notmonic, 20, 1), ScellError);

  SeriesPoly unit_root;  // X^2 - (1 + t) X + t has a valuation-zero root
  unit_root.c = {imono(F, 1, 1), -(imono(F, 1, 0) + imono(F, 1, 1)), imono(F, 1, 0)};
  try {
    puiseux_expand(unit_root, 20, 1);
    CHECK(false);
  } catch (const ScellError& e) {
    CHECK(e.code() == Err::NotTopologicallyNilpotent);
  }
}

TEST_CASE("series polynomial division") {
  auto F = make_field(10007, 1);
  Series r1 = imono(F, 1, 1), r2 = imono(F, 1, 2);
  SeriesPoly a = from_roots({r1, r2});
  SeriesPoly b = from_roots({r1});
  auto [q, rem] = spoly_divmod(a, b);
  REQUIRE(q.degree() == 1);
  CHECK(series_equal_below(q.c[0], -r2, 20));
  for (const auto& c : rem.c) CHECK(c.is_zero_to_prec());
}

TEST_CASE("random roundtrip with planted digits") {
  auto F = make_field(10007, 1);
  SplitMix64 rng(4242);
  for (int rep = 0; rep < 20; ++rep) {
    int deg = 1 + static_cast<int>(rng.below(3));
    std::int64_t N = 48;
    SeriesPoly f;
    f.c.assign(static_cast<std::size_t>(deg) + 1, Series::zero(F, 1, N));
    for (int k = 0; k < deg; ++k) {
      std::int64_t v0 = 1 + static_cast<std::int64_t>(rng.below(3));
      Series s = Series::zero(F, 1, N);
      for (std::int64_t e = v0; e < N; ++e) s.set_coeff(e, Fq::from_int(F, rng.below(10007)));
      f.c[static_cast<std::size_t>(k)] = s;
    }
    f.c[static_cast<std::size_t>(deg)] = imono(F, 1, 0, 1, N);
    auto ex = puiseux_expand(f, N, StableHash().u64(777).i64(rep).get());
    REQUIRE(static_cast<int>(ex.roots.size()) == deg);

    // slope multiset equals valuation multiset
    auto np = newton_polygon(f);
    auto slopes = np.valuations();
    std::vector<Rational> rvals;
    for (const auto& r : ex.roots) {
      auto v = r.valuation();
      REQUIRE(v.has_value());
      rvals.emplace_back(*v, ex.grid);
    }
    std::sort(rvals.begin(), rvals.end());
    CHECK(slopes == rvals);

    // product of branches reproduces the polynomial to half the target
    SeriesPoly big = f.embed_into(ex.field).refine_grid(ex.grid);
    CHECK(poly_matches(from_roots(ex.roots), big, (N / 2) * ex.grid));

    // ultrametric inequality on the full valuation matrix
    auto pv = pairwise_valuations(ex, N);
    int n = static_cast<int>(ex.roots.size());
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          if (i == j || j == k || i == k) continue;
          CHECK(!(pv.Q[i][k] < rational_min(pv.Q[i][j], pv.Q[j][k])));
        }
  }
}
