#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numeric>

#include "scell/error.hpp"
#include "scell/gkm.hpp"
#include "scell/hashing.hpp"
#include "scell/series.hpp"

using namespace scell;

namespace {

// Independent oracle: sample eigenvalues of a generic topologically
// nilpotent twisted torus element directly. A block of size d gets the d
// twists of one series in t^(1/d) with uniformly random coefficients, so
// the pairwise valuations can be read off by subtraction, with no
// characteristic polynomial or root solving involved.
GkmClass sampled_torus_class(const std::vector<int>& blocks, std::uint64_t prime,
                             std::int64_t depth, std::uint64_t seed) {
  std::int64_t L = 1;
  for (int d : blocks) L = std::lcm(L, static_cast<std::int64_t>(d));
  int M = multiplicative_order(prime, L);
  Ctx F = make_field(prime, M);
  Fq xiL = root_of_unity(F, L, seed);
  SplitMix64 rng(StableHash().u64(seed).str("torus").get());

  std::vector<Series> eigen;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    std::int64_t d = blocks[b];
    Series base = Series::zero(F, d, depth * d);
    for (std::int64_t s = 1; s < depth * d; ++s)
      base.set_coeff(s, Fq::from_int(F, rng.below(prime)));
    Fq xid = xiL.pow(static_cast<std::uint64_t>(L / d));  // primitive d-th root
    for (std::int64_t i = 0; i < d; ++i)
      eigen.push_back(base.twist(xid.pow(static_cast<std::uint64_t>(i))).refine_grid(L / d));
  }

  int n = static_cast<int>(eigen.size());
  GkmClass g;
  for (int d : blocks) g.cycle_type.push_back(d);
  g.rvals.assign(static_cast<std::size_t>(n),
                 std::vector<Rational>(static_cast<std::size_t>(n), Rational(0)));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Series diff = eigen[static_cast<std::size_t>(i)] - eigen[static_cast<std::size_t>(j)];
      auto v = diff.valuation();
      REQUIRE(v.has_value());
      g.rvals[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = Rational(*v, L);
      g.rvals[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = Rational(*v, L);
    }
  return canonicalize(g);
}

}  // namespace

TEST_CASE("minimal data spot values") {
  CHECK(delta(minimal_gkm({2})) == 0);
  CHECK(delta(minimal_gkm({3})) == 0);
  CHECK(delta(minimal_gkm({6})) == 0);
  CHECK(delta(minimal_gkm({1, 1})) == 1);
  CHECK(delta(minimal_gkm({1, 1, 1})) == 3);
  CHECK(delta(minimal_gkm({1, 1, 1, 1, 1, 1})) == 15);
  CHECK(delta(minimal_gkm({2, 1})) == 1);
}

TEST_CASE("minimal datum fields") {
  GkmClass g = minimal_gkm({2, 1});
  CHECK(g.cycle_type == std::vector<int>{2, 1});
  CHECK(g.rvals[0][1] == Rational(1, 2));
  CHECK(g.rvals[0][2] == Rational(1, 2));
  CHECK(g.rvals[1][2] == Rational(1, 2));
  CHECK(is_minimal(g));
  CHECK(!is_elliptic(g));
  CHECK(is_elliptic(minimal_gkm({4})));
  CHECK(total_rvalue(g) == Rational(3));
  CHECK(codim_base(g) == 1);
}

TEST_CASE("canonicalize validates the shape") {
  GkmClass bad = minimal_gkm({2, 1});
  bad.rvals[0][1] = Rational(1, 3);  // breaks symmetry
  CHECK_THROWS_AS(canonicalize(bad), ScellError);

  GkmClass neg = minimal_gkm({1, 1});
  neg.rvals[0][1] = neg.rvals[1][0] = Rational(-1);
  CHECK_THROWS_AS(canonicalize(neg), ScellError);

  GkmClass twisted = minimal_gkm({2, 2});
  // breaking twist invariance inside the first block
  twisted.rvals[0][2] = twisted.rvals[2][0] = Rational(2);
  CHECK_THROWS_AS(canonicalize(twisted), ScellError);
}

TEST_CASE("canonicalize is invariant under allowed relabelings") {
  // blocks (1,1,1) with distinct pairwise valuations: relabeling the
  // blocks must reach the same canonical form
  GkmClass g;
  g.cycle_type = {1, 1, 1};
  g.rvals = {{Rational(0), Rational(1), Rational(2)},
             {Rational(1), Rational(0), Rational(3)},
             {Rational(2), Rational(3), Rational(0)}};
  GkmClass c1 = canonicalize(g);

  GkmClass h;  // swap roots 0 and 2
  h.cycle_type = {1, 1, 1};
  h.rvals = {{Rational(0), Rational(3), Rational(2)},
             {Rational(3), Rational(0), Rational(1)},
             {Rational(2), Rational(1), Rational(0)}};
  CHECK(canonicalize(h) == c1);
  CHECK(canonicalize(c1) == c1);  // idempotent

  // rotating a block of size 3 must not change the canonical form
  GkmClass r = minimal_gkm({3, 1});
  GkmClass rr = r;
  // a rotation of the first block permutes indices 0,1,2 cyclically;
  // the minimal datum is rotation invariant so this is the same datum
  CHECK(canonicalize(rr) == canonicalize(r));
}

TEST_CASE("defect integrality guard") {
  GkmClass g = minimal_gkm({1, 1});
  g.rvals[0][1] = g.rvals[1][0] = Rational(1, 2);
  CHECK_THROWS_AS(delta(g), ScellError);
}

TEST_CASE("sampled twisted torus matches the closed form") {
  for (const auto& blocks :
       {std::vector<int>{2}, {3}, {1, 1}, {2, 1}, {2, 2}, {3, 2}, {4}, {3, 1, 1}}) {
    GkmClass sampled = sampled_torus_class(blocks, 10007, 6, 91);
    GkmClass closed = minimal_gkm(blocks);
    CHECK(sampled.cycle_type == closed.cycle_type);
    CHECK(sampled == closed);
  }
}

TEST_CASE("keys separate distinct classes") {
  CHECK(gkm_key(minimal_gkm({2, 1})) != gkm_key(minimal_gkm({3})));
  GkmClass g = minimal_gkm({1, 1});
  GkmClass h = g;
  h.rvals[0][1] = h.rvals[1][0] = Rational(2);
  CHECK(gkm_key(g) != gkm_key(h));
}
