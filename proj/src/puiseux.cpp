#include "scell/puiseux.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "scell/error.hpp"
#include "scell/hashing.hpp"

namespace scell {

namespace {

constexpr std::int64_t kBigPrec = std::int64_t(1) << 40;

struct SeedStream {
  std::uint64_t base;
  std::uint64_t counter = 0;
  std::uint64_t next() { return StableHash().u64(base).u64(counter++).get(); }
};

// Lift the unique positive-valuation root of H, starting from zero.
// Leading-digit steps until the residual clears twice the derivative
// valuation, then full Newton steps. Returns the root truncated to its
// certified accuracy.
Series newton_lift(const SeriesPoly& H, std::int64_t target) {
  const Ctx& ctx = H.ctx();
  std::int64_t R = H.ram();
  Series x = Series::zero(ctx, R, kBigPrec);
  SeriesPoly Hp = H.derivative();
  std::int64_t prev_acc = std::numeric_limits<std::int64_t>::min();
  for (int iter = 0; iter < 400; ++iter) {
    Series Hx = H.eval(x);
    Series Hpx = Hp.eval(x);
    auto dv_opt = Hpx.valuation();
    if (!dv_opt)
      fail(Err::InsufficientPrecision, "derivative vanishes to precision during lifting");
    std::int64_t dv = *dv_opt;
    auto rv_opt = Hx.valuation();
    if (!rv_opt) {
      // Residual is zero to its precision: accuracy is capped by what the
      // coefficients can certify.
      return x.truncate(Hx.prec() - dv);
    }
    std::int64_t rv = *rv_opt;
    std::int64_t acc = rv - dv;
    if (acc >= target) return x.truncate(acc);
    if (acc <= prev_acc) fail(Err::LiftDiverged, "lifting stopped making progress");
    prev_acc = acc;
    if (rv > 2 * dv) {
      // Digits beyond the target get discarded on return, so cap the
      // division window; otherwise exact inputs would ask for the full
      // sentinel-precision expansion of 1/H'(x).
      x = x - series_div(Hx.truncate(target + dv), Hpx.truncate(target + dv));
    } else {
      Fq digit = -(Hx.coeff(rv) * Hpx.coeff(dv).inv());
      x = x + Series::monomial(ctx, digit, rv - dv, R, kBigPrec);
    }
  }
  fail(Err::LiftDiverged, "lifting iteration cap reached");
}

std::int64_t min_val_lower(const SeriesPoly& f) {
  std::int64_t m = kBigPrec;
  for (const auto& c : f.c) m = std::min(m, c.val_lower_bound());
  return m;
}

// All roots of G with positive valuation, each as a series on its own
// refinement of G's grid. target is in G's grid units.
std::vector<Series> np_rec(const SeriesPoly& G, std::int64_t target, SeedStream& seeds,
                           int max_m, int depth) {
  if (depth > 80) fail(Err::NotSquarefreeToPrecision, "expansion recursion ran away");
  const Ctx ctx = G.ctx();
  std::int64_t R = G.ram();

  std::vector<Series> out;
  SeriesPoly W = G;
  // A constant term vanishing to precision P hides one root from the polygon
  // entirely: that root is zero to precision P - val(c1), the bound Newton's
  // first step certifies. Peel it off at that precision when it covers the
  // local target; otherwise the expansion is stuck.
  if (W.c[0].is_zero_to_prec()) {
    std::int64_t P = W.c[0].prec();
    std::optional<std::int64_t> v1;
    if (W.c.size() > 1) v1 = W.c[1].valuation();
    if (!v1)
      fail(Err::InsufficientPrecision,
           "two expansions agree beyond working precision");
    std::int64_t pz = P - *v1;
    if (pz < target)
      fail(Err::InsufficientPrecision, "constant term vanishes to working precision");
    out.push_back(Series::zero(ctx, R, pz));
    W.c.erase(W.c.begin());
    if (W.c.size() == 1) return out;
  }
  NewtonPolygon NP;
  try {
    NP = newton_polygon(W);
  } catch (const ScellError& e) {
    if (e.code() == Err::IndeterminateValuation) fail(Err::InsufficientPrecision, e.what());
    throw;
  }

  int d = W.degree();
  for (const auto& seg : NP.segments) {
    if (!(Rational(0) < seg.slope)) continue;
    Rational gs = seg.slope * Rational(R);  // rise per abscissa on G's grid
    std::int64_t a = gs.num, b = gs.den;
    SeriesPoly Gb = (b == 1) ? W : W.refine_grid(b);
    std::int64_t Rb = R * b;
    SeriesPoly Gs = Gb.scale_var(a);
    Gs = Gs.shift_all(min_val_lower(Gs));
    // Edge polynomial: the exponent-zero coefficients after normalizing.
    std::vector<Fq> ec;
    ec.reserve(static_cast<std::size_t>(d) + 1);
    for (int k = 0; k <= d; ++k) {
      const Series& ck = Gs.c[static_cast<std::size_t>(k)];
      if (!ck.coeff_known(0))
        fail(Err::InsufficientPrecision, "edge coefficient beyond working precision");
      ec.push_back(ck.coeff(0));
    }
    Fpoly E = Fpoly::from(ctx, std::move(ec));
    int budget = std::max(1, max_m / ctx->m);
    RootsResult rr = roots_with_extension(E, budget, seeds.next());
    const Ctx& ctx2 = rr.field;
    SeriesPoly Gs2 = (ctx2 == ctx) ? Gs : Gs.embed_into(ctx2);
    std::int64_t tloc = target * b;
    for (const auto& [xi, r] : rr.roots) {
      if (xi.is_zero()) continue;
      std::int64_t tsub = tloc - a;
      std::vector<Series> ys;
      if (tsub <= 0) {
        // The target sits at or before this digit; a positive-valuation
        // tail pins each root only modulo one more grid step.
        for (int cnt = 0; cnt < r; ++cnt) ys.push_back(Series::zero(ctx2, Rb, 1));
      } else {
        SeriesPoly H = Gs2.shift_var(xi);
        if (r == 1) {
          ys.push_back(newton_lift(H, tsub));
        } else {
          ys = np_rec(H, tsub, seeds, max_m, depth + 1);
          if (static_cast<int>(ys.size()) != r)
            fail(Err::Internal, "sub-expansion count disagrees with edge multiplicity");
        }
      }
      for (auto& y : ys) {
        std::int64_t k = y.ram() / Rb;
        Fq xiy = (y.ctx() == ctx2) ? xi : embed(xi, y.ctx());
        Series mono = Series::monomial(y.ctx(), xiy, 0, y.ram(), y.prec());
        out.push_back((mono + y).shift(a * k));
      }
    }
  }
  return out;
}

Series reduce_grid_exact(const Series& s, std::int64_t k) {
  if (k == 1) return s;
  std::int64_t new_prec = (s.prec() >= 0) ? (s.prec() + k - 1) / k
                                          : -((-s.prec()) / k);
  Series r = Series::zero(s.ctx(), s.ram() / k, new_prec);
  auto v = s.valuation();
  if (!v) return r;
  std::int64_t hi = std::min(s.prec(), s.support_end());
  for (std::int64_t e = *v; e < hi; ++e) {
    Fq c = s.coeff(e);
    if (c.is_zero()) continue;
    if (e % k != 0) fail(Err::Internal, "expansion support finer than its twist orbit");
    if (e / k < new_prec) r.set_coeff(e / k, c);
  }
  return r;
}

bool is_exact_one(const Series& s) {
  auto v = s.valuation();
  if (!v || *v != 0) return false;
  if (!(s.coeff(0) == Fq::one(s.ctx()))) return false;
  for (std::int64_t e = 1; e < std::min(s.prec(), s.ram() * 4 + std::int64_t(8)); ++e)
    if (!s.coeff(e).is_zero()) return false;
  return true;
}

}  // namespace

std::pair<SeriesPoly, SeriesPoly> spoly_divmod(const SeriesPoly& a, const SeriesPoly& b) {
  int db = b.degree();
  if (db < 0) fail(Err::DivisionByZero, "dividing by empty polynomial");
  SeriesPoly rem = a;
  SeriesPoly quo;
  if (a.degree() >= db)
    quo.c.assign(static_cast<std::size_t>(a.degree() - db) + 1,
                 Series::zero(a.ctx(), a.ram(), kBigPrec));
  while (rem.degree() >= db) {
    int dr = rem.degree();
    Series f = series_div(rem.c[static_cast<std::size_t>(dr)], b.c[static_cast<std::size_t>(db)]);
    quo.c[static_cast<std::size_t>(dr - db)] = f;
    for (int j = 0; j < db; ++j)
      rem.c[static_cast<std::size_t>(dr - db + j)] -= f * b.c[static_cast<std::size_t>(j)];
    // The top coefficient cancels exactly; drop it.
    rem.c.pop_back();
    if (rem.c.empty()) break;
  }
  return {quo, rem};
}

void require_squarefree(const SeriesPoly& f) {
  SeriesPoly a = f;
  SeriesPoly b = f.derivative();
  for (int guard = 0; guard < 64; ++guard) {
    if (b.c.empty()) fail(Err::NotSquarefreeToPrecision, "remainder sequence hit exact zero");
    bool all_unknown = true;
    for (const auto& c : b.c)
      if (!c.is_zero_to_prec()) all_unknown = false;
    if (all_unknown)
      fail(Err::NotSquarefreeToPrecision,
           "remainder vanished to precision before certifying the discriminant");
    if (b.degree() == 0 || b.c.size() == 1) {
      if (b.c[0].is_zero_to_prec())
        fail(Err::NotSquarefreeToPrecision, "discriminant-level remainder undetermined");
      return;
    }
    if (b.c.back().is_zero_to_prec())
      fail(Err::NotSquarefreeToPrecision, "remainder leading coefficient undetermined");
    SeriesPoly r;
    try {
      r = spoly_divmod(a, b).second;
    } catch (const ScellError& e) {
      if (e.code() == Err::IndeterminateValuation)
        fail(Err::NotSquarefreeToPrecision, e.what());
      throw;
    }
    a = std::move(b);
    b = std::move(r);
  }
  fail(Err::Internal, "remainder sequence did not terminate");
}

PuiseuxExpansion puiseux_expand(const SeriesPoly& f, std::int64_t target, std::uint64_t seed,
                                int max_field_degree) {
  if (f.c.size() < 2) fail(Err::InconsistentInput, "expansion needs positive degree");
  if (target <= 0) fail(Err::PrecisionZero, "expansion target must be positive");
  const Ctx ctx0 = f.ctx();
  if (!is_exact_one(f.c.back())) fail(Err::NotMonic, "expansion requires a monic polynomial");

  NewtonPolygon top = newton_polygon(f);
  for (const auto& seg : top.segments)
    if (!(Rational(0) < seg.slope))
      fail(Err::NotTopologicallyNilpotent, "a root has non-positive valuation");

  // The squarefreeness gate runs a remainder sequence whose divisions by
  // non-monomial units expand forever over exact coefficients, so certify
  // squarefreeness at the working precision only. Roots that separate beyond
  // it are indistinguishable at this target anyway.
  SeriesPoly gate = f;
  for (auto& c : gate.c) c = c.truncate(target * f.ram());
  require_squarefree(gate);

  SeedStream seeds{seed};
  std::vector<Series> raw = np_rec(f, target * f.ram(), seeds, max_field_degree, 0);
  if (static_cast<int>(raw.size()) != f.degree())
    fail(Err::Internal, "expansion produced wrong root count");

  std::uint64_t p = ctx0->p;
  std::int64_t M = 1, L = 1;
  for (const auto& r : raw) {
    M = std::lcm(M, static_cast<std::int64_t>(r.ctx()->m));
    L = std::lcm(L, r.ram());
  }
  M = std::lcm(M, static_cast<std::int64_t>(multiplicative_order(p, L)));
  if (M > max_field_degree)
    fail(Err::ExtensionBudgetExceeded,
         "common field degree " + std::to_string(M) + " exceeds the budget");
  Ctx big = make_field(p, static_cast<int>(M));

  PuiseuxExpansion out;
  out.field = big;
  out.grid = L;
  for (const auto& r : raw) {
    Series s = r.embed_into(big).refine_grid(L / r.ram());
    out.roots.push_back(std::move(s));
  }
  std::int64_t cert = kBigPrec;
  for (const auto& r : out.roots) cert = std::min(cert, r.prec());
  out.cert_prec = cert;
  if (cert <= 0) fail(Err::InsufficientPrecision, "no certified digits in some expansion");

  std::sort(out.roots.begin(), out.roots.end(),
            [&](const Series& x, const Series& y) { return series_lex_less(x, y, cert); });
  int n = static_cast<int>(out.roots.size());
  for (int i = 0; i + 1 < n; ++i)
    if (series_equal_below(out.roots[i], out.roots[i + 1], cert))
      fail(Err::InsufficientPrecision, "expansions not separated at working precision");

  Fq xi = root_of_unity(big, L, seeds.next());
  auto match = [&](const Series& s) {
    for (int j = 0; j < n; ++j)
      if (series_equal_below(s, out.roots[j], cert)) return j;
    fail(Err::InsufficientPrecision, "Galois image does not match any expansion");
  };
  out.sigma.resize(n);
  out.frob.resize(n);
  for (int i = 0; i < n; ++i) {
    out.sigma[i] = match(out.roots[i].twist(xi));
    out.frob[i] = match(out.roots[i].map_coeffs_frob(1));
  }
  {
    std::vector<bool> hit(n, false);
    for (int v : out.sigma) hit[v] = true;
    for (bool h : hit)
      if (!h) fail(Err::Internal, "twist action is not a permutation");
  }

  // Orbits under twist and Frobenius together: one branch record each.
  std::vector<int> orbit_id(n, -1);
  std::int64_t total = 0;
  for (int i = 0; i < n; ++i) {
    if (orbit_id[i] >= 0) continue;
    std::vector<int> stack{i};
    std::vector<int> members;
    orbit_id[i] = i;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      members.push_back(v);
      for (int w : {out.sigma[v], out.frob[v]})
        if (orbit_id[w] < 0) {
          orbit_id[w] = i;
          stack.push_back(w);
        }
    }
    std::int64_t e = 1;
    for (int v = out.sigma[i]; v != i; v = out.sigma[v]) ++e;
    if (static_cast<std::int64_t>(members.size()) % e != 0)
      fail(Err::Internal, "orbit size not divisible by ramification");
    PuiseuxBranch br;
    br.e = e;
    br.residual_degree = static_cast<int>(static_cast<std::int64_t>(members.size()) / e);
    br.multiplicity = 1;
    br.expansion = reduce_grid_exact(out.roots[static_cast<std::size_t>(i)], L / e);
    int cd = M > 1 ? 0 : 1;
    if (M > 1) {
      for (int k = 1; k <= M; ++k) {
        if (M % k != 0) continue;
        Series img = br.expansion.map_coeffs_frob(k);
        if (series_equal_below(img, br.expansion, br.expansion.prec())) {
          cd = k;
          break;
        }
      }
      if (cd == 0) fail(Err::Internal, "coefficient field degree not found");
    }
    br.coeff_degree = cd;
    total += br.e * br.residual_degree * br.multiplicity;
    out.branches.push_back(std::move(br));
  }
  if (total != f.degree())
    fail(Err::Internal, "branch ramification data does not account for all roots");
  return out;
}

PairwiseValuations pairwise_valuations(const PuiseuxExpansion& expansion, std::int64_t target) {
  int n = static_cast<int>(expansion.roots.size());
  PairwiseValuations out;
  out.Q.assign(n, std::vector<Rational>(n, Rational(0)));
  out.witness_bound = Rational(target, 2);
  out.certified = true;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Series diff = expansion.roots[i] - expansion.roots[j];
      auto v = diff.valuation();
      Rational q;
      if (!v) {
        q = Rational(diff.prec(), expansion.grid);  // lower bound only
        out.certified = false;
      } else {
        q = Rational(*v, expansion.grid);
        if (!(q < out.witness_bound)) out.certified = false;
      }
      out.Q[i][j] = q;
      out.Q[j][i] = q;
    }
  return out;
}

}  // namespace scell
