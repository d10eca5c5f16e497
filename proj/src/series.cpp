#include "scell/series.hpp"

#include <algorithm>
#include <sstream>

#include "scell/error.hpp"

namespace scell {

namespace {
constexpr std::int64_t kExactPrec = std::int64_t(1) << 40;
}

Series Series::zero(const Ctx& ctx, std::int64_t ram, std::int64_t prec) {
  Series s;
  s.ctx_ = ctx;
  s.ram_ = ram;
  s.prec_ = prec;
  s.off_ = prec;
  return s;
}

Series Series::monomial(const Ctx& ctx, const Fq& coeff, std::int64_t exp, std::int64_t ram,
                        std::int64_t prec) {
  Series s = zero(ctx, ram, prec);
  if (exp < prec) {
    s.off_ = exp;
    s.c_.assign(1, coeff);
    s.normalize();
  }
  return s;
}

// Storage invariant: c_ holds the support [off_, off_ + c_.size()) with
// nonzero first and last entries; every other exponent below prec_ is an
// implicit zero. Exact series carry a huge sentinel precision, so nothing
// may ever allocate proportionally to prec_.
void Series::normalize() {
  if (prec_ <= off_) {
    c_.clear();
    off_ = prec_;
    return;
  }
  if (static_cast<std::int64_t>(c_.size()) > prec_ - off_)
    c_.resize(static_cast<std::size_t>(prec_ - off_));
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  std::size_t lead = 0;
  while (lead < c_.size() && c_[lead].is_zero()) ++lead;
  if (lead == c_.size()) {
    c_.clear();
    off_ = prec_;
    return;
  }
  if (lead > 0) {
    c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(lead));
    off_ += static_cast<std::int64_t>(lead);
  }
}

std::optional<std::int64_t> Series::valuation() const {
  if (c_.empty()) return std::nullopt;
  return off_;
}

std::int64_t Series::val_lower_bound() const { return c_.empty() ? prec_ : off_; }

std::int64_t Series::support_end() const {
  return c_.empty() ? prec_ : off_ + static_cast<std::int64_t>(c_.size());
}

Fq Series::coeff(std::int64_t s) const {
  if (s >= prec_)
    fail(Err::PrecisionZero, "coefficient at " + std::to_string(s) + " beyond precision " +
                                 std::to_string(prec_));
  if (s < off_ || s >= off_ + static_cast<std::int64_t>(c_.size())) return Fq::zero(ctx_);
  return c_[static_cast<std::size_t>(s - off_)];
}

void Series::set_coeff(std::int64_t s, const Fq& v) {
  if (s >= prec_) fail(Err::PrecisionZero, "setting coefficient beyond precision");
  if (c_.empty()) {
    off_ = s;
    c_.assign(1, v);
    normalize();
    return;
  }
  if (s < off_) {
    std::vector<Fq> padded(static_cast<std::size_t>(off_ - s), Fq::zero(ctx_));
    padded.insert(padded.end(), c_.begin(), c_.end());
    c_ = std::move(padded);
    off_ = s;
  } else if (s >= off_ + static_cast<std::int64_t>(c_.size())) {
    c_.resize(static_cast<std::size_t>(s - off_) + 1, Fq::zero(ctx_));
  }
  c_[static_cast<std::size_t>(s - off_)] = v;
  normalize();
}

namespace {

void check_compatible(const Series& a, const Series& b) {
  if (a.ctx() != b.ctx()) fail(Err::MixedField, "series over different fields");
  if (a.ram() != b.ram()) fail(Err::MixedRamification, "series on different exponent grids");
}

}  // namespace

Series operator+(const Series& a, const Series& b) {
  check_compatible(a, b);
  std::int64_t prec = std::min(a.prec(), b.prec());
  Series r = Series::zero(a.ctx(), a.ram(), prec);
  std::int64_t lo = std::min(a.val_lower_bound(), b.val_lower_bound());
  if (lo >= prec) return r;
  std::int64_t hi = lo;
  if (!a.c_.empty()) hi = std::max(hi, a.off_ + static_cast<std::int64_t>(a.c_.size()));
  if (!b.c_.empty()) hi = std::max(hi, b.off_ + static_cast<std::int64_t>(b.c_.size()));
  hi = std::min(hi, prec);
  r.off_ = lo;
  r.c_.assign(static_cast<std::size_t>(hi - lo), Fq::zero(a.ctx()));
  for (std::int64_t s = lo; s < hi; ++s) {
    Fq va = s < a.prec() ? a.coeff(s) : Fq::zero(a.ctx());
    Fq vb = s < b.prec() ? b.coeff(s) : Fq::zero(a.ctx());
    r.c_[static_cast<std::size_t>(s - lo)] = va + vb;
  }
  r.normalize();
  return r;
}

Series operator-(const Series& a, const Series& b) { return a + (-b); }

Series Series::operator-() const {
  Series r = *this;
  for (auto& v : r.c_) v = -v;
  return r;
}

Series operator*(const Series& a, const Series& b) {
  check_compatible(a, b);
  std::int64_t va = a.val_lower_bound(), vb = b.val_lower_bound();
  std::int64_t prec = std::min(a.prec() + vb, b.prec() + va);
  Series r = Series::zero(a.ctx(), a.ram(), prec);
  auto av = a.valuation(), bv = b.valuation();
  if (!av || !bv) return r;  // zero to precision
  std::int64_t lo = *av + *bv;
  if (lo >= prec) return r;
  std::int64_t hi = std::min(
      prec, lo + static_cast<std::int64_t>(a.c_.size() + b.c_.size()) - 1);
  r.off_ = lo;
  r.c_.assign(static_cast<std::size_t>(hi - lo), Fq::zero(a.ctx()));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    std::int64_t sa = a.off_ + static_cast<std::int64_t>(i);
    for (std::size_t j = 0; j < b.c_.size(); ++j) {
      std::int64_t s = sa + b.off_ + static_cast<std::int64_t>(j);
      if (s >= prec) break;
      if (b.c_[j].is_zero()) continue;
      auto& slot = r.c_[static_cast<std::size_t>(s - lo)];
      slot += a.c_[i] * b.c_[j];
    }
  }
  r.normalize();
  return r;
}

Series Series::scale(const Fq& v) const {
  Series r = *this;
  for (auto& x : r.c_) x = x * v;
  r.normalize();
  return r;
}

Series Series::shift(std::int64_t s) const {
  Series r = *this;
  r.off_ += s;
  r.prec_ += s;
  return r;
}

Series Series::truncate(std::int64_t prec) const {
  Series r = *this;
  if (prec < r.prec_) {
    r.prec_ = prec;
    r.normalize();
  }
  return r;
}

Series Series::refine_grid(std::int64_t k) const {
  if (k == 1) return *this;
  if (k < 1) fail(Err::MixedRamification, "grid refinement factor must be positive");
  Series r = Series::zero(ctx_, ram_ * k, prec_ * k);
  if (c_.empty()) return r;
  r.off_ = off_ * k;
  r.c_.assign((c_.size() - 1) * static_cast<std::size_t>(k) + 1, Fq::zero(ctx_));
  for (std::size_t i = 0; i < c_.size(); ++i)
    r.c_[i * static_cast<std::size_t>(k)] = c_[i];
  r.normalize();
  return r;
}

Series series_div(const Series& a, const Series& b) {
  check_compatible(a, b);
  auto bv = b.valuation();
  if (!bv) fail(Err::IndeterminateValuation, "division by a series that is zero to precision");
  std::int64_t vb = *bv;
  const Ctx& ctx = a.ctx();
  // The quotient can only be known up to a's precision, so inverting the
  // unit part of b further than that is wasted work (and impossible for
  // exact divisors, whose sentinel precision is astronomically large).
  std::int64_t needed = a.prec() - a.val_lower_bound();
  if (needed <= 0) return Series::zero(ctx, a.ram(), a.prec() - vb);
  if (b.c_.size() == 1) {
    // Monomial divisor: the unit part is a constant as far as b is known,
    // so its inverse is a constant with the same knowledge horizon and the
    // product rule accounts for the precision exactly.
    Series inv_unit = Series::monomial(ctx, b.c_[0].inv(), 0, a.ram(), b.prec() - vb);
    return (a * inv_unit).shift(-vb);
  }
  std::int64_t len = std::min({b.prec() - vb, needed, std::int64_t(1) << 20});
  // Invert the unit part u = b / t^{vb} to its full known length.
  Fq u0inv = b.coeff(vb).inv();
  std::vector<Fq> w(static_cast<std::size_t>(len), Fq::zero(ctx));
  w[0] = u0inv;
  for (std::int64_t s = 1; s < len; ++s) {
    Fq acc = Fq::zero(ctx);
    for (std::int64_t k = 1; k <= s; ++k) acc += b.coeff(vb + k) * w[static_cast<std::size_t>(s - k)];
    w[static_cast<std::size_t>(s)] = -(u0inv * acc);
  }
  Series inv_unit = Series::zero(ctx, a.ram(), len);
  inv_unit.off_ = 0;
  inv_unit.c_ = std::move(w);
  inv_unit.normalize();
  return (a * inv_unit).shift(-vb);
}

Series Series::map_coeffs_frob(int k) const {
  Series r = *this;
  for (auto& v : r.c_) v = v.frob(k);
  r.normalize();
  return r;
}

Series Series::twist(const Fq& xi) const {
  Series r = *this;
  if (r.c_.empty()) return r;
  Fq power = off_ >= 0 ? xi.pow(static_cast<std::uint64_t>(off_))
                       : xi.inv().pow(static_cast<std::uint64_t>(-off_));
  for (auto& v : r.c_) {
    v = v * power;
    power = power * xi;
  }
  r.normalize();
  return r;
}

Series Series::embed_into(const Ctx& target) const {
  if (ctx_ == target) return *this;
  Series r = Series::zero(target, ram_, prec_);
  r.off_ = off_;
  r.c_.reserve(c_.size());
  for (const auto& v : c_) r.c_.push_back(embed(v, target));
  r.normalize();
  return r;
}

// Everything past the last stored coefficient is an implicit zero, so the
// comparisons below only walk the union of the supports, never the full
// precision range (which is a huge sentinel for exact series).

namespace {

// Tight upper bound on exponents where a or b may hold a nonzero coefficient.
// The zero series contributes nothing, so exact zeros with their sentinel
// precision never widen the scan.
std::int64_t stored_end(const Series& a, const Series& b, std::int64_t lo) {
  std::int64_t end = lo;
  if (!a.is_zero_to_prec()) end = std::max(end, a.support_end());
  if (!b.is_zero_to_prec()) end = std::max(end, b.support_end());
  return end;
}

}  // namespace

bool series_equal_below(const Series& a, const Series& b, std::int64_t cap) {
  check_compatible(a, b);
  std::int64_t hi = std::min({a.prec(), b.prec(), cap});
  std::int64_t lo = std::min(a.val_lower_bound(), b.val_lower_bound());
  hi = std::min(hi, stored_end(a, b, lo));
  for (std::int64_t s = lo; s < hi; ++s)
    if (!(a.coeff(s) == b.coeff(s))) return false;
  return true;
}

bool series_lex_less(const Series& a, const Series& b, std::int64_t cap) {
  check_compatible(a, b);
  std::int64_t hi = std::min({a.prec(), b.prec(), cap});
  std::int64_t lo = std::min(a.val_lower_bound(), b.val_lower_bound());
  hi = std::min(hi, stored_end(a, b, lo));
  for (std::int64_t s = lo; s < hi; ++s) {
    Fq va = a.coeff(s), vb = b.coeff(s);
    if (!(va == vb)) return fq_less(va, vb);
  }
  return false;
}

std::string Series::str() const {
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    if (!first) out << " + ";
    out << c_[i].str() << "*t^(" << (off_ + static_cast<std::int64_t>(i)) << "/" << ram_ << ")";
    first = false;
  }
  if (first) out << "0";
  out << " + O(t^(" << prec_ << "/" << ram_ << "))";
  return out.str();
}

// ---------------------------------------------------------------------------
// SeriesPoly

int SeriesPoly::degree() const { return static_cast<int>(c.size()) - 1; }

Series SeriesPoly::eval(const Series& x) const {
  if (c.empty()) fail(Err::InconsistentInput, "evaluating empty polynomial");
  Series r = c.back();
  for (int i = static_cast<int>(c.size()) - 2; i >= 0; --i) r = r * x + c[i];
  return r;
}

SeriesPoly SeriesPoly::derivative() const {
  SeriesPoly d;
  for (std::size_t i = 1; i < c.size(); ++i)
    d.c.push_back(c[i].scale(Fq::from_int(ctx(), static_cast<std::uint64_t>(i))));
  return d;
}

SeriesPoly SeriesPoly::refine_grid(std::int64_t k) const {
  SeriesPoly r;
  for (const auto& s : c) r.c.push_back(s.refine_grid(k));
  return r;
}

SeriesPoly SeriesPoly::embed_into(const Ctx& target) const {
  SeriesPoly r;
  for (const auto& s : c) r.c.push_back(s.embed_into(target));
  return r;
}

SeriesPoly SeriesPoly::scale_var(std::int64_t s) const {
  SeriesPoly r;
  for (std::size_t i = 0; i < c.size(); ++i)
    r.c.push_back(c[i].shift(s * static_cast<std::int64_t>(i)));
  return r;
}

SeriesPoly SeriesPoly::shift_var(const Fq& xi) const {
  // X -> xi + X via binomial expansion; degrees stay <= original degree.
  int d = degree();
  SeriesPoly r;
  r.c.assign(c.size(), Series());
  // Precompute binomial coefficients mod p (degrees are tiny).
  std::vector<std::vector<std::uint64_t>> binom(d + 1, std::vector<std::uint64_t>(d + 1, 0));
  for (int i = 0; i <= d; ++i) {
    binom[i][0] = 1;
    for (int j = 1; j <= i; ++j)
      binom[i][j] = (binom[i - 1][j - 1] + (j <= i - 1 ? binom[i - 1][j] : 0)) % ctx()->p;
  }
  for (int k = 0; k <= d; ++k) {
    Series acc;
    bool has = false;
    Fq xipow = Fq::one(ctx());
    for (int i = k; i <= d; ++i) {
      Fq factor = Fq::from_int(ctx(), binom[i][k]) * xipow;
      Series term = c[static_cast<std::size_t>(i)].scale(factor);
      if (!has) {
        acc = term;
        has = true;
      } else {
        acc += term;
      }
      xipow = xipow * xi;  // xi^{i-k} for the next i
    }
    r.c[static_cast<std::size_t>(k)] = acc;
  }
  return r;
}

SeriesPoly SeriesPoly::shift_all(std::int64_t s) const {
  SeriesPoly r;
  for (const auto& x : c) r.c.push_back(x.shift(-s));
  return r;
}

std::int64_t SeriesPoly::min_coeff_prec() const {
  std::int64_t m = kExactPrec;
  for (const auto& s : c) m = std::min(m, s.prec());
  return m;
}

// ---------------------------------------------------------------------------
// Characteristic polynomial

SeriesPoly char_poly(const std::vector<std::vector<Series>>& M) {
  int n = static_cast<int>(M.size());
  if (n == 0 || n > 20) fail(Err::InconsistentInput, "matrix size out of range");
  for (const auto& row : M)
    if (static_cast<int>(row.size()) != n) fail(Err::NotSquare, "matrix is not square");
  const Ctx& ctx = M[0][0].ctx();
  std::int64_t ram = M[0][0].ram();

  Series one = Series::monomial(ctx, Fq::one(ctx), 0, ram, kExactPrec);
  // dp[mask]: det of the block on the last popcount(mask) rows and the
  // columns in mask, as a polynomial in X (coefficients low to high).
  std::vector<std::vector<Series>> dp(std::size_t(1) << n);
  dp[0] = {one};
  for (int k = 1; k <= n; ++k) {
    int row = n - k;
    for (std::uint32_t mask = 0; mask < (std::uint32_t(1) << n); ++mask) {
      if (__builtin_popcount(mask) != k) continue;
      std::vector<Series> acc(static_cast<std::size_t>(k) + 1,
                              Series::zero(ctx, ram, kExactPrec));
      int pos = 0;
      for (int j = 0; j < n; ++j) {
        if (!(mask & (std::uint32_t(1) << j))) continue;
        const auto& sub = dp[mask ^ (std::uint32_t(1) << j)];
        bool negate = (pos % 2) != 0;
        // Entry of X*I - M at (row, j): degree <= 1 in X.
        Series c0 = -M[row][j];
        for (std::size_t d = 0; d < sub.size(); ++d) {
          Series t0 = c0 * sub[d];
          Series cur = acc[d];
          acc[d] = negate ? cur - t0 : cur + t0;
          if (row == j) {
            Series cur1 = acc[d + 1];
            acc[d + 1] = negate ? cur1 - sub[d] : cur1 + sub[d];
          }
        }
        ++pos;
      }
      dp[mask] = std::move(acc);
    }
  }
  SeriesPoly out;
  out.c = std::move(dp[(std::size_t(1) << n) - 1]);
  return out;
}

// ---------------------------------------------------------------------------
// Newton polygon

std::vector<Rational> NewtonPolygon::valuations() const {
  std::vector<Rational> v;
  for (const auto& seg : segments)
    for (std::int64_t i = 0; i < seg.width; ++i) v.push_back(seg.slope);
  return v;
}

NewtonPolygon newton_polygon(const SeriesPoly& f) {
  int d = f.degree();
  if (d < 1) fail(Err::InconsistentInput, "polygon of a constant polynomial");
  std::int64_t ram = f.ram();

  struct Pt {
    std::int64_t x;
    std::int64_t y;      // valuation in grid units when known
    bool known;
    std::int64_t bound;  // precision lower bound when unknown
  };
  std::vector<Pt> pts;
  for (int i = 0; i <= d; ++i) {
    const Series& ci = f.c[static_cast<std::size_t>(d - i)];
    auto v = ci.valuation();
    if (v)
      pts.push_back({i, *v, true, 0});
    else
      pts.push_back({i, 0, false, ci.prec()});
  }
  if (!pts.front().known)
    fail(Err::IndeterminateValuation, "leading coefficient is zero to precision");
  if (!pts.back().known)
    fail(Err::IndeterminateValuation, "constant coefficient is zero to precision");

  // Lower hull of the known points, left to right.
  std::vector<Pt> hull;
  for (const auto& p : pts) {
    if (!p.known) continue;
    while (hull.size() >= 2) {
      const Pt& a = hull[hull.size() - 2];
      const Pt& b = hull[hull.size() - 1];
      // Drop b when it is not strictly below segment a-p.
      __int128 lhs = static_cast<__int128>(b.y - a.y) * (p.x - a.x);
      __int128 rhs = static_cast<__int128>(p.y - a.y) * (b.x - a.x);
      if (lhs >= rhs)
        hull.pop_back();
      else
        break;
    }
    hull.push_back(p);
  }

  // Certify: unknown points must have precision strictly above the hull,
  // otherwise an unseen coefficient could cut below it.
  auto hull_height_num = [&](std::int64_t x, std::size_t seg) -> std::pair<__int128, std::int64_t> {
    const Pt& a = hull[seg];
    const Pt& b = hull[seg + 1];
    __int128 num = static_cast<__int128>(a.y) * (b.x - a.x) +
                   static_cast<__int128>(b.y - a.y) * (x - a.x);
    return {num, b.x - a.x};
  };
  for (const auto& p : pts) {
    if (p.known) continue;
    std::size_t seg = 0;
    while (seg + 1 < hull.size() && hull[seg + 1].x < p.x) ++seg;
    if (seg + 1 >= hull.size()) continue;  // beyond the hull range
    auto [num, den] = hull_height_num(p.x, seg);
    if (static_cast<__int128>(p.bound) * den <= num)
      fail(Err::IndeterminateValuation,
           "coefficient " + std::to_string(d - p.x) +
               " is undetermined at the polygon height; raise precision");
  }

  NewtonPolygon out;
  for (std::size_t s = 0; s + 1 < hull.size(); ++s) {
    PolygonSegment seg;
    seg.i0 = hull[s].x;
    seg.v0 = hull[s].y;
    seg.width = hull[s + 1].x - hull[s].x;
    seg.slope = Rational(hull[s + 1].y - hull[s].y, seg.width * ram);
    out.segments.push_back(seg);
    out.total_width += seg.width;
  }
  return out;
}

}  // namespace scell
