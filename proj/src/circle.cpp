#include "titch/circle.hpp"

#include <algorithm>
#include <stdexcept>

#include "titch/errors.hpp"

namespace titch {

Arc::Arc(const Angle& s, const Rational& len) : start(s), length(len) {
  if (len < 0 || len >= 1) throw std::invalid_argument("arc length must lie in [0, 1)");
}

bool interval_contains(const RatInterval& w, const Angle& x, Mode mode) {
  return !lifts_into(x, w, 1, mode).empty();
}

bool arc_contains(const Arc& a, const Angle& x, Mode mode) {
  return interval_contains(interval_of_arc(a), x, mode);
}

Arc arc_of_interval(const RatInterval& w) {
  return Arc(Angle(w.lo), w.hi - w.lo);
}

RatInterval interval_of_arc(const Arc& a) { return RatInterval(a.inf(), a.sup()); }

Arc arc_sum(const Arc& i, const Arc& j) {
  Rational len = i.length + j.length;
  if (len >= 1)
    throw HypothesisViolation("arc_sum: |I| + |J| = " + rat_str(len) + " >= 1, sum wraps the circle");
  return Arc(i.start + j.start, len);
}

Orbit rn_orbit(const Arc& i, unsigned n) {
  if (n == 0) throw std::invalid_argument("rn_orbit: n must be positive");
  Orbit o;
  o.arcs.reserve(n);
  for (unsigned k = 0; k < n; ++k)
    o.arcs.emplace_back(i.start + Angle(Rational(k) / n), i.length);
  o.disjoint = i.length < Rational(1) / n;
  return o;
}

Arc minimal_covering_arc(const std::vector<Angle>& points, unsigned n) {
  if (points.empty()) throw std::invalid_argument("minimal_covering_arc: empty point set");
  if (n == 0) throw std::invalid_argument("minimal_covering_arc: n must be positive");
  const Rational q = Rational(1) / n;

  std::vector<Rational> res;
  res.reserve(points.size());
  for (const Angle& p : points) res.push_back(rat_mod(p.v, q));
  std::sort(res.begin(), res.end());
  res.erase(std::unique(res.begin(), res.end()), res.end());

  const std::size_t m = res.size();
  if (m == 1) return Arc(Angle(res[0]), 0);

  // Largest cyclic gap on the quotient circle of circumference 1/n; the
  // covering arc is its complement, starting at the residue that ends it.
  Rational best_gap(-1);
  Rational best_start;
  for (std::size_t i = 0; i < m; ++i) {
    Rational gap = (i + 1 < m) ? Rational(res[i + 1] - res[i]) : Rational(res[0] + q - res[m - 1]);
    Rational start = res[(i + 1) % m];
    if (gap > best_gap || (gap == best_gap && start < best_start)) {
      best_gap = gap;
      best_start = start;
    }
  }
  return Arc(Angle(best_start), q - best_gap);
}

std::vector<Rational> lifts_into(const Angle& x, const RatInterval& w, unsigned n, Mode mode) {
  if (n == 0) throw std::invalid_argument("lifts_into: n must be positive");
  std::vector<Rational> out;
  if (w.hi < w.lo) return out;
  const Int k_min = rat_ceil((w.lo - x.v) * n);
  const Int k_max = rat_floor((w.hi - x.v) * n);
  for (Int k = k_min; k <= k_max; ++k) {
    Rational lift = x.v + Rational(k) / n;
    if (mode == Mode::open && (lift == w.lo || lift == w.hi)) continue;
    out.push_back(lift);
  }
  return out;
}

std::optional<Rational> lift_into(const Angle& x, const RatInterval& window, unsigned n) {
  if (window.length() * n >= 1)
    throw std::invalid_argument("lift_into: window must be shorter than 1/n");
  auto ls = lifts_into(x, window, n, Mode::closed);
  if (ls.empty()) return std::nullopt;
  return ls.front();
}

std::optional<Rational> lift_into(const Angle& x, const Arc& window, unsigned n) {
  return lift_into(x, interval_of_arc(window), n);
}

std::optional<RatInterval> relift_into(const Arc& a, unsigned n, const RatInterval& open_target) {
  for (unsigned k = 0; k < n; ++k) {
    for (int m = -2; m <= 1; ++m) {
      Rational lo = a.inf() + Rational(k) / n + m;
      Rational hi = lo + a.length;
      if (open_target.lo < lo && hi < open_target.hi) return RatInterval(lo, hi);
    }
  }
  return std::nullopt;
}

}  // namespace titch
