#pragma once

#include <optional>
#include <vector>

#include "titch/rational.hpp"

namespace titch {

// Point on the circle R/Z measured in turns (1 turn = 2 pi radians),
// kept reduced into [0, 1). pi corresponds to 1/2, 2 pi/n to 1/n.
struct Angle {
  Rational v;

  Angle() : v(0) {}
  explicit Angle(const Rational& x) : v(mod_one(x)) {}

  friend Angle operator+(const Angle& a, const Angle& b) { return Angle(a.v + b.v); }
  friend Angle operator-(const Angle& a, const Angle& b) { return Angle(a.v - b.v); }
  Angle operator-() const { return Angle(-v); }

  friend bool operator==(const Angle& a, const Angle& b) { return a.v == b.v; }
  friend bool operator!=(const Angle& a, const Angle& b) { return a.v != b.v; }
  friend bool operator<(const Angle& a, const Angle& b) { return a.v < b.v; }
};

// Closed arc [start, start + length] on the circle; length 0 is a single
// point. sup() is a lift and may be >= 1 as a rational; membership tests
// reduce mod 1.
struct Arc {
  Angle start;
  Rational length;

  Arc() : length(0) {}
  Arc(const Angle& s, const Rational& len);

  Rational inf() const { return start.v; }
  Rational sup() const { return start.v + length; }

  friend bool operator==(const Arc& a, const Arc& b) {
    return a.start == b.start && a.length == b.length;
  }
};

// Interval [lo, hi] on the universal cover. The analyzers compare support
// positions as real numbers, so they carry explicit lifts around instead
// of reduced angles.
struct RatInterval {
  Rational lo, hi;

  RatInterval() = default;
  RatInterval(const Rational& l, const Rational& h) : lo(l), hi(h) {}

  Rational length() const { return hi - lo; }

  friend bool operator==(const RatInterval& a, const RatInterval& b) {
    return a.lo == b.lo && a.hi == b.hi;
  }
};

enum class Mode { closed, open };

bool arc_contains(const Arc& a, const Angle& x, Mode mode);

// True iff some integer lift of x lies in w (endpoints per mode).
bool interval_contains(const RatInterval& w, const Angle& x, Mode mode);

Arc arc_of_interval(const RatInterval& w);
RatInterval interval_of_arc(const Arc& a);

// Minkowski sum of arcs; throws HypothesisViolation when |i| + |j| >= 1
// (the sum would wrap the full circle).
Arc arc_sum(const Arc& i, const Arc& j);

struct Orbit {
  std::vector<Arc> arcs;  // rotates by k/n, k = 0..n-1
  bool disjoint;          // true iff |arc| < 1/n
};
Orbit rn_orbit(const Arc& i, unsigned n);

// Shortest closed arc I with all points in R_n(I); endpoints are attained
// residues. Canonical representative: start in [0, 1/n); ties in the
// largest quotient gap broken by smallest start.
Arc minimal_covering_arc(const std::vector<Angle>& points, unsigned n);

// All lifts x + k/n (k integer) that land in w, per mode, ascending.
std::vector<Rational> lifts_into(const Angle& x, const RatInterval& w, unsigned n, Mode mode);

// The unique lift of x into the closed window (requires |window| < 1/n),
// or nullopt when no lift fits.
std::optional<Rational> lift_into(const Angle& x, const Arc& window, unsigned n);
std::optional<Rational> lift_into(const Angle& x, const RatInterval& window, unsigned n);

// Translate a by k/n + m so that it fits strictly inside the open target,
// if possible. Used to move hulls into the (-1/4, 1/4) window.
std::optional<RatInterval> relift_into(const Arc& a, unsigned n, const RatInterval& open_target);

}  // namespace titch
