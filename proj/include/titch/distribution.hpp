#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "titch/circle.hpp"
#include "titch/cyclotomic.hpp"

namespace titch {

struct TermKey {
  Angle loc;
  unsigned order = 0;  // derivative order of the delta

  friend bool operator<(const TermKey& a, const TermKey& b) {
    if (a.loc.v != b.loc.v) return a.loc.v < b.loc.v;
    return a.order < b.order;
  }
  friend bool operator==(const TermKey& a, const TermKey& b) {
    return a.loc == b.loc && a.order == b.order;
  }
};

// Finite sum of derivatives of point masses on the circle, with
// coefficients in a common Q(zeta_N). Canonical sparse form: no stored
// zero coefficients, all coefficients promoted to field_order().
class Distribution {
 public:
  Distribution() = default;
  explicit Distribution(unsigned field_order) : field_order_(field_order) {}

  static Distribution delta(const Angle& at, const CycloNumber& coeff = CycloNumber::one(),
                            unsigned deriv_order = 0);

  unsigned field_order() const { return field_order_; }
  const std::map<TermKey, CycloNumber>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  void add_term(const Angle& at, unsigned order, const CycloNumber& coeff);
  Distribution promoted(unsigned M) const;

  std::vector<Angle> support() const;
  bool has_support_at(const Angle& x) const;
  CycloNumber coeff_at(const Angle& x, unsigned order) const;
  unsigned max_order() const;

  // (S_y f)(w) = f(w - y): every location moves by +y mod 1.
  Distribution shifted(const Angle& y) const;
  // f#(w) = f(-w): term (x, p, c) -> (-x, p, (-1)^p c).
  Distribution reflected() const;
  // The conjugated variant f#(w) = conj(f(-w)).
  Distribution conj_reflected() const;
  // Keeps exactly the terms whose location lies in the window.
  Distribution restricted(const Arc& w, Mode mode) const;
  Distribution restricted(const RatInterval& w, Mode mode) const;
  // Sum over k in Z_n of alpha^k S_{k/n} f; requires alpha^n = 1.
  Distribution symmetrized(unsigned n, const CycloNumber& alpha) const;
  // f_j = (S_{j/n} f)|_I for j in Z_n; requires supp f inside R_n(i) and |i| < 1/n.
  std::vector<Distribution> split_components(const Arc& i, unsigned n) const;
  // Exact f^(m) = sum over terms of c * (i m)^p * zeta^(-m x), in
  // Q(zeta_W) with W = lcm(field order, 4, location denominators).
  CycloNumber fourier_coeff(long long m) const;

  Distribution operator-() const;
  friend Distribution operator+(const Distribution& a, const Distribution& b);
  friend Distribution operator-(const Distribution& a, const Distribution& b);
  friend Distribution operator*(const CycloNumber& c, const Distribution& f);
  friend bool operator==(const Distribution& a, const Distribution& b);
  friend bool operator!=(const Distribution& a, const Distribution& b) { return !(a == b); }

 private:
  unsigned field_order_ = 1;
  std::map<TermKey, CycloNumber> terms_;
};

Distribution convolve(const Distribution& f, const Distribution& g);
// f convolved with itself p times (p >= 1), by repeated squaring.
Distribution convolve_power(const Distribution& f, unsigned p);

// Minimum (resp. maximum) over the mod-1/n lifts, into the open window, of
// the support of the restriction of f to the window. nullopt is the
// +infinity (resp. -infinity) marker: the restriction vanishes.
std::optional<Rational> inf_supp_within(const Distribution& f, const RatInterval& open_window,
                                        unsigned n);
std::optional<Rational> sup_supp_within(const Distribution& f, const RatInterval& open_window,
                                        unsigned n);

// (f + S_{1/2} f, g - S_{1/2} g); the convolution of the two is exactly zero.
std::pair<Distribution, Distribution> make_zero_divisors(const Distribution& f,
                                                         const Distribution& g);

// lcm(field orders, 4, n, all location denominators): one field that houses
// every coefficient and every Fourier value of an analysis.
unsigned analysis_field_order(const std::vector<const Distribution*>& ds, unsigned n);

}  // namespace titch
