#include "titch/distribution.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string_view>

#include "titch/errors.hpp"

namespace titch {

Distribution Distribution::delta(const Angle& at, const CycloNumber& coeff, unsigned deriv_order) {
  Distribution d(coeff.order());
  d.add_term(at, deriv_order, coeff);
  return d;
}

void Distribution::add_term(const Angle& at, unsigned order, const CycloNumber& coeff) {
  if (coeff.is_zero()) return;
  unsigned M = lcm_u(field_order_, coeff.order());
  if (M != field_order_) {
    for (auto& [k, c] : terms_) c = c.promoted(M);
    field_order_ = M;
  }
  TermKey key{at, order};
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_.emplace(key, coeff.promoted(M));
    return;
  }
  it->second += coeff;
  if (it->second.is_zero()) terms_.erase(it);
}

Distribution Distribution::promoted(unsigned M) const {
  Distribution out(lcm_u(field_order_, M));
  for (const auto& [k, c] : terms_) out.terms_.emplace(k, c.promoted(out.field_order_));
  return out;
}

std::vector<Angle> Distribution::support() const {
  std::vector<Angle> s;
  for (const auto& [k, c] : terms_)
    if (s.empty() || !(s.back() == k.loc)) s.push_back(k.loc);
  return s;
}

bool Distribution::has_support_at(const Angle& x) const {
  auto it = terms_.lower_bound(TermKey{x, 0});
  return it != terms_.end() && it->first.loc == x;
}

CycloNumber Distribution::coeff_at(const Angle& x, unsigned order) const {
  auto it = terms_.find(TermKey{x, order});
  if (it == terms_.end()) return CycloNumber::zero(field_order_);
  return it->second;
}

unsigned Distribution::max_order() const {
  unsigned m = 0;
  for (const auto& [k, c] : terms_) m = std::max(m, k.order);
  return m;
}

Distribution Distribution::shifted(const Angle& y) const {
  Distribution out(field_order_);
  for (const auto& [k, c] : terms_) out.terms_.emplace(TermKey{k.loc + y, k.order}, c);
  return out;
}

Distribution Distribution::reflected() const {
  Distribution out(field_order_);
  for (const auto& [k, c] : terms_)
    out.terms_.emplace(TermKey{-k.loc, k.order}, (k.order % 2 == 0) ? c : -c);
  return out;
}

Distribution Distribution::conj_reflected() const {
  Distribution out(field_order_);
  for (const auto& [k, c] : terms_) {
    CycloNumber cc = c.conjugated();
    out.terms_.emplace(TermKey{-k.loc, k.order}, (k.order % 2 == 0) ? cc : -cc);
  }
  return out;
}

Distribution Distribution::restricted(const Arc& w, Mode mode) const {
  if (w.length >= 1) throw std::invalid_argument("restricted: window length must be < 1");
  return restricted(interval_of_arc(w), mode);
}

Distribution Distribution::restricted(const RatInterval& w, Mode mode) const {
  Distribution out(field_order_);
  for (const auto& [k, c] : terms_)
    if (interval_contains(w, k.loc, mode)) out.terms_.emplace(k, c);
  return out;
}

namespace {

// Debug hook for the mutation smoke test: deliberately flips the sign
// pattern of the symmetrization weights when TITCHMARSH_MUTATION is set.
bool mutate_symmetrize() {
  static const bool on = [] {
    const char* e = std::getenv("TITCHMARSH_MUTATION");
    return e != nullptr && std::string_view(e) == "symmetrize-sign";
  }();
  return on;
}

}  // namespace

Distribution Distribution::symmetrized(unsigned n, const CycloNumber& alpha) const {
  if (n == 0) throw std::invalid_argument("symmetrized: n must be positive");
  if (!(alpha.pow(n) == CycloNumber::one()))
    throw std::invalid_argument("symmetrized: alpha^n != 1");
  Distribution out(lcm_u(field_order_, alpha.order()));
  CycloNumber weight = CycloNumber::one();
  for (unsigned k = 0; k < n; ++k) {
    CycloNumber w = weight;
    if (mutate_symmetrize() && k % 2 == 1) w = -w;
    const Angle y(Rational(k) / n);
    for (const auto& [key, c] : terms_) out.add_term(key.loc + y, key.order, w * c);
    weight *= alpha;
  }
  return out;
}

std::vector<Distribution> Distribution::split_components(const Arc& i, unsigned n) const {
  if (n == 0) throw std::invalid_argument("split_components: n must be positive");
  if (i.length * n >= 1)
    throw HypothesisViolation("split_components: |I| must be < 1/n");
  for (const auto& [key, c] : terms_) {
    bool covered = false;
    for (unsigned k = 0; k < n && !covered; ++k)
      covered = arc_contains(i, key.loc - Angle(Rational(k) / n), Mode::closed);
    if (!covered)
      throw HypothesisViolation("split_components: support point " + rat_str(key.loc.v) +
                                " lies outside R_n(I)");
  }
  std::vector<Distribution> out;
  out.reserve(n);
  for (unsigned j = 0; j < n; ++j)
    out.push_back(shifted(Angle(Rational(j) / n)).restricted(i, Mode::closed));
  return out;
}

CycloNumber Distribution::fourier_coeff(long long m) const {
  unsigned W = lcm_u(field_order_, 4);
  for (const auto& [key, c] : terms_) {
    Int den = denominator(key.loc.v);
    if (den > 1000000) throw std::invalid_argument("fourier_coeff: location denominator too large");
    W = lcm_u(W, static_cast<unsigned>(den));
  }
  CycloAccum acc(W);
  for (const auto& [key, c] : terms_) {
    const Int num = numerator(key.loc.v);
    const Int den = denominator(key.loc.v);
    // exp(-2 pi i m x) = zeta_W^(-m * num * (W/den)); i^p = zeta_4^(p mod 4).
    Int e = (-Int(m) * num * (W / static_cast<unsigned long long>(den))) % W;
    if (e < 0) e += W;
    unsigned long long shift = static_cast<unsigned long long>(e);
    shift = (shift + static_cast<unsigned long long>(key.order % 4) * (W / 4)) % W;
    Rational scale(1);
    if (key.order > 0) {
      if (m == 0) continue;  // (i m)^p vanishes
      Int mp = 1;
      for (unsigned q = 0; q < key.order; ++q) mp *= m;
      scale = Rational(mp);
    }
    acc.add_rotated(c, shift, scale);
  }
  return acc.value();
}

Distribution Distribution::operator-() const {
  Distribution out(field_order_);
  for (const auto& [k, c] : terms_) out.terms_.emplace(k, -c);
  return out;
}

Distribution operator+(const Distribution& a, const Distribution& b) {
  Distribution out = a.promoted(lcm_u(a.field_order_, b.field_order_));
  for (const auto& [k, c] : b.terms_) out.add_term(k.loc, k.order, c);
  return out;
}

Distribution operator-(const Distribution& a, const Distribution& b) { return a + (-b); }

Distribution operator*(const CycloNumber& c, const Distribution& f) {
  Distribution out(lcm_u(c.order(), f.field_order_));
  if (c.is_zero()) return out;
  for (const auto& [k, coeff] : f.terms_) out.add_term(k.loc, k.order, c * coeff);
  return out;
}

bool operator==(const Distribution& a, const Distribution& b) {
  const unsigned M = lcm_u(a.field_order_, b.field_order_);
  const Distribution pa = a.promoted(M), pb = b.promoted(M);
  return pa.terms_ == pb.terms_;
}

Distribution convolve(const Distribution& f, const Distribution& g) {
  Distribution out(lcm_u(f.field_order(), g.field_order()));
  for (const auto& [kf, cf] : f.terms())
    for (const auto& [kg, cg] : g.terms())
      out.add_term(kf.loc + kg.loc, kf.order + kg.order, cf * cg);
  return out;
}

Distribution convolve_power(const Distribution& f, unsigned p) {
  if (p == 0) throw std::invalid_argument("convolve_power: p must be >= 1");
  Distribution base = f;
  Distribution acc;
  bool have = false;
  while (p > 0) {
    if (p & 1u) {
      acc = have ? convolve(acc, base) : base;
      have = true;
    }
    p >>= 1;
    if (p > 0) base = convolve(base, base);
  }
  return acc;
}

namespace {

std::optional<Rational> extremal_supp_within(const Distribution& f, const RatInterval& w,
                                             unsigned n, bool want_min) {
  std::optional<Rational> best;
  for (const auto& [key, c] : f.terms()) {
    if (!interval_contains(w, key.loc, Mode::open)) continue;
    for (const Rational& lift : lifts_into(key.loc, w, n, Mode::open)) {
      if (!best || (want_min ? lift < *best : lift > *best)) best = lift;
    }
  }
  return best;
}

}  // namespace

std::optional<Rational> inf_supp_within(const Distribution& f, const RatInterval& w, unsigned n) {
  return extremal_supp_within(f, w, n, true);
}

std::optional<Rational> sup_supp_within(const Distribution& f, const RatInterval& w, unsigned n) {
  return extremal_supp_within(f, w, n, false);
}

std::pair<Distribution, Distribution> make_zero_divisors(const Distribution& f,
                                                         const Distribution& g) {
  const Angle half(Rational(1) / 2);
  return {f + f.shifted(half), g - g.shifted(half)};
}

unsigned analysis_field_order(const std::vector<const Distribution*>& ds, unsigned n) {
  unsigned W = lcm_u(4, std::max(1u, n));
  for (const Distribution* d : ds) {
    W = lcm_u(W, d->field_order());
    for (const auto& [key, c] : d->terms())
      W = lcm_u(W, static_cast<unsigned>(denominator(key.loc.v)));
  }
  return W;
}

}  // namespace titch
