#include "titch/oracle.hpp"

#include <algorithm>
#include <map>
#include <utility>
#include <vector>

namespace titch::oracle {

namespace {

// The oracle works on raw term maps and re-derives everything with plain
// loops; it deliberately shares no hull, restriction, or certificate code
// with the engine.
using RawKey = std::pair<Rational, unsigned>;
using RawMap = std::map<RawKey, CycloNumber>;

RawMap raw_of(const Distribution& d) {
  RawMap m;
  for (const auto& [key, c] : d.terms()) m.emplace(RawKey{key.loc.v, key.order}, c);
  return m;
}

void raw_add(RawMap& m, const Rational& loc, unsigned order, const CycloNumber& c) {
  auto it = m.find(RawKey{loc, order});
  if (it == m.end()) {
    if (!c.is_zero()) m.emplace(RawKey{loc, order}, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) m.erase(it);
}

RawMap raw_convolve(const RawMap& a, const RawMap& b) {
  RawMap out;
  for (const auto& [ka, ca] : a)
    for (const auto& [kb, cb] : b)
      raw_add(out, mod_one(ka.first + kb.first), ka.second + kb.second, ca * cb);
  return out;
}

RawMap raw_shift(const RawMap& a, const Rational& y) {
  RawMap out;
  for (const auto& [k, c] : a) out.emplace(RawKey{mod_one(k.first + y), k.second}, c);
  return out;
}

RawMap raw_reflect(const RawMap& a, bool conjugated) {
  RawMap out;
  for (const auto& [k, c] : a) {
    CycloNumber cc = conjugated ? c.conjugated() : c;
    out.emplace(RawKey{mod_one(-k.first), k.second}, (k.second % 2 == 0) ? cc : -cc);
  }
  return out;
}

RawMap raw_symmetrize(const RawMap& a, unsigned n, const CycloNumber& alpha) {
  RawMap out;
  CycloNumber w = CycloNumber::one();
  for (unsigned k = 0; k < n; ++k) {
    for (const auto& [key, c] : a)
      raw_add(out, mod_one(key.first + Rational(k) / n), key.second, w * c);
    w *= alpha;
  }
  return out;
}

bool raw_equal(const RawMap& a, const RawMap& b) {
  if (a.size() != b.size()) return false;
  for (const auto& [k, c] : a) {
    auto it = b.find(k);
    if (it == b.end() || !(it->second == c)) return false;
  }
  return true;
}

std::vector<Rational> raw_support(const RawMap& a) {
  std::vector<Rational> s;
  for (const auto& [k, c] : a)
    if (s.empty() || s.back() != k.first) s.push_back(k.first);
  return s;
}

bool in_open_window(const Rational& x, const Rational& lo, const Rational& hi) {
  for (int m = -2; m <= 2; ++m) {
    Rational v = x + m;
    if (lo < v && v < hi) return true;
  }
  return false;
}

std::vector<Rational> open_window_lifts(const Rational& x, const Rational& lo, const Rational& hi,
                                        unsigned n) {
  std::vector<Rational> out;
  for (long long k = -2 * static_cast<long long>(n); k <= 2 * static_cast<long long>(n); ++k) {
    Rational v = x + Rational(k) / static_cast<long long>(n);
    if (lo < v && v < hi) out.push_back(v);
  }
  return out;
}

std::vector<Rational> closed_window_lifts(const Rational& x, const Rational& lo, const Rational& hi,
                                          unsigned n) {
  std::vector<Rational> out;
  for (long long k = -2 * static_cast<long long>(n); k <= 2 * static_cast<long long>(n); ++k) {
    Rational v = x + Rational(k) / static_cast<long long>(n);
    if (lo <= v && v <= hi) out.push_back(v);
  }
  return out;
}

// Shortest covering arc, by scanning every candidate start residue.
std::pair<Rational, Rational> brute_hull(const std::vector<Rational>& support, unsigned n) {
  const Rational q = Rational(1) / n;
  std::vector<Rational> res;
  for (const Rational& x : support) res.push_back(rat_mod(x, q));
  std::sort(res.begin(), res.end());
  res.erase(std::unique(res.begin(), res.end()), res.end());
  std::optional<Rational> best_start, best_len;
  for (const Rational& s : res) {
    Rational len(0);
    for (const Rational& r : res) len = std::max(len, rat_mod(r - s, q));
    if (!best_len || len < *best_len || (len == *best_len && s < *best_start)) {
      best_len = len;
      best_start = s;
    }
  }
  return {*best_start, *best_len};
}

// Vanishing of the raw map on the mod-1 image of the open window.
bool raw_vanishes_on(const RawMap& m, const Rational& lo, const Rational& hi) {
  for (const auto& [k, c] : m)
    if (in_open_window(k.first, lo, hi)) return false;
  return true;
}

std::optional<Rational> raw_inf_within(const RawMap& m, const Rational& lo, const Rational& hi,
                                       unsigned n, bool want_min) {
  std::optional<Rational> best;
  for (const auto& [k, c] : m) {
    if (!in_open_window(k.first, lo, hi)) continue;
    for (const Rational& v : open_window_lifts(k.first, lo, hi, n))
      if (!best || (want_min ? v < *best : v > *best)) best = v;
  }
  return best;
}

OracleVerdict fail(std::string identity, std::string detail) {
  OracleVerdict v;
  v.identity = std::move(identity);
  v.pass = false;
  v.detail = std::move(detail);
  return v;
}

}  // namespace

OracleVerdict check_convolution(const Distribution& f, const Distribution& g, long long m_max) {
  OracleVerdict v;
  v.identity = "convolution";
  v.m_max = m_max;

  const Distribution h = convolve(f, g);
  if (!raw_equal(raw_of(h), raw_convolve(raw_of(f), raw_of(g))))
    return fail("convolution", "engine convolution differs from the naive double loop");

  const bool square = f == g;  // reuse the transform when convolving with itself
  for (long long m = -m_max; m <= m_max; ++m) {
    const CycloNumber fm = f.fourier_coeff(m);
    const CycloNumber gm = square ? fm : g.fourier_coeff(m);
    if (!(h.fourier_coeff(m) == fm * gm)) {
      v.pass = false;
      v.first_failing_mode = m;
      v.detail = "fourier(f*g, m) != fourier(f, m) * fourier(g, m) at m = " + std::to_string(m);
      return v;
    }
  }
  return v;
}

OracleVerdict check_pair(const Distribution& f, const Distribution& g, unsigned n,
                         const PairReport& report) {
  OracleVerdict v;
  v.identity = "pair-support";

  const RawMap rf = raw_of(f), rg = raw_of(g);
  auto [i_start, i_len] = brute_hull(raw_support(rf), n);
  auto [j_start, j_len] = brute_hull(raw_support(rg), n);
  if (report.I.lo != i_start || report.I.hi != i_start + i_len)
    return fail(v.identity, "hull I mismatch");
  if (report.J.lo != j_start || report.J.hi != j_start + j_len)
    return fail(v.identity, "hull J mismatch");

  const RawMap rh = raw_convolve(rf, rg);
  if (rh.empty() != report.annihilated) return fail(v.identity, "annihilation flag mismatch");
  if (rh.empty()) return v;

  const Rational lo = i_start + j_start;
  const Rational hi = lo + i_len + j_len;
  std::optional<Rational> k_lo, k_hi;
  for (const Rational& x : raw_support(rh)) {
    auto lifts = closed_window_lifts(x, lo, hi, n);
    if (lifts.empty()) return fail(v.identity, "support point of f*g has no lift into I+J");
    for (const Rational& l : lifts) {
      if (!k_lo || l < *k_lo) k_lo = l;
      if (!k_hi || l > *k_hi) k_hi = l;
    }
  }
  if (!report.K || report.K->lo != *k_lo || report.K->hi != *k_hi)
    return fail(v.identity, "K mismatch");
  if (!report.lambda || *report.lambda != *k_lo - lo) return fail(v.identity, "lambda mismatch");
  if (!report.rho || *report.rho != hi - *k_hi) return fail(v.identity, "rho mismatch");

  const Rational lam = report.lambda_used ? *report.lambda_used : *report.lambda;
  const Rational inv_n = Rational(1) / n;
  if (lam > 0) {
    if (!report.alpha || !report.beta) return fail(v.identity, "missing certificate roots");
    if (*report.alpha == *report.beta) return fail(v.identity, "alpha == beta");
    const Rational wi_lo = report.I.hi - inv_n, wi_hi = report.I.lo + lam;
    const Rational wj_lo = report.J.hi - inv_n, wj_hi = report.J.lo + lam;
    const RawMap fa = raw_symmetrize(rf, n, *report.alpha);
    const RawMap ga = raw_symmetrize(rg, n, *report.alpha);
    const RawMap fb = raw_symmetrize(rf, n, *report.beta);
    const RawMap gb = raw_symmetrize(rg, n, *report.beta);
    if (!raw_vanishes_on(fa, wi_lo, wi_hi)) return fail(v.identity, "certificate 5a fails");
    auto ia = raw_inf_within(ga, wj_lo, wj_hi, n, true);
    if (!ia || *ia != report.J.lo) return fail(v.identity, "certificate 5b fails");
    auto ib = raw_inf_within(fb, wi_lo, wi_hi, n, true);
    if (!ib || *ib != report.I.lo) return fail(v.identity, "certificate 6a fails");
    if (!raw_vanishes_on(gb, wj_lo, wj_hi)) return fail(v.identity, "certificate 6b fails");
  }
  if (*report.rho > 0) {
    if (!report.alpha_sup || !report.beta_sup)
      return fail(v.identity, "missing sup-side certificate roots");
    if (*report.alpha_sup == *report.beta_sup) return fail(v.identity, "sup-side alpha == beta");
    const Rational rho = *report.rho;
    const Rational vi_lo = report.I.hi - rho, vi_hi = report.I.lo + inv_n;
    const Rational vj_lo = report.J.hi - rho, vj_hi = report.J.lo + inv_n;
    const RawMap fa = raw_symmetrize(rf, n, *report.alpha_sup);
    const RawMap ga = raw_symmetrize(rg, n, *report.alpha_sup);
    const RawMap fb = raw_symmetrize(rf, n, *report.beta_sup);
    const RawMap gb = raw_symmetrize(rg, n, *report.beta_sup);
    if (!raw_vanishes_on(fa, vi_lo, vi_hi)) return fail(v.identity, "certificate 7a fails");
    auto sa = raw_inf_within(ga, vj_lo, vj_hi, n, false);
    if (!sa || *sa != report.J.hi) return fail(v.identity, "certificate 7b fails");
    auto sb = raw_inf_within(fb, vi_lo, vi_hi, n, false);
    if (!sb || *sb != report.I.hi) return fail(v.identity, "certificate 8a fails");
    if (!raw_vanishes_on(gb, vj_lo, vj_hi)) return fail(v.identity, "certificate 8b fails");
  }
  return v;
}

OracleVerdict check_reflection(const Distribution& f, bool conjugated,
                               const ReflectionOutcome& outcome) {
  OracleVerdict v;
  v.identity = "reflection";

  const RawMap rf = raw_of(f);
  const RawMap product = raw_convolve(rf, raw_reflect(rf, conjugated));
  if (!raw_equal(product, raw_of(outcome.product)))
    return fail(v.identity, "f * f# differs from the naive expansion");

  bool applicable = true;
  const Rational half(1, 2);
  for (const Rational& x : raw_support(product))
    if (x != 0 && x != half) applicable = false;
  if (applicable != outcome.applicable) return fail(v.identity, "applicability mismatch");
  if (!applicable) return v;

  if (!outcome.decomposition) return fail(v.identity, "missing decomposition");
  const RawMap mu = raw_of(outcome.decomposition->mu);
  const RawMap nu = raw_of(outcome.decomposition->nu);
  if (raw_support(mu).size() > 1 || raw_support(nu).size() > 1)
    return fail(v.identity, "mu or nu is not a point distribution");

  RawMap rebuilt;
  for (const auto& [k, c] : mu) raw_add(rebuilt, k.first, k.second, c);
  for (const auto& [k, c] : raw_shift(mu, half)) raw_add(rebuilt, k.first, k.second, c);
  for (const auto& [k, c] : nu) raw_add(rebuilt, k.first, k.second, c);
  for (const auto& [k, c] : raw_shift(nu, half)) raw_add(rebuilt, k.first, k.second, -c);
  if (!raw_equal(rebuilt, rf)) return fail(v.identity, "mu + S mu + nu - S nu != f");

  const Rational a = outcome.I.lo, b = outcome.I.hi;
  const std::vector<Rational> allowed{a, b, Rational(a + half), Rational(b + half)};
  for (const Rational& x : raw_support(rf)) {
    bool ok = false;
    for (const Rational& pt : allowed)
      if (x == mod_one(pt)) ok = true;
    if (!ok) return fail(v.identity, "support escapes the four admissible points");
  }
  return v;
}

OracleVerdict check_power(const Distribution& f, unsigned n, unsigned p,
                          const PowerReport& report) {
  OracleVerdict v;
  v.identity = "power";

  const RawMap rf = raw_of(f);
  RawMap rh = rf;
  for (unsigned i = 1; i < p; ++i) rh = raw_convolve(rh, rf);
  if (!raw_equal(rh, raw_of(convolve_power(f, p))))
    return fail(v.identity, "engine power differs from iterated naive convolution");

  auto [start, len] = brute_hull(raw_support(rf), n);
  if (report.I.lo != start || report.I.hi != start + len) return fail(v.identity, "hull mismatch");

  const Rational lo = start * p, hi = (start + len) * p;
  std::optional<Rational> k_lo, k_hi;
  for (const Rational& x : raw_support(rh)) {
    auto lifts = closed_window_lifts(x, lo, hi, n);
    if (lifts.empty()) return fail(v.identity, "support point of f^{*p} has no lift into p*I");
    for (const Rational& l : lifts) {
      if (!k_lo || l < *k_lo) k_lo = l;
      if (!k_hi || l > *k_hi) k_hi = l;
    }
  }
  if (*k_lo != lo || *k_hi != hi) return fail(v.identity, "K != p*I by brute enumeration");
  if (report.K.lo != lo || report.K.hi != hi) return fail(v.identity, "reported K mismatch");
  return v;
}

}  // namespace titch::oracle
