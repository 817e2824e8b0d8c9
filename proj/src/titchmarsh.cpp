#include "titch/titchmarsh.hpp"

#include <algorithm>
#include <stdexcept>

#include "titch/errors.hpp"

namespace titch {

Arc minimal_hull(const Distribution& f, unsigned n) {
  if (f.is_zero()) throw HypothesisViolation("minimal_hull: the zero distribution has no hull");
  return minimal_covering_arc(f.support(), n);
}

CycloNumber lemma_alpha(const std::vector<Distribution>& components, unsigned n,
                        const Arc& window) {
  if (n == 0 || components.size() != n)
    throw std::invalid_argument("lemma_alpha: expected exactly n components");
  const RatInterval w = interval_of_arc(window);

  std::optional<Rational> bottom;
  for (const Distribution& c : components) {
    for (const Angle& x : c.support()) {
      auto lifts = lifts_into(x, w, 1, Mode::closed);
      if (lifts.empty())
        throw HypothesisViolation("lemma_alpha: component support lies outside the window arc");
      if (!bottom || lifts.front() < *bottom) bottom = lifts.front();
    }
  }
  if (!bottom) throw HypothesisViolation("lemma_alpha: all components vanish");

  const Angle loc(*bottom);
  unsigned max_order = 0;
  for (const Distribution& c : components)
    for (const auto& [key, coeff] : c.terms())
      if (key.loc == loc) max_order = std::max(max_order, key.order);

  for (unsigned m = 0; m < n; ++m) {
    const CycloNumber alpha = CycloNumber::root_of_unity(m, n);
    for (unsigned p = 0; p <= max_order; ++p) {
      CycloNumber sum = CycloNumber::zero(alpha.order());
      CycloNumber weight = CycloNumber::one();
      for (unsigned j = 0; j < n; ++j) {
        sum += weight * components[j].coeff_at(loc, p);
        weight *= alpha;
      }
      if (!sum.is_zero()) return alpha;
    }
  }
  throw TheoremViolation(
      "lemma_alpha: every root of unity cancels the bottom atom, contradicting the Vandermonde "
      "nonvanishing");
}

CycloNumber lemma_alpha(const std::vector<Distribution>& components, unsigned n) {
  std::vector<Angle> pts;
  for (const Distribution& c : components)
    for (const Angle& x : c.support()) pts.push_back(x);
  if (pts.empty()) throw HypothesisViolation("lemma_alpha: all components vanish");
  return lemma_alpha(components, n, minimal_covering_arc(pts, 1));
}

namespace {

bool vanishes_on(const Distribution& d, const RatInterval& w) {
  return d.restricted(w, Mode::open).is_zero();
}

bool inf_equals(const Distribution& d, const RatInterval& w, unsigned n, const Rational& expect) {
  auto v = inf_supp_within(d, w, n);
  return v.has_value() && *v == expect;
}

bool sup_equals(const Distribution& d, const RatInterval& w, unsigned n, const Rational& expect) {
  auto v = sup_supp_within(d, w, n);
  return v.has_value() && *v == expect;
}

}  // namespace

PairReport analyze_pair(const Distribution& f, const Distribution& g, unsigned n,
                        std::optional<Rational> user_lambda) {
  if (n == 0) throw std::invalid_argument("analyze_pair: n must be positive");
  if (f.is_zero() || g.is_zero())
    throw HypothesisViolation("analyze_pair: both distributions must be nonzero");

  const Arc hull_i = minimal_hull(f, n);
  const Arc hull_j = minimal_hull(g, n);
  PairReport rep;
  rep.n = n;
  rep.I = interval_of_arc(hull_i);
  rep.J = interval_of_arc(hull_j);

  const Rational width = hull_i.length + hull_j.length;
  if (width * n >= 1)
    throw HypothesisViolation("analyze_pair: smallness bound violated, |I| + |J| = " +
                              rat_str(width) + " >= 1/" + std::to_string(n));

  const Distribution h = convolve(f, g);
  if (h.is_zero()) {
    rep.annihilated = true;
    return rep;
  }

  const RatInterval ij{rep.I.lo + rep.J.lo, rep.I.hi + rep.J.hi};
  std::optional<Rational> k_lo, k_hi;
  for (const Angle& x : h.support()) {
    auto lift = lift_into(x, ij, n);
    if (!lift)
      throw TheoremViolation("analyze_pair: support point " + rat_str(x.v) +
                             " of f*g does not lift into I+J");
    if (!k_lo || *lift < *k_lo) k_lo = lift;
    if (!k_hi || *lift > *k_hi) k_hi = lift;
  }
  rep.K = RatInterval{*k_lo, *k_hi};
  rep.lambda = *k_lo - ij.lo;
  rep.rho = ij.hi - *k_hi;
  if (*rep.lambda < 0 || *rep.rho < 0 ||
      *rep.lambda + *rep.rho != rep.I.length() + rep.J.length() - rep.K->length())
    throw TheoremViolation("analyze_pair: deficit bookkeeping violated");

  Rational lam = *rep.lambda;
  if (user_lambda) {
    if (*user_lambda < 0 || *user_lambda > lam)
      throw HypothesisViolation("analyze_pair: requested lambda " + rat_str(*user_lambda) +
                                " exceeds the maximal lambda " + rat_str(lam));
    lam = *user_lambda;
    rep.lambda_used = lam;
  }

  const Rational inv_n = Rational(1) / n;

  if (lam > 0) {
    const RatInterval wi{rep.I.hi - inv_n, rep.I.lo + lam};
    const RatInterval wj{rep.J.hi - inv_n, rep.J.lo + lam};
    for (unsigned m = 0; m < n && !rep.alpha; ++m) {
      const CycloNumber cand = CycloNumber::root_of_unity(m, n);
      if (vanishes_on(f.symmetrized(n, cand), wi) &&
          inf_equals(g.symmetrized(n, cand), wj, n, rep.J.lo))
        rep.alpha = cand;
    }
    for (unsigned m = 0; m < n && !rep.beta; ++m) {
      const CycloNumber cand = CycloNumber::root_of_unity(m, n);
      if (inf_equals(f.symmetrized(n, cand), wi, n, rep.I.lo) &&
          vanishes_on(g.symmetrized(n, cand), wj))
        rep.beta = cand;
    }
    if (!rep.alpha || !rep.beta)
      throw TheoremViolation("analyze_pair: lambda > 0 but no certificate root exists");
    if (*rep.alpha == *rep.beta)
      throw TheoremViolation("analyze_pair: alpha == beta, contradicting the comparison remark");

    rep.certificates.push_back({"5a", wi, "sum_k alpha^k S_{k/n} f vanishes on the window",
                                vanishes_on(f.symmetrized(n, *rep.alpha), wi)});
    rep.certificates.push_back({"5b", wj, "inf supp of sum_k alpha^k S_{k/n} g on the window is inf J",
                                inf_equals(g.symmetrized(n, *rep.alpha), wj, n, rep.J.lo)});
    rep.certificates.push_back({"6a", wi, "inf supp of sum_k beta^k S_{k/n} f on the window is inf I",
                                inf_equals(f.symmetrized(n, *rep.beta), wi, n, rep.I.lo)});
    rep.certificates.push_back({"6b", wj, "sum_k beta^k S_{k/n} g vanishes on the window",
                                vanishes_on(g.symmetrized(n, *rep.beta), wj)});
  }

  if (*rep.rho > 0) {
    const Rational rho = *rep.rho;
    const RatInterval vi{rep.I.hi - rho, rep.I.lo + inv_n};
    const RatInterval vj{rep.J.hi - rho, rep.J.lo + inv_n};
    for (unsigned m = 0; m < n && !rep.alpha_sup; ++m) {
      const CycloNumber cand = CycloNumber::root_of_unity(m, n);
      if (vanishes_on(f.symmetrized(n, cand), vi) &&
          sup_equals(g.symmetrized(n, cand), vj, n, rep.J.hi))
        rep.alpha_sup = cand;
    }
    for (unsigned m = 0; m < n && !rep.beta_sup; ++m) {
      const CycloNumber cand = CycloNumber::root_of_unity(m, n);
      if (sup_equals(f.symmetrized(n, cand), vi, n, rep.I.hi) &&
          vanishes_on(g.symmetrized(n, cand), vj))
        rep.beta_sup = cand;
    }
    if (!rep.alpha_sup || !rep.beta_sup)
      throw TheoremViolation("analyze_pair: rho > 0 but no certificate root exists");
    if (*rep.alpha_sup == *rep.beta_sup)
      throw TheoremViolation("analyze_pair: sup-side alpha == beta");

    rep.certificates.push_back({"7a", vi, "sum_k alpha^k S_{k/n} f vanishes on the window",
                                vanishes_on(f.symmetrized(n, *rep.alpha_sup), vi)});
    rep.certificates.push_back({"7b", vj, "sup supp of sum_k alpha^k S_{k/n} g on the window is sup J",
                                sup_equals(g.symmetrized(n, *rep.alpha_sup), vj, n, rep.J.hi)});
    rep.certificates.push_back({"8a", vi, "sup supp of sum_k beta^k S_{k/n} f on the window is sup I",
                                sup_equals(f.symmetrized(n, *rep.beta_sup), vi, n, rep.I.hi)});
    rep.certificates.push_back({"8b", vj, "sum_k beta^k S_{k/n} g vanishes on the window",
                                vanishes_on(g.symmetrized(n, *rep.beta_sup), vj)});
  }

  for (const Certificate& c : rep.certificates)
    if (!c.verified)
      throw TheoremViolation("analyze_pair: certificate " + c.id + " failed re-verification");
  return rep;
}

CorollaryN2Verdict check_corollary_n2(const Distribution& f, const Distribution& g) {
  CorollaryN2Verdict v;
  v.pair = analyze_pair(f, g, 2);
  if (v.pair.annihilated) {
    v.annihilated = true;
    v.agree = true;  // the equivalence is vacuous; flagged, never lambda = 0
    return v;
  }
  const Rational lam = *v.pair.lambda;
  v.lambda_positive = lam > 0;

  const Angle half(Rational(1) / 2);
  const Rational a = v.pair.I.lo, A = v.pair.I.hi;
  const Rational b = v.pair.J.lo, B = v.pair.J.hi;
  for (int s : {+1, -1}) {
    const CycloNumber cs{Rational(s)};
    const Distribution fs = f + cs * f.shifted(half);
    const Distribution gs = g - cs * g.shifted(half);
    bool ok;
    if (lam > 0) {
      ok = vanishes_on(fs, {A - Rational(1, 2), a + lam}) &&
           vanishes_on(gs, {B - Rational(1, 2), b + lam});
    } else {
      // "for some lambda' > 0" collapses, for atomic supports, to the
      // half-open windows (sup - 1/2, inf].
      ok = vanishes_on(fs, {A - Rational(1, 2), a}) && !fs.has_support_at(Angle(a)) &&
           vanishes_on(gs, {B - Rational(1, 2), b}) && !gs.has_support_at(Angle(b));
    }
    if (ok) {
      v.symmetry_exists = true;
      v.alpha_sign = s;
      break;
    }
  }

  if (v.symmetry_exists && lam > 0) {
    // The proof's direct computation, on the Z_2-saturated window: f*g
    // vanishes on both rotates of (sup I + sup J - 1/2, inf I + inf J + lambda).
    const Distribution h = convolve(f, g);
    const RatInterval w0{A + B - Rational(1, 2), a + b + lam};
    const RatInterval w1{w0.lo + Rational(1, 2), w0.hi + Rational(1, 2)};
    v.conv_vanishing_verified = vanishes_on(h, w0) && vanishes_on(h, w1);
  }

  v.agree = v.lambda_positive == v.symmetry_exists;
  return v;
}

ReflectionOutcome analyze_reflection(const Distribution& f, bool conjugated) {
  if (f.is_zero()) throw HypothesisViolation("analyze_reflection: distribution must be nonzero");
  const Arc hull = minimal_hull(f, 2);
  const Rational quarter(1, 4);
  if (hull.length >= quarter)
    throw HypothesisViolation("analyze_reflection: |I| = " + rat_str(hull.length) + " >= 1/4");
  auto lift = relift_into(hull, 2, RatInterval{-quarter, quarter});
  if (!lift)
    throw HypothesisViolation("analyze_reflection: no lift of the hull fits inside (-1/4, 1/4)");

  ReflectionOutcome out;
  out.I = *lift;
  const Distribution f_sharp = conjugated ? f.conj_reflected() : f.reflected();
  out.product = convolve(f, f_sharp);

  const Angle zero;
  const Angle half(Rational(1) / 2);
  for (const Angle& x : out.product.support())
    if (!(x == zero) && !(x == half)) return out;  // not applicable
  out.applicable = true;

  const Rational a = out.I.lo, A = out.I.hi;
  const std::vector<Angle> allowed{Angle(a), Angle(A), Angle(a + Rational(1, 2)),
                                   Angle(A + Rational(1, 2))};
  for (const Angle& x : f.support())
    if (std::find(allowed.begin(), allowed.end(), x) == allowed.end())
      throw TheoremViolation("analyze_reflection: support point " + rat_str(x.v) +
                             " escapes the four-point conclusion");

  Decomposition dec;
  const CycloNumber one_half(Rational(1, 2));
  if (a == A) {
    dec.point_case = true;
    const RatInterval pt{a, a};
    dec.mu = (one_half * (f + f.shifted(half))).restricted(pt, Mode::closed);
    dec.nu = (one_half * (f - f.shifted(half))).restricted(pt, Mode::closed);
  } else {
    const RatInterval upper{a, quarter};   // open (inf I, 1/4)
    const RatInterval lower{-quarter, A};  // open (-1/4, sup I)
    bool done = false;
    for (int acase : {+1, -1}) {
      dec.alpha_case = acase;
      dec.mu = f.restricted(acase == 1 ? upper : lower, Mode::open);
      dec.nu = f.restricted(acase == 1 ? lower : upper, Mode::open);
      if (dec.mu + dec.mu.shifted(half) + dec.nu - dec.nu.shifted(half) == f) {
        done = true;
        break;
      }
    }
    if (!done)
      throw TheoremViolation("analyze_reflection: neither proof case reconstructs the input");
  }
  if (dec.mu.support().size() > 1 || dec.nu.support().size() > 1)
    throw TheoremViolation("analyze_reflection: mu or nu is not supported at a single point");
  if (!(dec.mu + dec.mu.shifted(half) + dec.nu - dec.nu.shifted(half) == f))
    throw TheoremViolation("analyze_reflection: decomposition does not reconstruct the input");
  out.decomposition = std::move(dec);
  return out;
}

PowerReport analyze_power(const Distribution& f, unsigned n, unsigned p) {
  if (n == 0 || p == 0) throw std::invalid_argument("analyze_power: n and p must be positive");
  if (f.is_zero()) throw HypothesisViolation("analyze_power: distribution must be nonzero");
  const Arc hull = minimal_hull(f, n);
  if (hull.length * p * n >= 1)
    throw HypothesisViolation("analyze_power: |I| = " + rat_str(hull.length) + " >= 1/(p n) = 1/" +
                              std::to_string(p * n));

  PowerReport rep;
  rep.n = n;
  rep.p = p;
  rep.I = interval_of_arc(hull);
  rep.pI = RatInterval{rep.I.lo * p, rep.I.hi * p};

  const Distribution h = convolve_power(f, p);
  if (h.is_zero()) throw TheoremViolation("analyze_power: f^{*p} vanished for nonzero f");
  std::optional<Rational> k_lo, k_hi;
  for (const Angle& x : h.support()) {
    auto lift = lift_into(x, rep.pI, n);
    if (!lift)
      throw TheoremViolation("analyze_power: support point " + rat_str(x.v) +
                             " of f^{*p} does not lift into p*I");
    if (!k_lo || *lift < *k_lo) k_lo = lift;
    if (!k_hi || *lift > *k_hi) k_hi = lift;
  }
  rep.K = RatInterval{*k_lo, *k_hi};
  if (!(rep.K == rep.pI))
    throw TheoremViolation("analyze_power: K = [" + rat_str(rep.K.lo) + ", " + rat_str(rep.K.hi) +
                           "] differs from p*I = [" + rat_str(rep.pI.lo) + ", " +
                           rat_str(rep.pI.hi) + "]");
  return rep;
}

}  // namespace titch
