#pragma once

#include <optional>
#include <string>
#include <vector>

#include "titch/distribution.hpp"

namespace titch {

// One window/vanishing fact from the certificate equations, re-verified
// before a report is returned.
struct Certificate {
  std::string id;      // "5a", "5b", "6a", "6b", "7a", "7b", "8a", "8b"
  RatInterval window;  // open window on the cover
  std::string claim;
  bool verified = false;
};

// Outcome of the pair analysis. I, J are the canonical hull lifts (start
// in [0, 1/n)); K is the smallest closed interval inside I+J whose
// rotation orbit covers supp(f*g). K, lambda, rho are absent exactly when
// f*g = 0 (the annihilation case is a distinct state, not lambda = inf).
struct PairReport {
  unsigned n = 0;
  RatInterval I, J;
  bool annihilated = false;
  std::optional<RatInterval> K;
  std::optional<Rational> lambda, rho;
  std::optional<Rational> lambda_used;  // user-supplied lambda, when given
  std::optional<CycloNumber> alpha, beta;          // present iff lambda > 0
  std::optional<CycloNumber> alpha_sup, beta_sup;  // present iff rho > 0
  std::vector<Certificate> certificates;
};

// mu + S_{1/2} mu + nu - S_{1/2} nu reconstructs the analyzed f exactly;
// mu and nu are each supported at one point.
struct Decomposition {
  Distribution mu, nu;
  int alpha_case = 1;  // which proof case produced the windows; +1 preferred
  bool point_case = false;
};

struct ReflectionOutcome {
  bool applicable = false;    // supp(f * f#) inside {0, 1/2} or not
  RatInterval I;              // hull lift inside (-1/4, 1/4)
  Distribution product;       // f * f#
  std::optional<Decomposition> decomposition;
};

struct PowerReport {
  unsigned n = 0, p = 0;
  RatInterval I, pI, K;  // analyze_power throws unless K == pI
};

struct CorollaryN2Verdict {
  bool annihilated = false;
  bool lambda_positive = false;            // left side
  bool symmetry_exists = false;            // right side
  std::optional<int> alpha_sign;           // the witness, when the right side holds
  bool conv_vanishing_verified = false;    // the proof computation, on the
                                           // Z_2-saturated window
  bool agree = false;
  PairReport pair;
};

// Shortest closed arc I with supp f inside R_n(I); rejects f = 0.
Arc minimal_hull(const Distribution& f, unsigned n);

// Lemma selector: the root of unity alpha = zeta_n^m with
// inf supp sum_j alpha^j f_j = min_j inf supp f_j, found by enumerating the
// n candidates; existence is the Vandermonde nonvanishing. Components must
// be supported inside the window arc.
CycloNumber lemma_alpha(const std::vector<Distribution>& components, unsigned n,
                        const Arc& window);
CycloNumber lemma_alpha(const std::vector<Distribution>& components, unsigned n);

PairReport analyze_pair(const Distribution& f, const Distribution& g, unsigned n,
                        std::optional<Rational> user_lambda = std::nullopt);

CorollaryN2Verdict check_corollary_n2(const Distribution& f, const Distribution& g);

ReflectionOutcome analyze_reflection(const Distribution& f, bool conjugated = false);

PowerReport analyze_power(const Distribution& f, unsigned n, unsigned p);

}  // namespace titch
