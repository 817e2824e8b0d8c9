#include "titch/fuzz.hpp"

#include <algorithm>

#include "titch/errors.hpp"

namespace titch::fuzz {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t trial) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1) + 0xBF58476D1CE4E5B9ULL * (trial + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

namespace {

CycloNumber random_coeff(Rng& rng) {
  static const int nums[] = {1, 2, 3, 5};
  static const int dens[] = {1, 2, 3};
  Rational r{Int(nums[rng.below(4)])};
  r /= Rational(Int(dens[rng.below(3)]));
  if (rng.chance(50)) r = -r;
  CycloNumber c(r);
  if (rng.chance(20)) {
    unsigned o = static_cast<unsigned>(2 + rng.below(3));
    c = c * CycloNumber::root_of_unity(static_cast<long long>(rng.below(o)), o);
  }
  return c;
}

unsigned random_order(Rng& rng, const GenConfig& cfg) {
  return static_cast<unsigned>(rng.below(static_cast<std::uint64_t>(cfg.max_order) + 1));
}

Angle grid_angle(unsigned numerator_steps, unsigned d) {
  return Angle(Rational(numerator_steps) / d);
}

}  // namespace

Distribution random_distribution(Rng& rng, const GenConfig& cfg) {
  static const unsigned dens[] = {8, 12, 16, 24, 32, 48, 96};
  if (rng.chance(5)) return Distribution{};
  const unsigned d = dens[rng.below(7)];
  Distribution f;
  const int points = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(cfg.max_points)));
  for (int i = 0; i < points; ++i)
    f.add_term(grid_angle(static_cast<unsigned>(rng.below(d)), d), random_order(rng, cfg),
               random_coeff(rng));
  return f;
}

namespace {

// Grid density per band; coarser for large n keeps the working cyclotomic
// order (lcm of n, 4, and the location denominators) small.
unsigned band_steps(Rng& rng, unsigned n) {
  static const unsigned fine[] = {8, 12, 16};
  static const unsigned coarse[] = {4, 6, 8};
  return n <= 4 ? fine[rng.below(3)] : coarse[rng.below(3)];
}

}  // namespace

std::pair<Distribution, Distribution> random_generic_pair(Rng& rng, unsigned n,
                                                          const GenConfig& cfg) {
  const unsigned m = band_steps(rng, n);
  const unsigned d = n * m;
  const unsigned span = m / 3;  // band width stays below 1/(3n)
  auto make = [&]() {
    Distribution dist;
    const unsigned base = static_cast<unsigned>(rng.below(d));
    const int pts = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(cfg.max_points)));
    for (int i = 0; i < pts; ++i) {
      const unsigned off = static_cast<unsigned>(rng.below(span + 1));
      const unsigned copy = static_cast<unsigned>(rng.below(n));
      Angle loc(Rational(base + off) / d + Rational(copy) / n);
      dist.add_term(loc, random_order(rng, cfg), random_coeff(rng));
    }
    if (dist.is_zero()) dist.add_term(grid_angle(base, d), 0, CycloNumber::one());
    return dist;
  };
  Distribution f = make(), g = make();
  return {std::move(f), std::move(g)};
}

std::pair<Distribution, Distribution> random_symmetry_pair(Rng& rng, unsigned n,
                                                           const GenConfig& cfg) {
  const unsigned m = band_steps(rng, n);
  const unsigned d = n * m;
  const unsigned span = m / 3;
  const CycloNumber alpha = CycloNumber::root_of_unity(static_cast<long long>(rng.below(n)), n);
  const Angle step(Rational(1) / n);

  // f: alpha-annihilated band (v - alpha S_{1/n} v) with the bottom atom
  // pinned at the base, plus optional generic junk strictly above it.
  const unsigned base_f = static_cast<unsigned>(rng.below(d));
  Distribution v;
  v.add_term(grid_angle(base_f, d), random_order(rng, cfg), random_coeff(rng));
  for (std::uint64_t i = rng.below(3); i > 0; --i)
    v.add_term(grid_angle(base_f + 1 + static_cast<unsigned>(rng.below(span)), d),
               random_order(rng, cfg), random_coeff(rng));
  Distribution f = v - alpha * v.shifted(step);
  if (span > 0 && rng.chance(50)) {
    const int cnt = 1 + static_cast<int>(rng.below(2));
    for (int i = 0; i < cnt; ++i) {
      const unsigned off = 1 + static_cast<unsigned>(rng.below(span));
      const unsigned copy = static_cast<unsigned>(rng.below(n));
      f.add_term(Angle(Rational(base_f + off) / d + Rational(copy) / n), random_order(rng, cfg),
                 random_coeff(rng));
    }
  }

  // g: alpha-eigenvector band plus optional junk above the bottom.
  const unsigned base_g = static_cast<unsigned>(rng.below(d));
  Distribution w;
  w.add_term(grid_angle(base_g, d), random_order(rng, cfg), random_coeff(rng));
  for (std::uint64_t i = rng.below(3); i > 0; --i)
    w.add_term(grid_angle(base_g + 1 + static_cast<unsigned>(rng.below(span)), d),
               random_order(rng, cfg), random_coeff(rng));
  Distribution g = w.symmetrized(n, alpha);
  if (span > 0 && rng.chance(40)) {
    const unsigned off = 1 + static_cast<unsigned>(rng.below(span));
    const unsigned copy = static_cast<unsigned>(rng.below(n));
    g.add_term(Angle(Rational(base_g + off) / d + Rational(copy) / n), random_order(rng, cfg),
               random_coeff(rng));
  }
  return {std::move(f), std::move(g)};
}

std::vector<Distribution> random_component_family(Rng& rng, unsigned n, Arc& window_out,
                                                  const GenConfig& cfg) {
  const unsigned m = band_steps(rng, n);
  const unsigned d = n * m;
  const unsigned span = m / 3;
  const unsigned base = static_cast<unsigned>(rng.below(d));
  window_out = Arc(grid_angle(base, d), Rational(span) / d);

  std::vector<Distribution> comps(n);
  for (unsigned j = 0; j < n; ++j)
    for (std::uint64_t t = rng.below(4); t > 0; --t)
      comps[j].add_term(grid_angle(base + static_cast<unsigned>(rng.below(span + 1)), d),
                        random_order(rng, cfg), random_coeff(rng));

  if (rng.chance(50)) {
    // Adversarial bottom: coefficients zeta_n^(-j s) c, which cancel for
    // every candidate alpha except zeta_n^s.
    const long long s = static_cast<long long>(rng.below(n));
    const CycloNumber c0 = random_coeff(rng);
    const unsigned ord = static_cast<unsigned>(rng.below(2));
    for (unsigned j = 0; j < n; ++j)
      comps[j].add_term(grid_angle(base, d), ord,
                        CycloNumber::root_of_unity(-s * static_cast<long long>(j), n) * c0);
  }

  bool any = false;
  for (const Distribution& c : comps) any = any || !c.is_zero();
  if (!any) comps[rng.below(n)].add_term(grid_angle(base, d), 0, CycloNumber::one());
  return comps;
}

std::pair<Distribution, Distribution> random_point_pair(Rng& rng, const GenConfig& cfg) {
  static const unsigned dens[] = {16, 24, 32, 48};
  const unsigned d = dens[rng.below(4)];
  auto location = [&]() {
    const long long radius = static_cast<long long>(d) / 8;
    return Angle(Rational(rng.range(-radius + 1, radius - 1)) / d);
  };
  const Angle u = location(), w = location();
  Distribution mu, nu;
  if (!rng.chance(15))
    for (std::uint64_t t = 1 + rng.below(2); t > 0; --t)
      mu.add_term(u, random_order(rng, cfg), random_coeff(rng));
  if (!rng.chance(15))
    for (std::uint64_t t = 1 + rng.below(2); t > 0; --t)
      nu.add_term(w, random_order(rng, cfg), random_coeff(rng));
  if (mu.is_zero() && nu.is_zero()) mu.add_term(u, 0, CycloNumber::one());
  return {std::move(mu), std::move(nu)};
}

Distribution random_power_instance(Rng& rng, unsigned n, unsigned p, const GenConfig& cfg) {
  const unsigned m = rng.chance(50) ? 4 : 8;
  const unsigned d = n * p * m;
  const unsigned base = static_cast<unsigned>(rng.below(d));
  Distribution f;
  const int pts = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(cfg.max_points)));
  for (int i = 0; i < pts; ++i) {
    const unsigned off = static_cast<unsigned>(rng.below(m));  // width < 1/(p n)
    const unsigned copy = static_cast<unsigned>(rng.below(n));
    f.add_term(Angle(Rational(base + off) / d + Rational(copy) / n), random_order(rng, cfg),
               random_coeff(rng));
  }
  if (f.is_zero()) f.add_term(grid_angle(base, d), 0, CycloNumber::one());
  return f;
}

// ---------------------------------------------------------------------------
// Verification.

namespace {

std::optional<Rational> min_lift_in_arc(const Distribution& f, const RatInterval& w) {
  std::optional<Rational> best;
  for (const Angle& x : f.support())
    for (const Rational& l : lifts_into(x, w, 1, Mode::closed))
      if (!best || l < *best) best = l;
  return best;
}

std::optional<std::string> verify_zero_divisor(const Instance& inst, long long m_max) {
  const Distribution f = inst.f.value_or(Distribution{});
  const Distribution g = inst.g.value_or(Distribution{});
  auto [zf, zg] = make_zero_divisors(f, g);
  if (!convolve(zf, zg).is_zero()) return "zero-divisor convolution is not the zero distribution";
  auto v = oracle::check_convolution(zf, zg, m_max);
  if (!v.pass) return "oracle: " + v.detail;
  return std::nullopt;
}

std::optional<std::string> verify_lemma(const Instance& inst) {
  if (!inst.f || !inst.n || inst.f->is_zero()) return std::nullopt;
  const unsigned n = *inst.n;
  const Arc hull = minimal_hull(*inst.f, n);
  if (hull.length * n >= 1) return std::nullopt;
  const std::vector<Distribution> comps = inst.f->split_components(hull, n);
  const CycloNumber alpha = lemma_alpha(comps, n, hull);

  Distribution sum;
  CycloNumber weight = CycloNumber::one();
  for (unsigned j = 0; j < n; ++j) {
    sum = sum + weight * comps[j];
    weight *= alpha;
  }
  const RatInterval w = interval_of_arc(hull);
  std::optional<Rational> expected;
  for (const Distribution& c : comps) {
    auto b = min_lift_in_arc(c, w);
    if (b && (!expected || *b < *expected)) expected = b;
  }
  auto got = min_lift_in_arc(sum, w);
  if (!expected) return "lemma instance has no support";
  if (!got) return "selector produced the zero combination";
  if (*got != *expected) return "lemma selector postcondition violated";
  return std::nullopt;
}

std::optional<std::string> verify_pair(const Instance& inst, long long m_max, bool seeded) {
  if (!inst.f || !inst.g || !inst.n) return std::nullopt;
  if (inst.f->is_zero() || inst.g->is_zero()) return std::nullopt;
  const PairReport rep = analyze_pair(*inst.f, *inst.g, *inst.n);
  for (const Certificate& c : rep.certificates)
    if (!c.verified) return "certificate " + c.id + " unverified";
  auto v1 = oracle::check_pair(*inst.f, *inst.g, *inst.n, rep);
  if (!v1.pass) return "oracle: " + v1.detail;
  auto v2 = oracle::check_convolution(*inst.f, *inst.g, m_max);
  if (!v2.pass) return "oracle: " + v2.detail;
  if (seeded && !rep.annihilated && *rep.lambda == 0)
    return "symmetry-seeded pair reported lambda = 0";
  return std::nullopt;
}

std::optional<std::string> verify_corollary(const Instance& inst, long long m_max) {
  if (!inst.f || !inst.g) return std::nullopt;
  if (inst.f->is_zero() || inst.g->is_zero()) return std::nullopt;
  const CorollaryN2Verdict v = check_corollary_n2(*inst.f, *inst.g);
  if (convolve(*inst.f, *inst.g).is_zero() != v.annihilated) return "annihilation case misflagged";
  if (!v.agree) return "corollary equivalence sides disagree";
  if (!v.annihilated && v.lambda_positive && v.symmetry_exists && !v.conv_vanishing_verified)
    return "corollary proof computation failed on the saturated window";
  auto v1 = oracle::check_pair(*inst.f, *inst.g, 2, v.pair);
  if (!v1.pass) return "oracle: " + v1.detail;
  auto v2 = oracle::check_convolution(*inst.f, *inst.g, m_max);
  if (!v2.pass) return "oracle: " + v2.detail;
  return std::nullopt;
}

std::optional<std::string> verify_reflection(const Instance& inst) {
  if (!inst.f || inst.f->is_zero()) return std::nullopt;
  const ReflectionOutcome out = analyze_reflection(*inst.f);
  if (!out.applicable) return "assembled reflection instance reported not-applicable";
  auto v = oracle::check_reflection(*inst.f, false, out);
  if (!v.pass) return "oracle: " + v.detail;
  return std::nullopt;
}

std::optional<std::string> verify_power(const Instance& inst) {
  if (!inst.f || !inst.n || !inst.p || inst.f->is_zero()) return std::nullopt;
  const PowerReport rep = analyze_power(*inst.f, *inst.n, *inst.p);
  auto v = oracle::check_power(*inst.f, *inst.n, *inst.p, rep);
  if (!v.pass) return "oracle: " + v.detail;
  return std::nullopt;
}

}  // namespace

std::optional<std::string> verify_instance(const std::string& suite, const Instance& inst,
                                           long long m_max) {
  try {
    if (suite == "zero-divisor") return verify_zero_divisor(inst, m_max);
    if (suite == "lemma") return verify_lemma(inst);
    if (suite == "pair" || suite == "pair-generic") return verify_pair(inst, m_max, false);
    if (suite == "pair-seeded") return verify_pair(inst, m_max, true);
    if (suite == "corollary") return verify_corollary(inst, m_max);
    if (suite == "reflection") return verify_reflection(inst);
    if (suite == "power") return verify_power(inst);
    return "unknown suite \"" + suite + "\"";
  } catch (const HypothesisViolation&) {
    return std::nullopt;  // instance drifted out of the theorem's scope
  } catch (const std::exception& e) {
    return std::string("exception: ") + e.what();
  }
}

json shrink_instance(const std::string& suite, json instance, long long m_max) {
  auto failure = [&](const json& j) -> std::optional<std::string> {
    try {
      return verify_instance(suite, instance_from_json(j, 64), m_max);
    } catch (...) {
      return std::nullopt;
    }
  };
  const auto original = failure(instance);
  if (!original) return instance;

  bool progress = true;
  while (progress) {
    progress = false;
    for (const char* key : {"f", "g"}) {
      if (!instance.contains(key)) continue;
      const std::size_t count = instance[key]["terms"].size();
      for (std::size_t i = 0; i < count && !progress; ++i) {
        json cand = instance;
        cand[key]["terms"].erase(i);
        if (failure(cand) == original) {
          instance = std::move(cand);
          progress = true;
        }
      }
      for (std::size_t i = 0; i < instance[key]["terms"].size() && !progress; ++i) {
        json& term = instance[key]["terms"][i];
        if (term["coeff"] != "1") {
          json cand = instance;
          cand[key]["terms"][i]["coeff"] = "1";
          if (failure(cand) == original) {
            instance = std::move(cand);
            progress = true;
          }
        }
        if (!progress && term["order"] != 0) {
          json cand = instance;
          cand[key]["terms"][i]["order"] = 0;
          if (failure(cand) == original) {
            instance = std::move(cand);
            progress = true;
          }
        }
      }
      if (progress) break;
    }
  }
  return instance;
}

// ---------------------------------------------------------------------------
// Suites.

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"zero-divisor", "lemma",      "pair",
                                                 "corollary",    "reflection", "power"};
  return names;
}

namespace {

struct TrialCase {
  std::string tag;  // the verify dispatch key, recorded in counterexamples
  Instance inst;
};

TrialCase generate_trial(const std::string& suite, Rng& rng, unsigned n, const FuzzConfig& cfg) {
  TrialCase t;
  t.tag = suite;
  if (suite == "zero-divisor") {
    t.inst.f = random_distribution(rng, cfg.gen);
    t.inst.g = random_distribution(rng, cfg.gen);
  } else if (suite == "lemma") {
    Arc window;
    const std::vector<Distribution> comps = random_component_family(rng, n, window, cfg.gen);
    Distribution folded;
    for (unsigned j = 0; j < n; ++j)
      folded = folded + comps[j].shifted(Angle(-Rational(j) / n));
    t.inst.f = folded;
    t.inst.n = n;
  } else if (suite == "pair") {
    const bool seeded = rng.chance(static_cast<unsigned>(cfg.mix_percent));
    t.tag = seeded ? "pair-seeded" : "pair-generic";
    auto [f, g] = seeded ? random_symmetry_pair(rng, n, cfg.gen)
                         : random_generic_pair(rng, n, cfg.gen);
    t.inst.f = std::move(f);
    t.inst.g = std::move(g);
    t.inst.n = n;
  } else if (suite == "corollary") {
    const bool seeded = rng.chance(static_cast<unsigned>(cfg.mix_percent));
    auto [f, g] = seeded ? random_symmetry_pair(rng, 2, cfg.gen)
                         : random_generic_pair(rng, 2, cfg.gen);
    t.inst.f = std::move(f);
    t.inst.g = std::move(g);
    t.inst.n = 2;
  } else if (suite == "reflection") {
    auto [mu, nu] = random_point_pair(rng, cfg.gen);
    const Angle half(Rational(1) / 2);
    t.inst.f = mu + mu.shifted(half) + nu - nu.shifted(half);
    t.inst.mode = "reflection";
  } else if (suite == "power") {
    const unsigned p = 2 + static_cast<unsigned>(rng.below(3));
    t.inst.f = random_power_instance(rng, n, p, cfg.gen);
    t.inst.n = n;
    t.inst.p = p;
    t.inst.mode = "power";
  }
  return t;
}

bool suite_uses_n(const std::string& suite) {
  return suite == "lemma" || suite == "pair" || suite == "power";
}

}  // namespace

FuzzOutcome run_suite(const std::string& suite, const FuzzConfig& cfg) {
  FuzzOutcome out;
  const auto& names = suite_names();
  const std::uint64_t suite_idx = static_cast<std::uint64_t>(
      std::find(names.begin(), names.end(), suite) - names.begin());
  std::vector<unsigned> ns = suite_uses_n(suite) ? cfg.ns : std::vector<unsigned>{0};

  for (unsigned n : ns) {
    int violations_here = 0;
    for (int trial = 0; trial < cfg.count; ++trial) {
      Rng rng(mix_seed(cfg.seed, suite_idx * 8 + n, static_cast<std::uint64_t>(trial)));
      TrialCase t = generate_trial(suite, rng, n, cfg);
      ++out.trials;
      auto err = verify_instance(t.tag, t.inst, cfg.m_max);
      if (!err) continue;
      ++out.violations;
      ++violations_here;
      out.log += "suite " + suite + (n ? " (n=" + std::to_string(n) + ")" : "") + " trial " +
                 std::to_string(trial) + ": " + *err + "\n";
      if (!out.counterexample) {
        json j = instance_to_json(t.inst);
        j["suite"] = t.tag;
        out.counterexample = shrink_instance(t.tag, std::move(j), cfg.m_max);
      }
      break;  // one counterexample per (suite, n) stream is enough
    }
    out.log += "suite " + suite + (n ? " (n=" + std::to_string(n) + ")" : "") +
               ": trials=" + std::to_string(cfg.count) +
               " violations=" + std::to_string(violations_here) + "\n";
  }
  return out;
}

FuzzOutcome run_all(const FuzzConfig& cfg) {
  FuzzOutcome out;
  for (const std::string& suite : suite_names()) {
    FuzzOutcome one = run_suite(suite, cfg);
    out.trials += one.trials;
    out.violations += one.violations;
    out.log += one.log;
    if (!out.counterexample && one.counterexample) out.counterexample = one.counterexample;
  }
  return out;
}

}  // namespace titch::fuzz
