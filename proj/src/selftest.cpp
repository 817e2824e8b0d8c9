#include "titch/selftest.hpp"

#include <sys/wait.h>

#include <chrono>
#include <cstdlib>
#include <sstream>

#include "titch/fuzz.hpp"
#include "titch/oracle.hpp"

namespace titch::selftest {

namespace {

using fuzz::GenConfig;
using fuzz::Rng;

struct Ctx {
  bool quick = false;
  std::string self_exe;
  long long oracle_checks = 0;
  long long oracle_failures = 0;
  std::string first_oracle_failure;
};

int scaled(const Ctx& ctx, int count) { return ctx.quick ? std::max(5, count / 20) : count; }

void tally(Ctx& ctx, const oracle::OracleVerdict& v) {
  ++ctx.oracle_checks;
  if (!v.pass) {
    ++ctx.oracle_failures;
    if (ctx.first_oracle_failure.empty())
      ctx.first_oracle_failure = v.identity + ": " + v.detail;
  }
}

Distribution delta_at(const Rational& turns, int coeff = 1, unsigned order = 0) {
  Distribution d;
  d.add_term(Angle(turns), order, CycloNumber(Rational(coeff)));
  return d;
}

std::optional<Rational> min_lift_in_arc(const Distribution& f, const RatInterval& w) {
  std::optional<Rational> best;
  for (const Angle& x : f.support())
    for (const Rational& l : lifts_into(x, w, 1, Mode::closed))
      if (!best || l < *best) best = l;
  return best;
}

// --- criterion bodies ------------------------------------------------------

std::string criterion_zero_divisor(Ctx& ctx) {
  const GenConfig gen{8, 3};
  const int count = scaled(ctx, 1000);
  for (int trial = 0; trial < count; ++trial) {
    Rng rng(fuzz::mix_seed(1, 110, static_cast<std::uint64_t>(trial)));
    const Distribution f = fuzz::random_distribution(rng, gen);
    const Distribution g = fuzz::random_distribution(rng, gen);
    auto [zf, zg] = make_zero_divisors(f, g);
    if (!convolve(zf, zg).is_zero())
      return "trial " + std::to_string(trial) + ": (f + S f) * (g - S g) != 0";
    tally(ctx, oracle::check_convolution(zf, zg, 16));
  }
  return "";
}

std::string criterion_lemma(Ctx& ctx) {
  const GenConfig gen{8, 3};
  const int count = scaled(ctx, 1000);
  for (unsigned n : {2u, 3u, 4u, 6u, 8u}) {
    for (int trial = 0; trial < count; ++trial) {
      Rng rng(fuzz::mix_seed(1, 120 + n, static_cast<std::uint64_t>(trial)));
      Arc window;
      const std::vector<Distribution> comps = fuzz::random_component_family(rng, n, window, gen);
      const CycloNumber alpha = lemma_alpha(comps, n, window);

      Distribution sum;
      Distribution folded;
      CycloNumber weight = CycloNumber::one();
      std::optional<Rational> expected;
      const RatInterval w = interval_of_arc(window);
      for (unsigned j = 0; j < n; ++j) {
        sum = sum + weight * comps[j];
        weight *= alpha;
        folded = folded + comps[j].shifted(Angle(-Rational(j) / n));
        auto b = min_lift_in_arc(comps[j], w);
        if (b && (!expected || *b < *expected)) expected = b;
      }
      auto got = min_lift_in_arc(sum, w);
      if (!expected || !got || *got != *expected)
        return "n=" + std::to_string(n) + " trial " + std::to_string(trial) +
               ": inf supp of the weighted sum misses the component minimum";
      tally(ctx, oracle::check_convolution(folded, folded, 16));
    }
  }
  return "";
}

std::string check_worked_pair() {
  const Rational half(1, 2), eighth(1, 8);
  const Distribution f = delta_at(0) - delta_at(half);
  const Distribution g = delta_at(0) + delta_at(half) + delta_at(eighth) - delta_at(Rational(5, 8));
  const PairReport rep = analyze_pair(f, g, 2);
  if (rep.annihilated) return "worked instance: unexpected annihilation";
  if (!(rep.I == RatInterval{Rational(0), Rational(0)})) return "worked instance: I != {0}";
  if (!(rep.J == RatInterval{Rational(0), eighth})) return "worked instance: J != [0, 1/8]";
  if (!(*rep.K == RatInterval{eighth, eighth})) return "worked instance: K != {1/8}";
  if (*rep.lambda != eighth) return "worked instance: lambda != 1/8";
  if (*rep.rho != 0) return "worked instance: rho != 0";
  if (!(*rep.alpha == CycloNumber::one())) return "worked instance: alpha != 1";
  if (!(*rep.beta == CycloNumber(Rational(-1)))) return "worked instance: beta != -1";
  auto v = oracle::check_pair(f, g, 2, rep);
  if (!v.pass) return "worked instance: oracle: " + v.detail;
  return "";
}

std::string criterion_theorem1(Ctx& ctx) {
  if (std::string err = check_worked_pair(); !err.empty()) return err;
  const GenConfig gen{8, 3};
  const int count = scaled(ctx, 1000);
  for (unsigned n : {2u, 3u, 4u}) {
    for (int trial = 0; trial < count; ++trial) {
      Rng rng(fuzz::mix_seed(1, 130 + n, static_cast<std::uint64_t>(trial)));
      auto [f, g] = fuzz::random_symmetry_pair(rng, n, gen);
      PairReport rep;
      try {
        rep = analyze_pair(f, g, n);
      } catch (const std::exception& e) {
        return "n=" + std::to_string(n) + " trial " + std::to_string(trial) + ": " + e.what();
      }
      if (!rep.annihilated) {
        if (*rep.lambda == 0)
          return "n=" + std::to_string(n) + " trial " + std::to_string(trial) +
                 ": symmetry-seeded pair reported lambda = 0";
        if (!rep.alpha || !rep.beta || *rep.alpha == *rep.beta)
          return "n=" + std::to_string(n) + " trial " + std::to_string(trial) +
                 ": certificate roots missing or equal";
        for (const Certificate& c : rep.certificates)
          if (!c.verified)
            return "n=" + std::to_string(n) + " trial " + std::to_string(trial) +
                   ": certificate " + c.id + " unverified";
      }
      tally(ctx, oracle::check_pair(f, g, n, rep));
      tally(ctx, oracle::check_convolution(f, g, 16));
    }
  }
  return "";
}

std::string criterion_corollary(Ctx& ctx) {
  const GenConfig gen{8, 3};
  const int count = scaled(ctx, 500);
  for (bool seeded : {false, true}) {
    for (int trial = 0; trial < count; ++trial) {
      Rng rng(fuzz::mix_seed(1, seeded ? 141 : 140, static_cast<std::uint64_t>(trial)));
      auto [f, g] = seeded ? fuzz::random_symmetry_pair(rng, 2, gen)
                           : fuzz::random_generic_pair(rng, 2, gen);
      CorollaryN2Verdict v;
      try {
        v = check_corollary_n2(f, g);
      } catch (const std::exception& e) {
        return std::string(seeded ? "seeded" : "generic") + " trial " + std::to_string(trial) +
               ": " + e.what();
      }
      const bool zero = convolve(f, g).is_zero();
      if (zero != v.annihilated)
        return "trial " + std::to_string(trial) + ": annihilation case misflagged";
      if (!v.agree) return "trial " + std::to_string(trial) + ": equivalence sides disagree";
      if (!v.annihilated && v.lambda_positive && !v.conv_vanishing_verified)
        return "trial " + std::to_string(trial) + ": proof computation failed";
      tally(ctx, oracle::check_pair(f, g, 2, v.pair));
      tally(ctx, oracle::check_convolution(f, g, 16));
    }
  }
  return "";
}

std::string check_worked_reflection() {
  const Distribution f = delta_at(Rational(1, 16)) + delta_at(Rational(9, 16)) +
                         delta_at(Rational(15, 16)) - delta_at(Rational(7, 16));
  const ReflectionOutcome out = analyze_reflection(f);
  if (!out.applicable) return "worked four-delta instance: not applicable";
  if (!(out.I == RatInterval{-Rational(1, 16), Rational(1, 16)}))
    return "worked four-delta instance: I != [-1/16, 1/16]";
  if (!(out.decomposition->mu == delta_at(Rational(1, 16))))
    return "worked four-delta instance: mu != delta_{1/16}";
  if (!(out.decomposition->nu == delta_at(Rational(15, 16))))
    return "worked four-delta instance: nu != delta_{15/16}";
  return "";
}

std::string criterion_reflection(Ctx& ctx) {
  if (std::string err = check_worked_reflection(); !err.empty()) return err;
  const GenConfig gen{8, 3};
  const int count = scaled(ctx, 500);
  const Angle half(Rational(1) / 2);
  for (int trial = 0; trial < count; ++trial) {
    Rng rng(fuzz::mix_seed(1, 150, static_cast<std::uint64_t>(trial)));
    auto [mu, nu] = fuzz::random_point_pair(rng, gen);
    const Distribution f = mu + mu.shifted(half) + nu - nu.shifted(half);
    ReflectionOutcome out;
    try {
      out = analyze_reflection(f);
    } catch (const std::exception& e) {
      return "trial " + std::to_string(trial) + ": " + e.what();
    }
    if (!out.applicable) return "trial " + std::to_string(trial) + ": reported not-applicable";
    const Decomposition& dec = *out.decomposition;
    if (!(dec.mu + dec.mu.shifted(half) + dec.nu - dec.nu.shifted(half) == f))
      return "trial " + std::to_string(trial) + ": reconstruction mismatch";
    tally(ctx, oracle::check_reflection(f, false, out));
    tally(ctx, oracle::check_convolution(f, f.reflected(), 16));
  }
  return "";
}

std::string check_worked_power() {
  {
    const PowerReport rep = analyze_power(delta_at(Rational(1, 32)), 2, 3);
    if (!(rep.K == RatInterval{Rational(3, 32), Rational(3, 32)}))
      return "worked point instance: K != {3/32}";
  }
  {
    const Distribution f =
        delta_at(0) + delta_at(Rational(1, 32)) + delta_at(Rational(1, 2));
    const PowerReport rep = analyze_power(f, 2, 3);
    if (!(rep.K == RatInterval{Rational(0), Rational(3, 32)}))
      return "worked trinomial instance: K != [0, 3/32]";
  }
  {
    const Distribution f = delta_at(0) - delta_at(Rational(1, 32));
    const PowerReport rep = analyze_power(f, 1, 2);
    if (!(rep.K == RatInterval{Rational(0), Rational(2, 32)}))
      return "worked signed instance: K != [0, 1/16]";
  }
  return "";
}

std::string criterion_power(Ctx& ctx) {
  if (std::string err = check_worked_power(); !err.empty()) return err;
  const GenConfig gen{8, 3};
  const int count = scaled(ctx, 500);
  for (unsigned n : {2u, 3u}) {
    for (unsigned p : {2u, 3u, 4u}) {
      for (int trial = 0; trial < count; ++trial) {
        Rng rng(fuzz::mix_seed(1, 160 + 10 * n + p, static_cast<std::uint64_t>(trial)));
        const Distribution f = fuzz::random_power_instance(rng, n, p, gen);
        PowerReport rep;
        try {
          rep = analyze_power(f, n, p);  // throws unless K == pI exactly
        } catch (const std::exception& e) {
          return "n=" + std::to_string(n) + " p=" + std::to_string(p) + " trial " +
                 std::to_string(trial) + ": " + e.what();
        }
        tally(ctx, oracle::check_power(f, n, p, rep));
        tally(ctx, oracle::check_convolution(f, convolve_power(f, p), 16));
      }
    }
  }
  return "";
}

std::string criterion_oracle(Ctx& ctx) {
  if (ctx.oracle_checks == 0) return "criteria 1-6 did not run, no oracle coverage";
  if (ctx.oracle_failures > 0)
    return std::to_string(ctx.oracle_failures) + " of " + std::to_string(ctx.oracle_checks) +
           " oracle checks failed; first: " + ctx.first_oracle_failure;
  return "";
}

std::string criterion_vandermonde(Ctx&) {
  for (unsigned n = 1; n <= 12; ++n) {
    const CycloNumber gamma = CycloNumber::root_of_unity(1, n);
    std::vector<std::vector<CycloNumber>> m(n, std::vector<CycloNumber>(n));
    for (unsigned row = 0; row < n; ++row)
      for (unsigned col = 0; col < n; ++col)
        m[row][col] = gamma.pow(static_cast<unsigned long long>(row + 1) * col);

    // Determinant by exact Gaussian elimination.
    CycloNumber det = CycloNumber::one(n);
    bool zero = false;
    for (unsigned col = 0; col < n && !zero; ++col) {
      unsigned pivot = col;
      while (pivot < n && m[pivot][col].is_zero()) ++pivot;
      if (pivot == n) {
        zero = true;
        break;
      }
      if (pivot != col) {
        std::swap(m[pivot], m[col]);
        det = -det;
      }
      det *= m[col][col];
      const CycloNumber inv = m[col][col].inverse();
      for (unsigned r = col + 1; r < n; ++r) {
        if (m[r][col].is_zero()) continue;
        const CycloNumber factor = m[r][col] * inv;
        for (unsigned c2 = col; c2 < n; ++c2) m[r][c2] -= factor * m[col][c2];
      }
    }

    CycloNumber product = CycloNumber::one(n);
    for (unsigned j = 1; j <= n; ++j)
      for (unsigned k = j + 1; k <= n; ++k) product *= gamma.pow(k) - gamma.pow(j);

    if (zero || det.is_zero()) return "n=" + std::to_string(n) + ": determinant vanished";
    if (!(det == product))
      return "n=" + std::to_string(n) + ": elimination and product formula disagree";
  }
  return "";
}

std::string criterion_fuzz_and_mutation(Ctx& ctx) {
  fuzz::FuzzConfig cfg;
  cfg.seed = 1;
  cfg.count = ctx.quick ? 10 : 100;
  const fuzz::FuzzOutcome out = fuzz::run_all(cfg);
  if (out.violations != 0)
    return "default fuzz run reported " + std::to_string(out.violations) + " violation(s)";

  if (ctx.self_exe.empty()) return "mutation smoke test: binary path unknown";
  const std::string cmd = "TITCHMARSH_MUTATION=symmetrize-sign \"" + ctx.self_exe +
                          "\" selftest --only 3 --quick >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  int exit_code = -1;
  if (status != -1 && WIFEXITED(status)) exit_code = WEXITSTATUS(status);
  if (exit_code != 4)
    return "mutation smoke test: mutated engine exited with " + std::to_string(exit_code) +
           ", expected 4";
  return "";
}

struct CriterionSpec {
  int id;
  const char* name;
  double budget_seconds;
  std::string (*body)(Ctx&);
};

const CriterionSpec kCriteria[] = {
    {1, "zero-divisor identity", 10.0, criterion_zero_divisor},
    {2, "lemma selector", 30.0, criterion_lemma},
    {3, "theorem 1 soundness", 60.0, criterion_theorem1},
    {4, "corollary 2 equivalence", 30.0, criterion_corollary},
    {5, "theorem 2 reflection decomposition", 30.0, criterion_reflection},
    {6, "theorem 3 powers", 60.0, criterion_power},
    {7, "oracle agreement", 60.0, criterion_oracle},
    {8, "vandermonde nonvanishing", 5.0, criterion_vandermonde},
    {9, "fuzz run and mutation smoke test", 0.0, criterion_fuzz_and_mutation},
};

}  // namespace

std::vector<CriterionResult> run(std::vector<int> ids, bool quick, const std::string& self_exe) {
  Ctx ctx;
  ctx.quick = quick;
  ctx.self_exe = self_exe;
  std::vector<CriterionResult> results;
  for (const CriterionSpec& spec : kCriteria) {
    if (!ids.empty() && std::find(ids.begin(), ids.end(), spec.id) == ids.end()) continue;
    CriterionResult r;
    r.id = spec.id;
    r.name = spec.name;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      r.detail = spec.body(ctx);
    } catch (const std::exception& e) {
      r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.pass = r.detail.empty();
    if (r.pass && !quick && spec.budget_seconds > 0 && r.seconds > spec.budget_seconds) {
      r.pass = false;
      r.detail = "runtime target exceeded (" + std::to_string(spec.budget_seconds) + "s)";
    }
    results.push_back(std::move(r));
  }
  return results;
}

std::string format_line(const CriterionResult& r) {
  std::ostringstream os;
  os << "criterion " << r.id << " (" << r.name << "): " << (r.pass ? "PASS" : "FAIL");
  char buf[32];
  std::snprintf(buf, sizeof(buf), " (%.1fs)", r.seconds);
  os << buf;
  if (!r.detail.empty()) os << " -- " << r.detail;
  return os.str();
}

}  // namespace titch::selftest
