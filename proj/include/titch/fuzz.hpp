#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "titch/io.hpp"

namespace titch::fuzz {

// Deterministic across platforms: raw mt19937_64 output reduced by hand
// (std::uniform_int_distribution is implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  std::uint64_t u64() { return eng_(); }
  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : u64() % n; }
  long long range(long long lo, long long hi) {
    return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }
  bool chance(unsigned percent) { return below(100) < percent; }

 private:
  std::mt19937_64 eng_;
};

struct GenConfig {
  int max_points = 8;
  int max_order = 3;
};

struct FuzzConfig {
  std::uint64_t seed = 1;
  int count = 100;  // trials per suite
  std::vector<unsigned> ns = {2, 3, 4};
  GenConfig gen;
  int mix_percent = 50;  // share of symmetry-seeded pair instances
  long long m_max = 16;
  std::string counterexample_path = "counterexample.json";
};

struct FuzzOutcome {
  int trials = 0;
  int violations = 0;
  std::string log;  // byte-identical across runs with the same seed
  std::optional<json> counterexample;
};

const std::vector<std::string>& suite_names();
FuzzOutcome run_suite(const std::string& suite, const FuzzConfig& cfg);
FuzzOutcome run_all(const FuzzConfig& cfg);

// Runs the suite's universal checks on one instance; returns a failure
// description, or nullopt when the instance passes or is out of scope.
// Shared by the fuzzer and the shrinker.
std::optional<std::string> verify_instance(const std::string& suite, const Instance& inst,
                                           long long m_max);

// Greedy shrinking: drop terms, reset coefficients to 1, reset orders to 0,
// as long as the instance keeps failing verify_instance.
json shrink_instance(const std::string& suite, json instance, long long m_max);

// Generators (also used by the acceptance suite). All support widths are
// chosen so that the analyzed hulls satisfy the smallness hypotheses.
Distribution random_distribution(Rng& rng, const GenConfig& cfg);
std::pair<Distribution, Distribution> random_generic_pair(Rng& rng, unsigned n,
                                                          const GenConfig& cfg);
// f is alpha-annihilated at its bottom layer, g is an alpha-eigenvector
// plus junk above its bottom; such pairs provably yield lambda > 0 or
// annihilation.
std::pair<Distribution, Distribution> random_symmetry_pair(Rng& rng, unsigned n,
                                                           const GenConfig& cfg);
std::vector<Distribution> random_component_family(Rng& rng, unsigned n, Arc& window_out,
                                                  const GenConfig& cfg);
// Point-supported mu and nu with locations in (-1/8, 1/8); at least one nonzero.
std::pair<Distribution, Distribution> random_point_pair(Rng& rng, const GenConfig& cfg);
Distribution random_power_instance(Rng& rng, unsigned n, unsigned p, const GenConfig& cfg);

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t trial);

}  // namespace titch::fuzz
