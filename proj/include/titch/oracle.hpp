#pragma once

#include <optional>
#include <string>

#include "titch/titchmarsh.hpp"

namespace titch::oracle {

struct OracleVerdict {
  std::string identity;
  long long m_max = 0;
  bool pass = true;
  std::optional<long long> first_failing_mode;
  std::string detail;  // reproduction hint when pass is false
};

// Verifies fourier(f*g, m) = fourier(f, m) * fourier(g, m) for |m| <= m_max,
// exactly, and re-derives f*g by the naive double loop, comparing term maps.
OracleVerdict check_convolution(const Distribution& f, const Distribution& g,
                                long long m_max = 16);

// Recomputes I, J, K, lambda, rho by exhaustive support enumeration over the
// naive convolution and compares with the engine report field by field;
// re-verifies the reported certificate roots with its own symmetrization.
OracleVerdict check_pair(const Distribution& f, const Distribution& g, unsigned n,
                         const PairReport& report);

OracleVerdict check_reflection(const Distribution& f, bool conjugated,
                               const ReflectionOutcome& outcome);

OracleVerdict check_power(const Distribution& f, unsigned n, unsigned p,
                          const PowerReport& report);

}  // namespace titch::oracle
