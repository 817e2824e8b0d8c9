#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "titch/rational.hpp"

namespace titch {

unsigned euler_phi(unsigned n);

// Phi_N as dense integer coefficients, ascending degree, monic. Computed by
// iterated exact division of x^N - 1 by Phi_d over the divisors d < N;
// memoized and safe to call concurrently.
const std::vector<Int>& cyclotomic_polynomial(unsigned N);

// Element of Q(zeta_N), stored as a polynomial in zeta_N reduced modulo
// Phi_N. The representation is canonical, so the zero test is
// coefficient-wise and exact.
class CycloNumber {
 public:
  CycloNumber() : order_(1), c_(1, Rational(0)) {}
  explicit CycloNumber(const Rational& r, unsigned N = 1);

  static CycloNumber zero(unsigned N) { return CycloNumber(Rational(0), N); }
  static CycloNumber one(unsigned N = 1) { return CycloNumber(Rational(1), N); }
  // zeta_n^k, represented in Q(zeta_n); promote to reach any Q(zeta_N), n | N.
  static CycloNumber root_of_unity(long long k, unsigned n);
  // The imaginary unit, zeta_4.
  static CycloNumber imaginary_unit() { return root_of_unity(1, 4); }

  unsigned order() const { return order_; }
  const std::vector<Rational>& coeffs() const { return c_; }

  bool is_zero() const;
  bool is_rational() const;
  std::optional<Rational> as_rational() const;

  CycloNumber promoted(unsigned M) const;                // requires order() | M
  std::optional<CycloNumber> demoted(unsigned M) const;  // requires M | order()
  CycloNumber conjugated() const;                        // zeta -> zeta^(N-1)
  CycloNumber inverse() const;  // throws std::domain_error on zero
  CycloNumber pow(unsigned long long e) const;

  CycloNumber operator-() const;
  friend CycloNumber operator+(const CycloNumber& a, const CycloNumber& b);
  friend CycloNumber operator-(const CycloNumber& a, const CycloNumber& b);
  friend CycloNumber operator*(const CycloNumber& a, const CycloNumber& b);
  CycloNumber& operator+=(const CycloNumber& o) { return *this = *this + o; }
  CycloNumber& operator-=(const CycloNumber& o) { return *this = *this - o; }
  CycloNumber& operator*=(const CycloNumber& o) { return *this = *this * o; }

  friend bool operator==(const CycloNumber& a, const CycloNumber& b);
  friend bool operator!=(const CycloNumber& a, const CycloNumber& b) { return !(a == b); }

 private:
  CycloNumber(unsigned N, std::vector<Rational> coeffs) : order_(N), c_(std::move(coeffs)) {}

  unsigned order_;
  std::vector<Rational> c_;  // size euler_phi(order_)

  friend class CycloAccum;
};

inline bool cyclo_is_zero(const CycloNumber& z) { return z.is_zero(); }

// Canonical textual form: "3/2*z(8)^3 - 1/7*z(8) + 2"; z(N) is zeta_N.
std::string cyclo_str(const CycloNumber& z);

// Parses the textual form. z(M) is accepted for any M whose lcm with the
// other mentioned orders divides field_order; the result is promoted to
// field_order. Throws ParseError.
CycloNumber cyclo_parse(std::string_view s, unsigned field_order);

// Accumulator over Z[x]/(x^N - 1): cheap rotations by powers of zeta_N,
// one reduction modulo Phi_N at the end. Used by the Fourier evaluation,
// where everything is a rational multiple of a root of unity.
class CycloAccum {
 public:
  explicit CycloAccum(unsigned N) : order_(N), v_(N, Rational(0)) {}
  // Adds scale * zeta_N^shift * z; z.order() must divide N.
  void add_rotated(const CycloNumber& z, unsigned long long shift, const Rational& scale);
  CycloNumber value() const;

 private:
  unsigned order_;
  std::vector<Rational> v_;
};

}  // namespace titch
