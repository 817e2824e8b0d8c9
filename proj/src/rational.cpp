#include "titch/rational.hpp"

#include <numeric>

#include "titch/errors.hpp"

namespace titch {

Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;
  if ((a % b) != 0 && ((a < 0) != (b < 0))) --q;
  return q;
}

Int rat_floor(const Rational& x) { return floor_div(numerator(x), denominator(x)); }

Int rat_ceil(const Rational& x) { return -rat_floor(-x); }

Rational mod_one(const Rational& x) { return x - Rational(rat_floor(x)); }

Rational rat_mod(const Rational& x, const Rational& q) {
  Rational r = x / q;
  return x - Rational(rat_floor(r)) * q;
}

unsigned lcm_u(unsigned a, unsigned b) {
  return static_cast<unsigned>(std::lcm<unsigned long long>(a, b));
}

std::string rat_str(const Rational& x) {
  return numerator(x).str() + "/" + denominator(x).str();
}

std::string rat_str_plain(const Rational& x) {
  if (denominator(x) == 1) return numerator(x).str();
  return rat_str(x);
}

std::string rat_str_pi(const Rational& turns) {
  Rational m = turns * 2;  // multiples of pi
  if (m == 0) return "0";
  return rat_str_plain(m) + " pi";
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

}  // namespace

std::optional<Rational> rat_parse(std::string_view s) {
  s = trim(s);
  bool neg = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
    s = trim(s);
  }
  std::string_view num = s, den = "1";
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    num = trim(s.substr(0, slash));
    den = trim(s.substr(slash + 1));
  }
  if (!all_digits(num) || !all_digits(den)) return std::nullopt;
  Int n{std::string(num)}, d{std::string(den)};
  if (d == 0) return std::nullopt;
  Rational r = Rational(n) / Rational(d);
  return neg ? -r : r;
}

Rational angle_parse(std::string_view s) {
  s = trim(s);
  bool radians = false;
  if (s.size() >= 2 && s.substr(s.size() - 2) == "pi") {
    radians = true;
    s = trim(s.substr(0, s.size() - 2));
  }
  auto r = rat_parse(s);
  if (!r) throw ParseError("malformed angle \"" + std::string(trim(s)) + "\" (expected \"p/q\" or \"p/q pi\")");
  return radians ? *r / 2 : *r;
}

}  // namespace titch
