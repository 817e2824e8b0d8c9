#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <string_view>

namespace titch {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

Int floor_div(const Int& a, const Int& b);

Int rat_floor(const Rational& x);
Int rat_ceil(const Rational& x);

// x reduced into [0, 1).
Rational mod_one(const Rational& x);

// x reduced into [0, q), q > 0.
Rational rat_mod(const Rational& x, const Rational& q);

unsigned lcm_u(unsigned a, unsigned b);

// "p/q" with the denominator always spelled out: "0/1", "-1/2".
std::string rat_str(const Rational& x);

// "p" for integers, "p/q" otherwise; used inside coefficient expressions.
std::string rat_str_plain(const Rational& x);

// Turns rendered as a multiple of pi: 1/8 turn -> "1/4 pi".
std::string rat_str_pi(const Rational& turns);

std::optional<Rational> rat_parse(std::string_view s);

// Accepts "p/q" (turns) or "p/q pi" (radians); returns turns.
// Throws ParseError on anything else, including a zero denominator.
Rational angle_parse(std::string_view s);

}  // namespace titch
