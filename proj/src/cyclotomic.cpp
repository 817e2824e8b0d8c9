#include "titch/cyclotomic.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <stdexcept>

#include "titch/errors.hpp"

namespace titch {

unsigned euler_phi(unsigned n) {
  unsigned result = n;
  for (unsigned p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

namespace {

// Exact division of integer polynomials, divisor monic.
std::vector<Int> poly_div_exact(std::vector<Int> num, const std::vector<Int>& den) {
  const std::size_t dn = num.size() - 1, dd = den.size() - 1;
  std::vector<Int> q(dn - dd + 1, Int(0));
  for (std::size_t d = dn; d + 1 > dd; --d) {
    Int c = num[d];
    if (c == 0) continue;
    q[d - dd] = c;
    for (std::size_t i = 0; i <= dd; ++i) num[d - dd + i] -= c * den[i];
  }
  for (const Int& c : num)
    if (c != 0) throw std::logic_error("poly_div_exact: nonzero remainder");
  return q;
}

struct CycloCtx {
  unsigned n = 0;
  unsigned phi = 0;
  std::vector<Int> poly;                            // Phi_n, monic
  std::vector<std::pair<unsigned, Rational>> tail;  // nonzero coefficients below x^phi
  std::vector<std::pair<unsigned, Int>> tail_int;
};

const CycloCtx& cyclo_ctx(unsigned n) {
  static std::map<unsigned, CycloCtx> cache;
  static std::mutex mtx;
  if (n == 0) throw std::invalid_argument("cyclotomic order must be positive");
  {
    std::lock_guard<std::mutex> lk(mtx);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
  }
  // x^n - 1 divided by Phi_d for every proper divisor d.
  std::vector<Int> p(n + 1, Int(0));
  p[0] = -1;
  p[n] = 1;
  for (unsigned d = 1; d < n; ++d)
    if (n % d == 0) p = poly_div_exact(std::move(p), cyclotomic_polynomial(d));

  CycloCtx ctx;
  ctx.n = n;
  ctx.phi = static_cast<unsigned>(p.size() - 1);
  ctx.poly = std::move(p);
  for (unsigned i = 0; i < ctx.phi; ++i)
    if (ctx.poly[i] != 0) {
      ctx.tail.emplace_back(i, Rational(ctx.poly[i]));
      ctx.tail_int.emplace_back(i, ctx.poly[i]);
    }

  std::lock_guard<std::mutex> lk(mtx);
  return cache.emplace(n, std::move(ctx)).first->second;
}

// In-place reduction modulo Phi_n; shrinks v to size phi.
void reduce_mod_phi(std::vector<Rational>& v, const CycloCtx& ctx) {
  if (v.size() > ctx.phi) {
    for (std::size_t d = v.size() - 1; d + 1 > ctx.phi; --d) {
      if (v[d] == 0) continue;
      Rational c = std::move(v[d]);
      v[d] = 0;
      for (const auto& [i, coef] : ctx.tail) v[d - ctx.phi + i] -= c * coef;
    }
  }
  v.resize(ctx.phi, Rational(0));
}

}  // namespace

const std::vector<Int>& cyclotomic_polynomial(unsigned N) { return cyclo_ctx(N).poly; }

CycloNumber::CycloNumber(const Rational& r, unsigned N) : order_(N) {
  const CycloCtx& ctx = cyclo_ctx(N);
  c_.assign(ctx.phi, Rational(0));
  if (ctx.phi > 0) c_[0] = r;
  if (ctx.phi == 0) throw std::logic_error("cyclotomic context with phi = 0");
}

CycloNumber CycloNumber::root_of_unity(long long k, unsigned n) {
  if (n == 0) throw std::invalid_argument("root_of_unity: n must be positive");
  const CycloCtx& ctx = cyclo_ctx(n);
  long long e = k % static_cast<long long>(n);
  if (e < 0) e += n;
  std::vector<Rational> v(static_cast<std::size_t>(e) + 1, Rational(0));
  v[static_cast<std::size_t>(e)] = 1;
  reduce_mod_phi(v, ctx);
  return CycloNumber(n, std::move(v));
}

bool CycloNumber::is_zero() const {
  for (const Rational& c : c_)
    if (c != 0) return false;
  return true;
}

bool CycloNumber::is_rational() const {
  for (std::size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

std::optional<Rational> CycloNumber::as_rational() const {
  if (!is_rational()) return std::nullopt;
  return c_[0];
}

CycloNumber CycloNumber::promoted(unsigned M) const {
  if (M == order_) return *this;
  if (M % order_ != 0)
    throw std::invalid_argument("promotion target order must be a multiple of the current order");
  const unsigned step = M / order_;
  std::vector<Rational> v((c_.size() - 1) * step + 1, Rational(0));
  for (std::size_t k = 0; k < c_.size(); ++k)
    if (c_[k] != 0) v[k * step] = c_[k];
  reduce_mod_phi(v, cyclo_ctx(M));
  return CycloNumber(M, std::move(v));
}

std::optional<CycloNumber> CycloNumber::demoted(unsigned M) const {
  if (M == order_) return *this;
  if (M == 0 || order_ % M != 0)
    throw std::invalid_argument("demotion target order must divide the current order");
  const CycloCtx& big = cyclo_ctx(order_);
  const unsigned phi_m = euler_phi(M);
  const unsigned step = order_ / M;

  // Column j = zeta_N^(j*step) in the Q(zeta_N) basis; solve A d = c.
  std::vector<std::vector<Rational>> a(big.phi, std::vector<Rational>(phi_m + 1, Rational(0)));
  for (unsigned j = 0; j < phi_m; ++j) {
    std::vector<Rational> col(static_cast<std::size_t>(j) * step + 1, Rational(0));
    col[static_cast<std::size_t>(j) * step] = 1;
    reduce_mod_phi(col, big);
    for (unsigned r = 0; r < big.phi; ++r) a[r][j] = col[r];
  }
  for (unsigned r = 0; r < big.phi; ++r) a[r][phi_m] = c_[r];

  // Gaussian elimination over Q.
  unsigned row = 0;
  std::vector<int> pivot_col(big.phi, -1);
  for (unsigned col = 0; col < phi_m && row < big.phi; ++col) {
    unsigned sel = row;
    while (sel < big.phi && a[sel][col] == 0) ++sel;
    if (sel == big.phi) continue;
    std::swap(a[sel], a[row]);
    Rational inv = Rational(1) / a[row][col];
    for (unsigned j = col; j <= phi_m; ++j) a[row][j] *= inv;
    for (unsigned r = 0; r < big.phi; ++r) {
      if (r == row || a[r][col] == 0) continue;
      Rational f = a[r][col];
      for (unsigned j = col; j <= phi_m; ++j) a[r][j] -= f * a[row][j];
    }
    pivot_col[row] = static_cast<int>(col);
    ++row;
  }
  for (unsigned r = row; r < big.phi; ++r)
    if (a[r][phi_m] != 0) return std::nullopt;  // not representable in Q(zeta_M)

  std::vector<Rational> d(phi_m, Rational(0));
  for (unsigned r = 0; r < row; ++r) d[static_cast<unsigned>(pivot_col[r])] = a[r][phi_m];
  return CycloNumber(M, std::move(d));
}

CycloNumber CycloNumber::conjugated() const {
  const CycloCtx& ctx = cyclo_ctx(order_);
  std::vector<Rational> v(order_, Rational(0));
  for (std::size_t k = 0; k < c_.size(); ++k)
    if (c_[k] != 0) v[(order_ - k) % order_] += c_[k];
  reduce_mod_phi(v, ctx);
  return CycloNumber(order_, std::move(v));
}

CycloNumber CycloNumber::operator-() const {
  CycloNumber r = *this;
  for (Rational& c : r.c_) c = -c;
  return r;
}

CycloNumber operator+(const CycloNumber& a, const CycloNumber& b) {
  const unsigned M = lcm_u(a.order_, b.order_);
  if (a.order_ != M) return a.promoted(M) + b;
  if (b.order_ != M) return a + b.promoted(M);
  CycloNumber r = a;
  for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] += b.c_[i];
  return r;
}

CycloNumber operator-(const CycloNumber& a, const CycloNumber& b) { return a + (-b); }

namespace {

// Clears denominators so that the convolution runs over integers; rational
// multiplication re-normalizes on every operation, which dominates dense
// products otherwise.
Int integerize(const std::vector<Rational>& c, std::vector<Int>& out) {
  Int scale(1);
  for (const Rational& x : c) {
    const Int d = denominator(x);
    scale = scale / boost::multiprecision::gcd(scale, d) * d;
  }
  out.assign(c.size(), Int(0));
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c[i] != 0) out[i] = numerator(c[i]) * (scale / denominator(c[i]));
  return scale;
}

}  // namespace

CycloNumber operator*(const CycloNumber& a, const CycloNumber& b) {
  const unsigned M = lcm_u(a.order_, b.order_);
  if (a.order_ != M) return a.promoted(M) * b;
  if (b.order_ != M) return a * b.promoted(M);
  const CycloCtx& ctx = cyclo_ctx(M);

  std::size_t nnz_a = 0, nnz_b = 0;
  for (const Rational& x : a.c_) nnz_a += (x != 0);
  for (const Rational& x : b.c_) nnz_b += (x != 0);

  if (nnz_a * nnz_b <= 16) {  // scalars and root monomials: stay rational
    std::vector<Rational> v(2 * ctx.phi, Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) {
        if (b.c_[j] == 0) continue;
        v[i + j] += a.c_[i] * b.c_[j];
      }
    }
    reduce_mod_phi(v, ctx);
    return CycloNumber(M, std::move(v));
  }

  // Dense operands: clear denominators and convolve over the integers.
  std::vector<Int> ia, ib;
  const Int sa = integerize(a.c_, ia);
  const Int sb = integerize(b.c_, ib);

  std::vector<Int> v(2 * ctx.phi, Int(0));
  for (std::size_t i = 0; i < ia.size(); ++i) {
    if (ia[i] == 0) continue;
    for (std::size_t j = 0; j < ib.size(); ++j) {
      if (ib[j] == 0) continue;
      v[i + j] += ia[i] * ib[j];
    }
  }
  if (v.size() > ctx.phi) {
    for (std::size_t d = v.size() - 1; d + 1 > ctx.phi; --d) {
      if (v[d] == 0) continue;
      Int c = std::move(v[d]);
      v[d] = 0;
      for (const auto& [i, coef] : ctx.tail_int) v[d - ctx.phi + i] -= c * coef;
    }
  }
  const Rational scale = Rational(sa) * Rational(sb);
  std::vector<Rational> out(ctx.phi, Rational(0));
  for (unsigned i = 0; i < ctx.phi; ++i)
    if (v[i] != 0) out[i] = Rational(v[i]) / scale;
  return CycloNumber(M, std::move(out));
}

bool operator==(const CycloNumber& a, const CycloNumber& b) {
  const unsigned M = lcm_u(a.order_, b.order_);
  if (a.order_ != M) return a.promoted(M) == b;
  if (b.order_ != M) return a == b.promoted(M);
  return a.c_ == b.c_;
}

CycloNumber CycloNumber::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero in Q(zeta_" + std::to_string(order_) + ")");
  const CycloCtx& ctx = cyclo_ctx(order_);

  // Extended Euclid over Q[x] against Phi_N, which is irreducible, so the
  // gcd is a nonzero constant.
  using Poly = std::vector<Rational>;
  auto deg = [](const Poly& p) {
    for (std::size_t i = p.size(); i > 0; --i)
      if (p[i - 1] != 0) return static_cast<int>(i - 1);
    return -1;
  };
  Poly r0(ctx.poly.size());
  for (std::size_t i = 0; i < ctx.poly.size(); ++i) r0[i] = Rational(ctx.poly[i]);
  Poly r1 = c_;
  Poly s0{Rational(0)}, s1{Rational(1)};  // coefficients of the input in the Bezout identity

  while (deg(r1) > 0) {
    int d0 = deg(r0), d1 = deg(r1);
    Poly q(static_cast<std::size_t>(d0 - d1) + 1, Rational(0));
    Poly rem = r0;
    for (int d = d0; d >= d1; --d) {
      if (rem[static_cast<std::size_t>(d)] == 0) continue;
      Rational f = rem[static_cast<std::size_t>(d)] / r1[static_cast<std::size_t>(d1)];
      q[static_cast<std::size_t>(d - d1)] = f;
      for (int i = 0; i <= d1; ++i)
        rem[static_cast<std::size_t>(d - d1 + i)] -= f * r1[static_cast<std::size_t>(i)];
    }
    Poly s2(std::max(s0.size(), q.size() + s1.size()), Rational(0));
    for (std::size_t i = 0; i < s0.size(); ++i) s2[i] = s0[i];
    for (std::size_t i = 0; i < q.size(); ++i) {
      if (q[i] == 0) continue;
      for (std::size_t j = 0; j < s1.size(); ++j) s2[i + j] -= q[i] * s1[j];
    }
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (deg(r1) != 0) throw std::logic_error("inverse: gcd with Phi_N is not a constant");
  Rational unit = r1[0];
  std::vector<Rational> v(std::move(s1));
  for (Rational& c : v) c /= unit;
  reduce_mod_phi(v, ctx);
  return CycloNumber(order_, std::move(v));
}

CycloNumber CycloNumber::pow(unsigned long long e) const {
  CycloNumber base = *this;
  CycloNumber acc = CycloNumber::one(order_);
  while (e > 0) {
    if (e & 1ULL) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

void CycloAccum::add_rotated(const CycloNumber& z, unsigned long long shift, const Rational& scale) {
  if (scale == 0) return;
  if (order_ % z.order() != 0)
    throw std::invalid_argument("CycloAccum: operand order must divide accumulator order");
  const unsigned step = order_ / z.order();
  const auto& c = z.coeffs();
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (c[k] == 0) continue;
    std::size_t idx = (k * step + shift) % order_;
    v_[idx] += c[k] * scale;
  }
}

CycloNumber CycloAccum::value() const {
  std::vector<Rational> v = v_;
  reduce_mod_phi(v, cyclo_ctx(order_));
  return CycloNumber(order_, std::move(v));
}

// ---------------------------------------------------------------------------
// Textual form.

std::string cyclo_str(const CycloNumber& z) {
  const auto& c = z.coeffs();
  std::string out;
  for (std::size_t i = c.size(); i > 0; --i) {
    const std::size_t k = i - 1;
    if (c[k] == 0) continue;
    Rational mag = c[k] < 0 ? Rational(-c[k]) : c[k];
    if (out.empty()) {
      if (c[k] < 0) out += "-";
    } else {
      out += c[k] < 0 ? " - " : " + ";
    }
    if (k == 0) {
      out += rat_str_plain(mag);
      continue;
    }
    if (mag != 1) out += rat_str_plain(mag) + "*";
    out += "z(" + std::to_string(z.order()) + ")";
    if (k > 1) out += "^" + std::to_string(k);
  }
  return out.empty() ? "0" : out;
}

namespace {

struct CycloLexer {
  std::string_view s;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eof() {
    skip_ws();
    return pos >= s.size();
  }
  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }
  bool accept(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  unsigned long long number() {
    skip_ws();
    if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
      throw ParseError("cyclotomic expression: expected a number at position " + std::to_string(pos));
    unsigned long long v = 0;
    std::string digits;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) digits += s[pos++];
    if (digits.size() > 18) throw ParseError("cyclotomic expression: number too large");
    v = std::stoull(digits);
    return v;
  }
};

}  // namespace

CycloNumber cyclo_parse(std::string_view s, unsigned field_order) {
  CycloLexer lx{s};
  CycloNumber acc = CycloNumber::zero(field_order);
  bool first = true;
  while (!lx.eof()) {
    int sign = 1;
    if (lx.accept('+')) {
      sign = 1;
    } else if (lx.accept('-')) {
      sign = -1;
    } else if (!first) {
      throw ParseError("cyclotomic expression: expected '+' or '-' at position " +
                       std::to_string(lx.pos));
    }
    first = false;

    Rational coef(1);
    bool have_coef = false;
    if (std::isdigit(static_cast<unsigned char>(lx.peek()))) {
      Rational r{Int(lx.number())};
      if (lx.accept('/')) {
        unsigned long long den = lx.number();
        if (den == 0) throw ParseError("cyclotomic expression: zero denominator");
        r /= Rational(Int(den));
      }
      coef = r;
      have_coef = true;
      lx.accept('*');
    }

    CycloNumber term = CycloNumber(coef);
    if (lx.peek() == 'z') {
      ++lx.pos;
      if (!lx.accept('(')) throw ParseError("cyclotomic expression: expected '(' after z");
      unsigned long long ord = lx.number();
      if (!lx.accept(')')) throw ParseError("cyclotomic expression: expected ')'");
      if (ord == 0) throw ParseError("cyclotomic expression: z(0) is not defined");
      unsigned long long e = 1;
      if (lx.accept('^')) e = lx.number();
      if (field_order % ord != 0)
        throw ParseError("cyclotomic expression: z(" + std::to_string(ord) +
                         ") does not embed in the declared field order " +
                         std::to_string(field_order));
      term = term * CycloNumber::root_of_unity(static_cast<long long>(e % ord),
                                               static_cast<unsigned>(ord));
    } else if (!have_coef) {
      throw ParseError("cyclotomic expression: expected a term at position " +
                       std::to_string(lx.pos));
    }
    if (sign < 0) term = -term;
    acc += term;
  }
  if (first) throw ParseError("cyclotomic expression: empty input");
  return acc.promoted(field_order);
}

}  // namespace titch
