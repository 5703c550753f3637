#include "ellsurf/qtarith.hpp"

#include <cassert>
#include <sstream>

namespace ellsurf {

Rational rational_from_string(const std::string& s) {
  if (s.empty()) throw ParseError("empty rational", 0);
  // mpq_set_str accepts whitespace and some surprises; pre-validate the
  // shape sign? digits [/ digits] ourselves so error positions are sane.
  std::size_t i = 0;
  auto digits = [&](std::size_t start) {
    std::size_t j = start;
    while (j < s.size() && s[j] >= '0' && s[j] <= '9') ++j;
    return j;
  };
  if (s[i] == '+' || s[i] == '-') ++i;
  std::size_t after_num = digits(i);
  if (after_num == i) throw ParseError("expected digits in rational", i);
  i = after_num;
  if (i < s.size()) {
    if (s[i] != '/') throw ParseError("unexpected character in rational", i);
    ++i;
    if (i < s.size() && (s[i] == '+' || s[i] == '-'))
      throw ParseError("sign not allowed in denominator", i);
    std::size_t after_den = digits(i);
    if (after_den == i) throw ParseError("expected digits after '/'", i);
    if (after_den != s.size()) throw ParseError("unexpected character in rational", after_den);
  }
  Rational r;
  // mpq_set_str has no use for an explicit plus sign
  const std::string body = s[0] == '+' ? s.substr(1) : s;
  if (r.set_str(body, 10) != 0) throw ParseError("bad rational: " + s, 0);
  if (r.get_den() == 0) throw ParseError("zero denominator in rational", s.find('/'));
  r.canonicalize();
  return r;
}

std::string rational_to_string(const Rational& r) {
  Rational c = r;
  c.canonicalize();
  return c.get_str();
}

// ---------------------------------------------------------------- UniPoly

UniPoly::UniPoly(const Rational& c) {
  if (c != 0) c_.push_back(c);
}

UniPoly::UniPoly(const std::vector<Rational>& coeffs) : c_(coeffs) { trim(); }

UniPoly UniPoly::variable() { return monomial(1, 1); }

UniPoly UniPoly::monomial(int n, const Rational& c) {
  assert(n >= 0);
  UniPoly p;
  if (c != 0) {
    p.c_.assign(std::size_t(n) + 1, Rational(0));
    p.c_[std::size_t(n)] = c;
  }
  return p;
}

void UniPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

const Rational& UniPoly::coeff(int n) const {
  static const Rational zero(0);
  if (n < 0 || std::size_t(n) >= c_.size()) return zero;
  return c_[std::size_t(n)];
}

Rational UniPoly::lead() const { return c_.empty() ? Rational(0) : c_.back(); }

UniPoly UniPoly::operator-() const {
  UniPoly r(*this);
  for (auto& c : r.c_) c = -c;
  return r;
}

UniPoly UniPoly::operator+(const UniPoly& o) const {
  UniPoly r;
  r.c_.resize(std::max(c_.size(), o.c_.size()), Rational(0));
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) r.c_[i] += o.c_[i];
  r.trim();
  return r;
}

UniPoly UniPoly::operator-(const UniPoly& o) const { return *this + (-o); }

UniPoly UniPoly::operator*(const UniPoly& o) const {
  if (is_zero() || o.is_zero()) return UniPoly();
  UniPoly r;
  r.c_.assign(c_.size() + o.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) r.c_[i + j] += c_[i] * o.c_[j];
  }
  r.trim();
  return r;
}

UniPoly UniPoly::scale(const Rational& c) const {
  if (c == 0) return UniPoly();
  UniPoly r(*this);
  for (auto& x : r.c_) x *= c;
  return r;
}

UniPoly operator*(const Rational& c, const UniPoly& p) { return p.scale(c); }

Rational UniPoly::eval(const Rational& x) const {
  Rational acc(0);
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
  return acc;
}

UniPoly UniPoly::eval_fraction(const UniPoly& num, const UniPoly& den, int d) const {
  assert(is_zero() || d >= degree());
  if (is_zero()) return UniPoly();
  // horner in num, with one factor of den per step; total degree
  // homogenized to d: sum_j c_j num^j den^(d-j)
  UniPoly acc;
  for (std::size_t i = c_.size(); i-- > 0;)
    acc = acc * num + UniPoly::constant(c_[i]) * den.pow(unsigned(d - int(i)));
  return acc;
}

UniPoly UniPoly::reverse_to(int k) const {
  if (is_zero()) return UniPoly();
  assert(k >= degree());
  std::vector<Rational> out(std::size_t(k) + 1, Rational(0));
  for (std::size_t i = 0; i < c_.size(); ++i) out[std::size_t(k) - i] = c_[i];
  return UniPoly(out);
}

UniPoly UniPoly::derivative() const {
  if (c_.size() <= 1) return UniPoly();
  std::vector<Rational> out(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) out[i - 1] = Rational(long(i)) * c_[i];
  return UniPoly(out);
}

UniPoly UniPoly::pow(unsigned n) const {
  UniPoly acc = UniPoly::one();
  UniPoly base = *this;
  while (n) {
    if (n & 1) acc *= base;
    base *= base;
    n >>= 1;
  }
  return acc;
}

std::string UniPoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = c_.size(); i-- > 0;) {
    const Rational& c = c_[i];
    if (c == 0) continue;
    Rational a = abs(c);
    if (first) {
      if (c < 0) os << "-";
      first = false;
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    bool unit = (a == 1) && i > 0;
    if (!unit) os << a.get_str();
    if (i > 0) {
      if (!unit) os << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

PolyDivMod divmod(const UniPoly& a, const UniPoly& b) {
  if (b.is_zero()) throw InternalError("division by zero polynomial");
  PolyDivMod out;
  out.rem = a;
  if (a.degree() < b.degree()) return out;
  std::vector<Rational> q(std::size_t(a.degree() - b.degree()) + 1, Rational(0));
  Rational lb = b.lead();
  while (!out.rem.is_zero() && out.rem.degree() >= b.degree()) {
    int shift = out.rem.degree() - b.degree();
    Rational c = out.rem.lead() / lb;
    q[std::size_t(shift)] = c;
    out.rem -= UniPoly::monomial(shift, c) * b;
  }
  out.quot = UniPoly(q);
  return out;
}

UniPoly poly_gcd(const UniPoly& a, const UniPoly& b) {
  UniPoly x = a, y = b;
  while (!y.is_zero()) {
    UniPoly r = divmod(x, y).rem;
    x = y;
    y = r;
  }
  if (x.is_zero()) return x;
  return x.scale(1 / x.lead());
}

PolyXgcd poly_xgcd(const UniPoly& a, const UniPoly& b) {
  UniPoly r0 = a, r1 = b;
  UniPoly u0 = UniPoly::one(), u1;
  UniPoly v0, v1 = UniPoly::one();
  while (!r1.is_zero()) {
    PolyDivMod d = divmod(r0, r1);
    UniPoly r2 = d.rem;
    UniPoly u2 = u0 - d.quot * u1;
    UniPoly v2 = v0 - d.quot * v1;
    r0 = r1; r1 = r2;
    u0 = u1; u1 = u2;
    v0 = v1; v1 = v2;
  }
  PolyXgcd out{r0, u0, v0};
  if (!out.g.is_zero()) {
    Rational inv = 1 / out.g.lead();
    out.g = out.g.scale(inv);
    out.u = out.u.scale(inv);
    out.v = out.v.scale(inv);
  }
  return out;
}

Rational resultant(const UniPoly& a, const UniPoly& b) {
  if (a.is_zero() || b.is_zero()) {
    // res(c, 0) with c a nonzero constant is the empty product 1
    const UniPoly& other = a.is_zero() ? b : a;
    return other.degree() == 0 ? Rational(1) : Rational(0);
  }
  UniPoly f = a, g = b;
  Rational acc(1);
  bool neg = false;
  // res(f,g) = (-1)^(deg f * deg g) lc(g)^(deg f - deg r) res(g, r)
  while (g.degree() > 0) {
    UniPoly r = divmod(f, g).rem;
    int df = f.degree(), dg = g.degree();
    int dr = r.is_zero() ? 0 : r.degree();
    if (r.is_zero()) {
      return Rational(0);
    }
    if ((df & 1) && (dg & 1)) neg = !neg;
    Rational lg = g.lead();
    for (int i = 0; i < df - dr; ++i) acc *= lg;
    f = g;
    g = r;
  }
  // g constant nonzero: res(f, g) = g^(deg f)
  Rational lg = g.lead();
  for (int i = 0; i < f.degree(); ++i) acc *= lg;
  return neg ? -acc : acc;
}

Rational discriminant(const UniPoly& f) {
  int m = f.degree();
  if (m < 1) throw InternalError("discriminant needs degree >= 1");
  Rational r = resultant(f, f.derivative()) / f.lead();
  int e = (m * (m - 1)) / 2;
  return (e & 1) ? -r : r;
}

ContentSplit content_split(const UniPoly& f) {
  if (f.is_zero()) return {Rational(0), UniPoly()};
  Integer den_lcm(1), num_gcd(0);
  for (const auto& c : f.coeffs()) {
    if (c == 0) continue;
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num().get_mpz_t());
  }
  Rational content(num_gcd, den_lcm);
  content.canonicalize();
  ContentSplit out;
  out.content = content;
  out.primitive = f.scale(1 / content);
  return out;
}

// ---------------------------------------------------------------- RatFunc

RatFunc::RatFunc(const UniPoly& num, const UniPoly& den) : num_(num), den_(den) {
  if (den.is_zero()) throw InternalError("rational function with zero denominator");
  reduce();
}

void RatFunc::reduce() {
  if (num_.is_zero()) {
    den_ = UniPoly::one();
    return;
  }
  UniPoly g = poly_gcd(num_, den_);
  if (g.degree() > 0) {
    num_ = divmod(num_, g).quot;
    den_ = divmod(den_, g).quot;
  }
  Rational lead = den_.lead();
  num_ = num_.scale(1 / lead);
  den_ = den_.scale(1 / lead);
}

RatFunc RatFunc::operator+(const RatFunc& o) const {
  return RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}
RatFunc RatFunc::operator-(const RatFunc& o) const { return *this + (-o); }
RatFunc RatFunc::operator*(const RatFunc& o) const {
  return RatFunc(num_ * o.num_, den_ * o.den_);
}
RatFunc RatFunc::operator/(const RatFunc& o) const {
  if (o.is_zero()) throw InternalError("division by zero rational function");
  return RatFunc(num_ * o.den_, den_ * o.num_);
}
RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -r.num_;
  return r;
}

int RatFunc::valuation_at(const Place& p) const {
  if (is_zero()) return kInfiniteValuation;
  if (p.is_infinite()) return den_.degree() - num_.degree();
  return valuation(num_, p) - valuation(den_, p);
}

std::string RatFunc::to_string() const {
  if (is_poly()) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

// ---------------------------------------------------------------- residue field

UniPoly mod_reduce(const UniPoly& a, const UniPoly& p) { return divmod(a, p).rem; }

UniPoly mod_mul(const UniPoly& a, const UniPoly& b, const UniPoly& p) {
  return mod_reduce(a * b, p);
}

UniPoly mod_inverse(const UniPoly& a, const UniPoly& p) {
  PolyXgcd x = poly_xgcd(mod_reduce(a, p), p);
  if (x.g.degree() != 0)
    throw InternalError("noninvertible element mod " + p.to_string());
  return mod_reduce(x.u.scale(1 / x.g.lead()), p);
}

// ---------------------------------------------------------------- rng

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t SplitMix64::below(std::uint64_t bound) {
  assert(bound > 0);
  // rejection sampling to stay unbiased
  std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x;
  do {
    x = next();
  } while (x >= limit);
  return x % bound;
}

}  // namespace ellsurf
