// exact arithmetic over Q and Q[t]: rationals, dense univariate
// polynomials, rational functions, places of P^1, valuations.

#ifndef ELLSURF_QTARITH_HPP
#define ELLSURF_QTARITH_HPP

#include <gmpxx.h>

#include <climits>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace ellsurf {

using Integer = mpz_class;
using Rational = mpq_class;

// thrown on malformed textual input; `position` is a byte offset into
// the offending string when known, npos otherwise.
struct ParseError : std::runtime_error {
  std::size_t position;
  explicit ParseError(const std::string& what, std::size_t pos = std::string::npos)
      : std::runtime_error(what), position(pos) {}
};

// thrown when an internal mathematical invariant fails; seeing one of
// these means a bug, not bad user input.
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

// parse "p/q" or "p" (optional sign, base 10).  rejects q = 0.
Rational rational_from_string(const std::string& s);

// "p/q", or just "p" when the denominator is 1.
std::string rational_to_string(const Rational& r);

// ---------------------------------------------------------------- UniPoly

// dense univariate polynomial over Q, coefficients stored lowest
// degree first and trimmed (no trailing zeros).  the zero polynomial
// has an empty coefficient vector.
class UniPoly {
 public:
  // degree() of the zero polynomial; a large negative sentinel rather
  // than -1 so that sums of degrees stay obviously wrong if misused.
  static constexpr int kZeroDegree = INT_MIN / 4;

  UniPoly() = default;
  explicit UniPoly(const Rational& c);
  explicit UniPoly(const std::vector<Rational>& coeffs);  // lowest first
  UniPoly(std::initializer_list<Rational> coeffs)
      : UniPoly(std::vector<Rational>(coeffs)) {}

  static UniPoly zero() { return UniPoly(); }
  static UniPoly one() { return constant(1); }
  static UniPoly constant(const Rational& c) { return UniPoly(c); }
  static UniPoly variable();                       // t
  static UniPoly monomial(int n, const Rational& c);  // c t^n

  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  int degree() const { return c_.empty() ? kZeroDegree : int(c_.size()) - 1; }

  // coefficient of t^n (0 when n exceeds the degree)
  const Rational& coeff(int n) const;
  Rational lead() const;  // leading coefficient; 0 for the zero polynomial

  const std::vector<Rational>& coeffs() const { return c_; }

  UniPoly operator-() const;
  UniPoly operator+(const UniPoly& o) const;
  UniPoly operator-(const UniPoly& o) const;
  UniPoly operator*(const UniPoly& o) const;
  UniPoly& operator+=(const UniPoly& o) { return *this = *this + o; }
  UniPoly& operator-=(const UniPoly& o) { return *this = *this - o; }
  UniPoly& operator*=(const UniPoly& o) { return *this = *this * o; }
  bool operator==(const UniPoly& o) const { return c_ == o.c_; }
  bool operator!=(const UniPoly& o) const { return c_ != o.c_; }

  UniPoly scale(const Rational& c) const;

  Rational eval(const Rational& x) const;

  // f(t) -> num^d * f(den_arg... ) : substitute t = num/den and clear
  // denominators up to degree d >= degree().  returns
  // sum_j c_j num^j den^(d-j); callers use it for homogeneous
  // substitution into weighted families.
  UniPoly eval_fraction(const UniPoly& num, const UniPoly& den, int d) const;

  // s^k * f(1/s); requires k >= degree()
  UniPoly reverse_to(int k) const;

  UniPoly derivative() const;

  UniPoly pow(unsigned n) const;

  std::string to_string(const std::string& var = "t") const;

 private:
  void trim();
  std::vector<Rational> c_;
};

UniPoly operator*(const Rational& c, const UniPoly& p);

// euclidean division: a = q*b + r with deg r < deg b.  b must be nonzero.
struct PolyDivMod {
  UniPoly quot, rem;
};
PolyDivMod divmod(const UniPoly& a, const UniPoly& b);

// monic gcd (gcd(0,0) = 0)
UniPoly poly_gcd(const UniPoly& a, const UniPoly& b);

// extended gcd: g = u*a + v*b with g monic (or zero)
struct PolyXgcd {
  UniPoly g, u, v;
};
PolyXgcd poly_xgcd(const UniPoly& a, const UniPoly& b);

// resultant of a and b; 0 when either is zero and the other has
// positive degree, 1 when both are nonzero constants.
Rational resultant(const UniPoly& a, const UniPoly& b);

// (-1)^(m(m-1)/2) res(f, f') / lc(f), m = deg f >= 1
Rational discriminant(const UniPoly& f);

// content (as a positive rational making the primitive part integral,
// sign carried by the leading coefficient of the primitive part)
struct ContentSplit {
  Rational content;   // f = content * primitive, content > 0 for f != 0
  UniPoly primitive;  // integer coefficients, gcd 1
};
ContentSplit content_split(const UniPoly& f);

// ---------------------------------------------------------------- factoring

struct PolyFactor {
  UniPoly poly;  // monic irreducible over Q
  int multiplicity;
};

// factorization over Q: f = unit * prod poly_i ^ mult_i with each
// poly_i monic irreducible, sorted by (degree, coefficient sequence).
struct Factorization {
  Rational unit;
  std::vector<PolyFactor> factors;
};

Factorization factor_q(const UniPoly& f);  // f must be nonzero

bool is_irreducible(const UniPoly& f);  // deg >= 1

// squarefree part (product of the distinct irreducible factors, monic)
UniPoly squarefree_part(const UniPoly& f);

// ---------------------------------------------------------------- places

// a closed point of P^1 over Q: either a monic irreducible p(t), or
// the point at infinity.
class Place {
 public:
  static Place infinity();
  static Place finite(const UniPoly& monic_irreducible);
  // the place t - a of a rational point
  static Place at(const Rational& a);

  bool is_infinite() const { return infinite_; }
  const UniPoly& poly() const;  // only for finite places
  int degree() const { return infinite_ ? 1 : poly_.degree(); }

  bool operator==(const Place& o) const;

  // order: finite places by (degree, coefficient sequence), infinity last
  static bool canonical_less(const Place& a, const Place& b);

  std::string to_string() const;

 private:
  Place() = default;
  bool infinite_ = false;
  UniPoly poly_;
};

// a rational point of P^1 (t-line): a in Q or infinity
class P1Point {
 public:
  static P1Point infinity();
  static P1Point finite(const Rational& a);

  bool is_infinite() const { return infinite_; }
  const Rational& value() const;

  bool operator==(const P1Point& o) const;
  std::string to_string() const;
  static P1Point from_string(const std::string& s);  // "inf" or rational

 private:
  bool infinite_ = false;
  Rational value_;
};

// valuation of f at a finite place (exact power of p dividing f).
// the zero polynomial gets kInfiniteValuation.
constexpr int kInfiniteValuation = INT_MAX / 4;
int valuation(const UniPoly& f, const Place& p);

// f with p^k divided out, k = valuation
UniPoly remove_factor(const UniPoly& f, const Place& p, int* k = nullptr);

// ---------------------------------------------------------------- RatFunc

// rational function in t, kept reduced with monic denominator
class RatFunc {
 public:
  RatFunc() : num_(), den_(UniPoly::one()) {}
  RatFunc(const UniPoly& num, const UniPoly& den);  // den != 0
  explicit RatFunc(const UniPoly& num) : num_(num), den_(UniPoly::one()) {}
  explicit RatFunc(const Rational& c) : num_(UniPoly::constant(c)), den_(UniPoly::one()) {}

  const UniPoly& num() const { return num_; }
  const UniPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_poly() const { return den_.degree() == 0; }

  RatFunc operator+(const RatFunc& o) const;
  RatFunc operator-(const RatFunc& o) const;
  RatFunc operator*(const RatFunc& o) const;
  RatFunc operator/(const RatFunc& o) const;
  RatFunc operator-() const;
  bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }

  // valuation at a place of P^1 (infinity: deg den - deg num);
  // kInfiniteValuation for 0.
  int valuation_at(const Place& p) const;

  std::string to_string() const;

 private:
  void reduce();
  UniPoly num_, den_;
};

// ---------------------------------------------------------------- misc

// arithmetic in the residue field Q[t]/(p): reduce and invert
UniPoly mod_reduce(const UniPoly& a, const UniPoly& p);
UniPoly mod_mul(const UniPoly& a, const UniPoly& b, const UniPoly& p);
UniPoly mod_inverse(const UniPoly& a, const UniPoly& p);  // a not divisible by p

// deterministic splitmix64; used anywhere the library needs
// reproducible pseudo-randomness
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  // uniform in [0, bound)
  std::uint64_t below(std::uint64_t bound);

 private:
  std::uint64_t state_;
};

}  // namespace ellsurf

#endif
