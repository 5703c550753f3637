// exact group law on long Weierstrass curves over Q, plus
// specialization of a family at a rational parameter value.

#include "ellsurf/mwrank.hpp"

#include <cassert>

namespace ellsurf {

EllipticCurveQ::EllipticCurveQ(const std::array<Rational, 5>& a) : a_(a) {
  const Rational &a1 = a_[0], &a2 = a_[1], &a3 = a_[2], &a4 = a_[3],
                 &a6 = a_[4];
  b2_ = a1 * a1 + 4 * a2;
  b4_ = 2 * a4 + a1 * a3;
  b6_ = a3 * a3 + 4 * a6;
  b8_ = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
  assert(4 * b8_ == b2_ * b6_ - b4_ * b4_);
  disc_ = -b2_ * b2_ * b8_ - 8 * b4_ * b4_ * b4_ - 27 * b6_ * b6_ +
          9 * b2_ * b4_ * b6_;
  if (disc_ == 0) throw SingularModelError("specialized curve is singular");
}

bool EllipticCurveQ::integral() const {
  for (const auto& ai : a_)
    if (ai.get_den() != 1) return false;
  return true;
}

bool EllipticCurveQ::on_curve(const CurvePoint& p) const {
  if (p.infinite) return true;
  const Rational &x = p.x, &y = p.y;
  Rational lhs = y * y + a1() * x * y + a3() * y;
  Rational rhs = ((x + a2()) * x + a4()) * x + a6();
  return lhs == rhs;
}

CurvePoint EllipticCurveQ::negate(const CurvePoint& p) const {
  if (p.infinite) return p;
  return CurvePoint::affine(p.x, -p.y - a1() * p.x - a3());
}

CurvePoint EllipticCurveQ::add(const CurvePoint& p, const CurvePoint& q) const {
  if (p.infinite) return q;
  if (q.infinite) return p;
  Rational lambda;
  if (p.x == q.x) {
    // either inverse points or a doubling
    if (q.y == -p.y - a1() * p.x - a3()) return CurvePoint::at_infinity();
    Rational den = 2 * p.y + a1() * p.x + a3();
    assert(den != 0);
    lambda = (3 * p.x * p.x + 2 * a2() * p.x + a4() - a1() * p.y) / den;
  } else {
    lambda = (q.y - p.y) / (q.x - p.x);
  }
  Rational x3 = lambda * lambda + a1() * lambda - a2() - p.x - q.x;
  Rational y3 = lambda * (p.x - x3) - p.y - a1() * x3 - a3();
  CurvePoint r = CurvePoint::affine(x3, y3);
  assert(on_curve(r));
  return r;
}

CurvePoint EllipticCurveQ::mul(long n, const CurvePoint& p) const {
  CurvePoint base = p;
  if (n < 0) {
    base = negate(base);
    n = -n;
  }
  CurvePoint acc = CurvePoint::at_infinity();
  while (n > 0) {
    if (n & 1) acc = add(acc, base);
    n >>= 1;
    if (n) base = add(base, base);
  }
  return acc;
}

EllipticCurveQ specialize(const WeierstrassModel& m, const Rational& t0) {
  return EllipticCurveQ({m.a1.eval(t0), m.a2.eval(t0), m.a3.eval(t0),
                         m.a4.eval(t0), m.a6.eval(t0)});
}

namespace {

const std::vector<unsigned long>& small_primes() {
  static const std::vector<unsigned long> primes = [] {
    const unsigned long limit = 1u << 20;
    std::vector<bool> comp(limit + 1, false);
    std::vector<unsigned long> out;
    for (unsigned long i = 2; i <= limit; ++i) {
      if (comp[i]) continue;
      out.push_back(i);
      for (unsigned long j = i * i; j <= limit; j += i) comp[j] = true;
    }
    return out;
  }();
  return primes;
}

}  // namespace

IntegralModel integral_model(const EllipticCurveQ& e) {
  const int weights[5] = {1, 2, 3, 4, 6};
  std::array<Rational, 5> a = {e.a1(), e.a2(), e.a3(), e.a4(), e.a6()};

  // clear denominators: for each prime p of a denominator take the
  // least exponent k with v_p(a_i) + i k >= 0 for all i
  Integer den_lcm = 1;
  for (const auto& ai : a) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), ai.get_den().get_mpz_t());
  Integer d_scale = 1;
  if (den_lcm != 1) {
    Integer rest = den_lcm;
    for (unsigned long p : small_primes()) {
      if (rest == 1) break;
      if (!mpz_divisible_ui_p(rest.get_mpz_t(), p)) continue;
      Integer pz(static_cast<long>(p));
      mpz_remove(rest.get_mpz_t(), rest.get_mpz_t(), pz.get_mpz_t());
      long k = 0;
      for (int i = 0; i < 5; ++i) {
        if (a[i] == 0) continue;
        Integer tmp;
        long vp = long(mpz_remove(tmp.get_mpz_t(), a[i].get_den().get_mpz_t(),
                                  pz.get_mpz_t()));
        long need = (vp + weights[i] - 1) / weights[i];
        if (need > k) k = need;
      }
      Integer pk;
      mpz_pow_ui(pk.get_mpz_t(), pz.get_mpz_t(), static_cast<unsigned long>(k));
      d_scale *= pk;
    }
    // primes beyond the sieve: the full lcm power of each is always a
    // legal (if lazy) exponent, since v_p(den a_i) <= v_p(lcm) <= i v_p(lcm)
    if (rest != 1) d_scale *= rest;
  }
  Rational scale(d_scale);
  for (int i = 0; i < 5; ++i) {
    Integer w;
    mpz_pow_ui(w.get_mpz_t(), d_scale.get_mpz_t(),
               static_cast<unsigned long>(weights[i]));
    a[i] *= Rational(w);
    assert(a[i].get_den() == 1);
  }

  // scale out primes q with v_q(a_i) >= i everywhere (small q only)
  for (;;) {
    Integer g = 0;
    for (const auto& ai : a)
      if (ai != 0)
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), ai.get_num().get_mpz_t());
    if (g <= 1) break;
    bool reduced = false;
    for (unsigned long p : small_primes()) {
      if (mpz_cmp_ui(g.get_mpz_t(), p) < 0) break;
      if (!mpz_divisible_ui_p(g.get_mpz_t(), p)) continue;
      Integer pz(static_cast<long>(p));
      bool ok = true;
      for (int i = 0; i < 5 && ok; ++i) {
        if (a[i] == 0) continue;
        Integer tmp;
        long vp = long(mpz_remove(tmp.get_mpz_t(), a[i].get_num().get_mpz_t(),
                                  pz.get_mpz_t()));
        if (vp < weights[i]) ok = false;
      }
      if (!ok) continue;
      for (int i = 0; i < 5; ++i) {
        Integer pk;
        mpz_pow_ui(pk.get_mpz_t(), pz.get_mpz_t(),
                   static_cast<unsigned long>(weights[i]));
        a[i] /= Rational(pk);
      }
      scale /= Rational(pz);
      reduced = true;
      break;
    }
    if (!reduced) break;
  }

  return IntegralModel{EllipticCurveQ(a), scale};
}

}  // namespace ellsurf
