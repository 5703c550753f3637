// rational point search on an integral model.  x = m / d^2 with
// gcd(m, d) = 1, |m| <= B, d <= sqrt(B); the completed square
//   (2y + a1 x + a3)^2 = (4 m^3 + b2 m^2 d^2 + 2 b4 m d^4 + b6 d^6) / d^6
// reduces the search to testing N(m, d) for squareness.  N mod (a
// product of small odd primes) is advanced by cubic finite differences
// and tested against per-prime quadratic residue tables; the rare
// survivors get the exact bignum test.

#include "ellsurf/mwrank.hpp"

#include <array>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <vector>

namespace ellsurf {

namespace {

constexpr std::array<std::uint64_t, 8> kSievePrimes = {3,  5,  7,  11,
                                                       13, 17, 19, 23};

const std::array<std::vector<char>, 8>& qr_tables() {
  static const std::array<std::vector<char>, 8> tables = [] {
    std::array<std::vector<char>, 8> t;
    for (std::size_t i = 0; i < kSievePrimes.size(); ++i) {
      std::uint64_t p = kSievePrimes[i];
      t[i].assign(p, 0);
      for (std::uint64_t r = 0; r < p; ++r) t[i][(r * r) % p] = 1;
    }
    return t;
  }();
  return tables;
}

}  // namespace

std::vector<CurvePoint> point_search(const EllipticCurveQ& e,
                                     const SearchOptions& opt) {
  std::vector<CurvePoint> out;
  long bound = opt.height_bound;
  if (bound < 1) return out;

  IntegralModel im = integral_model(e);
  const EllipticCurveQ& ei = im.curve;
  const Integer b2 = ei.b2().get_num();
  const Integer b4 = ei.b4().get_num();
  const Integer b6 = ei.b6().get_num();
  const Integer a1 = ei.a1().get_num();
  const Integer a3 = ei.a3().get_num();

  std::uint64_t w = 1;
  for (std::uint64_t p : kSievePrimes) w *= p;
  const auto& qr = qr_tables();

  long dmax = long(std::sqrt(double(bound)));
  while ((dmax + 1) * (dmax + 1) <= bound) ++dmax;
  while (dmax * dmax > bound) --dmax;

  for (long dd = 1; dd <= dmax; ++dd) {
    Integer d(dd);
    Integer d2 = d * d;
    Integer c2 = b2 * d2;
    Integer c1 = 2 * b4 * d2 * d2;
    Integer c0 = b6 * d2 * d2 * d2;
    auto nval = [&](long m) -> Integer {
      Integer mz(m);
      return ((4 * mz + c2) * mz + c1) * mz + c0;
    };

    const long m0 = -bound;
    std::uint64_t f0 = mpz_fdiv_ui(Integer(nval(m0)).get_mpz_t(), w);
    std::uint64_t f1 = mpz_fdiv_ui(nval(m0 + 1).get_mpz_t(), w);
    std::uint64_t f2 = mpz_fdiv_ui(nval(m0 + 2).get_mpz_t(), w);
    std::uint64_t s1 = (f1 + w - f0) % w;
    std::uint64_t s2 = (f2 + f0 + 2 * w - 2 * f1) % w;
    const std::uint64_t s3 = 24 % w;

    for (long m = m0; m <= bound; ++m) {
      std::uint64_t v = f0;
      f0 = (f0 + s1) % w;
      s1 = (s1 + s2) % w;
      s2 = (s2 + s3) % w;

      bool pass = true;
      for (std::size_t i = 0; i < kSievePrimes.size() && pass; ++i)
        pass = qr[i][v % kSievePrimes[i]] != 0;
      if (!pass) continue;
      if (std::gcd(std::labs(m), dd) != 1) continue;

      Integer n = nval(m);
      if (n < 0) continue;
      if (!mpz_perfect_square_p(n.get_mpz_t())) continue;
      Integer s;
      mpz_sqrt(s.get_mpz_t(), n.get_mpz_t());
      Integer mz(m);
      Integer shift = a1 * mz * d + a3 * d2 * d;
      Rational x(mz, d2);
      x.canonicalize();
      Rational den(2 * d2 * d);
      for (int sign = 0; sign < (s == 0 ? 1 : 2); ++sign) {
        Integer num = (sign == 0 ? s : -s) - shift;
        Rational y(num);
        y /= den;
        CurvePoint p = CurvePoint::affine(x, y);
        assert(ei.on_curve(p));
        out.push_back(im.from_integral(p));
      }
    }
  }
  return out;
}

}  // namespace ellsurf
