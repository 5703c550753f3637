// specializations to curves over Q and their Mordell-Weil data: exact
// point arithmetic, rational point search with a quadratic-residue
// sieve, canonical heights with explicit error bounds, rank
// certificates from height Gram matrices, and the fiberwise rank-jump
// search.

#ifndef ELLSURF_MWRANK_HPP
#define ELLSURF_MWRANK_HPP

#include "ellsurf/kodaira.hpp"

#include <array>
#include <vector>

namespace ellsurf {

// affine point or the point at infinity
struct CurvePoint {
  bool infinite = true;
  Rational x, y;

  static CurvePoint at_infinity() { return {}; }
  static CurvePoint affine(const Rational& x, const Rational& y) {
    CurvePoint p;
    p.infinite = false;
    p.x = x;
    p.y = y;
    return p;
  }
  bool operator==(const CurvePoint& o) const {
    if (infinite != o.infinite) return false;
    return infinite || (x == o.x && y == o.y);
  }
};

// y^2 + a1 x y + a3 y = x^3 + a2 x^2 + a4 x + a6 over Q, nonsingular
class EllipticCurveQ {
 public:
  // order: a1, a2, a3, a4, a6; throws SingularModelError when the
  // discriminant vanishes
  explicit EllipticCurveQ(const std::array<Rational, 5>& a);

  const Rational& a1() const { return a_[0]; }
  const Rational& a2() const { return a_[1]; }
  const Rational& a3() const { return a_[2]; }
  const Rational& a4() const { return a_[3]; }
  const Rational& a6() const { return a_[4]; }
  const Rational& b2() const { return b2_; }
  const Rational& b4() const { return b4_; }
  const Rational& b6() const { return b6_; }
  const Rational& b8() const { return b8_; }
  const Rational& disc() const { return disc_; }

  bool integral() const;  // all a_i integers

  bool on_curve(const CurvePoint& p) const;
  CurvePoint negate(const CurvePoint& p) const;
  CurvePoint add(const CurvePoint& p, const CurvePoint& q) const;
  CurvePoint dbl(const CurvePoint& p) const { return add(p, p); }
  CurvePoint mul(long n, const CurvePoint& p) const;

 private:
  std::array<Rational, 5> a_;
  Rational b2_, b4_, b6_, b8_, disc_;
};

// evaluate the family at t = t0; throws SingularModelError over a
// singular fiber
EllipticCurveQ specialize(const WeierstrassModel& m, const Rational& t0);

// integral model reached by x -> scale^2 x, y -> scale^3 y, with excess
// prime powers (all small primes q with v_q(a_i) >= i) scaled back out
struct IntegralModel {
  EllipticCurveQ curve;
  Rational scale;

  CurvePoint to_integral(const CurvePoint& p) const {
    if (p.infinite) return p;
    return CurvePoint::affine(p.x * scale * scale, p.y * scale * scale * scale);
  }
  CurvePoint from_integral(const CurvePoint& p) const {
    if (p.infinite) return p;
    return CurvePoint::affine(p.x / (scale * scale),
                              p.y / (scale * scale * scale));
  }
};

IntegralModel integral_model(const EllipticCurveQ& e);

// ------------------------------------------------------------ heights

struct HeightOptions {
  double precision = 1e-10;  // requested absolute error for one height
};

struct HeightValue {
  double value = 0;
  double error = 0;  // rigorous bound on |value - true|
};

// canonical height normalized by h(x): the limit of h(x(2^n P)) / 4^n.
// exact rational/p-adic bookkeeping for the gcd part, long-float
// iteration for the archimedean part, rigorous tail bound.
HeightValue canonical_height(const EllipticCurveQ& e, const CurvePoint& p,
                             const HeightOptions& opt = {});

// (h(P+Q) - h(P) - h(Q)) / 2 under the same normalization
HeightValue height_pairing(const EllipticCurveQ& e, const CurvePoint& p,
                           const CurvePoint& q, const HeightOptions& opt = {});

// ------------------------------------------------------------- search

struct SearchOptions {
  long height_bound = 1000;  // numerator box: x = m / d^2, |m| <= B, d <= sqrt(B)
};

// all affine rational points within the box, on any model (an integral
// model is searched internally and the points are mapped back).
// deterministic order.
std::vector<CurvePoint> point_search(const EllipticCurveQ& e,
                                     const SearchOptions& opt = {});

// --------------------------------------------------------------- rank

struct RankCertificate {
  std::vector<CurvePoint> points;          // surviving representatives
  std::vector<std::vector<double>> gram;   // height pairing matrix
  double gram_error = 0;                   // entrywise error bound
  double tolerance = 0;                    // pivot threshold used
  std::vector<int> pivot_points;           // indices certified independent
  int certified_rank = 0;
};

// lower bound for the Mordell-Weil rank from a list of points: dedupe
// inverses, drop torsion (height below tolerance), then count positive
// pivots of the Gram matrix
RankCertificate rank_lower_bound(const EllipticCurveQ& e,
                                 const std::vector<CurvePoint>& pts,
                                 const HeightOptions& hopt = {},
                                 double tolerance = 1e-6);

// ---------------------------------------------------------- rank jumps

struct JumpOptions {
  int jump = 1;           // certify rank >= generic_rank + jump
  long t_min = -20;
  long t_max = 20;
  SearchOptions search;
  HeightOptions heights;
  double tolerance = 1e-6;
  int threads = 1;
};

struct JumpReport {
  struct Hit {
    Rational t;
    int certified_rank = 0;
    std::vector<CurvePoint> generators;
  };
  struct SkippedFiber {
    Rational t;
    std::string fiber_type;
  };
  int generic_rank = 0;
  std::vector<Hit> hits;                  // ascending t
  std::vector<SkippedFiber> skipped_singular;  // ascending t
};

// scan integer parameters, certify fibers whose rank exceeds the given
// generic rank by the requested jump; singular fibers are reported and
// skipped
JumpReport jump_search(const WeierstrassModel& m, int generic_rank,
                       const JumpOptions& opt = {});

}  // namespace ellsurf

#endif
