// canonical height via the duplication recursion on x-coordinates.
//
// write x(P) = a/b in lowest terms and let
//   F(a,b) = a^4 - b4 a^2 b^2 - 2 b6 a b^3 - b8 b^4
//   G(a,b) = 4 a^3 b + b2 a^2 b^2 + 2 b4 a b^3 + b6 b^4
// so that x(2P) = F(a,b) / G(a,b).  with g_n = gcd(F_n, G_n) at the
// integer pair of step n and eps_n = log(max|F_n|,|G_n|) - 4 log max(|a_n|,|b_n|),
//
//   hhat(P) = h(x(P)) + sum_n 4^{-(n+1)} (eps_n - log g_n)
//
// exactly.  the eps part is a normalized real iteration carried in big
// floats; the gcd part is a p-adic iteration at the finitely many
// primes dividing gcd(g_0, Res(F,G)); the truncation error is bounded
// through Bezout identities for F, G, so the reported error is rigorous
// up to big-float round-off (orders of magnitude below it).

#include "ellsurf/mwrank.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <vector>

namespace ellsurf {

namespace {

double log_abs(const Integer& z) {
  if (z == 0) return 0;
  signed long e = 0;
  double d = mpz_get_d_2exp(&e, z.get_mpz_t());
  return std::log(std::fabs(d)) + double(e) * std::log(2.0);
}

double log_abs(const Rational& q) {
  double n = log_abs(Integer(q.get_num()));
  double d = log_abs(Integer(q.get_den()));
  return n - d;
}

// naive height of a rational: log max(|num|, den)
double naive_height(const Rational& q) {
  Integer n = q.get_num();
  Integer d = q.get_den();
  mpz_abs(n.get_mpz_t(), n.get_mpz_t());
  return log_abs(n > d ? n : d);
}

struct DupForms {
  // integer coefficients of the two binary quartics
  Integer b2, b4, b6, b8;
  Integer res;       // resultant of F(x,1), G(x,1); nonzero
  double tail_c;     // |eps_n - log g_n| <= tail_c for every n
};

Integer eval_f(const DupForms& d, const Integer& a, const Integer& b) {
  Integer a2 = a * a, b2q = b * b;
  return a2 * a2 - d.b4 * a2 * b2q - 2 * d.b6 * a * b2q * b - d.b8 * b2q * b2q;
}

Integer eval_g(const DupForms& d, const Integer& a, const Integer& b) {
  Integer a2 = a * a, b2q = b * b;
  return 4 * a2 * a * b + d.b2 * a2 * b2q + 2 * d.b4 * a * b2q * b +
         d.b6 * b2q * b2q;
}

// log of the sum of |coefficients|, in the log domain so that huge
// cofactors from the extended euclid step cannot overflow
double log_coeff_sum(const UniPoly& p) {
  std::vector<double> logs;
  for (int i = 0; i <= std::max(p.degree(), 0); ++i)
    if (p.coeff(i) != 0) logs.push_back(log_abs(p.coeff(i)));
  if (logs.empty()) return -1e300;
  double mx = *std::max_element(logs.begin(), logs.end());
  double s = 0;
  for (double l : logs) s += std::exp(l - mx);
  return mx + std::log(s);
}

double log_sum_two(double la, double lb) {
  double mx = std::max(la, lb);
  return mx + std::log(std::exp(la - mx) + std::exp(lb - mx));
}

DupForms duplication_forms(const EllipticCurveQ& e) {
  assert(e.integral());
  DupForms d;
  d.b2 = e.b2().get_num();
  d.b4 = e.b4().get_num();
  d.b6 = e.b6().get_num();
  d.b8 = e.b8().get_num();

  UniPoly f({Rational(-d.b8), Rational(-2 * d.b6), Rational(-d.b4),
             Rational(0), Rational(1)});
  UniPoly g({Rational(d.b6), Rational(2 * d.b4), Rational(d.b2), Rational(4)});
  Rational res = resultant(f, g);
  assert(res.get_den() == 1);
  d.res = res.get_num();
  if (d.res == 0)
    throw InternalError("duplication forms share a root on a nonsingular curve");

  // upper bound: |F|, |G| <= (sum of |coeffs|) max(|a|,|b|)^4
  double e_plus = std::max(log_coeff_sum(f), log_coeff_sum(g));

  // lower bound via Bezout: u f + v g = 1 gives, at x = a/b with |a|<=|b|,
  //   1 <= (sum|u| + sum|v|) max(|F|,|G|) / max(|a|,|b|)^4,
  // and the reversed pair covers |a| > |b|
  PolyXgcd x1 = poly_xgcd(f, g);
  if (x1.g.degree() != 0)
    throw InternalError("duplication forms share a root on a nonsingular curve");
  double log_s1 = log_sum_two(log_coeff_sum(x1.u), log_coeff_sum(x1.v)) -
                  log_abs(x1.g.coeff(0));

  UniPoly fr({Rational(1), Rational(0), Rational(-d.b4), Rational(-2 * d.b6),
              Rational(-d.b8)});
  UniPoly gr({Rational(0), Rational(4), Rational(d.b2), Rational(2 * d.b4),
              Rational(d.b6)});
  PolyXgcd x2 = poly_xgcd(fr, gr);
  if (x2.g.degree() != 0)
    throw InternalError("duplication forms share a root on a nonsingular curve");
  double log_s2 = log_sum_two(log_coeff_sum(x2.u), log_coeff_sum(x2.v)) -
                  log_abs(x2.g.coeff(0));

  double e_minus = -std::max(log_s1, log_s2);
  d.tail_c = std::max(e_plus, log_abs(d.res) - e_minus) + 1.0;
  return d;
}

// distinct prime factors by trial division then brent rho
void factor_into(const Integer& n_in, std::vector<Integer>& out);

Integer brent_rho(const Integer& n, unsigned long c0) {
  // returns a nontrivial factor of odd composite n
  Integer y(2), x, d(1), q(1), ys, c(static_cast<long>(c0));
  unsigned long r = 1, m = 128;
  auto step = [&](Integer& v) {
    v = (v * v + c) % n;
  };
  while (d == 1) {
    x = y;
    for (unsigned long i = 0; i < r; ++i) step(y);
    unsigned long k = 0;
    while (k < r && d == 1) {
      ys = y;
      unsigned long lim = std::min(m, r - k);
      for (unsigned long i = 0; i < lim; ++i) {
        step(y);
        Integer diff = x - y;
        mpz_abs(diff.get_mpz_t(), diff.get_mpz_t());
        q = (q * diff) % n;
      }
      mpz_gcd(d.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      k += lim;
    }
    r <<= 1;
  }
  if (d == n) {
    // backtrack one step at a time
    d = 1;
    while (d == 1) {
      step(ys);
      Integer diff = x - ys;
      mpz_abs(diff.get_mpz_t(), diff.get_mpz_t());
      mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    }
  }
  return d;
}

void factor_into(const Integer& n_in, std::vector<Integer>& out) {
  Integer n = n_in;
  if (n < 0) n = -n;
  if (n <= 1) return;
  for (unsigned long p : {2ul, 3ul, 5ul, 7ul, 11ul, 13ul}) {
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      out.push_back(Integer(long(p)));
      Integer pz(static_cast<long>(p));
      mpz_remove(n.get_mpz_t(), n.get_mpz_t(), pz.get_mpz_t());
    }
  }
  unsigned long p = 17;
  while (p < 100000 && mpz_cmp_ui(n.get_mpz_t(), p) >= 0) {
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      out.push_back(Integer(long(p)));
      Integer pz(static_cast<long>(p));
      mpz_remove(n.get_mpz_t(), n.get_mpz_t(), pz.get_mpz_t());
    }
    p += 2;
  }
  if (n == 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 32)) {
    out.push_back(n);
    return;
  }
  // composite remainder with no factor below 1e5
  unsigned long c = 1;
  for (;;) {
    Integer f = brent_rho(n, c);
    if (f != n && f != 1) {
      factor_into(f, out);
      Integer q = n / f;
      factor_into(q, out);
      return;
    }
    ++c;
  }
}

}  // namespace

HeightValue canonical_height(const EllipticCurveQ& e, const CurvePoint& p0,
                             const HeightOptions& opt) {
  if (p0.infinite) return {0.0, 0.0};
  // torsion of 2-power order would make the x-orbit hit infinity; any
  // rational torsion order divides 12, so 8P = O catches all of it
  if (e.mul(8, p0).infinite) return {0.0, 0.0};

  IntegralModel im = integral_model(e);
  CurvePoint p = im.to_integral(p0);
  const EllipticCurveQ& ei = im.curve;
  DupForms d = duplication_forms(ei);

  double target = std::max(opt.precision, 1e-14);
  int n_terms = 12;
  {
    double tail = d.tail_c / 3.0;
    while (n_terms < 400 && tail * std::pow(4.0, -double(n_terms)) > target / 2)
      ++n_terms;
  }

  Integer a = p.x.get_num();
  Integer b = p.x.get_den();

  double h0 = naive_height(p.x);

  // archimedean part: normalized real orbit, eps_n read off the scale
  const int kPrec = 256;
  mpf_class alpha(0, kPrec), beta(0, kPrec), fa(0, kPrec), fb(0, kPrec),
      mx(0, kPrec);
  mpf_class cb2(d.b2, kPrec), cb4(d.b4, kPrec), cb6(d.b6, kPrec),
      cb8(d.b8, kPrec);
  {
    Integer aa = a, bb = b;
    mpz_abs(aa.get_mpz_t(), aa.get_mpz_t());
    mpf_class mz(aa > bb ? aa : bb, kPrec);
    alpha = mpf_class(a, kPrec) / mz;
    beta = mpf_class(b, kPrec) / mz;
  }
  double eps_sum = 0;
  for (int n = 0; n < n_terms; ++n) {
    mpf_class a2 = alpha * alpha, b2q = beta * beta;
    fa = a2 * a2 - cb4 * a2 * b2q - 2 * cb6 * alpha * b2q * beta -
         cb8 * b2q * b2q;
    fb = 4 * a2 * alpha * beta + cb2 * a2 * b2q + 2 * cb4 * alpha * b2q * beta +
         cb6 * b2q * b2q;
    mpf_class afa = abs(fa), afb = abs(fb);
    mx = afa > afb ? afa : afb;
    if (mx == 0)
      throw InternalError("duplication orbit vanished on a nontorsion point");
    signed long ex = 0;
    double md = mpf_get_d_2exp(&ex, mx.get_mpf_t());
    double eps = std::log(md) + double(ex) * std::log(2.0);
    eps_sum += std::ldexp(1.0, -2 * (n + 1)) * eps;
    alpha = fa / mx;
    beta = fb / mx;
  }

  // non-archimedean part: a prime can contribute only if it divides
  // both forms at step 0, and it must also divide the resultant
  double gcd_sum = 0;
  {
    Integer f0 = eval_f(d, a, b);
    Integer g0 = eval_g(d, a, b);
    if (g0 == 0)
      throw InternalError("2-power torsion escaped the early screen");
    Integer gg;
    mpz_gcd(gg.get_mpz_t(), f0.get_mpz_t(), g0.get_mpz_t());
    mpz_gcd(gg.get_mpz_t(), gg.get_mpz_t(), d.res.get_mpz_t());
    std::vector<Integer> primes;
    factor_into(gg, primes);
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    for (const Integer& pz : primes) {
      Integer tmp;
      long cap = long(mpz_remove(tmp.get_mpz_t(), d.res.get_mpz_t(),
                                 pz.get_mpz_t()));
      assert(cap >= 1);
      long budget = (long(n_terms) + 2) * (cap + 1) + 16;
      Integer mod;
      mpz_pow_ui(mod.get_mpz_t(), pz.get_mpz_t(),
                 static_cast<unsigned long>(budget));
      Integer pa = a % mod, pb = b % mod;
      if (pa < 0) pa += mod;
      if (pb < 0) pb += mod;
      long valid = budget;
      double logp = log_abs(pz);
      for (int n = 0; n < n_terms; ++n) {
        Integer fv = eval_f(d, pa, pb) % mod;
        Integer gv = eval_g(d, pa, pb) % mod;
        auto val_of = [&](const Integer& z) -> long {
          if (z == 0) return valid;
          Integer t2;
          return long(mpz_remove(t2.get_mpz_t(), z.get_mpz_t(),
                                 pz.get_mpz_t()));
        };
        long delta = std::min(val_of(fv), val_of(gv));
        assert(delta <= cap);
        if (delta > 0) {
          gcd_sum += std::ldexp(1.0, -2 * (n + 1)) * double(delta) * logp;
          Integer pd;
          mpz_pow_ui(pd.get_mpz_t(), pz.get_mpz_t(),
                     static_cast<unsigned long>(delta));
          fv /= pd;
          gv /= pd;
          valid -= delta;
          assert(valid > cap);
          mpz_pow_ui(mod.get_mpz_t(), pz.get_mpz_t(),
                     static_cast<unsigned long>(valid));
        }
        pa = fv % mod;
        pb = gv % mod;
        if (pa < 0) pa += mod;
        if (pb < 0) pb += mod;
      }
    }
  }

  double tail = d.tail_c / 3.0 * std::pow(4.0, -double(n_terms));
  HeightValue hv;
  hv.value = h0 + eps_sum - gcd_sum;
  hv.error = tail + 5e-14;
  return hv;
}

HeightValue height_pairing(const EllipticCurveQ& e, const CurvePoint& p,
                           const CurvePoint& q, const HeightOptions& opt) {
  HeightOptions o3 = opt;
  o3.precision = opt.precision * 2.0 / 3.0;
  HeightValue hpq = canonical_height(e, e.add(p, q), o3);
  HeightValue hp = canonical_height(e, p, o3);
  HeightValue hq = canonical_height(e, q, o3);
  HeightValue out;
  out.value = (hpq.value - hp.value - hq.value) / 2;
  out.error = (hpq.error + hp.error + hq.error) / 2;
  return out;
}

}  // namespace ellsurf
