#include "ellsurf/weierstrass.hpp"

#include <cassert>

namespace ellsurf {

WeierstrassModel WeierstrassModel::short_form(const UniPoly& a4, const UniPoly& a6) {
  WeierstrassModel m;
  m.a4 = a4;
  m.a6 = a6;
  return m;
}

InvariantSet invariants(const WeierstrassModel& m) {
  InvariantSet s;
  s.b2 = m.a1 * m.a1 + 4 * m.a2;
  s.b4 = 2 * m.a4 + m.a1 * m.a3;
  s.b6 = m.a3 * m.a3 + 4 * m.a6;
  s.b8 = m.a1 * m.a1 * m.a6 + 4 * m.a2 * m.a6 - m.a1 * m.a3 * m.a4 +
         m.a2 * m.a3 * m.a3 - m.a4 * m.a4;
  s.c4 = s.b2 * s.b2 - 24 * s.b4;
  s.c6 = -(s.b2 * s.b2 * s.b2) + 36 * s.b2 * s.b4 - 216 * s.b6;
  s.disc = -(s.b2 * s.b2) * s.b8 - 8 * (s.b4 * s.b4 * s.b4) - 27 * (s.b6 * s.b6) +
           9 * s.b2 * s.b4 * s.b6;
  if (4 * s.b8 != s.b2 * s.b6 - s.b4 * s.b4)
    throw InternalError("b-invariant relation failed");
  if (Rational(1728) * s.disc != s.c4 * s.c4 * s.c4 - s.c6 * s.c6)
    throw InternalError("c-invariant relation failed");
  return s;
}

ModelTransform ModelTransform::identity() {
  ModelTransform T;
  T.u = RatFunc(Rational(1));
  return T;
}

ModelTransform ModelTransform::scaling(const RatFunc& u) {
  ModelTransform T = identity();
  T.u = u;
  return T;
}

ModelTransform ModelTransform::inverse() const {
  // inverse of x = u^2 x' + r, y = u^3 y' + s u^2 x' + w
  ModelTransform inv;
  RatFunc u2 = u * u;
  RatFunc u3 = u2 * u;
  inv.u = RatFunc(Rational(1)) / u;
  inv.r = -r / u2;
  inv.s = -s / u;
  inv.w = (r * s - w) / u3;
  return inv;
}

namespace {

UniPoly require_poly(const RatFunc& f, const char* what) {
  if (!f.is_poly())
    throw InternalError(std::string("transform produced a non-polynomial ") + what);
  return f.num();
}

}  // namespace

WeierstrassModel transform(const WeierstrassModel& m, const ModelTransform& T) {
  if (T.u.is_zero()) throw InternalError("transform with u = 0");
  RatFunc a1(m.a1), a2(m.a2), a3(m.a3), a4(m.a4), a6(m.a6);
  const RatFunc &r = T.r, &s = T.s, &w = T.w;
  RatFunc u2 = T.u * T.u;
  RatFunc u3 = u2 * T.u;
  RatFunc u4 = u2 * u2;
  RatFunc u6 = u3 * u3;
  RatFunc n1 = (a1 + RatFunc(Rational(2)) * s) / T.u;
  RatFunc n2 = (a2 - s * a1 + RatFunc(Rational(3)) * r - s * s) / u2;
  RatFunc n3 = (a3 + r * a1 + RatFunc(Rational(2)) * w) / u3;
  RatFunc n4 =
      (a4 - s * a3 + RatFunc(Rational(2)) * r * a2 - (w + r * s) * a1 +
       RatFunc(Rational(3)) * r * r - RatFunc(Rational(2)) * s * w) /
      u4;
  RatFunc n6 = (a6 + r * a4 + r * r * a2 + r * r * r - w * a3 - w * w - r * w * a1) / u6;
  WeierstrassModel out;
  out.a1 = require_poly(n1, "a1");
  out.a2 = require_poly(n2, "a2");
  out.a3 = require_poly(n3, "a3");
  out.a4 = require_poly(n4, "a4");
  out.a6 = require_poly(n6, "a6");
  return out;
}

InfinityChart chart_at_infinity(const WeierstrassModel& m) {
  // smallest d with i*d >= deg a_i for every i
  int d = 0;
  auto need = [&](const UniPoly& a, int i) {
    if (a.is_zero()) return;
    int k = (a.degree() + i - 1) / i;
    if (k > d) d = k;
  };
  need(m.a1, 1);
  need(m.a2, 2);
  need(m.a3, 3);
  need(m.a4, 4);
  need(m.a6, 6);
  InfinityChart out;
  out.weight = d;
  out.model.a1 = m.a1.reverse_to(1 * d);
  out.model.a2 = m.a2.reverse_to(2 * d);
  out.model.a3 = m.a3.reverse_to(3 * d);
  out.model.a4 = m.a4.reverse_to(4 * d);
  out.model.a6 = m.a6.reverse_to(6 * d);
  return out;
}

WeierstrassModel to_b_form(const WeierstrassModel& m) {
  ModelTransform T = ModelTransform::identity();
  T.s = RatFunc(m.a1) * RatFunc(Rational(-1, 2));
  T.w = RatFunc(m.a3) * RatFunc(Rational(-1, 2));
  return transform(m, T);
}

WeierstrassModel to_c_model(const WeierstrassModel& m) {
  // y^2 = x^3 - c4/48 x - c6/864 has exactly the same c4, c6 and
  // discriminant as the input model
  InvariantSet s = invariants(m);
  WeierstrassModel out;
  out.a4 = s.c4.scale(Rational(-1, 48));
  out.a6 = s.c6.scale(Rational(-1, 864));
  return out;
}

namespace {

int val_or_inf(const UniPoly& f, const Place& p) {
  return f.is_zero() ? kInfiniteValuation : valuation(f, p);
}

// valuations of a_i at p, as multiples usable for a scaling test
bool coefficientwise_step(const WeierstrassModel& m, const Place& p, int* delta) {
  int d = kInfiniteValuation;
  const UniPoly* as[5] = {&m.a1, &m.a2, &m.a3, &m.a4, &m.a6};
  int wt[5] = {1, 2, 3, 4, 6};
  for (int i = 0; i < 5; ++i) {
    if (as[i]->is_zero()) continue;
    d = std::min(d, valuation(*as[i], p) / wt[i]);
  }
  if (d == kInfiniteValuation || d <= 0) return false;
  *delta = d;
  return true;
}

}  // namespace

bool is_minimal_at(const WeierstrassModel& m, const Place& p) {
  InvariantSet s = invariants(m);
  if (s.disc.is_zero()) throw SingularModelError("model has identically zero discriminant");
  int vc4 = val_or_inf(s.c4, p);
  int vc6 = val_or_inf(s.c6, p);
  int vd = valuation(s.disc, p);
  return !(vc4 >= 4 && vc6 >= 6 && vd >= 12);
}

WeierstrassModel minimalize_at(const WeierstrassModel& m, const Place& p) {
  WeierstrassModel cur = m;
  for (;;) {
    if (is_minimal_at(cur, p)) return cur;
    int delta = 0;
    if (coefficientwise_step(cur, p, &delta)) {
      ModelTransform T =
          ModelTransform::scaling(RatFunc(p.poly().pow(unsigned(delta))));
      cur = transform(cur, T);
      continue;
    }
    // coefficients do not divide evenly; the c-model has the same c4,
    // c6 and discriminant, and there v(c4) >= 4, v(c6) >= 6 make the
    // scaling by p legal
    cur = to_c_model(cur);
    if (!coefficientwise_step(cur, p, &delta))
      throw InternalError("minimalization stalled");
    cur = transform(cur, ModelTransform::scaling(RatFunc(p.poly().pow(unsigned(delta)))));
  }
}

WeierstrassModel finite_minimalize(const WeierstrassModel& m) {
  InvariantSet inv = invariants(m);
  if (inv.disc.is_zero())
    throw SingularModelError("model has identically zero discriminant");
  WeierstrassModel cur = m;
  if (inv.disc.degree() > 0) {
    Factorization fac = factor_q(squarefree_part(inv.disc));
    for (const auto& f : fac.factors) cur = minimalize_at(cur, Place::finite(f.poly));
  }
  return cur;
}

}  // namespace ellsurf
