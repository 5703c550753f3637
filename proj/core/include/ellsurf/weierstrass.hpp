// long Weierstrass models over Q(t) with polynomial coefficients:
//   y^2 + a1 x y + a3 y = x^3 + a2 x^2 + a4 x + a6
// invariants, coordinate changes, the chart at t = infinity, and
// minimal models at places (residue characteristic zero).

#ifndef ELLSURF_WEIERSTRASS_HPP
#define ELLSURF_WEIERSTRASS_HPP

#include "ellsurf/qtarith.hpp"

namespace ellsurf {

// the generic fiber is singular (discriminant identically zero)
struct SingularModelError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct WeierstrassModel {
  UniPoly a1, a2, a3, a4, a6;

  bool operator==(const WeierstrassModel& o) const = default;

  // y^2 = x^3 + a4 x + a6
  static WeierstrassModel short_form(const UniPoly& a4, const UniPoly& a6);
};

struct InvariantSet {
  UniPoly b2, b4, b6, b8;
  UniPoly c4, c6, disc;
};

// computes b2..b8, c4, c6 and the discriminant, and cross-checks the
// classical relations 4 b8 = b2 b6 - b4^2 and 1728 disc = c4^3 - c6^2
// exactly before returning.
InvariantSet invariants(const WeierstrassModel& m);

// substitution x = u^2 x' + r, y = u^3 y' + s u^2 x' + w with u != 0.
// entries are rational functions so that scalings by powers of a place
// and their inverses compose freely.
struct ModelTransform {
  RatFunc u, r, s, w;

  static ModelTransform identity();
  // u-only scaling
  static ModelTransform scaling(const RatFunc& u);
  ModelTransform inverse() const;
};

// apply a coordinate change; throws InternalError if the resulting
// coefficients fail to be polynomials (the library only ever applies
// admissible changes).
WeierstrassModel transform(const WeierstrassModel& m, const ModelTransform& T);

// the same curve in the chart s = 1/t: coefficients
// b_i(s) = s^(i d) a_i(1/s) with d minimal so that every b_i is a
// polynomial.  the fiber at t = infinity is the fiber at s = 0.
struct InfinityChart {
  WeierstrassModel model;
  int weight;  // the d above
};
InfinityChart chart_at_infinity(const WeierstrassModel& m);

// completed b-form (a1 = a3 = 0): y^2 = x^3 + (b2/4) x^2 + (b4/2) x + b6/4
WeierstrassModel to_b_form(const WeierstrassModel& m);

// y^2 = x^3 - 27 c4 x - 54 c6; same c4, c6 and discriminant as m
WeierstrassModel to_c_model(const WeierstrassModel& m);

// with residue characteristic zero, a model is minimal at a finite
// place p exactly when not all of v(c4) >= 4, v(c6) >= 6, v(disc) >= 12
// hold.  throws SingularModelError when the discriminant vanishes
// identically.
bool is_minimal_at(const WeierstrassModel& m, const Place& p);

// a model minimal at p and integral at p, reached by scalings (and
// possibly passing through the c-model when the coefficients do not
// divide evenly).  other places are untouched up to scaling.
WeierstrassModel minimalize_at(const WeierstrassModel& m, const Place& p);

// minimal at every finite place (infinity is handled on its own chart
// by the classification code)
WeierstrassModel finite_minimalize(const WeierstrassModel& m);

}  // namespace ellsurf

#endif
