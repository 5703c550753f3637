// quadratic base changes of the t-line: explicit degree-2 covers of
// P^1 with prescribed branch points, pullback of Weierstrass models,
// the induced transformation of singular fibers, Euler-number
// bookkeeping, and genus computations for towers of such covers.

#ifndef ELLSURF_BASECHANGE_HPP
#define ELLSURF_BASECHANGE_HPP

#include "ellsurf/kodaira.hpp"

namespace ellsurf {

struct InvalidCover : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidTower : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// a degree-2 map P^1_s -> P^1_t ramified exactly over branch1 (the
// image of s = infinity) and branch2 (the image of s = 0); lambda
// selects the member of the one-parameter family of such maps, and
// matters up to squares (it twists the pulled-back surface).
struct QuadraticCover {
  P1Point branch1 = P1Point::infinity();
  P1Point branch2 = P1Point::finite(Rational(0));
  Rational lambda = Rational(1);

  // the map as a fraction t = P(s)/Q(s); throws InvalidCover when the
  // data is degenerate (equal branch points, lambda = 0)
  struct Map {
    UniPoly P, Q;
  };
  Map map() const;
  void validate() const;
};

// substitute t = P(s)/Q(s) into the model and clear denominators
// through an admissible change of coordinates, then reduce to a model
// minimal at every finite place of s.
WeierstrassModel pullback(const WeierstrassModel& m, const QuadraticCover& cover);

// the fiber type over the image point after a quadratic base change:
// ramified points transform, unramified fibers are preserved (they
// just appear at each preimage point).
KodairaType fiber_transform(const KodairaType& t, bool ramified);

// places of the s-line over a place of the t-line; multiplicity 2
// marks a ramified preimage.  the multiplicities weighted by residue
// degree always sum to 2 deg(base).
struct PreimagePlace {
  Place place = Place::infinity();
  int multiplicity = 1;
};
std::vector<PreimagePlace> preimage_places(const QuadraticCover& cover,
                                           const Place& base);

// classify both surfaces and confirm the predicted fiber types at
// every preimage place together with the Euler-number identity
//   e(pulled) = 2 e(base) - sum over branch points (2 e_b - e_b')
struct BaseChangeCheck {
  SurfaceReport base, pulled;
  bool types_match = false;
  bool euler_consistent = false;
  std::vector<std::string> notes;  // human-readable mismatch detail
  bool ok() const { return types_match && euler_consistent; }
};
BaseChangeCheck verify_basechange(const WeierstrassModel& m,
                                  const QuadraticCover& cover);

// an iterated fiber product of quadratic covers of the t-line
struct CoverTower {
  std::vector<QuadraticCover> covers;
};

// genus of the (smooth projective model of the) tower; throws
// InvalidTower when some subtower is forced to be disconnected (a
// subset of covers with every branch point shared an even number of
// times).
int tower_genus(const CoverTower& tower);

// genus of the curve obtained from the tower by one further double
// cover with `branch_count` branch points, `shared_count` of which lie
// over the tower's branch locus (at tower-ramified points).  used to
// rule out parameter lines: a value >= 2 leaves only finitely many
// rational points.
int obstruction_genus(const CoverTower& tower, int branch_count, int shared_count);

}  // namespace ellsurf

#endif
