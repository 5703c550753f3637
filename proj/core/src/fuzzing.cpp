#include "ellsurf/fuzzing.hpp"

#include <vector>

namespace ellsurf {

namespace {

Rational rand_coeff(SplitMix64& rng, long lo, long hi) {
  return Rational(lo + long(rng.below(std::uint64_t(hi - lo + 1))));
}

UniPoly rand_poly(SplitMix64& rng, int maxdeg, long lo, long hi) {
  int d = int(rng.below(std::uint64_t(maxdeg + 1)));
  std::vector<Rational> c(std::size_t(d) + 1);
  for (auto& ci : c) ci = rand_coeff(rng, lo, hi);
  return UniPoly(c);
}

}  // namespace

WeierstrassModel random_model(SplitMix64& rng) {
  for (;;) {
    WeierstrassModel m;
    switch (rng.below(3)) {
      case 0:
        // short models with low-degree coefficients
        m.a4 = rand_poly(rng, 2, -4, 4);
        m.a6 = rand_poly(rng, 3, -4, 4);
        break;
      case 1:
        // full long models
        m.a1 = rand_poly(rng, 1, -2, 2);
        m.a2 = rand_poly(rng, 1, -3, 3);
        m.a3 = rand_poly(rng, 1, -3, 3);
        m.a4 = rand_poly(rng, 1, -3, 3);
        m.a6 = rand_poly(rng, 1, -3, 3);
        break;
      default:
        // monomial-heavy short models: rich in additive places at 0
        // and at infinity
        m.a4 = UniPoly::monomial(int(rng.below(5)), rand_coeff(rng, -3, 3));
        m.a6 = UniPoly::monomial(int(rng.below(7)), rand_coeff(rng, -3, 3));
        break;
    }
    if (invariants(m).disc.is_zero()) continue;
    return m;
  }
}

}  // namespace ellsurf
