// seeded random nonsingular models for differential testing.  the
// shapes are mixed so that additive places of every flavor show up
// often, not just generic multiplicative ones.

#ifndef ELLSURF_FUZZING_HPP
#define ELLSURF_FUZZING_HPP

#include "ellsurf/weierstrass.hpp"

namespace ellsurf {

WeierstrassModel random_model(SplitMix64& rng);

}  // namespace ellsurf

#endif
