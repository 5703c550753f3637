#include "ellsurf/qtarith.hpp"

#include <cassert>

namespace ellsurf {

Place Place::infinity() {
  Place p;
  p.infinite_ = true;
  return p;
}

Place Place::finite(const UniPoly& monic_irreducible) {
  if (monic_irreducible.degree() < 1)
    throw InternalError("finite place needs positive degree");
  if (monic_irreducible.lead() != 1)
    throw InternalError("finite place polynomial must be monic");
  Place p;
  p.poly_ = monic_irreducible;
  return p;
}

Place Place::at(const Rational& a) {
  return finite(UniPoly({-a, Rational(1)}));
}

const UniPoly& Place::poly() const {
  if (infinite_) throw InternalError("infinite place has no polynomial");
  return poly_;
}

bool Place::operator==(const Place& o) const {
  if (infinite_ != o.infinite_) return false;
  return infinite_ || poly_ == o.poly_;
}

bool Place::canonical_less(const Place& a, const Place& b) {
  if (a.infinite_ != b.infinite_) return b.infinite_;  // infinity sorts last
  if (a.infinite_) return false;
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  const auto& ca = a.poly_.coeffs();
  const auto& cb = b.poly_.coeffs();
  // compare highest coefficients first for a stable dictionary order
  for (std::size_t i = ca.size(); i-- > 0;) {
    if (ca[i] != cb[i]) return ca[i] < cb[i];
  }
  return false;
}

std::string Place::to_string() const {
  return infinite_ ? "inf" : poly_.to_string();
}

P1Point P1Point::infinity() {
  P1Point p;
  p.infinite_ = true;
  return p;
}

P1Point P1Point::finite(const Rational& a) {
  P1Point p;
  p.value_ = a;
  return p;
}

const Rational& P1Point::value() const {
  if (infinite_) throw InternalError("infinite point has no value");
  return value_;
}

bool P1Point::operator==(const P1Point& o) const {
  if (infinite_ != o.infinite_) return false;
  return infinite_ || value_ == o.value_;
}

std::string P1Point::to_string() const {
  return infinite_ ? "inf" : rational_to_string(value_);
}

P1Point P1Point::from_string(const std::string& s) {
  if (s == "inf" || s == "oo" || s == "infinity") return infinity();
  return finite(rational_from_string(s));
}

int valuation(const UniPoly& f, const Place& p) {
  if (f.is_zero()) return kInfiniteValuation;
  if (p.is_infinite())
    throw InternalError("valuation at infinity is chart-dependent; use RatFunc");
  int k = 0;
  UniPoly g = f;
  for (;;) {
    PolyDivMod d = divmod(g, p.poly());
    if (!d.rem.is_zero()) return k;
    g = d.quot;
    ++k;
  }
}

UniPoly remove_factor(const UniPoly& f, const Place& p, int* k) {
  if (f.is_zero()) throw InternalError("remove_factor of zero polynomial");
  int count = 0;
  UniPoly g = f;
  for (;;) {
    PolyDivMod d = divmod(g, p.poly());
    if (!d.rem.is_zero()) break;
    g = d.quot;
    ++count;
  }
  if (k) *k = count;
  return g;
}

}  // namespace ellsurf
