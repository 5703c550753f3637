// fiber classification for elliptic surfaces over Q(t): per-place
// Kodaira types by two independent routes (valuation table on a
// minimal model, and the additive-reduction normal form), surface
// totals, and the geometric generic rank.

#ifndef ELLSURF_KODAIRA_HPP
#define ELLSURF_KODAIRA_HPP

#include "ellsurf/weierstrass.hpp"

#include <optional>
#include <vector>

namespace ellsurf {

// raised by operations that only make sense on a rational elliptic
// surface (degree-weighted Euler number 12)
struct NotRationalElliptic : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class KodairaType {
 public:
  enum class Family { I, II, III, IV, Istar, IVstar, IIIstar, IIstar };

  static KodairaType I(int n);      // I0 = smooth
  static KodairaType II();
  static KodairaType III();
  static KodairaType IV();
  static KodairaType Istar(int n);  // I0*, I1*, ...
  static KodairaType IVstar();
  static KodairaType IIIstar();
  static KodairaType IIstar();

  Family family() const { return family_; }
  int n() const { return n_; }  // only meaningful for I and Istar

  bool is_smooth() const { return family_ == Family::I && n_ == 0; }
  bool multiplicative() const { return family_ == Family::I && n_ >= 1; }
  bool additive() const { return !is_smooth() && !multiplicative(); }

  // number of irreducible components of the fiber
  int components() const;
  // local contribution to the Euler number
  int euler() const;
  // all components multiplicity one?
  bool reduced() const;

  bool operator==(const KodairaType& o) const = default;

  std::string to_string() const;  // "I3", "II", "I0*", "IV*", ...
  static KodairaType from_string(const std::string& s);

 private:
  KodairaType(Family f, int n) : family_(f), n_(n) {}
  Family family_;
  int n_;
};

struct FiberReport {
  Place place = Place::infinity();
  int degree = 1;  // residue degree of the place
  KodairaType type = KodairaType::I(0);
  int euler = 0;       // local Euler contribution (unweighted)
  int components = 1;  // component count of one geometric fiber
  bool reduced = true;
};

struct SurfaceReport {
  std::vector<FiberReport> fibers;  // singular fibers only, canonical order
  int euler_total = 0;              // sum of degree * local euler
  bool rational_elliptic = false;   // euler_total == 12
  // 8 - sum deg(v) (m_v - 1); only present on rational elliptic surfaces
  std::optional<int> geometric_generic_rank;
};

// classify the fiber at one place (smooth fibers come back as I0)
FiberReport classify_place(const WeierstrassModel& m, const Place& p);

// independent classification of the same fiber through the additive
// normal form (shift the singular point to the origin, read the type
// off coefficient valuations); multiplicative places fall back to the
// v(c4) = 0 criterion.
KodairaType dokchitser_type(const WeierstrassModel& m, const Place& p);

// every singular fiber, plus surface totals
SurfaceReport classify_all(const WeierstrassModel& m);

// generic-fiber Mordell-Weil rank over the algebraic closure of Q(t),
// from the Shioda-Tate relation; requires a rational elliptic surface
int shioda_tate_rank(const SurfaceReport& report);

}  // namespace ellsurf

#endif
