// conic-bundle structures on rational elliptic surfaces: numerical
// tests for conic classes, the pencil of vertical lines x = const as
// a conic bundle, branch data of the induced double covers of the
// t-line, existence decisions for covers ramified only over fibers
// with no reduced component, and the Galois-stable component analysis
// of the non-reduced fiber types.

#ifndef ELLSURF_CONICBUNDLE_HPP
#define ELLSURF_CONICBUNDLE_HPP

#include "ellsurf/basechange.hpp"

#include <optional>

namespace ellsurf {

// prerequisites for the conic-bundle analysis are not met
struct ConicBundleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// numerical data of a divisor class: self-intersection and pairing
// with the canonical class.  on a smooth projective surface these have
// the same parity (adjunction), which is validated up front.
struct DivisorClassData {
  long self_intersection;
  long canonical_pairing;

  DivisorClassData(long d2, long dk);
};

// class of a conic-bundle fiber: D^2 = 0 and D.K = -2
bool is_conic_class(const DivisorClassData& d);

// the pencil of lines x = const on a model whose coefficient degrees
// fit under the conic bound (deg a1 <= 0, deg a3 <= 1, the others
// <= 2); members are conics in (t, y).
struct XLineBundle {
  WeierstrassModel model;        // normalized representative
  SurfaceReport report;          // classification of the surface
  KodairaType fiber_at_infinity = KodairaType::I(0);
};

// throws NotRationalElliptic unless the surface is rational elliptic,
// and ConicBundleError unless the fiber at infinity is non-reduced of
// type other than I0*.  tries the given model, its completed b-form
// and its c-model for the degree bound.
XLineBundle xline_bundle(const WeierstrassModel& m);

// the member conic over x = x0, as a double cover of the t-line
struct ConicCoverReport {
  Rational x0;
  UniPoly branch_form;       // discriminant quadratic in t (degree <= 2)
  bool branch_at_infinity = false;   // leading binary coefficient vanishes
  bool degenerate = false;           // the conic splits into lines
  bool branch_points_rational = false;
  std::vector<P1Point> rational_branch_points;
  // usable base-change data when the branch points are distinct and
  // rational; lambda carries the twist matching the conic
  std::optional<QuadraticCover> cover;
};
ConicCoverReport conic_cover(const XLineBundle& bundle, const Rational& x0);

// facts about sections over the ground field supplied by the caller;
// absent fields are treated as unknown, never as false
struct SectionData {
  std::optional<bool> has_nontrivial_section;
  std::optional<bool> has_reducible_reduced_fiber;
  std::optional<bool> section_meets_near_component;
  std::optional<bool> has_conjugate_disjoint_sections;
  std::optional<bool> has_two_torsion_section;
  std::optional<int> mw_rank_over_k;
};

enum class RnrfStatus { Exists, Unknown, InsufficientData };

// decision report for covers ramified only over fibers without a
// reduced component ("no reduced ramification fiber" covers)
struct RnrfReport {
  RnrfStatus status = RnrfStatus::Unknown;
  int case_index = 0;                // 1..6 when status == Exists
  std::vector<std::string> missing;  // wanted SectionData fields
  std::string detail;
};

RnrfReport rnrf_exists(const SurfaceReport& surface, const SectionData& sections);

// dual graph of a non-reduced fiber with component multiplicities;
// component 0 is the one met by the zero section
struct ComponentGraph {
  std::vector<int> multiplicity;
  std::vector<std::vector<int>> adjacency;  // symmetric 0/1 intersection counts
  int zero_component = 0;
};
ComponentGraph component_graph(const KodairaType& t);  // non-reduced types only

// Galois-stable component classes: starting from the orbits of the
// graph's symmetries, repeatedly split classes whose members are told
// apart by intersection with an already-stable curve (the zero
// section, or a component in a singleton class)
struct StabilityReport {
  KodairaType type = KodairaType::I(0);
  std::vector<std::vector<int>> classes;  // partition of the components
  std::vector<int> stable;                // components in singleton classes
};
StabilityReport stable_components(const KodairaType& t);

}  // namespace ellsurf

#endif
