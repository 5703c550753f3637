#include "ellsurf/kodaira.hpp"

#include <cassert>

namespace ellsurf {

KodairaType KodairaType::I(int n) {
  assert(n >= 0);
  return {Family::I, n};
}
KodairaType KodairaType::II() { return {Family::II, 0}; }
KodairaType KodairaType::III() { return {Family::III, 0}; }
KodairaType KodairaType::IV() { return {Family::IV, 0}; }
KodairaType KodairaType::Istar(int n) {
  assert(n >= 0);
  return {Family::Istar, n};
}
KodairaType KodairaType::IVstar() { return {Family::IVstar, 0}; }
KodairaType KodairaType::IIIstar() { return {Family::IIIstar, 0}; }
KodairaType KodairaType::IIstar() { return {Family::IIstar, 0}; }

int KodairaType::components() const {
  switch (family_) {
    case Family::I: return n_ >= 1 ? n_ : 1;
    case Family::II: return 1;
    case Family::III: return 2;
    case Family::IV: return 3;
    case Family::Istar: return n_ + 5;
    case Family::IVstar: return 7;
    case Family::IIIstar: return 8;
    case Family::IIstar: return 9;
  }
  throw InternalError("bad fiber family");
}

int KodairaType::euler() const {
  switch (family_) {
    case Family::I: return n_;
    case Family::II: return 2;
    case Family::III: return 3;
    case Family::IV: return 4;
    case Family::Istar: return n_ + 6;
    case Family::IVstar: return 8;
    case Family::IIIstar: return 9;
    case Family::IIstar: return 10;
  }
  throw InternalError("bad fiber family");
}

bool KodairaType::reduced() const {
  switch (family_) {
    case Family::I:
    case Family::II:
    case Family::III:
    case Family::IV:
      return true;
    default:
      return false;
  }
}

std::string KodairaType::to_string() const {
  switch (family_) {
    case Family::I: return "I" + std::to_string(n_);
    case Family::II: return "II";
    case Family::III: return "III";
    case Family::IV: return "IV";
    case Family::Istar: return "I" + std::to_string(n_) + "*";
    case Family::IVstar: return "IV*";
    case Family::IIIstar: return "III*";
    case Family::IIstar: return "II*";
  }
  throw InternalError("bad fiber family");
}

KodairaType KodairaType::from_string(const std::string& s) {
  if (s == "II") return II();
  if (s == "III") return III();
  if (s == "IV") return IV();
  if (s == "II*") return IIstar();
  if (s == "III*") return IIIstar();
  if (s == "IV*") return IVstar();
  if (s.size() >= 2 && s[0] == 'I') {
    bool star = s.back() == '*';
    std::string digits = s.substr(1, s.size() - 1 - (star ? 1 : 0));
    if (!digits.empty() &&
        digits.find_first_not_of("0123456789") == std::string::npos) {
      int n = std::stoi(digits);
      return star ? Istar(n) : I(n);
    }
  }
  throw ParseError("unknown fiber type: " + s);
}

namespace {

int val_or_inf(const UniPoly& f, const Place& p) {
  return f.is_zero() ? kInfiniteValuation : valuation(f, p);
}

// the place s = 0 on the chart at infinity
Place origin_place() { return Place::at(0); }

KodairaType table_type(const WeierstrassModel& minimal, const Place& p) {
  InvariantSet inv = invariants(minimal);
  int vd = valuation(inv.disc, p);
  if (vd == 0) return KodairaType::I(0);
  int vc4 = val_or_inf(inv.c4, p);
  if (vc4 == 0) return KodairaType::I(vd);
  // additive reduction: read the type from (v(c4), v(disc))
  switch (vd) {
    case 2: return KodairaType::II();
    case 3: return KodairaType::III();
    case 4: return KodairaType::IV();
    case 6: return KodairaType::Istar(0);
    default: break;
  }
  if (vc4 == 2 && vd >= 7) return KodairaType::Istar(vd - 6);
  switch (vd) {
    case 8: return KodairaType::IVstar();
    case 9: return KodairaType::IIIstar();
    case 10: return KodairaType::IIstar();
    default:
      throw InternalError("impossible valuation pair in fiber classification");
  }
}

KodairaType normal_form_type(const WeierstrassModel& minimal, const Place& p) {
  InvariantSet inv = invariants(minimal);
  int vd = valuation(inv.disc, p);
  if (vd == 0) return KodairaType::I(0);
  if (val_or_inf(inv.c4, p) == 0) return KodairaType::I(vd);

  // additive: complete the square, then move the triple root of the
  // reduced cubic (at -b2/12 in the residue field) to the origin
  WeierstrassModel b = to_b_form(minimal);
  UniPoly shift = mod_reduce(b.a2.scale(Rational(-1, 3)), p.poly());
  ModelTransform T = ModelTransform::identity();
  T.r = RatFunc(shift);
  WeierstrassModel n = transform(b, T);
  // n: y^2 = x^3 + A2 x^2 + A4 x + A6 with every v(Ai) >= 1
  int v2 = val_or_inf(n.a2, p);
  int v4 = val_or_inf(n.a4, p);
  int v6 = val_or_inf(n.a6, p);
  if (v2 < 1 || v4 < 1 || v6 < 1)
    throw InternalError("additive normal form has a unit coefficient");

  Rational lambda(kInfiniteValuation);
  auto consider = [&lambda](int v, int i) {
    if (v >= kInfiniteValuation) return;
    Rational q(v, i);
    q.canonicalize();
    if (q < lambda) lambda = q;
  };
  consider(v2, 2);
  consider(v4, 4);
  consider(v6, 6);

  if (lambda == Rational(1, 6)) return KodairaType::II();
  if (lambda == Rational(1, 4)) return KodairaType::III();
  if (lambda == Rational(1, 3)) {
    if (v6 != 2) throw InternalError("normal form defect at slope 1/3");
    return KodairaType::IV();
  }
  if (lambda == Rational(1, 2)) {
    // disc(x^3 + A2 x^2 + A4 x + A6)
    const UniPoly &A2 = n.a2, &A4 = n.a4, &A6 = n.a6;
    UniPoly d = 18 * A2 * A4 * A6 - 4 * (A2 * A2 * A2) * A6 + A2 * A2 * A4 * A4 -
                4 * (A4 * A4 * A4) - 27 * (A6 * A6);
    int vdisc = val_or_inf(d, p);
    if (vdisc == 6) return KodairaType::Istar(0);
    if (vdisc > 6) {
      UniPoly h = n.a2 * n.a2 - 3 * n.a4;
      if (val_or_inf(h, p) != 2)
        throw InternalError("normal form defect at slope 1/2");
      return KodairaType::Istar(vdisc - 6);
    }
    throw InternalError("normal form defect at slope 1/2");
  }
  if (lambda == Rational(2, 3)) {
    if (v6 != 4) throw InternalError("normal form defect at slope 2/3");
    return KodairaType::IVstar();
  }
  if (lambda == Rational(3, 4)) return KodairaType::IIIstar();
  if (lambda == Rational(5, 6)) return KodairaType::IIstar();
  throw InternalError("normal form slope out of range");
}

}  // namespace

FiberReport classify_place(const WeierstrassModel& m, const Place& p) {
  FiberReport out;
  out.place = p;
  out.degree = p.degree();
  KodairaType t = KodairaType::I(0);
  if (p.is_infinite()) {
    InfinityChart chart = chart_at_infinity(m);
    t = table_type(minimalize_at(chart.model, origin_place()), origin_place());
  } else {
    t = table_type(minimalize_at(m, p), p);
  }
  out.type = t;
  out.euler = t.euler();
  out.components = t.components();
  out.reduced = t.reduced();
  return out;
}

KodairaType dokchitser_type(const WeierstrassModel& m, const Place& p) {
  if (p.is_infinite()) {
    InfinityChart chart = chart_at_infinity(m);
    return normal_form_type(minimalize_at(chart.model, origin_place()),
                            origin_place());
  }
  return normal_form_type(minimalize_at(m, p), p);
}

SurfaceReport classify_all(const WeierstrassModel& m) {
  InvariantSet inv = invariants(m);
  if (inv.disc.is_zero())
    throw SingularModelError("model has identically zero discriminant");

  SurfaceReport out;
  if (inv.disc.degree() > 0) {
    Factorization fac = factor_q(squarefree_part(inv.disc));
    for (const auto& f : fac.factors) {
      FiberReport r = classify_place(m, Place::finite(f.poly));
      if (!r.type.is_smooth()) out.fibers.push_back(r);
    }
  }
  FiberReport at_inf = classify_place(m, Place::infinity());
  if (!at_inf.type.is_smooth()) out.fibers.push_back(at_inf);

  int total = 0;
  int drop = 0;
  for (const auto& f : out.fibers) {
    total += f.degree * f.euler;
    drop += f.degree * (f.components - 1);
  }
  out.euler_total = total;
  out.rational_elliptic = (total == 12);
  if (out.rational_elliptic) {
    int rank = 8 - drop;
    if (rank < 0)
      throw InternalError("component count exceeds the rational elliptic bound");
    out.geometric_generic_rank = rank;
  }
  return out;
}

int shioda_tate_rank(const SurfaceReport& report) {
  if (!report.rational_elliptic)
    throw NotRationalElliptic("surface is not rational elliptic");
  assert(report.geometric_generic_rank.has_value());
  return *report.geometric_generic_rank;
}

}  // namespace ellsurf
