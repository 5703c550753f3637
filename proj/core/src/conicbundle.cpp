#include "ellsurf/conicbundle.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>

namespace ellsurf {

DivisorClassData::DivisorClassData(long d2, long dk)
    : self_intersection(d2), canonical_pairing(dk) {
  // adjunction: D^2 + D.K = 2 p_a - 2 is even
  if (((d2 + dk) % 2 + 2) % 2 != 0)
    throw ConicBundleError("divisor class violates adjunction parity");
}

bool is_conic_class(const DivisorClassData& d) {
  return d.self_intersection == 0 && d.canonical_pairing == -2;
}

// ------------------------------------------------------------ x-line

namespace {

bool conic_degree_bound(const WeierstrassModel& m) {
  auto degle = [](const UniPoly& a, int bound) {
    return a.is_zero() || a.degree() <= bound;
  };
  return degle(m.a1, 0) && degle(m.a3, 1) && degle(m.a2, 2) && degle(m.a4, 2) &&
         degle(m.a6, 2);
}

}  // namespace

XLineBundle xline_bundle(const WeierstrassModel& m) {
  XLineBundle out;
  out.report = classify_all(m);
  if (!out.report.rational_elliptic)
    throw NotRationalElliptic("x-line pencil needs a rational elliptic surface");
  const FiberReport* at_inf = nullptr;
  for (const auto& f : out.report.fibers) {
    if (f.place.is_infinite()) at_inf = &f;
  }
  if (!at_inf || at_inf->reduced)
    throw ConicBundleError("fiber at infinity must have no reduced component");
  if (at_inf->type == KodairaType::Istar(0))
    throw ConicBundleError("fiber at infinity of type I0* is not supported");
  out.fiber_at_infinity = at_inf->type;

  WeierstrassModel fm = finite_minimalize(m);
  if (conic_degree_bound(fm)) {
    out.model = fm;
    return out;
  }
  WeierstrassModel b = to_b_form(fm);
  if (conic_degree_bound(b)) {
    out.model = b;
    return out;
  }
  WeierstrassModel c = to_c_model(fm);
  if (conic_degree_bound(c)) {
    out.model = c;
    return out;
  }
  throw InternalError("conic degree bound fails (internal inconsistency)");
}

ConicCoverReport conic_cover(const XLineBundle& bundle, const Rational& x0) {
  const WeierstrassModel& m = bundle.model;
  ConicCoverReport out;
  out.x0 = x0;
  // the member conic over x = x0 is y^2 + L(t) y = R(t)
  UniPoly L = m.a1.scale(x0) + m.a3;
  UniPoly R = UniPoly::constant(x0 * x0 * x0) + m.a2.scale(x0 * x0) +
              m.a4.scale(x0) + m.a6;
  out.branch_form = L * L + 4 * R;
  if (!out.branch_form.is_zero() && out.branch_form.degree() > 2)
    throw InternalError("branch form exceeds degree two");

  Rational a = out.branch_form.coeff(2);
  Rational b = out.branch_form.coeff(1);
  Rational c = out.branch_form.coeff(0);
  out.branch_at_infinity = (a == 0);
  Rational disc = b * b - 4 * a * c;
  out.degenerate = (disc == 0);

  auto rational_sqrt = [](const Rational& q) -> std::optional<Rational> {
    if (q < 0) return std::nullopt;
    const Integer& num = q.get_num();
    const Integer& den = q.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) ||
        !mpz_perfect_square_p(den.get_mpz_t()))
      return std::nullopt;
    Integer sn, sd;
    mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
    Rational r(sn, sd);
    r.canonicalize();
    return r;
  };

  if (out.degenerate) {
    // double branch point; no usable cover
    if (a != 0) {
      out.rational_branch_points.push_back(P1Point::finite(-b / (2 * a)));
      out.branch_points_rational = true;
    } else if (c != 0 || b != 0) {
      // constant or linear-with-zero-disc: double point at infinity
      out.rational_branch_points.push_back(P1Point::infinity());
      out.branch_points_rational = true;
    }
    return out;
  }

  if (a == 0) {
    // degree drop: one branch point at infinity, one at the root
    assert(b != 0);
    out.rational_branch_points.push_back(P1Point::infinity());
    out.rational_branch_points.push_back(P1Point::finite(-c / b));
    out.branch_points_rational = true;
    QuadraticCover cover;
    cover.branch1 = P1Point::infinity();
    cover.branch2 = P1Point::finite(-c / b);
    cover.lambda = b;
    out.cover = cover;
    return out;
  }

  std::optional<Rational> s = rational_sqrt(disc);
  if (!s) return out;  // conjugate branch points
  Rational r1 = (-b + *s) / (2 * a);
  Rational r2 = (-b - *s) / (2 * a);
  if (r2 < r1) std::swap(r1, r2);
  out.rational_branch_points.push_back(P1Point::finite(r1));
  out.rational_branch_points.push_back(P1Point::finite(r2));
  out.branch_points_rational = true;
  QuadraticCover cover;
  cover.branch1 = P1Point::finite(r1);
  cover.branch2 = P1Point::finite(r2);
  cover.lambda = -a;
  out.cover = cover;
  return out;
}

// ------------------------------------------------------------ rnrf

namespace {

bool has_type(const SurfaceReport& s, const KodairaType& t) {
  for (const auto& f : s.fibers) {
    if (f.type == t) return true;
  }
  return false;
}

bool has_star_n(const SurfaceReport& s, int lo, int hi, std::string* which) {
  for (const auto& f : s.fibers) {
    if (f.type.family() == KodairaType::Family::Istar && f.type.n() >= lo &&
        f.type.n() <= hi) {
      if (which) *which = f.type.to_string() + " at " + f.place.to_string();
      return true;
    }
  }
  return false;
}

}  // namespace

RnrfReport rnrf_exists(const SurfaceReport& surface, const SectionData& sections) {
  RnrfReport out;
  std::vector<std::string> missing;

  // a fiber that is reduced and reducible, visible from the types alone
  bool computed_rrf = false;
  for (const auto& f : surface.fibers) {
    if (f.reduced && f.components >= 2) computed_rrf = true;
  }

  int i0star_degree = 0;
  for (const auto& f : surface.fibers) {
    if (f.type == KodairaType::Istar(0)) i0star_degree += f.degree;
  }

  std::string which;

  // case 1: a fiber type that forces the cover by itself
  if (has_type(surface, KodairaType::IIstar()) ||
      has_type(surface, KodairaType::IIIstar()) ||
      has_star_n(surface, 2, 4, &which)) {
    out.status = RnrfStatus::Exists;
    out.case_index = 1;
    out.detail = "forced by a fiber of type II*, III*, or In* (n = 2, 3, 4)";
    return out;
  }

  // case 2: IV* or Im* (m <= 1) plus some reducible fiber with all
  // components reduced
  bool case2_fiber = has_type(surface, KodairaType::IVstar()) ||
                     has_star_n(surface, 0, 1, nullptr);
  if (case2_fiber) {
    bool flag = computed_rrf || sections.has_reducible_reduced_fiber.value_or(false);
    if (flag) {
      out.status = RnrfStatus::Exists;
      out.case_index = 2;
      out.detail = "IV* or Im* (m <= 1) together with a reducible reduced fiber";
      return out;
    }
    if (!computed_rrf && !sections.has_reducible_reduced_fiber.has_value())
      missing.push_back("has_reducible_reduced_fiber");
  }

  // case 3: IV* plus a nontrivial section
  if (has_type(surface, KodairaType::IVstar())) {
    if (sections.has_nontrivial_section.value_or(false)) {
      out.status = RnrfStatus::Exists;
      out.case_index = 3;
      out.detail = "IV* together with a nontrivial section";
      return out;
    }
    if (!sections.has_nontrivial_section.has_value())
      missing.push_back("has_nontrivial_section");
  }

  // cases 4 and 5: I1* with extra section data
  if (has_star_n(surface, 1, 1, nullptr)) {
    if (sections.section_meets_near_component.value_or(false)) {
      out.status = RnrfStatus::Exists;
      out.case_index = 4;
      out.detail = "I1* with a section through a near component";
      return out;
    }
    if (!sections.section_meets_near_component.has_value())
      missing.push_back("section_meets_near_component");
    if (sections.has_conjugate_disjoint_sections.value_or(false)) {
      out.status = RnrfStatus::Exists;
      out.case_index = 5;
      out.detail = "I1* with a pair of conjugate disjoint sections";
      return out;
    }
    if (!sections.has_conjugate_disjoint_sections.has_value())
      missing.push_back("has_conjugate_disjoint_sections");
  }

  // case 6: two fibers of type I0* and a 2-torsion section
  if (i0star_degree >= 2) {
    if (sections.has_two_torsion_section.value_or(false)) {
      out.status = RnrfStatus::Exists;
      out.case_index = 6;
      out.detail = "two I0* fibers with a 2-torsion section";
      return out;
    }
    if (!sections.has_two_torsion_section.has_value())
      missing.push_back("has_two_torsion_section");
  }

  if (!missing.empty()) {
    out.status = RnrfStatus::InsufficientData;
    out.missing = std::move(missing);
    out.detail = "fiber conditions match but section facts are missing";
    return out;
  }
  out.status = RnrfStatus::Unknown;
  out.detail = "no matching criterion";
  return out;
}

// ------------------------------------------------- stable components

namespace {

void add_edge(ComponentGraph& g, int a, int b) {
  g.adjacency[std::size_t(a)][std::size_t(b)] = 1;
  g.adjacency[std::size_t(b)][std::size_t(a)] = 1;
}

ComponentGraph make_graph(const std::vector<int>& mult,
                          const std::vector<std::pair<int, int>>& edges) {
  ComponentGraph g;
  g.multiplicity = mult;
  g.adjacency.assign(mult.size(), std::vector<int>(mult.size(), 0));
  for (auto [a, b] : edges) add_edge(g, a, b);
  return g;
}

// seed symmetries of the dual graph, as permutations of the components
std::vector<std::vector<int>> graph_symmetries(const KodairaType& t) {
  using F = KodairaType::Family;
  switch (t.family()) {
    case F::IIstar:
      return {};
    case F::IIIstar:
      return {{6, 5, 4, 3, 2, 1, 0, 7}};
    case F::IVstar:
      return {{0, 1, 2, 5, 6, 3, 4}};
    case F::Istar: {
      int n = t.n();
      int m = n + 5;
      std::vector<int> swap01(m), swap23(m), flip(m);
      for (int i = 0; i < m; ++i) swap01[i] = swap23[i] = flip[i] = i;
      std::swap(swap01[0], swap01[1]);
      std::swap(swap23[2], swap23[3]);
      flip[0] = 2;
      flip[2] = 0;
      flip[1] = 3;
      flip[3] = 1;
      for (int i = 0; i <= n; ++i) flip[4 + i] = n + 4 - i;
      return {swap01, swap23, flip};
    }
    default:
      throw ConicBundleError("component analysis applies to non-reduced fibers");
  }
}

}  // namespace

ComponentGraph component_graph(const KodairaType& t) {
  using F = KodairaType::Family;
  switch (t.family()) {
    case F::IIstar:
      return make_graph({1, 2, 3, 4, 5, 6, 4, 2, 3},
                        {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {5, 8}});
    case F::IIIstar:
      return make_graph({1, 2, 3, 4, 3, 2, 1, 2},
                        {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {3, 7}});
    case F::IVstar:
      return make_graph({1, 2, 3, 2, 1, 2, 1},
                        {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {2, 5}, {5, 6}});
    case F::Istar: {
      int n = t.n();
      std::vector<int> mult(std::size_t(n) + 5, 2);
      mult[0] = mult[1] = mult[2] = mult[3] = 1;
      std::vector<std::pair<int, int>> edges = {{0, 4}, {1, 4}, {2, n + 4}, {3, n + 4}};
      for (int i = 4; i < n + 4; ++i) edges.push_back({i, i + 1});
      return make_graph(mult, edges);
    }
    default:
      throw ConicBundleError("component analysis applies to non-reduced fibers");
  }
}

StabilityReport stable_components(const KodairaType& t) {
  ComponentGraph g = component_graph(t);
  int m = int(g.multiplicity.size());
  std::vector<std::vector<int>> syms = graph_symmetries(t);

  // sanity: the seeds really are symmetries of the weighted graph
  for (const auto& s : syms) {
    assert(int(s.size()) == m);
    for (int i = 0; i < m; ++i) {
      assert(g.multiplicity[std::size_t(i)] == g.multiplicity[std::size_t(s[std::size_t(i)])]);
      for (int j = 0; j < m; ++j)
        assert(g.adjacency[std::size_t(i)][std::size_t(j)] ==
               g.adjacency[std::size_t(s[std::size_t(i)])][std::size_t(s[std::size_t(j)])]);
    }
  }

  // orbits of the generated group = connected components under moves
  std::vector<int> orbit(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) orbit[std::size_t(i)] = i;
  std::function<int(int)> find = [&](int x) {
    while (orbit[std::size_t(x)] != x) x = orbit[std::size_t(x)] = orbit[std::size_t(orbit[std::size_t(x)])];
    return x;
  };
  auto unite = [&](int a, int b) { orbit[std::size_t(find(a))] = find(b); };
  for (const auto& s : syms) {
    for (int i = 0; i < m; ++i) unite(i, s[std::size_t(i)]);
  }

  std::map<int, std::vector<int>> grouped;
  for (int i = 0; i < m; ++i) grouped[find(i)].push_back(i);
  std::vector<std::vector<int>> classes;
  for (auto& [root, members] : grouped) classes.push_back(members);

  // refinement: split any class whose members meet a stable curve
  // differently.  stable curves are the zero section and every
  // component sitting alone in its class.
  auto intersect = [&](int c, int curve) -> int {
    if (curve < 0) return c == g.zero_component ? 1 : 0;  // the section
    return g.adjacency[std::size_t(c)][std::size_t(curve)];
  };
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<int> curves = {-1};
    for (const auto& cl : classes) {
      if (cl.size() == 1) curves.push_back(cl[0]);
    }
    std::vector<std::vector<int>> next;
    for (const auto& cl : classes) {
      if (cl.size() == 1) {
        next.push_back(cl);
        continue;
      }
      std::map<std::vector<int>, std::vector<int>> split;
      for (int c : cl) {
        std::vector<int> key;
        for (int curve : curves) key.push_back(intersect(c, curve));
        split[key].push_back(c);
      }
      if (split.size() > 1) changed = true;
      for (auto& [key, members] : split) next.push_back(members);
    }
    classes = std::move(next);
  }

  std::sort(classes.begin(), classes.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  StabilityReport out;
  out.type = t;
  out.classes = classes;
  for (const auto& cl : classes) {
    if (cl.size() == 1) out.stable.push_back(cl[0]);
  }
  std::sort(out.stable.begin(), out.stable.end());
  return out;
}

}  // namespace ellsurf
