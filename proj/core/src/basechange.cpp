#include "ellsurf/basechange.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace ellsurf {

void QuadraticCover::validate() const {
  if (lambda == 0) throw InvalidCover("cover parameter lambda must be nonzero");
  if (branch1 == branch2) throw InvalidCover("branch points must be distinct");
}

QuadraticCover::Map QuadraticCover::map() const {
  validate();
  UniPoly s2 = UniPoly::monomial(2, 1);
  Map m;
  if (branch1.is_infinite()) {
    // t = lambda s^2 + b2
    m.P = s2.scale(lambda) + UniPoly::constant(branch2.value());
    m.Q = UniPoly::one();
  } else if (branch2.is_infinite()) {
    // t = (b1 s^2 + lambda) / s^2
    m.P = s2.scale(branch1.value()) + UniPoly::constant(lambda);
    m.Q = s2;
  } else {
    // t = (b1 s^2 + lambda b2) / (s^2 + lambda)
    m.P = s2.scale(branch1.value()) + UniPoly::constant(lambda * branch2.value());
    m.Q = s2 + UniPoly::constant(lambda);
  }
  return m;
}

WeierstrassModel pullback(const WeierstrassModel& m, const QuadraticCover& cover) {
  QuadraticCover::Map phi = cover.map();
  // weight k makes every substituted coefficient a polynomial; the
  // clearing is the admissible change with u = Q^k
  int k = 0;
  auto need = [&](const UniPoly& a, int i) {
    if (a.is_zero()) return;
    int w = (a.degree() + i - 1) / i;
    if (w > k) k = w;
  };
  need(m.a1, 1);
  need(m.a2, 2);
  need(m.a3, 3);
  need(m.a4, 4);
  need(m.a6, 6);
  WeierstrassModel out;
  out.a1 = m.a1.is_zero() ? UniPoly() : m.a1.eval_fraction(phi.P, phi.Q, 1 * k);
  out.a2 = m.a2.is_zero() ? UniPoly() : m.a2.eval_fraction(phi.P, phi.Q, 2 * k);
  out.a3 = m.a3.is_zero() ? UniPoly() : m.a3.eval_fraction(phi.P, phi.Q, 3 * k);
  out.a4 = m.a4.is_zero() ? UniPoly() : m.a4.eval_fraction(phi.P, phi.Q, 4 * k);
  out.a6 = m.a6.is_zero() ? UniPoly() : m.a6.eval_fraction(phi.P, phi.Q, 6 * k);
  return finite_minimalize(out);
}

KodairaType fiber_transform(const KodairaType& t, bool ramified) {
  if (!ramified) return t;
  using F = KodairaType::Family;
  switch (t.family()) {
    case F::I: return KodairaType::I(2 * t.n());
    case F::Istar: return KodairaType::I(2 * t.n());
    case F::II: return KodairaType::IV();
    case F::III: return KodairaType::Istar(0);
    case F::IV: return KodairaType::IVstar();
    case F::IVstar: return KodairaType::IV();
    case F::IIIstar: return KodairaType::Istar(0);
    case F::IIstar: return KodairaType::IVstar();
  }
  throw InternalError("bad fiber family");
}

std::vector<PreimagePlace> preimage_places(const QuadraticCover& cover,
                                           const Place& base) {
  QuadraticCover::Map phi = cover.map();
  UniPoly cleared;
  int total_degree;
  if (base.is_infinite()) {
    cleared = phi.Q;
    total_degree = 2;
  } else {
    const UniPoly& p = base.poly();
    cleared = p.eval_fraction(phi.P, phi.Q, p.degree());
    total_degree = 2 * p.degree();
  }
  std::vector<PreimagePlace> out;
  int seen = 0;
  if (!cleared.is_constant()) {
    Factorization fac = factor_q(cleared);
    for (const auto& f : fac.factors) {
      out.push_back({Place::finite(f.poly), f.multiplicity});
      seen += f.multiplicity * f.poly.degree();
    }
  }
  if (seen < total_degree)
    out.push_back({Place::infinity(), total_degree - seen});
  int check = 0;
  for (const auto& w : out) check += w.multiplicity * w.place.degree();
  if (check != total_degree)
    throw InternalError("preimage degrees do not sum to twice the base degree");
  return out;
}

BaseChangeCheck verify_basechange(const WeierstrassModel& m,
                                  const QuadraticCover& cover) {
  BaseChangeCheck out;
  out.base = classify_all(m);
  out.pulled = classify_all(pullback(m, cover));
  out.types_match = true;

  std::vector<bool> consumed(out.pulled.fibers.size(), false);
  auto find_pulled = [&](const Place& w) -> int {
    for (std::size_t i = 0; i < out.pulled.fibers.size(); ++i) {
      if (!consumed[i] && out.pulled.fibers[i].place == w) return int(i);
    }
    return -1;
  };

  for (const auto& fiber : out.base.fibers) {
    for (const auto& pre : preimage_places(cover, fiber.place)) {
      if (pre.multiplicity != 1 && pre.multiplicity != 2)
        throw InternalError("quadratic cover with preimage multiplicity > 2");
      KodairaType expect = fiber_transform(fiber.type, pre.multiplicity == 2);
      int i = find_pulled(pre.place);
      if (expect.is_smooth()) {
        if (i >= 0) {
          out.types_match = false;
          out.notes.push_back("unexpected singular fiber at " + pre.place.to_string());
        }
        continue;
      }
      if (i < 0) {
        out.types_match = false;
        out.notes.push_back("missing fiber " + expect.to_string() + " at " +
                            pre.place.to_string());
        continue;
      }
      consumed[std::size_t(i)] = true;
      if (!(out.pulled.fibers[std::size_t(i)].type == expect)) {
        out.types_match = false;
        out.notes.push_back("fiber at " + pre.place.to_string() + " is " +
                            out.pulled.fibers[std::size_t(i)].type.to_string() +
                            ", expected " + expect.to_string());
      }
    }
  }
  for (std::size_t i = 0; i < consumed.size(); ++i) {
    if (!consumed[i]) {
      out.types_match = false;
      out.notes.push_back("fiber at " + out.pulled.fibers[i].place.to_string() +
                          " not accounted for by the base surface");
    }
  }

  // euler identity: each branch point replaces two copies of its fiber
  // by the transformed fiber
  auto local_euler_at = [&](const P1Point& b) -> std::pair<int, int> {
    Place v = b.is_infinite() ? Place::infinity() : Place::at(b.value());
    for (const auto& fiber : out.base.fibers) {
      if (fiber.place == v)
        return {fiber.euler, fiber_transform(fiber.type, true).euler()};
    }
    return {0, 0};  // smooth fiber stays smooth
  };
  auto [e1, e1p] = local_euler_at(cover.branch1);
  auto [e2, e2p] = local_euler_at(cover.branch2);
  int predicted = 2 * out.base.euler_total - (2 * e1 - e1p) - (2 * e2 - e2p);
  out.euler_consistent = (out.pulled.euler_total == predicted);
  if (!out.euler_consistent) {
    std::ostringstream os;
    os << "euler total " << out.pulled.euler_total << ", predicted " << predicted;
    out.notes.push_back(os.str());
  }
  return out;
}

// ------------------------------------------------------------ towers

namespace {

std::vector<P1Point> cover_branches(const QuadraticCover& c) {
  return {c.branch1, c.branch2};
}

}  // namespace

int tower_genus(const CoverTower& tower) {
  for (const auto& c : tower.covers) c.validate();
  int n = int(tower.covers.size());
  if (n > 20) throw InvalidTower("tower too large");

  // collect the distinct branch points
  std::vector<P1Point> points;
  for (const auto& c : tower.covers) {
    for (const auto& b : cover_branches(c)) {
      if (std::find(points.begin(), points.end(), b) == points.end())
        points.push_back(b);
    }
  }

  // connectivity: no nonempty subset of covers may have a branch
  // divisor that cancels mod 2 (such a subtower falls apart)
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> parity(points.size(), 0);
    for (int i = 0; i < n; ++i) {
      if (!(mask & (1u << i))) continue;
      for (const auto& b : cover_branches(tower.covers[std::size_t(i)])) {
        auto it = std::find(points.begin(), points.end(), b);
        parity[std::size_t(it - points.begin())] ^= 1;
      }
    }
    if (std::all_of(parity.begin(), parity.end(), [](int x) { return x == 0; }))
      throw InvalidTower("tower is disconnected: a subset of covers shares its branch divisor");
  }

  // track the multiset of local degrees over each branch point while
  // the covers are stacked one at a time
  long ram_excess = 0;
  for (const auto& b : points) {
    std::vector<long> degs = {1};
    for (const auto& c : tower.covers) {
      bool branched = (b == c.branch1) || (b == c.branch2);
      std::vector<long> next;
      for (long e : degs) {
        if (branched && (e % 2 == 1)) {
          next.push_back(2 * e);
        } else {
          next.push_back(e);
          next.push_back(e);
        }
      }
      degs = std::move(next);
    }
    for (long e : degs) ram_excess += e - 1;
  }

  // riemann-hurwitz over the line: 2g - 2 = -2 deg + ramification
  long deg = 1L << n;
  long twog = 2 - 2 * deg + ram_excess;
  assert(twog % 2 == 0);
  return int(twog / 2);
}

int obstruction_genus(const CoverTower& tower, int branch_count, int shared_count) {
  if (branch_count < 2)
    throw InvalidTower("a double cover needs at least two branch points");
  if (shared_count < 0 || shared_count > 1)
    throw InvalidTower("at most one branch point may be shared with the tower");
  int g_tower = tower_genus(tower);
  int n = int(tower.covers.size());
  long fresh = branch_count - shared_count;
  // one more double cover, ramified over every tower point above a
  // fresh branch point: 2g - 2 = 2 (2 g_tower - 2) + fresh 2^n
  long ram = fresh << n;
  long twog = 2 * (2L * g_tower - 2) + ram + 2;
  if (twog % 2 != 0) throw InvalidTower("odd total ramification");
  return int(twog / 2);
}

}  // namespace ellsurf
