// factorization in Q[t]: content/primitive split, Yun squarefree
// decomposition, then Zassenhaus on the squarefree integer parts
// (factor mod a good small prime, Hensel lift past the coefficient
// bound, recombine subsets with trial division).

#include "ellsurf/qtarith.hpp"

#include <algorithm>
#include <cassert>
#include <cstdint>

namespace ellsurf {
namespace {

using u64 = std::uint64_t;

//////////////////////////////////////////////////////////////////////
// dense polynomials over F_p, coefficients low-first, p odd, p < 2^31

struct FpCtx {
  u64 p;
  u64 add(u64 a, u64 b) const {
    u64 s = a + b;
    return s >= p ? s - p : s;
  }
  u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + p - b; }
  u64 mul(u64 a, u64 b) const { return (a * b) % p; }
  u64 pow(u64 a, u64 e) const {
    u64 r = 1 % p, base = a % p;
    while (e) {
      if (e & 1) r = mul(r, base);
      base = mul(base, base);
      e >>= 1;
    }
    return r;
  }
  u64 inv(u64 a) const {
    assert(a % p != 0);
    return pow(a, p - 2);
  }
};

using FpPoly = std::vector<u64>;  // low-first, trimmed

void fp_trim(FpPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

int fp_deg(const FpPoly& f) { return int(f.size()) - 1; }  // -1 for zero

FpPoly fp_x() { return {0, 1}; }

FpPoly fp_add(const FpCtx& F, const FpPoly& a, const FpPoly& b) {
  FpPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = F.add(r[i], b[i]);
  fp_trim(r);
  return r;
}

FpPoly fp_sub(const FpCtx& F, const FpPoly& a, const FpPoly& b) {
  FpPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = F.sub(r[i], b[i]);
  fp_trim(r);
  return r;
}

FpPoly fp_mul(const FpCtx& F, const FpPoly& a, const FpPoly& b) {
  if (a.empty() || b.empty()) return {};
  FpPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
  }
  fp_trim(r);
  return r;
}

FpPoly fp_scale(const FpCtx& F, const FpPoly& a, u64 c) {
  FpPoly r = a;
  for (auto& x : r) x = F.mul(x, c);
  fp_trim(r);
  return r;
}

FpPoly fp_rem(const FpCtx& F, FpPoly a, const FpPoly& b) {
  assert(!b.empty());
  u64 inv_lb = F.inv(b.back());
  while (fp_deg(a) >= fp_deg(b)) {
    int shift = fp_deg(a) - fp_deg(b);
    u64 c = F.mul(a.back(), inv_lb);
    for (std::size_t i = 0; i < b.size(); ++i) {
      std::size_t k = std::size_t(shift) + i;
      a[k] = F.sub(a[k], F.mul(c, b[i]));
    }
    fp_trim(a);
  }
  return a;
}

FpPoly fp_divexact(const FpCtx& F, FpPoly a, const FpPoly& b) {
  assert(!b.empty());
  FpPoly q(a.empty() ? 1 : std::size_t(std::max(0, fp_deg(a) - fp_deg(b))) + 1, 0);
  u64 inv_lb = F.inv(b.back());
  while (fp_deg(a) >= fp_deg(b)) {
    int shift = fp_deg(a) - fp_deg(b);
    u64 c = F.mul(a.back(), inv_lb);
    q[std::size_t(shift)] = c;
    for (std::size_t i = 0; i < b.size(); ++i) {
      std::size_t k = std::size_t(shift) + i;
      a[k] = F.sub(a[k], F.mul(c, b[i]));
    }
    fp_trim(a);
  }
  assert(a.empty());
  fp_trim(q);
  return q;
}

FpPoly fp_monic(const FpCtx& F, const FpPoly& a) {
  if (a.empty()) return a;
  return fp_scale(F, a, F.inv(a.back()));
}

FpPoly fp_gcd(const FpCtx& F, FpPoly a, FpPoly b) {
  while (!b.empty()) {
    FpPoly r = fp_rem(F, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return fp_monic(F, a);
}

struct FpXgcd {
  FpPoly g, u;
};

// monic g = u*a + v*b; only u is needed by callers
FpXgcd fp_xgcd(const FpCtx& F, FpPoly a, FpPoly b) {
  FpPoly u0 = {1}, u1 = {};
  while (!b.empty()) {
    // long division a = q*b + r, tracking u
    FpPoly r = a;
    FpPoly q(r.size() > b.size() ? r.size() - b.size() + 1 : 1, 0);
    u64 inv_lb = F.inv(b.back());
    while (fp_deg(r) >= fp_deg(b)) {
      int shift = fp_deg(r) - fp_deg(b);
      u64 c = F.mul(r.back(), inv_lb);
      q[std::size_t(shift)] = F.add(q[std::size_t(shift)], c);
      for (std::size_t i = 0; i < b.size(); ++i) {
        std::size_t k = std::size_t(shift) + i;
        r[k] = F.sub(r[k], F.mul(c, b[i]));
      }
      fp_trim(r);
    }
    fp_trim(q);
    FpPoly u2 = fp_sub(F, u0, fp_mul(F, q, u1));
    a = std::move(b);
    b = std::move(r);
    u0 = std::move(u1);
    u1 = std::move(u2);
  }
  if (!a.empty()) {
    u64 inv_la = F.inv(a.back());
    return {fp_scale(F, a, inv_la), fp_scale(F, u0, inv_la)};
  }
  return {a, u0};
}

FpPoly fp_derivative(const FpCtx& F, const FpPoly& a) {
  if (a.size() <= 1) return {};
  FpPoly r(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = F.mul(a[i], u64(i) % F.p);
  fp_trim(r);
  return r;
}

FpPoly fp_powmod(const FpCtx& F, FpPoly base, const Integer& e, const FpPoly& mod) {
  FpPoly r = {1};
  base = fp_rem(F, base, mod);
  std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    r = fp_rem(F, fp_mul(F, r, r), mod);
    if (mpz_tstbit(e.get_mpz_t(), i)) r = fp_rem(F, fp_mul(F, r, base), mod);
  }
  return r;
}

//////////////////////////////////////////////////////////////////////
// factoring mod p (distinct degree + Cantor-Zassenhaus splitting)

void fp_equal_degree(const FpCtx& F, const FpPoly& f, int d, SplitMix64& rng,
                     std::vector<FpPoly>& out) {
  if (fp_deg(f) == d) {
    out.push_back(f);
    return;
  }
  Integer half(long(F.p));
  mpz_pow_ui(half.get_mpz_t(), half.get_mpz_t(), unsigned(d));
  half = (half - 1) / 2;  // (p^d - 1) / 2, p odd
  for (;;) {
    FpPoly r(std::size_t(fp_deg(f)), 0);
    for (auto& c : r) c = rng.below(F.p);
    fp_trim(r);
    if (r.empty()) continue;
    FpPoly g = fp_gcd(F, r, f);
    if (fp_deg(g) <= 0 || fp_deg(g) >= fp_deg(f)) {
      FpPoly h = fp_powmod(F, r, half, f);
      if (h.empty())
        continue;
      h[0] = F.sub(h[0], 1);  // h - 1
      fp_trim(h);
      g = fp_gcd(F, h, f);
      if (fp_deg(g) <= 0 || fp_deg(g) >= fp_deg(f)) continue;
    }
    fp_equal_degree(F, g, d, rng, out);
    fp_equal_degree(F, fp_divexact(F, f, g), d, rng, out);
    return;
  }
}

// f monic squarefree mod p -> monic irreducible factors
std::vector<FpPoly> fp_factor_squarefree(const FpCtx& F, FpPoly f, SplitMix64& rng) {
  std::vector<FpPoly> out;
  FpPoly h = fp_x();
  int d = 0;
  while (fp_deg(f) > 0) {
    ++d;
    if (2 * d > fp_deg(f)) {
      out.push_back(f);
      break;
    }
    h = fp_powmod(F, h, Integer(long(F.p)), f);
    FpPoly hx = fp_sub(F, h, fp_x());
    FpPoly g = fp_gcd(F, hx, f);
    if (fp_deg(g) > 0) {
      fp_equal_degree(F, g, d, rng, out);
      f = fp_divexact(F, f, g);
      h = fp_rem(F, h, f.empty() ? FpPoly{1} : f);
      if (fp_deg(f) <= 0) break;
    }
  }
  return out;
}

//////////////////////////////////////////////////////////////////////
// integer polynomial helpers for the Hensel stage (low-first vectors)

using ZPoly = std::vector<Integer>;

void z_trim(ZPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

int z_deg(const ZPoly& f) { return int(f.size()) - 1; }

ZPoly z_mul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1, Integer(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  z_trim(r);
  return r;
}

ZPoly z_sub(const ZPoly& a, const ZPoly& b) {
  ZPoly r(std::max(a.size(), b.size()), Integer(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  z_trim(r);
  return r;
}

FpPoly z_mod_p(const ZPoly& a, const FpCtx& F) {
  FpPoly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    r[i] = mpz_fdiv_ui(a[i].get_mpz_t(), static_cast<unsigned long>(F.p));
  fp_trim(r);
  return r;
}

ZPoly z_from_fp(const FpPoly& a) {
  ZPoly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = Integer(static_cast<unsigned long>(a[i]));
  return r;
}

ZPoly z_from_unipoly(const UniPoly& f) {
  ZPoly r(f.coeffs().size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    assert(f.coeffs()[i].get_den() == 1);
    r[i] = f.coeffs()[i].get_num();
  }
  return r;
}

UniPoly unipoly_from_z(const ZPoly& f) {
  std::vector<Rational> c(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) c[i] = Rational(f[i]);
  return UniPoly(c);
}

// reduce coefficients into [0, m)
void z_mod_coeffs(ZPoly& f, const Integer& m) {
  for (auto& c : f) mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
  z_trim(f);
}

// map [0, m) to the symmetric range (-m/2, m/2]
void z_symmetric(ZPoly& f, const Integer& m) {
  Integer half = m / 2;
  for (auto& c : f) {
    if (c > half) c -= m;
  }
  z_trim(f);
}

//////////////////////////////////////////////////////////////////////
// Zassenhaus driver for primitive squarefree integer polynomials

std::vector<UniPoly> factor_squarefree_z(const UniPoly& fq) {
  int n = fq.degree();
  assert(n >= 1);
  if (n == 1) return {fq.scale(1 / fq.lead())};

  ZPoly f = z_from_unipoly(fq);
  Integer L = f.back();

  // pick a prime keeping the leading coefficient a unit and the
  // reduction squarefree
  FpCtx F{0};
  FpPoly fbar;
  Integer pz(101);
  for (;;) {
    F.p = mpz_get_ui(pz.get_mpz_t());
    if (mpz_fdiv_ui(L.get_mpz_t(), static_cast<unsigned long>(F.p)) != 0) {
      fbar = z_mod_p(f, F);
      if (fp_deg(fbar) == n) {
        FpPoly g = fp_gcd(F, fbar, fp_derivative(F, fbar));
        if (fp_deg(g) == 0) break;
      }
    }
    mpz_nextprime(pz.get_mpz_t(), pz.get_mpz_t());
  }

  SplitMix64 rng(0x5eedULL * 1000003ULL + F.p * 31ULL + u64(n));
  std::vector<FpPoly> gbar = fp_factor_squarefree(F, fp_monic(F, fbar), rng);
  if (gbar.size() == 1) return {fq.scale(1 / fq.lead())};

  // coefficient bound: generous Landau-Mignotte style, any integer
  // factor of f scaled by L stays strictly below p^K / 2
  Integer norm2(0);
  for (const auto& c : f) norm2 += c * c;
  Integer s;
  mpz_sqrt(s.get_mpz_t(), norm2.get_mpz_t());
  s += 1;
  Integer B = abs(L) * s;
  mpz_mul_2exp(B.get_mpz_t(), B.get_mpz_t(), unsigned(n + 1));
  Integer P(long(F.p));
  while (P <= 2 * B) P *= long(F.p);

  // linear multifactor Hensel lifting: f = L * prod g_i (mod p^k),
  // g_i monic.  per-factor correction solves
  //   L * sum_i delta_i * prod_{j != i} g_j = e / p^k (mod p)
  // via precomputed inverses sigma_i mod gbar_i.
  std::size_t r = gbar.size();
  u64 Lp = mpz_fdiv_ui(L.get_mpz_t(), static_cast<unsigned long>(F.p));
  std::vector<FpPoly> sigma(r);
  for (std::size_t i = 0; i < r; ++i) {
    FpPoly prod = {Lp};
    for (std::size_t j = 0; j < r; ++j) {
      if (j == i) continue;
      prod = fp_rem(F, fp_mul(F, prod, gbar[j]), gbar[i]);
    }
    FpXgcd x = fp_xgcd(F, prod, gbar[i]);
    assert(fp_deg(x.g) == 0);
    sigma[i] = x.u;
  }

  std::vector<ZPoly> g(r);
  for (std::size_t i = 0; i < r; ++i) g[i] = z_from_fp(gbar[i]);
  Integer pk(long(F.p));
  while (pk < P) {
    ZPoly prod = {Integer(L)};
    for (const auto& gi : g) prod = z_mul(prod, gi);
    ZPoly e = z_sub(f, prod);
    ZPoly ediv(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) {
      Integer q, rem;
      mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), e[i].get_mpz_t(), pk.get_mpz_t());
      assert(rem == 0);
      ediv[i] = q;
    }
    z_trim(ediv);
    FpPoly E = z_mod_p(ediv, F);
    for (std::size_t i = 0; i < r; ++i) {
      FpPoly delta = fp_rem(F, fp_mul(F, E, sigma[i]), gbar[i]);
      for (std::size_t j = 0; j < delta.size(); ++j) {
        if (g[i].size() <= j) g[i].resize(j + 1, Integer(0));
        g[i][j] += pk * Integer(static_cast<unsigned long>(delta[j]));
      }
      z_trim(g[i]);
    }
    pk *= long(F.p);
  }
  Integer PK = pk;

  // recombination: multiply subsets mod p^K, lift symmetrically, trial
  // divide.  subsets are tried in increasing size, so accepted factors
  // are irreducible.
  std::vector<ZPoly> modfac(g.begin(), g.end());
  UniPoly fcur = fq;
  std::vector<UniPoly> out;

  bool progress = true;
  while (progress) {
    progress = false;
    std::size_t m = modfac.size();
    for (std::size_t size = 1; 2 * size <= m && !progress; ++size) {
      // iterate index combinations of the given size
      std::vector<std::size_t> idx(size);
      for (std::size_t i = 0; i < size; ++i) idx[i] = i;
      for (;;) {
        ZPoly cand = {Integer(L)};
        for (std::size_t i : idx) cand = z_mul(cand, modfac[i]);
        z_mod_coeffs(cand, PK);
        z_symmetric(cand, PK);
        UniPoly h = content_split(unipoly_from_z(cand)).primitive;
        if (h.degree() >= 1) {
          PolyDivMod d = divmod(fcur, h);
          if (d.rem.is_zero()) {
            out.push_back(h.scale(1 / h.lead()));
            // quotient of primitives is integral and primitive
            fcur = d.quot;
            L = fcur.lead().get_num();
            std::vector<ZPoly> rest;
            for (std::size_t i = 0, k = 0; i < modfac.size(); ++i) {
              if (k < idx.size() && idx[k] == i) {
                ++k;
                continue;
              }
              rest.push_back(modfac[i]);
            }
            modfac = std::move(rest);
            progress = true;
            break;
          }
        }
        // next combination
        bool advanced = false;
        for (std::size_t i = size; i-- > 0;) {
          if (idx[i] != i + m - size) {
            ++idx[i];
            for (std::size_t j = i + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
            advanced = true;
            break;
          }
        }
        if (!advanced) break;
      }
    }
  }
  if (fcur.degree() >= 1) out.push_back(fcur.scale(1 / fcur.lead()));
  return out;
}

bool factor_order(const PolyFactor& a, const PolyFactor& b) {
  if (a.poly.degree() != b.poly.degree()) return a.poly.degree() < b.poly.degree();
  const auto& ca = a.poly.coeffs();
  const auto& cb = b.poly.coeffs();
  for (std::size_t i = ca.size(); i-- > 0;) {
    if (ca[i] != cb[i]) return ca[i] < cb[i];
  }
  return false;
}

}  // namespace

Factorization factor_q(const UniPoly& f) {
  if (f.is_zero()) throw InternalError("factor_q of zero polynomial");
  Factorization out;
  out.unit = f.lead();
  if (f.degree() <= 0) {
    out.unit = f.coeff(0);
    return out;
  }

  // Yun squarefree decomposition of the monic normalization
  UniPoly f0 = f.scale(1 / f.lead());
  std::vector<std::pair<UniPoly, int>> sqfree;
  UniPoly g = poly_gcd(f0, f0.derivative());
  if (g.degree() == 0) {
    sqfree.emplace_back(f0, 1);
  } else {
    UniPoly C = divmod(f0, g).quot;
    UniPoly D = divmod(f0.derivative(), g).quot - C.derivative();
    int i = 1;
    while (C.degree() > 0) {
      UniPoly Pi = poly_gcd(C, D);
      if (Pi.degree() > 0) sqfree.emplace_back(Pi, i);
      C = divmod(C, Pi).quot;
      D = divmod(D, Pi).quot - C.derivative();
      ++i;
    }
  }

  for (const auto& [part, mult] : sqfree) {
    UniPoly prim = content_split(part).primitive;
    for (const UniPoly& h : factor_squarefree_z(prim))
      out.factors.push_back({h, mult});
  }
  std::sort(out.factors.begin(), out.factors.end(), factor_order);
  return out;
}

bool is_irreducible(const UniPoly& f) {
  if (f.degree() < 1) throw InternalError("irreducibility needs degree >= 1");
  Factorization fac = factor_q(f);
  return fac.factors.size() == 1 && fac.factors[0].multiplicity == 1;
}

UniPoly squarefree_part(const UniPoly& f) {
  if (f.is_zero()) throw InternalError("squarefree_part of zero polynomial");
  if (f.degree() == 0) return UniPoly::one();
  UniPoly g = poly_gcd(f, f.derivative());
  UniPoly q = divmod(f, g).quot;
  return q.scale(1 / q.lead());
}

}  // namespace ellsurf
