// rank lower bounds from height Gram matrices, and the scan for fibers
// whose rank jumps past the generic rank.

#include "ellsurf/mwrank.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <exception>
#include <thread>
#include <vector>

namespace ellsurf {

RankCertificate rank_lower_bound(const EllipticCurveQ& e,
                                 const std::vector<CurvePoint>& pts,
                                 const HeightOptions& hopt, double tolerance) {
  RankCertificate cert;
  cert.tolerance = tolerance;

  // one representative per {P, -P}: inverse points share x
  std::vector<CurvePoint> reps;
  for (const CurvePoint& p : pts) {
    if (p.infinite) continue;
    bool seen = false;
    for (const CurvePoint& r : reps)
      if (r.x == p.x) {
        seen = true;
        break;
      }
    if (!seen) reps.push_back(p);
  }

  // drop torsion: canonical height indistinguishable from zero
  std::vector<double> h;
  std::vector<double> herr;
  for (const CurvePoint& p : reps) {
    HeightValue hv = canonical_height(e, p, hopt);
    if (hv.value <= tolerance) continue;
    cert.points.push_back(p);
    h.push_back(hv.value);
    herr.push_back(hv.error);
  }

  const int n = int(cert.points.size());
  cert.gram.assign(n, std::vector<double>(n, 0.0));
  double err = 0;
  for (int i = 0; i < n; ++i) {
    cert.gram[i][i] = h[i];
    err = std::max(err, herr[i]);
    for (int j = i + 1; j < n; ++j) {
      CurvePoint s = e.add(cert.points[i], cert.points[j]);
      HeightValue hs = canonical_height(e, s, hopt);
      double v = (hs.value - h[i] - h[j]) / 2;
      cert.gram[i][j] = cert.gram[j][i] = v;
      err = std::max(err, (hs.error + herr[i] + herr[j]) / 2);
    }
  }
  cert.gram_error = err;

  // greedy pivoted elimination on a copy; the Gram matrix of
  // independent points is positive definite, so every certified pivot
  // must stand clear of the tolerance
  std::vector<std::vector<double>> a = cert.gram;
  std::vector<int> remaining(n);
  for (int i = 0; i < n; ++i) remaining[i] = i;
  while (!remaining.empty()) {
    int best = -1;
    double bestv = tolerance;
    for (int idx : remaining)
      if (a[idx][idx] > bestv) {
        bestv = a[idx][idx];
        best = idx;
      }
    if (best < 0) break;
    cert.pivot_points.push_back(best);
    remaining.erase(std::find(remaining.begin(), remaining.end(), best));
    for (int i : remaining)
      for (int j : remaining)
        a[i][j] -= a[i][best] * a[j][best] / a[best][best];
  }
  std::sort(cert.pivot_points.begin(), cert.pivot_points.end());
  cert.certified_rank = int(cert.pivot_points.size());
  return cert;
}

JumpReport jump_search(const WeierstrassModel& m, int generic_rank,
                       const JumpOptions& opt) {
  JumpReport rep;
  rep.generic_rank = generic_rank;
  if (opt.t_min > opt.t_max) return rep;

  InvariantSet inv = invariants(m);
  std::vector<long> smooth;
  for (long t = opt.t_min; t <= opt.t_max; ++t) {
    if (inv.disc.eval(Rational(t)) == 0) {
      FiberReport fr = classify_place(m, Place::at(Rational(t)));
      rep.skipped_singular.push_back({Rational(t), fr.type.to_string()});
    } else {
      smooth.push_back(t);
    }
  }

  int nthreads = std::max(1, opt.threads);
  nthreads = int(std::min<std::size_t>(nthreads, std::max<std::size_t>(
                                                     smooth.size(), 1)));
  std::vector<std::vector<JumpReport::Hit>> found(nthreads);
  std::vector<std::exception_ptr> errors(nthreads);

  auto work = [&](int w) {
    try {
      for (std::size_t i = w; i < smooth.size(); i += std::size_t(nthreads)) {
        long t = smooth[i];
        EllipticCurveQ curve = specialize(m, Rational(t));
        std::vector<CurvePoint> pts = point_search(curve, opt.search);
        RankCertificate cert =
            rank_lower_bound(curve, pts, opt.heights, opt.tolerance);
        if (cert.certified_rank >= generic_rank + opt.jump) {
          JumpReport::Hit hit;
          hit.t = Rational(t);
          hit.certified_rank = cert.certified_rank;
          for (int idx : cert.pivot_points)
            hit.generators.push_back(cert.points[idx]);
          found[w].push_back(std::move(hit));
        }
      }
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };

  if (nthreads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < nthreads; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }
  for (auto& ep : errors)
    if (ep) std::rethrow_exception(ep);

  for (auto& v : found)
    for (auto& hit : v) rep.hits.push_back(std::move(hit));
  std::sort(rep.hits.begin(), rep.hits.end(),
            [](const JumpReport::Hit& x, const JumpReport::Hit& y) {
              return x.t < y.t;
            });
  return rep;
}

}  // namespace ellsurf
