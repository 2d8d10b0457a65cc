#ifndef HORIZON_TRACER_HPP
#define HORIZON_TRACER_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "horizon/chain_model.hpp"
#include "horizon/criteria.hpp"
#include "horizon/landmarks.hpp"
#include "horizon/oracle.hpp"
#include "horizon/tolerance.hpp"

namespace horizon::tracer {

enum class Method { Criteria, Oracle };

inline const char* to_string(Method m) {
  return m == Method::Criteria ? "criteria" : "oracle";
}

namespace detail {

inline Verdict evaluate(int dim, const std::vector<double>& g, Method method,
                        const ToleranceConfig& tol) {
  ChainSpec spec{dim, g};
  if (method == Method::Criteria) return criteria::member(spec, tol);
  return oracle::classify(oracle::spectrum(spec, tol), tol);
}

// deterministic uniform in [0,1) independent of library distributions
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace detail

struct BoundaryPoint {
  std::vector<double> couplings;
  double radius = 0.0;
  double margin = 0.0;
  Method method = Method::Oracle;
};

// Bisection along a ray from an interior origin to the first crossing of
// the horizon.
inline BoundaryPoint ray_bisect(int dim, const std::vector<double>& direction,
                                const std::vector<double>& origin,
                                Method method, const ToleranceConfig& tol = {},
                                double search_cap = 0.0) {
  const int j = dim / 2;
  if (static_cast<int>(direction.size()) != j ||
      static_cast<int>(origin.size()) != j)
    throw std::invalid_argument("ray_bisect: direction/origin must have length J");
  double norm = 0.0;
  for (double d : direction) norm += d * d;
  norm = std::sqrt(norm);
  if (norm == 0.0) throw std::invalid_argument("ray_bisect: zero direction");

  if (search_cap <= 0.0) {
    // default cap: 1.5x the spike radius, measured from the origin
    double r = 0.0;
    for (int n = 1; n <= j; ++n) r += spike_coupling(dim, n) * spike_coupling(dim, n);
    search_cap = 1.5 * std::sqrt(r) + 1.0;
  }

  auto point_at = [&](double r) {
    std::vector<double> g(origin);
    for (int k = 0; k < j; ++k) g[k] += r * direction[k] / norm;
    return g;
  };
  auto margin_at = [&](double r) {
    return detail::evaluate(dim, point_at(r), method, tol).margin;
  };

  if (detail::evaluate(dim, origin, method, tol).region != Region::Inside)
    throw std::domain_error("ray_bisect: origin is not strictly Inside");

  // march outwards for a sign change
  double lo = 0.0, hi = 0.0;
  bool bracketed = false;
  for (double r = search_cap / 64.0; r <= search_cap * (1.0 + 1e-12); r *= 1.5) {
    if (margin_at(r) < 0.0) {
      hi = r;
      bracketed = true;
      break;
    }
    lo = r;
  }
  if (!bracketed && margin_at(search_cap) < 0.0) {
    hi = search_cap;
    bracketed = true;
  }
  if (!bracketed)
    throw std::domain_error("ray_bisect: no Outside point within the search cap");

  double mid = 0.5 * (lo + hi), m = 0.0;
  for (int it = 0; it < 200; ++it) {
    mid = 0.5 * (lo + hi);
    m = margin_at(mid);
    if (std::abs(m) <= tol.boundary_tol) break;
    if (m > 0.0)
      lo = mid;
    else
      hi = mid;
    if (hi - lo < 1e-15 * (1.0 + hi)) break;
  }

  BoundaryPoint bp;
  bp.couplings = point_at(mid);
  bp.radius = mid;
  bp.margin = m;
  bp.method = method;
  return bp;
}

struct SliceSpec {
  int dim = 2;
  std::vector<int> free_axes;       // 1-based coupling indices, 1 or 2 of them
  std::vector<double> fixed;        // values for all J couplings (free ones ignored)
  std::vector<std::pair<double, double>> range;  // per free axis
  std::vector<int> resolution;      // per free axis, >= 2
  std::vector<double> origin;       // radial origin for 2D mode (empty = 0)

  void validate() const {
    if (free_axes.empty() || free_axes.size() > 2)
      throw std::invalid_argument("SliceSpec: need one or two free axes");
    const int j = dim / 2;
    std::vector<int> ax = free_axes;
    std::sort(ax.begin(), ax.end());
    if (std::adjacent_find(ax.begin(), ax.end()) != ax.end())
      throw std::invalid_argument("SliceSpec: free axes must be distinct");
    for (int a : free_axes)
      if (a < 1 || a > j) throw std::invalid_argument("SliceSpec: axis out of range");
    if (range.size() != free_axes.size() || resolution.size() != free_axes.size())
      throw std::invalid_argument("SliceSpec: range/resolution per free axis");
    for (int r : resolution)
      if (r < 2) throw std::invalid_argument("SliceSpec: resolution must be >= 2");
    if (static_cast<int>(fixed.size()) != j)
      throw std::invalid_argument("SliceSpec: fixed must list all J couplings");
  }
};

struct TraceResult {
  SliceSpec slice;
  std::vector<BoundaryPoint> boundary_points;
  std::vector<std::vector<int>> grid_verdicts;  // region codes, row = axis-0 index
  ToleranceConfig tol;
  Method method = Method::Oracle;
};

// 1D: Inside-segment endpoints along the free axis. 2D: per-column linear
// bisection along axis 1, producing a column-ordered boundary polyline.
inline TraceResult slice_trace(const SliceSpec& slice, Method method,
                               const ToleranceConfig& tol = {}) {
  slice.validate();
  TraceResult res;
  res.slice = slice;
  res.tol = tol;
  res.method = method;

  auto coupling_at = [&](const std::vector<double>& free_vals) {
    std::vector<double> g = slice.fixed;
    for (std::size_t i = 0; i < slice.free_axes.size(); ++i)
      g[slice.free_axes[i] - 1] = free_vals[i];
    return g;
  };
  auto margin_at = [&](const std::vector<double>& free_vals) {
    return detail::evaluate(slice.dim, coupling_at(free_vals), method, tol).margin;
  };

  if (slice.free_axes.size() == 1) {
    const auto [lo, hi] = slice.range[0];
    const int n = slice.resolution[0];
    std::vector<double> ms(n);
    res.grid_verdicts.emplace_back();
    for (int i = 0; i < n; ++i) {
      const double v = lo + (hi - lo) * i / (n - 1);
      ms[i] = margin_at({v});
      res.grid_verdicts[0].push_back(ms[i] > 0 ? 0 : 1);
    }
    for (int i = 0; i + 1 < n; ++i) {
      if ((ms[i] > 0.0) == (ms[i + 1] > 0.0)) continue;
      double a = lo + (hi - lo) * i / (n - 1);
      double b = lo + (hi - lo) * (i + 1) / (n - 1);
      double ma = ms[i];
      for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (a + b);
        const double mm = margin_at({mid});
        if (std::abs(mm) <= tol.boundary_tol) {
          a = b = mid;
          break;
        }
        if ((mm > 0.0) == (ma > 0.0)) {
          a = mid;
          ma = mm;
        } else {
          b = mid;
        }
      }
      BoundaryPoint bp;
      const double v = 0.5 * (a + b);
      bp.couplings = coupling_at({v});
      bp.radius = v;
      bp.margin = margin_at({v});
      bp.method = method;
      res.boundary_points.push_back(bp);
    }
    return res;
  }

  // 2D: scan columns along axis 0, bisect crossings along axis 1
  const auto [lo0, hi0] = slice.range[0];
  const auto [lo1, hi1] = slice.range[1];
  const int n0 = slice.resolution[0], n1 = slice.resolution[1];
  for (int i = 0; i < n0; ++i) {
    const double v0 = lo0 + (hi0 - lo0) * i / (n0 - 1);
    res.grid_verdicts.emplace_back();
    std::vector<double> ms(n1);
    for (int k = 0; k < n1; ++k) {
      const double v1 = lo1 + (hi1 - lo1) * k / (n1 - 1);
      ms[k] = margin_at({v0, v1});
      res.grid_verdicts.back().push_back(ms[k] > 0 ? 0 : 1);
    }
    for (int k = 0; k + 1 < n1; ++k) {
      if ((ms[k] > 0.0) == (ms[k + 1] > 0.0)) continue;
      double a = lo1 + (hi1 - lo1) * k / (n1 - 1);
      double b = lo1 + (hi1 - lo1) * (k + 1) / (n1 - 1);
      double ma = ms[k];
      for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (a + b);
        const double mm = margin_at({v0, mid});
        if (std::abs(mm) <= tol.boundary_tol) {
          a = b = mid;
          break;
        }
        if ((mm > 0.0) == (ma > 0.0)) {
          a = mid;
          ma = mm;
        } else {
          b = mid;
        }
      }
      BoundaryPoint bp;
      const double v1 = 0.5 * (a + b);
      bp.couplings = coupling_at({v0, v1});
      bp.radius = v1;
      bp.margin = margin_at({v0, v1});
      bp.method = method;
      res.boundary_points.push_back(bp);
    }
  }
  return res;
}

struct Disagreement {
  std::vector<double> couplings;
  Region criteria_region;
  Region oracle_region;
  double criteria_margin;
  double oracle_margin;
};

struct AgreementReport {
  int dim = 0;
  long samples = 0;
  long agreed = 0;
  std::vector<Disagreement> disagreements;
  std::uint64_t seed = 0;
  bool all_in_band = true;  // every disagreement has |margin| <= tol.band
};

// Large-scale criteria-vs-oracle comparison on seeded uniform samples in
// the given box (default [0, 1.5 spike] per axis).
inline AgreementReport sample_verify(int dim, long count, std::uint64_t seed,
                                     const ToleranceConfig& tol = {},
                                     std::vector<double> box_hi = {}) {
  if (dim > 11)
    throw std::invalid_argument("sample_verify: criteria path requires N <= 11");
  const int j = dim / 2;
  if (box_hi.empty()) {
    for (int n = 1; n <= j; ++n) box_hi.push_back(1.5 * spike_coupling(dim, n));
  }
  if (static_cast<int>(box_hi.size()) != j)
    throw std::invalid_argument("sample_verify: box must have length J");

  AgreementReport rep;
  rep.dim = dim;
  rep.samples = count;
  rep.seed = seed;
  std::mt19937_64 rng(seed);
  std::vector<double> g(j);
  for (long i = 0; i < count; ++i) {
    for (int k = 0; k < j; ++k) g[k] = detail::uniform01(rng) * box_hi[k];
    ChainSpec spec{dim, g};
    const SecularForm f = secular_form(spec);
    const Verdict vc = criteria::member(f, tol);
    const Verdict vo = oracle::classify(
        oracle::spectrum(spec, tol), tol);
    const bool band = std::abs(vc.margin) <= tol.band_tol ||
                      std::abs(vo.margin) <= tol.band_tol;
    if (vc.region == vo.region || (vc.region == Region::Boundary ||
                                   vo.region == Region::Boundary)) {
      ++rep.agreed;
    } else {
      rep.disagreements.push_back({g, vc.region, vo.region, vc.margin, vo.margin});
      if (!band) rep.all_in_band = false;
    }
  }
  return rep;
}

}  // namespace horizon::tracer

#endif
