#ifndef HORIZON_LANDMARKS_HPP
#define HORIZON_LANDMARKS_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "horizon/chain_model.hpp"
#include "horizon/oracle.hpp"
#include "horizon/tolerance.hpp"

namespace horizon::landmarks {

// Spike couplings g_n = sqrt(n (N - n)), n = 1..J: at this vector the
// monic characteristic polynomial collapses to E^N (all levels coalesce
// at E = 0).
inline std::vector<double> spikes(int dim) {
  if (dim < 2) throw std::invalid_argument("spikes: dim must be >= 2");
  std::vector<double> out(dim / 2);
  for (int n = 1; n <= dim / 2; ++n) out[n - 1] = spike_coupling(dim, n);
  return out;
}

struct AnsatzPoint {
  double t = 0.0;
  std::vector<double> g_caps;     // G_n
  std::vector<double> gammas;     // gamma_n(t) = t + t^2 + ... + t^{J-1} + G_n t^J
  std::vector<double> couplings;  // g_n = g_n^spike sqrt(1 - gamma_n(t))
};

// Near-spike parametrization, evaluated exactly as a change of variables.
inline AnsatzPoint ansatz_point(int dim, double t,
                                const std::vector<double>& g_caps) {
  const int j = dim / 2;
  if (static_cast<int>(g_caps.size()) != j)
    throw std::invalid_argument("ansatz_point: expected J cap parameters");
  AnsatzPoint ap;
  ap.t = t;
  ap.g_caps = g_caps;
  double base = 0.0, tp = 1.0;
  for (int k = 1; k <= j - 1; ++k) {
    tp *= t;
    base += tp;  // t + t^2 + ... + t^{J-1}
  }
  tp *= t;  // t^J
  for (int n = 0; n < j; ++n) {
    const double gamma = base + g_caps[n] * tp;
    if (gamma > 1.0)
      throw std::domain_error("ansatz_point: gamma > 1 gives an imaginary coupling");
    ap.gammas.push_back(gamma);
    ap.couplings.push_back(spike_coupling(dim, n + 1) * std::sqrt(1.0 - gamma));
  }
  return ap;
}

struct Interval {
  double lo = 0.0, hi = 0.0;
  bool empty = true;
  double width() const { return empty ? 0.0 : hi - lo; }
};

namespace detail {

inline bool ansatz_inside(int dim, double t, std::vector<double> caps, int n,
                          double gn, const ToleranceConfig& tol) {
  caps[n] = gn;
  AnsatzPoint ap;
  try {
    ap = ansatz_point(dim, t, caps);
  } catch (const std::domain_error&) {
    return false;
  }
  ChainSpec spec{dim, ap.couplings};
  const auto rep = oracle::spectrum(spec, tol);
  return oracle::classify(rep, tol).region == Region::Inside;
}

}  // namespace detail

// Maximal interval of G_n (others fixed) keeping the ansatz point Inside,
// located by scanning plus edge bisection against the spectral oracle.
inline Interval ansatz_admissible_interval(int dim, double t, int n,
                                           const std::vector<double>& others,
                                           const ToleranceConfig& tol = {}) {
  const int j = dim / 2;
  if (n < 0 || n >= j) throw std::invalid_argument("ansatz_admissible_interval: bad index");
  if (!(t > 0.0 && t < 1.0))
    throw std::invalid_argument("ansatz_admissible_interval: t must be in (0,1)");

  // real couplings require G_n <= (1 - base)/t^J; search box symmetric
  double base = 0.0, tp = 1.0;
  for (int k = 1; k <= j - 1; ++k) {
    tp *= t;
    base += tp;
  }
  tp *= t;
  const double cap = (1.0 - base) / tp;
  Interval iv;
  if (cap <= 0.0) return iv;  // no real coupling for any G_n >= 0
  const double lo_cap = -cap;

  auto inside = [&](double g) {
    return detail::ansatz_inside(dim, t, others, n, g, tol);
  };

  // Scan for a seed inside point. The admissible window sits at G_n of
  // order 1 while the real-coupling cap is of order t^-J, so a uniform
  // scan would step right over it; a cubic stretch concentrates the scan
  // points near G_n = 0 without losing the far range.
  const int scan = 512;
  double seed = 0.0;
  bool found = false;
  for (int i = 0; i <= scan; ++i) {
    const double u = -1.0 + 2.0 * i / scan;
    const double g = u * u * u * cap;
    if (inside(g)) {
      seed = g;
      found = true;
      break;
    }
  }
  if (!found) return iv;

  auto bisect_edge = [&](double in_pt, double out_pt) {
    for (int it = 0; it < 80; ++it) {
      const double mid = 0.5 * (in_pt + out_pt);
      if (inside(mid))
        in_pt = mid;
      else
        out_pt = mid;
    }
    return 0.5 * (in_pt + out_pt);
  };

  // march outwards to bracket each edge
  double out_hi = cap;
  if (inside(cap)) {
    iv.hi = cap;
  } else {
    iv.hi = bisect_edge(seed, out_hi);
  }
  double out_lo = lo_cap;
  if (inside(lo_cap)) {
    iv.lo = lo_cap;
  } else {
    iv.lo = bisect_edge(seed, out_lo);
  }
  iv.empty = false;
  return iv;
}

// N = 6 double-exceptional-point data: couplings c = g_1, a = g_3,
// b^2 = g_2^2, confluence location z^2 (double s-root at 16 z^2).
struct DepSolution {
  double c = 0.0;
  double a = 0.0;
  double b_sq = 0.0;
  double z_sq = 0.0;
  double residual1 = 0.0;
  double residual2 = 0.0;
  double unequal_slack = 0.0;
};

// Residuals of the two N=6 DEP constraints at couplings (c, b, a).
// r1 is the factorized product-of-roots condition (vanishes iff R = 0);
// r2 eliminates the confluence parameter between the remaining two
// coefficient relations.
inline std::pair<double, double> dep_residuals(double a, double b, double c) {
  const double b2 = b * b, c2 = c * c, a2 = a * a;
  const double f1 = a * c2 + 15.0 * a + (15.0 + c2 + 5.0 * b2);
  const double f2 = a * c2 + 15.0 * a - (15.0 + c2 + 5.0 * b2);
  const double r1 = f1 * f2;
  const double r2 = -66.0 * a2 - 36.0 * b2 + 4.0 * c2 * a2 - 189.0 +
                    252.0 * c2 - 4.0 * b2 * a2 - a2 * a2;
  return {r1, r2};
}

inline double dep_unequal_slack(double a, double c) {
  return 84.0 * c * c - 63.0 - (12.0 / 5.0) * (a - 1.0) * (15.0 + c * c);
}

// Solve the N=6 DEP conditions at fixed c: substitute
// b^2 = (c^2 + 15)(a - 1)/5 into the second constraint and locate all
// roots a in [1, 3] by bracketed bisection plus Newton polish. Returns
// every solution, ascending in a.
inline std::vector<DepSolution> dep_solve(double c,
                                          const ToleranceConfig& tol = {}) {
  const double c2 = c * c;
  auto b2_of = [&](double a) { return (c2 + 15.0) * (a - 1.0) / 5.0; };
  auto g = [&](double a) {
    return dep_residuals(a, std::sqrt(std::max(b2_of(a), 0.0)), c).second;
  };

  std::vector<DepSolution> out;
  const int grid = 4096;
  double prev_a = 1.0, prev_g = g(1.0);
  std::vector<double> roots;
  if (prev_g == 0.0) roots.push_back(1.0);
  for (int i = 1; i <= grid; ++i) {
    const double a = 1.0 + 2.0 * i / grid;
    const double ga = g(a);
    if (ga == 0.0) {
      roots.push_back(a);
    } else if (prev_g != 0.0 && ((prev_g < 0.0) != (ga < 0.0))) {
      double lo = prev_a, hi = a, glo = prev_g;
      for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double gm = g(mid);
        if (gm == 0.0) {
          lo = hi = mid;
          break;
        }
        if ((gm < 0.0) == (glo < 0.0)) {
          lo = mid;
          glo = gm;
        } else {
          hi = mid;
        }
      }
      double root = 0.5 * (lo + hi);
      // Newton polish on the exact polynomial
      for (int it = 0; it < 3; ++it) {
        const double h = 1e-7;
        const double d = (g(root + h) - g(root - h)) / (2.0 * h);
        if (std::abs(d) > 1e-300) root -= g(root) / d;
        root = std::clamp(root, 1.0, 3.0);
      }
      roots.push_back(root);
    }
    prev_a = a;
    prev_g = ga;
  }

  // Tangent roots at the interval endpoints (a = 1 at c = 1, a = 3 at the
  // EEP c = sqrt(5)) produce no sign change; admit them by residual size.
  double gscale = 1.0;
  for (int i = 0; i <= grid; ++i)
    gscale = std::max(gscale, std::abs(g(1.0 + 2.0 * i / grid)));
  for (double a_end : {1.0, 3.0}) {
    if (std::abs(g(a_end)) > 1e-7 * gscale) continue;
    bool dup = false;
    for (double r : roots)
      if (std::abs(r - a_end) < 1e-5) dup = true;
    if (!dup) roots.push_back(a_end);
  }
  std::sort(roots.begin(), roots.end());

  if (roots.empty())
    throw std::domain_error("dep_solve: no DEP root a in [1, 3] at this c");

  for (double a : roots) {
    DepSolution sol;
    sol.c = c;
    sol.a = a;
    sol.b_sq = b2_of(a);
    const double b = std::sqrt(std::max(sol.b_sq, 0.0));
    // 3P = 32 z^2 with 3P = 35 - a^2 - 2 b^2 - 2 c^2
    sol.z_sq = (35.0 - a * a - 2.0 * sol.b_sq - 2.0 * c2) / 32.0;
    auto [r1, r2] = dep_residuals(a, b, c);
    sol.residual1 = r1;
    sol.residual2 = r2;
    sol.unequal_slack = dep_unequal_slack(a, c);
    out.push_back(sol);
  }
  (void)tol;
  return out;
}

// Mismatch between the N=6 secular coefficients at (c, b, a) and the
// target (s - 25 y^2)(s - 16 x^2)^2, the outer-pair-real scenario of the
// third boundary sub-surface.
inline std::array<double, 3> pairwise_confluence_residual(double a, double b,
                                                          double c, double x,
                                                          double y) {
  ChainSpec spec{6, {c, b, a}};
  const SecularForm f = secular_form(spec);
  const double x2 = x * x, y2 = y * y;
  return {3.0 * f.p() - (32.0 * x2 + 25.0 * y2),
          3.0 * f.q() - (256.0 * x2 * x2 + 800.0 * x2 * y2),
          f.r() - 6400.0 * x2 * x2 * y2};
}

}  // namespace horizon::landmarks

#endif
