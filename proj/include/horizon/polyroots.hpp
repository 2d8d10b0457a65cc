#ifndef HORIZON_POLYROOTS_HPP
#define HORIZON_POLYROOTS_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace horizon {

using cplx = std::complex<double>;

namespace detail {

inline bool root_less(const cplx& a, const cplx& b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

// Horner evaluation with a running error bound (compensated by the
// standard |coeff|-polynomial majorant).
inline cplx horner_with_bound(const std::vector<double>& coeffs, const cplx& x,
                              double* bound) {
  // coeffs: ascending powers, monic expected at back
  cplx v(0.0, 0.0);
  double e = 0.0;
  const double ax = std::abs(x);
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    v = v * x + coeffs[i];
    e = e * ax + std::abs(coeffs[i]);
  }
  if (bound) *bound = e;
  return v;
}

}  // namespace detail

struct CubicRoots {
  cplx roots[3];
  bool all_real;
};

// Roots of x^3 + b x^2 + c x + d. All-real case uses the trigonometric
// form; otherwise one real root (Cardano with stable branch) plus a
// conjugate pair.
inline CubicRoots solve_cubic(double b, double c, double d) {
  CubicRoots out;
  const double shift = b / 3.0;
  const double p = c - b * b / 3.0;
  const double q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
  const double disc = -(4.0 * p * p * p + 27.0 * q * q);
  if (disc >= 0.0) {
    out.all_real = true;
    if (p >= 0.0) {
      // p can only be >= 0 here when p ~ q ~ 0: triple root
      out.roots[0] = out.roots[1] = out.roots[2] = cplx(-shift, 0.0);
    } else {
      const double m = 2.0 * std::sqrt(-p / 3.0);
      double arg = 3.0 * q / (p * m);
      arg = std::clamp(arg, -1.0, 1.0);
      const double theta = std::acos(arg) / 3.0;
      for (int k = 0; k < 3; ++k) {
        const double xk =
            m * std::cos(theta - 2.0 * std::numbers::pi * k / 3.0) - shift;
        out.roots[k] = cplx(xk, 0.0);
      }
      std::sort(out.roots, out.roots + 3, detail::root_less);
    }
  } else {
    out.all_real = false;
    const double rt = std::sqrt(-disc / 108.0);  // sqrt(q^2/4 + p^3/27)
    const double u3 = -q / 2.0 + (q <= 0.0 ? rt : -rt);
    const double u = std::cbrt(u3);
    const double v = (u != 0.0) ? -p / (3.0 * u) : 0.0;
    const double real_root = u + v - shift;
    const double re = -(u + v) / 2.0 - shift;
    const double im = std::sqrt(3.0) / 2.0 * std::abs(u - v);
    cplx r[3] = {cplx(real_root, 0.0), cplx(re, im), cplx(re, -im)};
    std::sort(r, r + 3, detail::root_less);
    for (int k = 0; k < 3; ++k) out.roots[k] = r[k];
  }
  return out;
}

struct QuarticRoots {
  cplx roots[4];
  bool all_real;
};

// Roots of x^4 + b x^3 + c x^2 + d x + e by the resolvent-cubic
// (Descartes/Ferrari) factorization into two quadratics, with one Newton
// polish step per root. Closed-form quartics lose digits near multiple
// roots, which is exactly the boundary-detection regime.
inline QuarticRoots solve_quartic(double b, double c, double d, double e) {
  QuarticRoots out;
  const double shift = b / 4.0;
  // depressed: y^4 + p y^2 + q y + r
  const double p = c - 3.0 * b * b / 8.0;
  const double q = d - b * c / 2.0 + b * b * b / 8.0;
  const double r =
      e - b * d / 4.0 + b * b * c / 16.0 - 3.0 * b * b * b * b / 256.0;

  cplx y[4];
  if (std::abs(q) < 1e-14 * (1.0 + std::abs(p) + std::abs(r))) {
    // biquadratic
    const cplx disc = std::sqrt(cplx(p * p - 4.0 * r, 0.0));
    const cplx z1 = (-p + disc) / 2.0, z2 = (-p - disc) / 2.0;
    y[0] = std::sqrt(z1);
    y[1] = -y[0];
    y[2] = std::sqrt(z2);
    y[3] = -y[2];
  } else {
    // resolvent cubic in u = t^2 where the quartic splits as
    // (y^2 + t y + m)(y^2 - t y + n): u^3 + 2p u^2 + (p^2 - 4r) u - q^2 = 0
    CubicRoots res = solve_cubic(2.0 * p, p * p - 4.0 * r, -q * q);
    double u = 0.0;
    for (int k = 0; k < 3; ++k) {
      if (std::abs(res.roots[k].imag()) < 1e-12 * (1.0 + std::abs(res.roots[k])))
        u = std::max(u, res.roots[k].real());
    }
    if (u <= 0.0) u = std::max(res.roots[2].real(), 1e-300);
    const double t = std::sqrt(u);
    const double m = (p + u - q / t) / 2.0;
    const double n = (p + u + q / t) / 2.0;
    const cplx d1 = std::sqrt(cplx(t * t - 4.0 * m, 0.0));
    const cplx d2 = std::sqrt(cplx(t * t - 4.0 * n, 0.0));
    y[0] = (cplx(-t, 0.0) + d1) / 2.0;
    y[1] = (cplx(-t, 0.0) - d1) / 2.0;
    y[2] = (cplx(t, 0.0) + d2) / 2.0;
    y[3] = (cplx(t, 0.0) - d2) / 2.0;
  }

  const double coef_scale =
      std::max({1.0, std::abs(b), std::abs(c), std::abs(d), std::abs(e)});
  for (int k = 0; k < 4; ++k) {
    cplx x = y[k] - shift;
    // one Newton step at working precision
    const cplx f = ((x + b) * x + c) * x * x + d * x + e;
    const cplx fp = ((4.0 * x + 3.0 * b) * x + 2.0 * c) * x + d;
    if (std::abs(fp) > 1e-300) {
      const cplx step = f / fp;
      if (std::abs(step) < 0.1 * (1.0 + std::abs(x))) x -= step;
    }
    out.roots[k] = x;
  }
  // snap conjugate dust to the axis
  for (int k = 0; k < 4; ++k) {
    if (std::abs(out.roots[k].imag()) < 1e-11 * (coef_scale + std::abs(out.roots[k])))
      out.roots[k] = cplx(out.roots[k].real(), 0.0);
  }
  std::sort(out.roots, out.roots + 4, detail::root_less);
  out.all_real = true;
  for (int k = 0; k < 4; ++k)
    if (out.roots[k].imag() != 0.0) out.all_real = false;
  return out;
}

// Roots of a monic real polynomial (ascending coefficients, leading 1
// implied by coeffs.back() == 1) by Aberth-Ehrlich simultaneous iteration
// with residual-certified convergence. Throws on non-convergence.
inline std::vector<cplx> poly_roots(const std::vector<double>& monic_coeffs) {
  if (monic_coeffs.size() < 2)
    throw std::invalid_argument("poly_roots: degree must be >= 1");
  if (std::abs(monic_coeffs.back() - 1.0) > 1e-12)
    throw std::invalid_argument("poly_roots: polynomial must be monic");
  // Exact zero roots (constant coefficient exactly 0.0) are deflated up
  // front: simultaneous iteration resolves an m-fold root only to
  // eps^(1/m), far too coarse for confluence detection at the origin.
  int zero_roots = 0;
  std::vector<double> work = monic_coeffs;
  while (work.size() > 1 && work.front() == 0.0) {
    work.erase(work.begin());
    ++zero_roots;
  }
  if (zero_roots > 0) {
    std::vector<cplx> out(zero_roots, cplx(0.0, 0.0));
    if (work.size() > 1) {
      const std::vector<cplx> rest = poly_roots(work);
      out.insert(out.end(), rest.begin(), rest.end());
    }
    std::sort(out.begin(), out.end(), detail::root_less);
    return out;
  }
  const int deg = static_cast<int>(monic_coeffs.size()) - 1;

  if (deg == 1) return {cplx(-monic_coeffs[0], 0.0)};
  if (deg == 2) {
    const double b = monic_coeffs[1], c = monic_coeffs[0];
    const cplx sq = std::sqrt(cplx(b * b - 4.0 * c, 0.0));
    // stable quadratic formula
    const cplx q = -(cplx(b, 0.0) + (b >= 0.0 ? sq : -sq)) / 2.0;
    cplx r1 = q, r2 = (std::abs(q) > 0.0) ? cplx(c, 0.0) / q : cplx(0.0, 0.0);
    std::vector<cplx> out{r1, r2};
    std::sort(out.begin(), out.end(), detail::root_less);
    return out;
  }

  // root bound (Cauchy): 1 + max |a_i|
  double rad = 0.0;
  for (int i = 0; i < deg; ++i) rad = std::max(rad, std::abs(monic_coeffs[i]));
  rad = 1.0 + rad;

  std::vector<double> dcoef(deg);
  for (int i = 1; i <= deg; ++i) dcoef[i - 1] = i * monic_coeffs[i];

  std::vector<cplx> z(deg);
  for (int k = 0; k < deg; ++k) {
    const double ang =
        2.0 * std::numbers::pi * k / deg + 0.4;  // perturbed circle
    z[k] = 0.5 * rad * cplx(std::cos(ang), std::sin(ang));
  }

  const int max_iter = 400;
  bool converged = false;
  for (int it = 0; it < max_iter && !converged; ++it) {
    converged = true;
    for (int k = 0; k < deg; ++k) {
      double bound = 0.0;
      const cplx pv = detail::horner_with_bound(monic_coeffs, z[k], &bound);
      if (std::abs(pv) <= 4.0 * std::numeric_limits<double>::epsilon() * bound)
        continue;
      cplx dv(0.0, 0.0);
      {
        for (std::size_t i = dcoef.size(); i-- > 0;) dv = dv * z[k] + dcoef[i];
      }
      cplx corr = (std::abs(dv) > 1e-300) ? pv / dv : cplx(1e-3, 1e-3);
      cplx sum(0.0, 0.0);
      for (int m = 0; m < deg; ++m)
        if (m != k && z[k] != z[m]) sum += 1.0 / (z[k] - z[m]);
      const cplx denom = 1.0 - corr * sum;
      const cplx step = (std::abs(denom) > 1e-300) ? corr / denom : corr;
      z[k] -= step;
      if (std::abs(step) > 1e-14 * (1.0 + std::abs(z[k]))) converged = false;
    }
  }

  // residual certification
  for (int k = 0; k < deg; ++k) {
    double bound = 0.0;
    const cplx pv = detail::horner_with_bound(monic_coeffs, z[k], &bound);
    if (std::abs(pv) > 1e-10 * std::max(1.0, bound))
      throw std::runtime_error(
          "poly_roots: residual certification failed, |p(z)| = " +
          std::to_string(std::abs(pv)));
  }

  // real polynomial: snap near-real roots to the axis
  for (auto& zk : z)
    if (std::abs(zk.imag()) < 1e-10 * (1.0 + std::abs(zk))) zk = cplx(zk.real(), 0.0);
  std::sort(z.begin(), z.end(), detail::root_less);
  return z;
}

}  // namespace horizon

#endif
