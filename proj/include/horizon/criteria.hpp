#ifndef HORIZON_CRITERIA_HPP
#define HORIZON_CRITERIA_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "horizon/chain_model.hpp"
#include "horizon/polyroots.hpp"
#include "horizon/tolerance.hpp"
#include "horizon/verdict.hpp"

namespace horizon::criteria {

// Abbreviations of the inequality chains: B = P^2 - Q, q = Q/B,
// 2 B^{3/2} C = PQ - R, 3 B^2 D = PR - S, 4 B^{5/2} G = PS - T.
struct AuxQuantities {
  double b = 0.0, q = 0.0, c = 0.0, d = 0.0, g = 0.0;
  bool b_def = true;
  bool q_def = false, c_def = false, d_def = false, g_def = false;
};

struct CriticalPoints {
  std::vector<double> x;         // ascending real roots of y'
  std::vector<double> y_scaled;  // Y_k = x_k / sqrt(B)
  double y_minus = 0.0, y_plus = 0.0;             // J = 4
  double y_alpha = 0.0, y_beta = 0.0, y_gamma = 0.0;  // J = 5
  bool all_real = false;
};

struct Slack {
  std::string name;
  double value;  // normalized; negative = violated
};

inline double eps_b_for(double p, const ToleranceConfig& tol) {
  return tol.eps_b * std::max(1.0, p * p);
}

// Coefficient slacks of the necessary conditions P, Q, R, S, T >= 0.
// Necessary only: non-negative coefficients still admit complex roots.
inline std::vector<double> necessary_conditions(const SecularForm& f) {
  return f.coeffs;
}

namespace detail {

inline double nrm(double v, double scale) { return v / std::max(scale, 1.0); }

// Reality-of-roots condition for the cubic x^3 - 3P x^2 + 3Q x - R:
// 3 P^2 Q^2 + 6 R P Q - 4 Q^3 - R^2 - 4 R P^3 >= 0 (the cubic
// discriminant over 27), normalized by the largest participating term.
inline double cubic_reality_slack(double p, double q, double r) {
  const double t1 = 3.0 * p * p * q * q;
  const double t2 = 6.0 * r * p * q;
  const double t3 = 4.0 * q * q * q;
  const double t4 = r * r;
  const double t5 = 4.0 * r * p * p * p;
  const double scale = std::max(
      {std::abs(t1), std::abs(t2), std::abs(t3), std::abs(t4), std::abs(t5), 1.0});
  return (t1 + t2 - t3 - t4 - t5) / scale;
}

inline std::vector<double> real_parts_sorted(const cplx* roots, int n) {
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = roots[i].real();
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

inline AuxQuantities aux_quantities(const SecularForm& f,
                                    const ToleranceConfig& tol = {}) {
  AuxQuantities a;
  const double p = f.p(), q = f.q(), r = f.r(), s = f.s(), t = f.t();
  a.b = p * p - q;
  const double eps = eps_b_for(p, tol);
  if (a.b > eps) {
    const double sb = std::sqrt(a.b);
    a.q = q / a.b;
    a.q_def = true;
    if (f.j >= 3) {
      a.c = (p * q - r) / (2.0 * a.b * sb);
      a.c_def = true;
    }
    if (f.j >= 4) {
      a.d = (p * r - s) / (3.0 * a.b * a.b);
      a.d_def = true;
    }
    if (f.j >= 5) {
      a.g = (p * s - t) / (4.0 * a.b * a.b * sb);
      a.g_def = true;
    }
  }
  return a;
}

namespace detail {

// Inequality chain certifying that all four roots of
// x^4 - 4P x^3 + 6Q x^2 - 4R x + S are real and non-negative. Appends
// normalized slacks; fills x with the (sorted, real-part) critical roots of
// the associated cubic. Shared by the J=4 membership test and the J=5
// derivative step.
inline void quartic_root_chain(double p, double q, double r, double s,
                               const ToleranceConfig& tol,
                               const std::string& tag,
                               std::vector<Slack>& slacks,
                               std::vector<double>* x_out,
                               bool* degenerate) {
  const double sc_p = std::max({std::abs(p), std::abs(q), std::abs(r),
                                std::abs(s), 1.0});
  slacks.push_back({tag + "P>=0", nrm(p, sc_p)});
  slacks.push_back({tag + "Q>=0", nrm(q, sc_p)});
  slacks.push_back({tag + "R>=0", nrm(r, sc_p)});
  slacks.push_back({tag + "S>=0", nrm(s, sc_p)});

  const double b = p * p - q;
  slacks.push_back({tag + "B>=0", nrm(b, std::max(p * p, std::abs(q)))});
  slacks.push_back({tag + "x-real", cubic_reality_slack(p, q, r)});

  const CubicRoots cub = solve_cubic(-3.0 * p, 3.0 * q, -r);
  const std::vector<double> x = real_parts_sorted(cub.roots, 3);
  if (x_out) *x_out = x;

  if (b > eps_b_for(p, tol)) {
    const double sb = std::sqrt(b);
    const double c = (p * q - r) / (2.0 * b * sb);
    const double d = (p * r - s) / (3.0 * b * b);
    const double aux_sc = std::max({c * c, std::abs(d), 1.0});
    slacks.push_back({tag + "D>=0", d / aux_sc});
    slacks.push_back({tag + "C2>=D", (c * c - d) / aux_sc});
    const double disc = std::max(c * c - d, 0.0);
    const double ym = c - std::sqrt(disc);
    const double yp = c + std::sqrt(disc);
    const double y1 = x[0] / sb, y2 = x[1] / sb, y3 = x[2] / sb;
    const double ysc = std::max({std::abs(y1), std::abs(y3), std::abs(ym),
                                 std::abs(yp), 1.0});
    slacks.push_back({tag + "interlace-Y1<=Y-", nrm(ym - y1, ysc)});
    slacks.push_back({tag + "interlace-Y-<=Y2", nrm(y2 - ym, ysc)});
    slacks.push_back({tag + "interlace-Y2<=Y+", nrm(yp - y2, ysc)});
    slacks.push_back({tag + "interlace-Y+<=Y3", nrm(y3 - yp, ysc)});
  } else {
    // B ~ 0: the sqrt(B) rescaling is undefined; fall back to the raw
    // sign conditions y(x_k) vs -S on the unscaled critical points.
    if (degenerate) *degenerate = true;
    const double ysc = std::max({std::abs(s), sc_p * sc_p, 1.0});
    auto yv = [&](double xx) {
      return (((xx - 4.0 * p) * xx + 6.0 * q) * xx - 4.0 * r) * xx;
    };
    slacks.push_back({tag + "y(x1)<=-S", nrm(-s - yv(x[0]), ysc)});
    slacks.push_back({tag + "y(x2)>=-S", nrm(yv(x[1]) + s, ysc)});
    slacks.push_back({tag + "y(x3)<=-S", nrm(-s - yv(x[2]), ysc)});
  }
}

}  // namespace detail

// Critical points of the derivative polynomial, J = 4 or 5; also the
// auxiliary roots Y_+- (J=4) and of w(Y) = Y^3 - 3C Y^2 + 3D Y - G (J=5).
inline CriticalPoints critical_points(const SecularForm& f,
                                      const ToleranceConfig& tol = {}) {
  if (f.j != 4 && f.j != 5)
    throw std::invalid_argument("critical_points: requires J = 4 or 5");
  CriticalPoints cp;
  const double p = f.p(), q = f.q(), r = f.r(), s = f.s();
  const AuxQuantities a = aux_quantities(f, tol);
  if (f.j == 4) {
    const CubicRoots cub = solve_cubic(-3.0 * p, 3.0 * q, -r);
    cp.all_real = cub.all_real;
    cp.x = detail::real_parts_sorted(cub.roots, 3);
    if (a.c_def && a.d_def) {
      const double disc = a.c * a.c - a.d;
      if (disc >= 0.0) {
        cp.y_minus = a.c - std::sqrt(disc);
        cp.y_plus = a.c + std::sqrt(disc);
      } else {
        cp.all_real = false;
      }
    }
  } else {
    const QuarticRoots qu = solve_quartic(-4.0 * p, 6.0 * q, -4.0 * r, s);
    cp.all_real = qu.all_real;
    cp.x = detail::real_parts_sorted(qu.roots, 4);
    if (a.c_def && a.d_def && a.g_def) {
      const CubicRoots w = solve_cubic(-3.0 * a.c, 3.0 * a.d, -a.g);
      if (!w.all_real) cp.all_real = false;
      const std::vector<double> yw = detail::real_parts_sorted(w.roots, 3);
      cp.y_alpha = yw[0];
      cp.y_beta = yw[1];
      cp.y_gamma = yw[2];
    }
  }
  if (a.b > eps_b_for(p, tol)) {
    const double sb = std::sqrt(a.b);
    for (double xx : cp.x) cp.y_scaled.push_back(xx / sb);
  }
  return cp;
}

// Admissible band for R / (2 B^{3/2}) at J = 3, in terms of q = Q/B.
inline std::pair<double, double> j3_band_for_q(double q) {
  const double u = (q / 2.0 - 1.0) * std::sqrt(1.0 + q);
  const double upper = 1.0 + u;
  const double lower = (q <= 3.0) ? 0.0 : u - 1.0;
  return {lower, upper};
}

inline std::pair<double, double> j3_band(const SecularForm& f,
                                         const ToleranceConfig& tol = {}) {
  if (f.j != 3) throw std::invalid_argument("j3_band: requires J = 3");
  const double b = f.p() * f.p() - f.q();
  if (b <= eps_b_for(f.p(), tol))
    throw std::domain_error("j3_band: degenerate band, B <= eps_B");
  if (f.q() < 0.0) throw std::domain_error("j3_band: requires Q >= 0");
  return j3_band_for_q(f.q() / b);
}

namespace detail {

inline void member_slacks(const SecularForm& f, const ToleranceConfig& tol,
                          std::vector<Slack>& slacks, bool* degenerate) {
  const double p = f.p();
  const double sc = [&] {
    double m = 1.0;
    for (double c : f.coeffs) m = std::max(m, std::abs(c));
    return m;
  }();

  switch (f.j) {
    case 1:
      slacks.push_back({"P>=0", nrm(p, sc)});
      return;
    case 2: {
      const double q = f.q();
      slacks.push_back({"P>=0", nrm(p, sc)});
      slacks.push_back({"Q>=0", nrm(q, sc)});
      slacks.push_back({"P2>=Q", nrm(p * p - q, std::max(p * p, std::abs(q)))});
      return;
    }
    case 3: {
      const double q = f.q(), r = f.r();
      slacks.push_back({"P>=0", nrm(p, sc)});
      slacks.push_back({"Q>=0", nrm(q, sc)});
      slacks.push_back({"R>=0", nrm(r, sc)});
      slacks.push_back({"Eq-uhrada", cubic_reality_slack(p, q, r)});
      return;
    }
    case 4: {
      quartic_root_chain(p, f.q(), f.r(), f.s(), tol, "", slacks, nullptr,
                         degenerate);
      return;
    }
    case 5: {
      const double q = f.q(), r = f.r(), s = f.s(), t = f.t();
      slacks.push_back({"T>=0", nrm(t, sc)});
      // roots x_1..x_4 of y'/5 real and non-negative: J=4 machinery on
      // (P, Q, R, S)
      quartic_root_chain(p, q, r, s, tol, "x:", slacks, nullptr, degenerate);
      // the interlacing below needs the four quartic roots themselves,
      // not the three critical points the chain uses internally
      const QuarticRoots qu = solve_quartic(-4.0 * p, 6.0 * q, -4.0 * r, s);
      const std::vector<double> x = real_parts_sorted(qu.roots, 4);

      const AuxQuantities a = aux_quantities(f, tol);
      if (a.b > eps_b_for(p, tol)) {
        // roots of w(Y) real and non-negative: J=3 machinery on (C, D, G)
        const double aux_sc =
            std::max({std::abs(a.c), std::abs(a.d), std::abs(a.g), 1.0});
        slacks.push_back({"C>=0", nrm(a.c, aux_sc)});
        slacks.push_back({"D>=0", nrm(a.d, aux_sc)});
        slacks.push_back({"G>=0", nrm(a.g, aux_sc)});
        slacks.push_back({"w-real", cubic_reality_slack(a.c, a.d, a.g)});

        const CubicRoots w = solve_cubic(-3.0 * a.c, 3.0 * a.d, -a.g);
        const std::vector<double> yw = real_parts_sorted(w.roots, 3);
        const double sb = std::sqrt(a.b);
        const double y1 = x[0] / sb, y2 = x[1] / sb, y3 = x[2] / sb,
                     y4 = x[3] / sb;
        const double ysc = std::max(
            {std::abs(y1), std::abs(y4), std::abs(yw[0]), std::abs(yw[2]), 1.0});
        slacks.push_back({"interlace-Y1<=Ya", nrm(yw[0] - y1, ysc)});
        slacks.push_back({"interlace-Ya<=Y2", nrm(y2 - yw[0], ysc)});
        slacks.push_back({"interlace-Y2<=Yb", nrm(yw[1] - y2, ysc)});
        slacks.push_back({"interlace-Yb<=Y3", nrm(y3 - yw[1], ysc)});
        slacks.push_back({"interlace-Y3<=Yg", nrm(yw[2] - y3, ysc)});
        slacks.push_back({"interlace-Yg<=Y4", nrm(y4 - yw[2], ysc)});
      } else {
        // degenerate rescaling: raw sign conditions y(x_k) vs T on the
        // quintic y(x) = x^5 - 5P x^4 + 10Q x^3 - 10R x^2 + 5S x
        if (degenerate) *degenerate = true;
        const double ysc = std::max({std::abs(t), sc * sc, 1.0});
        auto yv = [&](double xx) {
          return ((((xx - 5.0 * p) * xx + 10.0 * q) * xx - 10.0 * r) * xx +
                  5.0 * s) * xx;
        };
        slacks.push_back({"y(x1)>=T", nrm(yv(x[0]) - t, ysc)});
        slacks.push_back({"y(x2)<=T", nrm(t - yv(x[1]), ysc)});
        slacks.push_back({"y(x3)>=T", nrm(yv(x[2]) - t, ysc)});
        slacks.push_back({"y(x4)<=T", nrm(t - yv(x[3]), ysc)});
      }
      return;
    }
    default:
      throw std::invalid_argument(
          "member: closed-form criteria exist only for J in 1..5 (N <= 11); "
          "use the spectral oracle instead");
  }
}

}  // namespace detail

// Closed-form membership test for the quasi-Hermiticity domain, N = 2..11.
inline Verdict member(const SecularForm& f, const ToleranceConfig& tol = {}) {
  std::vector<Slack> slacks;
  bool degenerate = false;
  detail::member_slacks(f, tol, slacks, &degenerate);

  Verdict v;
  v.degenerate_scaling = degenerate;
  v.margin = std::numeric_limits<double>::infinity();
  for (const Slack& s : slacks) {
    if (s.value < v.margin) v.margin = s.value;
    if (s.value < 0.0) v.violated.push_back(s.name);
  }
  if (std::abs(v.margin) <= tol.boundary_tol) {
    v.region = Region::Boundary;
  } else if (v.margin > 0.0) {
    v.region = Region::Inside;
    v.violated.clear();
  } else {
    v.region = Region::Outside;
  }
  return v;
}

inline Verdict member(const ChainSpec& spec, const ToleranceConfig& tol = {}) {
  return member(secular_form(spec), tol);
}

}  // namespace horizon::criteria

#endif
