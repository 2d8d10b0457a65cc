#ifndef HORIZON_ORACLE_HPP
#define HORIZON_ORACLE_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "horizon/chain_model.hpp"
#include "horizon/polyroots.hpp"
#include "horizon/tolerance.hpp"
#include "horizon/verdict.hpp"

namespace horizon::oracle {

// Ground-truth spectral data: numerical s-roots, assembled energies,
// realness margin and the multiplicity signature of clustered s-roots.
struct SpectrumReport {
  std::vector<cplx> s_roots;            // with multiplicity, sorted
  std::vector<int> multiplicities;      // per cluster, aligned with clusters
  std::vector<cplx> cluster_centers;    // mean of each cluster
  std::vector<cplx> energies;           // N values
  bool all_real_nonneg = false;
  double margin = 0.0;
  std::vector<int> confluence;          // sorted multiplicity signature
  bool zero_cluster = false;
};

inline std::vector<cplx> s_roots_of(const SecularForm& f) {
  return poly_roots(f.monic_in_s());
}

namespace detail {

inline void cluster_roots(SpectrumReport& rep, double cluster_tol) {
  double scale = 1.0;
  for (const auto& s : rep.s_roots) scale = std::max(scale, std::abs(s));
  rep.multiplicities.clear();
  rep.cluster_centers.clear();
  std::size_t i = 0;
  while (i < rep.s_roots.size()) {
    std::size_t kend = i + 1;
    cplx sum = rep.s_roots[i];
    while (kend < rep.s_roots.size() &&
           std::abs(rep.s_roots[kend] - rep.s_roots[kend - 1]) <=
               cluster_tol * scale) {
      sum += rep.s_roots[kend];
      ++kend;
    }
    rep.multiplicities.push_back(static_cast<int>(kend - i));
    rep.cluster_centers.push_back(sum / static_cast<double>(kend - i));
    i = kend;
  }
  rep.confluence = rep.multiplicities;
  std::sort(rep.confluence.begin(), rep.confluence.end());
  rep.zero_cluster = false;
  for (const auto& c : rep.cluster_centers)
    if (std::abs(c) <= cluster_tol * scale) rep.zero_cluster = true;
}

}  // namespace detail

inline SpectrumReport spectrum(const ChainSpec& spec,
                               const ToleranceConfig& tol = {}) {
  const SecularForm f = secular_form(spec);
  SpectrumReport rep;
  rep.s_roots = s_roots_of(f);
  std::sort(rep.s_roots.begin(), rep.s_roots.end(),
            [](const cplx& a, const cplx& b) {
              if (a.real() != b.real()) return a.real() < b.real();
              return a.imag() < b.imag();
            });

  // E = +-sqrt(s) for each s-root; odd N carries the exact E = 0 level
  for (const auto& s : rep.s_roots) {
    const cplx e = std::sqrt(s);
    rep.energies.push_back(e);
    rep.energies.push_back(-e);
  }
  if (spec.dim % 2 == 1) rep.energies.push_back(cplx(0.0, 0.0));
  std::sort(rep.energies.begin(), rep.energies.end(),
            [](const cplx& a, const cplx& b) {
              if (a.real() != b.real()) return a.real() < b.real();
              return a.imag() < b.imag();
            });

  double scale = 1.0;
  for (const auto& s : rep.s_roots) scale = std::max(scale, std::abs(s));
  double m = std::numeric_limits<double>::infinity();
  for (const auto& s : rep.s_roots) {
    // The imaginary part only penalizes genuinely non-real roots;
    // otherwise every real spectrum would sit at margin -0.
    double mk = s.real();
    const double im = std::abs(s.imag());
    if (im > tol.real_tol * scale) mk = std::min(mk, -im);
    m = std::min(m, mk / scale);
  }
  rep.margin = m;
  rep.all_real_nonneg = (m >= -tol.real_tol);

  detail::cluster_roots(rep, tol.cluster_tol);
  return rep;
}

// Quasi-Hermiticity test on the numerical roots: every s-root real and
// non-negative within tolerance.
inline Verdict classify(const SpectrumReport& rep,
                        const ToleranceConfig& tol = {}) {
  Verdict v;
  v.margin = rep.margin;
  if (std::abs(rep.margin) <= tol.boundary_tol) {
    v.region = Region::Boundary;
  } else if (rep.margin >= -tol.real_tol) {
    v.region = Region::Inside;
  } else {
    v.region = Region::Outside;
    v.violated.push_back("s-roots-real-nonneg");
  }
  return v;
}

struct ConfluenceSignature {
  std::vector<int> signature;  // sorted ascending
  bool zero_cluster = false;
};

inline ConfluenceSignature confluence_pattern(const SpectrumReport& rep,
                                              const ToleranceConfig& = {}) {
  return {rep.confluence, rep.zero_cluster};
}

}  // namespace horizon::oracle

#endif
