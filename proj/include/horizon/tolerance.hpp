#ifndef HORIZON_TOLERANCE_HPP
#define HORIZON_TOLERANCE_HPP

#include <stdexcept>

namespace horizon {

// Shared numerical tolerances. Passed by value everywhere; no globals.
struct ToleranceConfig {
  double real_tol = 1e-9;      // relative realness/non-negativity slack for s-roots
  double boundary_tol = 1e-9;  // |margin| below this classifies as Boundary
  double cluster_tol = 1e-6;   // relative gap for multiplicity clustering
  double band_tol = 1e-6;      // criteria-vs-oracle disagreement band
  double eps_b = 1e-10;        // degeneracy threshold for B (scaled by max(1, P^2))

  void validate() const {
    if (real_tol <= 0 || boundary_tol <= 0 || cluster_tol <= 0 ||
        band_tol <= 0 || eps_b <= 0)
      throw std::invalid_argument("ToleranceConfig: all tolerances must be positive");
  }
};

}  // namespace horizon

#endif
