#ifndef HORIZON_CHAIN_MODEL_HPP
#define HORIZON_CHAIN_MODEL_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace horizon {

// A member of the self-dual tridiagonal chain family: dimension N,
// J = floor(N/2) couplings g_1..g_J.
struct ChainSpec {
  int dim = 2;
  std::vector<double> couplings;

  int j() const { return dim / 2; }

  void validate() const {
    if (dim < 2) throw std::invalid_argument("ChainSpec: dim must be >= 2");
    if (static_cast<int>(couplings.size()) != dim / 2)
      throw std::invalid_argument(
          "ChainSpec: expected " + std::to_string(dim / 2) +
          " couplings for dim " + std::to_string(dim) + ", got " +
          std::to_string(couplings.size()));
  }
};

// Row-major dense real matrix.
struct DenseMatrix {
  int order = 0;
  std::vector<double> entries;

  double& at(int r, int c) { return entries[static_cast<std::size_t>(r) * order + c]; }
  double at(int r, int c) const { return entries[static_cast<std::size_t>(r) * order + c]; }
};

// Normalized secular coefficients (P, Q, R, S, T prefix of length J) plus
// the raw monic characteristic-polynomial coefficients in E (degree N,
// index = power of E).
struct SecularForm {
  int j = 0;
  std::vector<double> coeffs;    // P, Q, R, S, T... length j
  std::vector<double> raw_char;  // N+1 coefficients, raw_char[N] == 1

  double p() const { return coeffs[0]; }
  double q() const { return j >= 2 ? coeffs[1] : 0.0; }
  double r() const { return j >= 3 ? coeffs[2] : 0.0; }
  double s() const { return j >= 4 ? coeffs[3] : 0.0; }
  double t() const { return j >= 5 ? coeffs[4] : 0.0; }

  // Monic polynomial in s = E^2, constant term last... index = power of s.
  std::vector<double> monic_in_s() const {
    std::vector<double> m(static_cast<std::size_t>(j) + 1, 0.0);
    m[j] = 1.0;
    double binom = 1.0, sign = 1.0;
    for (int k = 1; k <= j; ++k) {
      binom *= static_cast<double>(j - k + 1) / k;
      sign = -sign;
      m[j - k] = sign * binom * coeffs[k - 1];
    }
    return m;
  }
};

// Rescaled couplings gamma_k = 1 - (g_k / g_k^spike)^2.
struct GammaVector {
  std::vector<double> gammas;
};

// Coupling at which the chain reaches its all-levels-coalesce spike.
inline double spike_coupling(int dim, int n) {
  return std::sqrt(static_cast<double>(n) * (dim - n));
}

// Matrix of the chain family: diagonal -(N-1), -(N-3), ..., N-1, palindromic
// superdiagonal g_1, g_2, ..., g_2, g_1, antisymmetric subdiagonal.
inline DenseMatrix build(const ChainSpec& spec) {
  spec.validate();
  const int n = spec.dim;
  DenseMatrix m;
  m.order = n;
  m.entries.assign(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) m.at(i, i) = static_cast<double>(2 * i - n + 1);
  for (int i = 0; i + 1 < n; ++i) {
    const int idx = std::min(i + 1, n - 1 - i);  // 1-based coupling index
    const double g = spec.couplings[idx - 1];
    m.at(i, i + 1) = g;
    m.at(i + 1, i) = -g;
  }
  return m;
}

namespace detail {

// det(H - E I) by the tridiagonal three-term recurrence, as polynomial
// coefficients in E (index = power). The off-diagonal pair product is -g^2,
// so D_k = (d_k - E) D_{k-1} + g^2 D_{k-2}.
inline std::vector<double> char_poly_in_e(const ChainSpec& spec) {
  const int n = spec.dim;
  std::vector<double> prev{1.0};                              // D_0
  std::vector<double> cur{static_cast<double>(1 - n), -1.0};  // D_1 = d_1 - E
  for (int k = 2; k <= n; ++k) {
    const double dk = static_cast<double>(2 * k - n - 1);
    const int idx = std::min(k - 1, n - k + 1);
    double g2 = spec.couplings[idx - 1] * spec.couplings[idx - 1];
    // Couplings of the form sqrt(integer) (the spike family) square back
    // to a few ulp off the integer; snapping keeps the recurrence in exact
    // integer arithmetic there, where coefficients must cancel to 0.
    const double g2i = std::nearbyint(g2);
    if (g2i != 0.0 && std::abs(g2 - g2i) <= 8.0 * std::numeric_limits<double>::epsilon() * g2i)
      g2 = g2i;
    std::vector<double> next(static_cast<std::size_t>(k) + 1, 0.0);
    for (std::size_t i = 0; i < cur.size(); ++i) {
      next[i] += dk * cur[i];
      next[i + 1] -= cur[i];
    }
    for (std::size_t i = 0; i < prev.size(); ++i) next[i] += g2 * prev[i];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

}  // namespace detail

// Secular reduction: monic characteristic polynomial, parity check, odd-N
// deflation of the exact E = 0 level, substitution s = E^2 and binomial
// normalization to P, Q, R, S, T.
inline SecularForm secular_form(const ChainSpec& spec) {
  spec.validate();
  const int n = spec.dim;
  const int j = n / 2;
  std::vector<double> raw = detail::char_poly_in_e(spec);
  if (n % 2 == 1)
    for (double& c : raw) c = -c;  // (-1)^N, monic in E

  double scale = 0.0;
  for (double c : raw) scale = std::max(scale, std::abs(c));
  const double par_tol = 1e-9 * scale;
  // parity: only powers of E with the parity of N survive
  for (int p = 0; p <= n; ++p) {
    if ((p % 2) != (n % 2) && std::abs(raw[p]) > par_tol)
      throw std::runtime_error("secular_form: parity violation in characteristic polynomial");
  }
  if (n % 2 == 1 && std::abs(raw[0]) > par_tol)
    throw std::runtime_error("secular_form: nonzero E^0 coefficient at odd dimension");

  SecularForm f;
  f.j = j;
  f.raw_char = raw;

  // collect coefficients of s^m; odd N first drops the exact E = 0 root
  const int off = n % 2;  // power of E for s^0
  std::vector<double> in_s(static_cast<std::size_t>(j) + 1);
  for (int m = 0; m <= j; ++m) in_s[m] = raw[2 * m + off];

  f.coeffs.resize(j);
  double binom = 1.0, sign = 1.0;
  for (int k = 1; k <= j; ++k) {
    binom *= static_cast<double>(j - k + 1) / k;
    sign = -sign;
    f.coeffs[k - 1] = in_s[j - k] / (sign * binom);
  }
  return f;
}

// gamma_k = 1 - g_k^2 / (g_k^spike)^2
inline GammaVector reparametrize(const ChainSpec& spec) {
  spec.validate();
  GammaVector gv;
  gv.gammas.resize(spec.couplings.size());
  for (std::size_t k = 0; k < spec.couplings.size(); ++k) {
    const double gs = spike_coupling(spec.dim, static_cast<int>(k) + 1);
    gv.gammas[k] = 1.0 - spec.couplings[k] * spec.couplings[k] / (gs * gs);
  }
  return gv;
}

inline ChainSpec from_gamma(int dim, const GammaVector& gv) {
  ChainSpec spec;
  spec.dim = dim;
  spec.couplings.resize(gv.gammas.size());
  for (std::size_t k = 0; k < gv.gammas.size(); ++k) {
    if (gv.gammas[k] > 1.0)
      throw std::domain_error("from_gamma: gamma > 1 requests an imaginary coupling");
    const double gs = spike_coupling(dim, static_cast<int>(k) + 1);
    spec.couplings[k] = gs * std::sqrt(1.0 - gv.gammas[k]);
  }
  spec.validate();
  return spec;
}

struct TwoByTwoResult {
  std::complex<double> e_plus;
  std::complex<double> e_minus;
  double discriminant;  // (a-d)^2 - 4 b^2 for the antisymmetric model
};

// Eigenvalues of [[a, b], [b, d]] (hermitian) or [[a, b], [-b, d]]
// (antisymmetric off-diagonal signs); the latter's horizon is
// (a-d)^2 = 4 b^2.
inline TwoByTwoResult two_by_two(double a, double b, double d, bool antisymmetric) {
  TwoByTwoResult out;
  const double disc = (a - d) * (a - d) + (antisymmetric ? -4.0 : 4.0) * b * b;
  out.discriminant = (a - d) * (a - d) - 4.0 * b * b;
  const std::complex<double> root = std::sqrt(std::complex<double>(disc, 0.0));
  out.e_plus = 0.5 * (std::complex<double>(a + d, 0.0) + root);
  out.e_minus = 0.5 * (std::complex<double>(a + d, 0.0) - root);
  return out;
}

}  // namespace horizon

#endif
