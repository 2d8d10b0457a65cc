#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "horizon/criteria.hpp"
#include "horizon/oracle.hpp"
#include "sampling.hpp"

using namespace horizon;

namespace {

double uni(std::mt19937_64& rng) { return (rng() >> 11) * 0x1.0p-53; }

SecularForm form(std::vector<double> coeffs) {
  SecularForm f;
  f.j = static_cast<int>(coeffs.size());
  f.coeffs = std::move(coeffs);
  return f;
}

// P, Q, R, ... from prescribed s-roots (independent construction)
SecularForm form_from_roots(const std::vector<double>& roots) {
  std::vector<double> e(roots.size() + 1, 0.0);
  e[0] = 1.0;
  for (double r : roots)
    for (std::size_t k = e.size() - 1; k >= 1; --k) e[k] += r * e[k - 1];
  std::vector<double> coeffs;
  double binom = 1.0;
  const int j = static_cast<int>(roots.size());
  for (int m = 1; m <= j; ++m) {
    binom *= static_cast<double>(j - m + 1) / m;
    coeffs.push_back(e[m] / binom);
  }
  return form(coeffs);
}

ChainSpec random_spec(int dim, std::mt19937_64& rng, double span = 1.5) {
  ChainSpec spec{dim, {}};
  for (int k = 0; k < dim / 2; ++k)
    spec.couplings.push_back(span * uni(rng) * spike_coupling(dim, k + 1));
  return spec;
}

}  // namespace

TEST_CASE("necessary_conditions: coefficient slacks") {
  CHECK(criteria::necessary_conditions(secular_form({2, {2.0}}))[0] ==
        Catch::Approx(-3.0).epsilon(1e-14));
  for (double s : criteria::necessary_conditions(secular_form({6, {0, 0, 0}})))
    CHECK(s > 0.0);
}

TEST_CASE("necessary conditions are not sufficient: (s^2+1)(s-2)") {
  // s^3 - 2s^2 + s - 2: P = 2/3, Q = 1/3, R = 2, all >= 0, roots complex
  const SecularForm f = form({2.0 / 3.0, 1.0 / 3.0, 2.0});
  for (double s : criteria::necessary_conditions(f)) CHECK(s >= 0.0);
  const Verdict v = criteria::member(f);
  CHECK(v.region == Region::Outside);
  REQUIRE_FALSE(v.violated.empty());
  CHECK(v.violated[0] == "Eq-uhrada");
}

TEST_CASE("member: interval endpoints at J=1") {
  CHECK(criteria::member(ChainSpec{2, {0.999}}).region == Region::Inside);
  CHECK(criteria::member(ChainSpec{2, {1.001}}).region == Region::Outside);
  CHECK(criteria::member(ChainSpec{2, {1.0}}).region == Region::Boundary);
  CHECK(criteria::member(ChainSpec{3, {1.5}}).region == Region::Outside);
  CHECK(criteria::member(ChainSpec{3, {std::sqrt(2.0)}}).region == Region::Boundary);
}

TEST_CASE("member: J=2 decoupled anchor and spike boundary") {
  const Verdict v = criteria::member(ChainSpec{4, {0.0, 0.0}});
  CHECK(v.region == Region::Inside);
  const SecularForm f = secular_form({4, {0.0, 0.0}});
  CHECK(f.p() == Catch::Approx(5.0).epsilon(1e-14));
  CHECK(f.q() == Catch::Approx(9.0).epsilon(1e-14));

  CHECK(criteria::member(ChainSpec{4, {std::sqrt(3.0), 2.0}}).region ==
        Region::Boundary);
}

TEST_CASE("aux_quantities: direct formulas") {
  // P = 1, Q = 0, R = -1: B = 1, C = (PQ - R)/(2 B^(3/2)) = 1/2
  const auto a = criteria::aux_quantities(form({1.0, 0.0, -1.0}));
  CHECK(a.b == 1.0);
  CHECK(a.q == 0.0);
  CHECK(a.c == Catch::Approx(0.5).epsilon(1e-14));
  CHECK(a.c_def);

  const auto a2 = criteria::aux_quantities(form_from_roots({0.0, 0.0, 4.0, 4.0}));
  CHECK(a2.b == Catch::Approx(4.0 / 3.0).epsilon(1e-12));

  const auto a3 = criteria::aux_quantities(form({0.0, 0.0, 0.0}));
  CHECK_FALSE(a3.q_def);
  CHECK_FALSE(a3.c_def);
}

TEST_CASE("aux_quantities: pinned elementary symmetric values for {0,0,4,4}") {
  const SecularForm f = form_from_roots({0.0, 0.0, 4.0, 4.0});
  CHECK(f.p() == Catch::Approx(2.0).epsilon(1e-14));
  CHECK(f.q() == Catch::Approx(8.0 / 3.0).epsilon(1e-14));
  CHECK(f.r() == Catch::Approx(0.0).margin(1e-14));
  CHECK(f.s() == Catch::Approx(0.0).margin(1e-14));
}

TEST_CASE("critical_points: perfect cube and constructed quartic") {
  const auto cp = criteria::critical_points(form({1.0, 1.0, 1.0, 0.0}));
  REQUIRE(cp.x.size() == 3);
  for (double x : cp.x) CHECK(x == Catch::Approx(1.0).margin(1e-5));

  const auto cp2 =
      criteria::critical_points(form_from_roots({0.0, 0.0, 4.0, 4.0}));
  REQUIRE(cp2.x.size() == 3);
  CHECK(cp2.x[0] == Catch::Approx(0.0).margin(1e-10));
  CHECK(cp2.x[1] == Catch::Approx(2.0).epsilon(1e-10));
  CHECK(cp2.x[2] == Catch::Approx(4.0).epsilon(1e-10));
}

TEST_CASE("critical_points: interlace oracle roots inside D at J=5") {
  std::mt19937_64 rng(5150);
  for (int found = 0; found < 50; ++found) {
    const ChainSpec spec = horizon_tests::sample_inside(10, rng);
    const auto rep = oracle::spectrum(spec);
    const SecularForm f = secular_form(spec);
    const auto cp = criteria::critical_points(f);
    REQUIRE(cp.x.size() == 4);
    double scale = 1.0;
    for (const auto& s : rep.s_roots) scale = std::max(scale, std::abs(s));
    for (int k = 0; k < 4; ++k) {
      CHECK(rep.s_roots[k].real() <= cp.x[k] + 1e-9 * scale);
      CHECK(cp.x[k] <= rep.s_roots[k + 1].real() + 1e-9 * scale);
    }
  }
}

TEST_CASE("j3_band: pinned values") {
  auto [l0, u0] = criteria::j3_band_for_q(0.0);
  CHECK(l0 == 0.0);
  CHECK(u0 == Catch::Approx(0.0).margin(1e-15));

  auto [l3, u3] = criteria::j3_band_for_q(3.0);
  CHECK(l3 == 0.0);
  CHECK(u3 == Catch::Approx(2.0).epsilon(1e-14));

  auto [ls, us] = criteria::j3_band_for_q(0.1);
  CHECK(ls == 0.0);
  CHECK(us == Catch::Approx(0.0036315942383560174).epsilon(1e-12));
  // leading series terms 3q^2/8 - q^3/8 agree to the expected order
  CHECK(std::abs(us - (3.0 / 8.0 * 0.01 - 1.0 / 8.0 * 0.001)) < 1e-5);
}

TEST_CASE("j3_band: degenerate B throws") {
  CHECK_THROWS_AS(criteria::j3_band(form({0.0, 0.0, 0.0})), std::domain_error);
}

TEST_CASE("J=3: Eq-(8) membership agrees with the band formulation") {
  std::mt19937_64 rng(5151);
  ToleranceConfig tol;
  for (int trial = 0; trial < 2000; ++trial) {
    const ChainSpec spec = random_spec(6 + (trial % 2), rng);
    const SecularForm f = secular_form(spec);
    const double b = f.p() * f.p() - f.q();
    if (b <= criteria::eps_b_for(f.p(), tol) || f.q() < 0.0) continue;
    const Verdict v = criteria::member(f, tol);
    if (v.region == Region::Boundary) continue;

    const bool coeff_ok = f.p() >= 0.0 && f.q() >= 0.0 && f.r() >= 0.0;
    bool band_ok = false;
    if (coeff_ok) {
      const auto [lo, hi] = criteria::j3_band(f, tol);
      const double ratio = f.r() / (2.0 * b * std::sqrt(b));
      const double slack = 1e-12 * (1.0 + std::abs(hi));
      band_ok = ratio >= lo - slack && ratio <= hi + slack;
    }
    CHECK((v.region == Region::Inside) == band_ok);
  }
}

TEST_CASE("J=3 root identities for B and PQ-R") {
  std::mt19937_64 rng(5152);
  for (int checked = 0; checked < 500; ++checked) {
    const ChainSpec spec = horizon_tests::sample_inside(6, rng);
    const auto rep = oracle::spectrum(spec);
    const SecularForm f = secular_form(spec);
    const double s1 = rep.s_roots[0].real(), s2 = rep.s_roots[1].real(),
                 s3 = rep.s_roots[2].real();
    const double lhs_b = f.p() * f.p() - f.q();
    const double rhs_b =
        (std::pow(s1 + s2 - 2 * s3, 2) + std::pow(s2 + s3 - 2 * s1, 2) +
         std::pow(s3 + s1 - 2 * s2, 2)) / 54.0;
    const double scale_b = std::max({1.0, std::abs(lhs_b), std::abs(rhs_b)});
    CHECK(std::abs(lhs_b - rhs_b) <= 1e-9 * scale_b);

    const double lhs_pqr = f.p() * f.q() - f.r();
    const double rhs_pqr =
        (s1 * s2 * (s1 + s2 - 2 * s3) + s2 * s3 * (s2 + s3 - 2 * s1) +
         s3 * s1 * (s3 + s1 - 2 * s2)) / 9.0;
    const double scale_p = std::max({1.0, std::abs(lhs_pqr), std::abs(rhs_pqr)});
    CHECK(std::abs(lhs_pqr - rhs_pqr) <= 1e-9 * scale_p);
  }
}

TEST_CASE("member agrees with oracle on random samples, every J") {
  std::mt19937_64 rng(5153);
  ToleranceConfig tol;
  for (int dim = 2; dim <= 11; ++dim) {
    for (int trial = 0; trial < 2000; ++trial) {
      const ChainSpec spec = random_spec(dim, rng);
      const Verdict vc = criteria::member(spec, tol);
      const Verdict vo = oracle::classify(oracle::spectrum(spec, tol), tol);
      if (std::abs(vc.margin) <= tol.band_tol) continue;
      if (std::abs(vo.margin) <= tol.band_tol) continue;
      if (vc.region == Region::Boundary || vo.region == Region::Boundary) continue;
      INFO("dim " << dim << " margins " << vc.margin << " " << vo.margin);
      CHECK(vc.region == vo.region);
    }
  }
}

TEST_CASE("member: unsupported J throws") {
  SecularForm f = form({1, 1, 1, 1, 1, 1});
  CHECK_THROWS_AS(criteria::member(f), std::invalid_argument);
}

TEST_CASE("every oracle-Inside sample satisfies the necessary conditions") {
  std::mt19937_64 rng(5154);
  for (int trial = 0; trial < 3000; ++trial) {
    const int dim = 2 + static_cast<int>(uni(rng) * 10);
    const ChainSpec spec = random_spec(dim, rng);
    const auto rep = oracle::spectrum(spec);
    if (oracle::classify(rep).region != Region::Inside) continue;
    const SecularForm f = secular_form(spec);
    double scale = 1.0;
    for (double c : f.coeffs) scale = std::max(scale, std::abs(c));
    for (double s : criteria::necessary_conditions(f))
      CHECK(s >= -1e-12 * scale);
  }
}
