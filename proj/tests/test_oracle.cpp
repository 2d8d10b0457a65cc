#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "horizon/oracle.hpp"

using namespace horizon;

namespace {
double uni(std::mt19937_64& rng) { return (rng() >> 11) * 0x1.0p-53; }
}

TEST_CASE("spectrum: N=2 inside point") {
  const auto rep = oracle::spectrum({2, {0.6}});
  REQUIRE(rep.s_roots.size() == 1);
  CHECK(rep.s_roots[0].real() == Catch::Approx(0.64).epsilon(1e-12));
  REQUIRE(rep.energies.size() == 2);
  CHECK(rep.energies[0].real() == Catch::Approx(-0.8).epsilon(1e-12));
  CHECK(rep.energies[1].real() == Catch::Approx(0.8).epsilon(1e-12));
  CHECK(rep.all_real_nonneg);
  CHECK(oracle::classify(rep).region == Region::Inside);
}

TEST_CASE("spectrum: N=6 spike is a total confluence at zero") {
  const auto rep = oracle::spectrum({6, {std::sqrt(5.0), std::sqrt(8.0), 3.0}});
  REQUIRE(rep.s_roots.size() == 3);
  for (const auto& s : rep.s_roots) CHECK(std::abs(s) < 1e-6);
  CHECK(rep.confluence == std::vector<int>{3});
  CHECK(rep.zero_cluster);
  REQUIRE(rep.energies.size() == 6);
  CHECK(oracle::classify(rep).region == Region::Boundary);
}

TEST_CASE("spectrum: N=3 outside point has an imaginary pair plus exact zero") {
  const auto rep = oracle::spectrum({3, {2.0}});
  REQUIRE(rep.s_roots.size() == 1);
  CHECK(rep.s_roots[0].real() == Catch::Approx(-4.0).epsilon(1e-12));
  REQUIRE(rep.energies.size() == 3);
  bool zero = false, ip = false, im = false;
  for (const auto& e : rep.energies) {
    if (std::abs(e) < 1e-12) zero = true;
    if (std::abs(e - cplx(0.0, 2.0)) < 1e-12) ip = true;
    if (std::abs(e - cplx(0.0, -2.0)) < 1e-12) im = true;
  }
  CHECK((zero && ip && im));
  CHECK(oracle::classify(rep).region == Region::Outside);
}

TEST_CASE("classify: margin conventions") {
  oracle::SpectrumReport rep;
  rep.s_roots = {cplx(0.64, 0.0)};
  rep.margin = 0.64;
  CHECK(oracle::classify(rep).region == Region::Inside);
  rep.margin = -1.0;
  CHECK(oracle::classify(rep).region == Region::Outside);
  rep.margin = 0.0;
  CHECK(oracle::classify(rep).region == Region::Boundary);
}

TEST_CASE("classify: monotone under loosening real_tol") {
  std::mt19937_64 rng(9001);
  ToleranceConfig tight, loose;
  tight.real_tol = 1e-12;
  loose.real_tol = 1e-6;
  for (int trial = 0; trial < 200; ++trial) {
    const int dim = 2 + static_cast<int>(uni(rng) * 10);
    ChainSpec spec{dim, {}};
    for (int k = 0; k < dim / 2; ++k)
      spec.couplings.push_back(1.5 * uni(rng) * spike_coupling(dim, k + 1));
    const auto rep = oracle::spectrum(spec, tight);
    const Region rt = oracle::classify(rep, tight).region;
    const Region rl = oracle::classify(rep, loose).region;
    if (rt == Region::Inside) CHECK(rl != Region::Outside);
  }
}

TEST_CASE("confluence_pattern: generic interior point is simple") {
  const auto rep = oracle::spectrum({6, {1.0, 1.0, 1.0}});
  CHECK(rep.confluence == std::vector<int>{1, 1, 1});
  CHECK_FALSE(rep.zero_cluster);
}

TEST_CASE("spectrum: conjugate closure of s-roots") {
  std::mt19937_64 rng(9002);
  for (int trial = 0; trial < 200; ++trial) {
    const int dim = 2 + static_cast<int>(uni(rng) * 10);
    ChainSpec spec{dim, {}};
    for (int k = 0; k < dim / 2; ++k)
      spec.couplings.push_back(1.5 * uni(rng) * spike_coupling(dim, k + 1));
    const auto rep = oracle::spectrum(spec);
    for (const auto& s : rep.s_roots) {
      if (s.imag() == 0.0) continue;
      bool found = false;
      for (const auto& w : rep.s_roots)
        if (std::abs(w - std::conj(s)) < 1e-7 * (1.0 + std::abs(s))) found = true;
      CHECK(found);
    }
    CHECK(rep.energies.size() == static_cast<std::size_t>(dim));
  }
}
