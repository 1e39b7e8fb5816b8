#include "doctest.h"

#include <cmath>
#include <vector>

#include "ptg/dirac.hpp"
#include "ptg/spectrum.hpp"
#include "test_support.hpp"

using namespace ptg;

TEST_CASE("closed-form level pairs across the three regions") {
  {
    const auto [ep, em] = eigenvalues(1, 0.0, 1.0);
    CHECK(ep == Complex(1.0, 0.0));
    CHECK(em == Complex(-1.0, 0.0));
  }
  {
    const auto [ep, em] = eigenvalues(1, 0.9, 1.0);
    CHECK(std::abs(ep - Complex(oracle::frozen::sqrt_0_19, 0.0)) < 1e-15);
    CHECK(std::abs(em + Complex(oracle::frozen::sqrt_0_19, 0.0)) < 1e-15);
  }
  {
    const auto [ep, em] = eigenvalues(1, 1.1, 1.0);
    CHECK(std::abs(ep - Complex(0.0, oracle::frozen::sqrt_0_21)) < 1e-15);
    CHECK(std::abs(em - Complex(0.0, -oracle::frozen::sqrt_0_21)) < 1e-15);
  }
  {
    const auto [ep, em] = eigenvalues(1, 1.0, 1.0);
    CHECK(ep == Complex(0.0, 0.0));
    CHECK(em == Complex(0.0, 0.0));
  }
  CHECK_THROWS_AS(eigenvalues(0, 0.5, 1.0), DomainError);
}

TEST_CASE("region classification, including the degenerate lowest sector") {
  CHECK(classify(2, 0.9) == RegionClass::Symmetric);
  CHECK(classify(1, 1.1) == RegionClass::Broken);
  CHECK(classify(1, 1.0, 1e-12) == RegionClass::Exceptional);
  CHECK(classify(4, 2.0 + 1e-14) == RegionClass::Exceptional);
  CHECK(classify(0, 0.5) == RegionClass::Broken);
  CHECK(classify(0, 0.0) == RegionClass::Symmetric);
  CHECK_THROWS_AS(classify(-1, 0.5), DomainError);
}

TEST_CASE("zero modes: one-sided spectrum with a cone-dependent sign") {
  SUBCASE("direct cone carries +iV") {
    const SectorEigen z = zero_mode(DiracModel(Cone::K, FieldSign::Positive, 0.9), 0);
    CHECK(z.E_plus == Complex(0.0, 0.9));
    CHECK(z.E_minus == Complex(0.0, -0.9));
    REQUIRE(z.phi_plus.has_value());
    CHECK_FALSE(z.phi_minus.has_value());
    CHECK_FALSE(z.psi_plus.has_value());
    REQUIRE(z.psi_minus.has_value());
    CHECK(z.phi_plus->amplitude(Component::Upper, {0, 0}) == Complex(1.0, 0.0));
    CHECK(norm(*z.phi_plus - *z.psi_minus) == 0.0);
    CHECK_FALSE(z.degenerate_zero_limit);
    CHECK(z.region == RegionClass::Broken);
  }

  SUBCASE("mirrored cone carries -iV on the other component") {
    const SectorEigen z = zero_mode(DiracModel(Cone::KPrime, FieldSign::Positive, 0.9), 2);
    CHECK(z.E_plus == Complex(0.0, -0.9));
    REQUIRE(z.phi_plus.has_value());
    CHECK(z.phi_plus->amplitude(Component::Lower, {2, 0}) == Complex(-1.0, 0.0));
    CHECK(z.phi_plus->upper().empty());
  }

  SUBCASE("Hermitian limit collapses the two labels") {
    const SectorEigen z = zero_mode(DiracModel(Cone::K, FieldSign::Positive, 0.0), 0);
    CHECK(z.E_plus == Complex(0.0, 0.0));
    CHECK(z.degenerate_zero_limit);
    CHECK(z.region == RegionClass::Symmetric);
  }
}

TEST_CASE("branch coefficients at pinned parameter points") {
  SUBCASE("Hermitian limit reproduces the undeformed eigenvectors") {
    const SectorEigen s = sector_eigen(DiracModel(Cone::K, FieldSign::Positive, 0.0), 0, 1);
    REQUIRE(s.alpha_plus.has_value());
    CHECK(std::abs(*s.alpha_plus - Complex(0.0, -1.0)) < 1e-15);
    CHECK(std::abs(*s.alpha_minus - Complex(0.0, 1.0)) < 1e-15);
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(s.phi_plus->amplitude(Component::Upper, {0, 1}) - Complex(r, 0.0)) < 1e-15);
    CHECK(std::abs(s.phi_plus->amplitude(Component::Lower, {0, 0}) - Complex(0.0, -r)) < 1e-15);
  }

  SUBCASE("coalescence point: both branches fold onto -1") {
    const SectorEigen s = sector_eigen(DiracModel(Cone::K, FieldSign::Positive, 1.0), 4, 1);
    CHECK(s.region == RegionClass::Exceptional);
    CHECK(std::abs(*s.alpha_plus - Complex(-1.0, 0.0)) < 1e-15);
    CHECK(std::abs(*s.alpha_minus - Complex(-1.0, 0.0)) < 1e-15);
    REQUIRE(s.phi_plus.has_value());
    REQUIRE(s.phi_minus.has_value());
    CHECK(norm(*s.phi_plus - *s.phi_minus) < 1e-15);
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(s.phi_plus->amplitude(Component::Upper, {4, 1}) - Complex(r, 0.0)) < 1e-15);
    CHECK(std::abs(s.phi_plus->amplitude(Component::Lower, {4, 0}) + Complex(r, 0.0)) < 1e-15);
  }

  SUBCASE("one sector above the coalescence: unimodular coefficients") {
    const SectorEigen s = sector_eigen(DiracModel(Cone::K, FieldSign::Positive, 1.0), 0, 2);
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(*s.alpha_plus - Complex(0.0, -1.0) * Complex(1.0, -1.0) * r) < 1e-15);
    CHECK(std::abs(*s.alpha_minus - Complex(0.0, 1.0) * Complex(1.0, 1.0) * r) < 1e-15);
    CHECK(std::abs(*s.alpha_plus) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(*s.alpha_minus) == doctest::Approx(1.0).epsilon(1e-15));
  }
}

TEST_CASE("eigen-residuals against the operator action, all variants and regions") {
  const std::vector<double> grid = {0.0, 0.5, 0.9, 1.0, 1.1, 2.5};
  for (Cone cone : {Cone::K, Cone::KPrime}) {
    for (double V : grid) {
      const DiracModel m(cone, FieldSign::Positive, V);
      for (int d : {0, 2}) {
        for (int l = 1; l <= 6; ++l) {
          const SectorEigen s = sector_eigen(m, d, l);
          REQUIRE(norm(*s.phi_plus) == doctest::Approx(1.0).epsilon(1e-14));
          REQUIRE(norm(*s.psi_minus) == doctest::Approx(1.0).epsilon(1e-14));
          REQUIRE(oracle::eigen_residual(m, *s.phi_plus, s.E_plus) < 1e-12);
          REQUIRE(oracle::eigen_residual(m, *s.phi_minus, s.E_minus) < 1e-12);
          // The dual family answers to the adjoint with the same eigenvalues.
          REQUIRE(oracle::adjoint_residual(m, *s.psi_plus, s.E_plus) < 1e-12);
          REQUIRE(oracle::adjoint_residual(m, *s.psi_minus, s.E_minus) < 1e-12);
        }
        const SectorEigen z = zero_mode(m, d);
        REQUIRE(oracle::eigen_residual(m, *z.phi_plus, z.E_plus) < 1e-12);
        REQUIRE(oracle::adjoint_residual(m, *z.psi_minus, z.E_minus) < 1e-12);
      }
    }
  }
}

TEST_CASE("closed forms agree with an independent 2x2 diagonalization") {
  for (double V : {0.0, 0.7, 1.0, 1.3, 2.2}) {
    const DiracModel m(Cone::K, FieldSign::Positive, V, 1.0);
    for (int l = 1; l <= 5; ++l) {
      const auto block = sector_block(m, 0, l);
      const auto oracle_eig = oracle::eig2x2(block.matrix);
      auto [ep, em] = eigenvalues(l, V, 1.0);
      // Match as sorted pairs; the oracle sorts by (re, im).
      Complex lo = em, hi = ep;
      if (std::real(lo) > std::real(hi) ||
          (std::real(lo) == std::real(hi) && std::imag(lo) > std::imag(hi))) {
        std::swap(lo, hi);
      }
      REQUIRE(std::abs(oracle_eig.lambda1 - lo) < 1e-12);
      REQUIRE(std::abs(oracle_eig.lambda2 - hi) < 1e-12);
      const bool at_ep = classify(l, V) == RegionClass::Exceptional;
      REQUIRE(oracle_eig.defective == at_ep);
    }
  }
}

TEST_CASE("degeneracy index never moves the spectrum") {
  const DiracModel m(Cone::K, FieldSign::Positive, 0.8);
  for (int l = 1; l <= 4; ++l) {
    const SectorEigen a = sector_eigen(m, 0, l);
    const SectorEigen b = sector_eigen(m, 7, l);
    CHECK(a.E_plus == b.E_plus);
    CHECK(a.E_minus == b.E_minus);
    CHECK(*a.alpha_plus == *b.alpha_plus);
    CHECK(*a.beta_minus == *b.beta_minus);
  }
}

TEST_CASE("valley exchange negates the spectrum branchwise") {
  for (double V : {0.0, 0.9, 1.5}) {
    const DiracModel k(Cone::K, FieldSign::Positive, V);
    const DiracModel kp(Cone::KPrime, FieldSign::Positive, V);
    for (int l = 0; l <= 4; ++l) {
      const SectorEigen a = sector_eigen(k, 0, l);
      const SectorEigen b = sector_eigen(kp, 0, l);
      CHECK(std::abs(b.E_plus + a.E_plus) < 1e-15);
      CHECK(std::abs(b.E_minus + a.E_minus) < 1e-15);
    }
  }
}

TEST_CASE("deformation switches off continuously") {
  const SectorEigen at_zero = sector_eigen(DiracModel(Cone::K, FieldSign::Positive, 0.0), 0, 3);
  const SectorEigen near_zero =
      sector_eigen(DiracModel(Cone::K, FieldSign::Positive, 1e-7), 0, 3);
  CHECK(norm(*at_zero.phi_plus - *near_zero.phi_plus) < 1e-6);
  CHECK(norm(*at_zero.psi_minus - *near_zero.psi_minus) < 1e-6);
  CHECK(std::abs(at_zero.E_plus - near_zero.E_plus) < 1e-12);
}

TEST_CASE("flow tables are deterministic and complete") {
  const DiracModel base(Cone::K, FieldSign::Positive, 0.0);

  SUBCASE("Hermitian column") {
    const auto rows = spectrum_flow(base, {0.0}, 3);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].landau == 0);
    CHECK(rows[0].E_plus == Complex(0.0, 0.0));
    CHECK(rows[0].degenerate);
    CHECK(std::abs(rows[1].E_plus - Complex(1.0, 0.0)) < 1e-15);
    CHECK(std::abs(rows[2].E_plus - Complex(oracle::frozen::sqrt_2, 0.0)) < 1e-15);
    CHECK(std::abs(rows[3].E_plus - Complex(oracle::frozen::sqrt_3, 0.0)) < 1e-15);
    for (const auto& row : rows) {
      CHECK(std::abs(row.E_minus + row.E_plus) < 1e-15);
    }
  }

  SUBCASE("deformed column keeps the one-sided zero mode") {
    const auto rows = spectrum_flow(base, {0.9}, 2);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].E_plus == Complex(0.0, 0.9));
    CHECK(rows[0].plus_exists);
    CHECK_FALSE(rows[0].minus_exists);
    CHECK(rows[0].region == RegionClass::Broken);
    CHECK(rows[1].region == RegionClass::Symmetric);
  }

  SUBCASE("past the first coalescence the pair is imaginary and conjugate") {
    const auto rows = spectrum_flow(base, {1.1}, 1);
    const auto& row = rows[1];
    CHECK(row.region == RegionClass::Broken);
    CHECK(std::real(row.E_plus) == 0.0);
    CHECK(std::abs(row.E_minus - std::conj(row.E_plus)) < 1e-15);
    CHECK(std::imag(row.E_plus) > 0.0);
  }

  SUBCASE("grid ordering is by grid point, then sector") {
    const auto rows = spectrum_flow(base, {0.0, 1.1}, 1);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].V == 0.0);
    CHECK(rows[1].V == 0.0);
    CHECK(rows[2].V == 1.1);
    CHECK(rows[3].V == 1.1);
    CHECK(rows[3].landau == 1);
  }

  CHECK_THROWS_AS(spectrum_flow(base, {0.0}, 0), DomainError);
}
