#pragma once

// Closed-form sector spectra of the deformed Dirac Hamiltonians. Each
// two-dimensional sector with Landau index l >= 1 carries the eigenvalue pair
//
//   E(+-) = +- epsilon * sqrt(l - V^2)        (principal branch)
//
// real when l > V^2, a conjugate imaginary pair when l < V^2, and coalescing
// at l = V^2. Right eigenvectors (phi) and left eigenvectors (psi, i.e.
// eigenvectors of the adjoint) come with branch coefficients alpha and beta.
// The l = 0 sector is one-dimensional: exactly one of the two branch labels
// carries an eigenvector, which is the spectral fingerprint of the imaginary
// sublattice potential.

#include <complex>
#include <optional>
#include <vector>

#include "ptg/dirac.hpp"
#include "ptg/fock.hpp"

namespace ptg {

inline constexpr double kDefaultTolEp = 1e-12;
inline constexpr double kDefaultTolZero = 1e-12;

enum class RegionClass : std::uint8_t { Symmetric, Broken, Exceptional };

std::string to_string(RegionClass r);

// Landau sectors split by the sign of l - V^2, with a tolerance band around
// the coalescence. The l = 0 sector is Broken for V > 0 (single imaginary
// level) and Symmetric in the Hermitian limit V = 0; the coalescence there is
// an ordinary degeneracy, not an exceptional point, so it never classifies
// Exceptional.
RegionClass classify(int landau, double V, double tol_ep = kDefaultTolEp);

// E(+), E(-) for a sector with landau >= 1, in the K-valley branch labeling.
// The transposed variants (K' at positive field, K at negative field) negate
// both values branchwise.
std::pair<Complex, Complex> eigenvalues(int landau, double V, double epsilon);

// Full closed-form eigensystem of one sector.
struct SectorEigen {
  int degeneracy = 0;
  int landau = 0;
  RegionClass region = RegionClass::Symmetric;

  Complex E_plus;
  Complex E_minus;

  // Branch coefficients, only meaningful for landau >= 1.
  std::optional<Complex> alpha_plus, alpha_minus;
  std::optional<Complex> beta_plus, beta_minus;

  // Unit-norm eigenvectors; a missing branch is genuinely absent from the
  // spectrum, never a zero vector.
  std::optional<Spinor> phi_plus, phi_minus;
  std::optional<Spinor> psi_plus, psi_minus;

  // Set for the l = 0 sector at V = 0, where the branch labels collapse onto
  // one real level.
  bool degenerate_zero_limit = false;
};

// Eigensystem of sector (degeneracy, landau). For landau >= 1 all four
// vectors are present (at an exceptional point the two phi coincide, as do
// the two psi). For landau == 0 only phi_plus and psi_minus exist and they
// are the same vector.
SectorEigen sector_eigen(const DiracModel& m, int degeneracy, int landau,
                         double tol_ep = kDefaultTolEp, double tol_zero = kDefaultTolZero);

// The l = 0 sector.
SectorEigen zero_mode(const DiracModel& m, int degeneracy, double tol_zero = kDefaultTolZero);

// One row of a spectral-flow table.
struct SpectrumRow {
  double V = 0.0;
  int landau = 0;
  Complex E_plus;
  Complex E_minus;
  RegionClass region = RegionClass::Symmetric;
  bool plus_exists = true;
  bool minus_exists = true;
  bool degenerate = false;
};

// Level table over a potential grid, rows ordered by (grid position, landau),
// landau running 0..n2_max. The base model's V is replaced per grid point.
std::vector<SpectrumRow> spectrum_flow(const DiracModel& base, const std::vector<double>& V_grid,
                                       int n2_max, double tol_ep = kDefaultTolEp,
                                       double tol_zero = kDefaultTolZero);

}  // namespace ptg
