#pragma once

// Lattice-level layer: the two-site gain/loss dimer and the honeycomb
// tight-binding Bloch Hamiltonian with balanced imaginary sublattice
// potentials. Everything here is 2x2 and closed form.

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "ptg/errors.hpp"
#include "ptg/spectrum.hpp"

namespace ptg {

// Two-site dimer with coupling g and balanced gain/loss +-iV,
//   H = [[iV, g], [g, -iV]].
// Both parameters are kept nonnegative; sign flips are unitarily equivalent
// (g by diag(1,-1), V by the component swap) and add nothing.
struct DimerParams {
  double g = 0.0;
  double V = 0.0;

  DimerParams() = default;
  DimerParams(double g_, double V_);
};

Eigen::Matrix2cd dimer_matrix(const DimerParams& p);

// Phase boundaries: g > V real pair +-sqrt(g^2 - V^2); g < V imaginary
// conjugate pair; g = V > 0 exceptional (eigenvalues coalesce at 0 and the
// two eigenvectors become parallel). The Hermitian corner g = V = 0 is a
// genuine degeneracy with two independent eigenvectors, not exceptional.
struct DimerEigen {
  Complex E_plus, E_minus;
  Eigen::Vector2cd v_plus, v_minus;  // unit norm; equal when exceptional
  bool exceptional = false;
  RegionClass region = RegionClass::Symmetric;
};

DimerEigen dimer_eigen(const DimerParams& p);

// PT action on the dimer: parity swaps the two sites, time reversal
// conjugates. The report always carries the matrix-identity residual
// || P conj(H) P - H ||; with a real spectrum it also carries the worst
// deviation of the optimally rephased eigenvectors from PT invariance, and
// with a complex spectrum the worst misalignment (sine) of PT(v) against the
// partner eigenvector of the conjugate eigenvalue.
struct DimerPTReport {
  RegionClass region = RegionClass::Symmetric;
  double matrix_residual = 0.0;
  std::optional<double> phase_residual;    // real-spectrum branch
  std::optional<double> pairing_residual;  // complex-spectrum branch
};

DimerPTReport dimer_pt_check(const DimerParams& p);

// Honeycomb Brillouin-zone corners for unit lattice constant.
Eigen::Vector2d dirac_K();
Eigen::Vector2d dirac_KPrime();

// Bloch parameters: hopping t1, on-site potentials muA, muB, and the two
// neighbor-cell vectors. The default vectors (-1/2, sqrt3/2), (1/2, sqrt3/2)
// are the symmetric same-length pair for which the structure factor vanishes
// at dirac_K() and dirac_KPrime(); the constructor validates both conditions
// and throws DomainError when a custom pair breaks them.
struct BlochParams {
  double t1 = 1.0;
  Complex muA = 0.0;
  Complex muB = 0.0;
  Eigen::Vector2d a1;
  Eigen::Vector2d a2;

  BlochParams();
  BlochParams(double t1_, Complex muA_, Complex muB_);
  BlochParams(double t1_, Complex muA_, Complex muB_, Eigen::Vector2d a1_, Eigen::Vector2d a2_);
};

// f(k) = 1 + exp(i k.a1) + exp(i k.a2); the hopping entry is t1 * f(k).
Complex structure_factor(const BlochParams& p, const Eigen::Vector2d& k);

// [[muA, t1 f(k)], [t1 conj(f(k)), muB]]; Hermitian iff muA, muB are real.
Eigen::Matrix2cd bloch_matrix(const BlochParams& p, const Eigen::Vector2d& k);

// Eigenvalues mean +- principal sqrt of the 2x2 discriminant; for
// muA = -muB = iV this is +-sqrt(t1^2 |f|^2 - V^2).
std::pair<Complex, Complex> band_at(const BlochParams& p, const Eigen::Vector2d& k);

struct KGrid {
  double kx_min = 0.0, kx_max = 0.0;
  int nx = 1;
  double ky_min = 0.0, ky_max = 0.0;
  int ny = 1;

  KGrid() = default;
  KGrid(double kx_min_, double kx_max_, int nx_, double ky_min_, double ky_max_, int ny_);
};

struct BandPoint {
  Eigen::Vector2d k;
  Complex E_plus, E_minus;
};

// Row order is kx-major then ky, endpoints included (a 1-point axis sits at
// its minimum). Deterministic for identical inputs.
std::vector<BandPoint> band_surface(const BlochParams& p, const KGrid& grid);

}  // namespace ptg
