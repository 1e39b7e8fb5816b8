#pragma once

// Generic biorthogonal machinery for small dense diagonalizable matrices:
// right eigenbasis, the dual (left) basis, the two metric frames built from
// them, and intertwining-relation checks.
//
// The eigensolver is deliberately self-contained: closed forms up to 2x2,
// and for larger blocks the Leverrier characteristic-polynomial recursion,
// simultaneous Weierstrass root iteration, then Rayleigh-quotient polishing
// with inverse iteration on the matrix itself, so final accuracy does not
// hinge on polynomial conditioning. Systems are capped at 16x16; the
// intended inputs are sector blocks and small ensembles, not bulk dense
// spectra. General-purpose eigenpackages appear only in tests, as oracles.

#include <Eigen/Dense>

#include "ptg/errors.hpp"
#include "ptg/fock.hpp"

namespace ptg {

inline constexpr int kMaxFiniteDim = 16;

// H together with its right eigencolumns phi, dual columns psi (so that
// <psi_j, phi_k> = delta_jk), and the metric frames
//   S_phi = sum_k phi_k phi_k^dag,   S_psi = sum_k psi_k psi_k^dag.
// Columns are unit-norm in phi, matched in psi; eigenvalues are sorted by
// (Re, Im). With a real spectrum the duals are eigenvectors of H^dag at the
// same eigenvalue; with a complex one at the conjugate, and complex_spectrum
// is flagged so callers know the real-spectrum identities do not all apply.
struct FiniteBiorthoSystem {
  Eigen::MatrixXcd H;
  Eigen::VectorXcd eigenvalues;
  Eigen::MatrixXcd phi;
  Eigen::MatrixXcd psi;
  Eigen::MatrixXcd s_phi;
  Eigen::MatrixXcd s_psi;
  bool complex_spectrum = false;
};

// Diagonalizes H and assembles the frames. Requires a square matrix of
// dimension 1..16 with finite entries and pairwise eigenvalue gaps above
// 1e-8 * ||H||_F; closer spectra throw NonDiagonalizable (coalescing
// eigenvalues are exactly the regime where the dual frame blows up).
FiniteBiorthoSystem build_system(const Eigen::MatrixXcd& H);

// Max-norm deviations of the two metric intertwining relations,
//   S_psi H = H^dag S_psi   and   H S_phi = S_phi H^dag,
// each normalized by ||H|| * ||S||. Zero (to rounding) for real spectra;
// genuinely nonzero when the spectrum is complex.
struct IntertwiningReport {
  double s_psi_residual = 0.0;
  double s_phi_residual = 0.0;
};

IntertwiningReport verify_intertwining(const FiniteBiorthoSystem& sys);

// Pushes an eigenvector of H1 through an intertwiner X with X H1 = H2 X,
// returning X phi, a verified eigenvector of H2 at the same eigenvalue.
// Throws IntertwiningError if the relation fails to hold to `tol`
// (normalized), if phi is not an eigenvector of H1, if X phi is numerically
// zero, or if the image misses the eigen-residual bound.
Eigen::VectorXcd intertwine_map(const Eigen::MatrixXcd& X, const Eigen::MatrixXcd& H1,
                                const Eigen::MatrixXcd& H2, const Eigen::VectorXcd& phi,
                                double tol = 1e-10);

}  // namespace ptg
