#pragma once

// Biorthogonal structure of the sector eigensystems. The right eigenvectors
// phi and left eigenvectors psi of a deformed sector pair up differently on
// the two sides of the coalescence: where the spectrum is real the cross
// products <phi(+-), psi(-+)> vanish, where it is an imaginary pair the
// same-branch products vanish instead. The sector intertwiner S_phi (the sum
// of |phi><phi| over present branches) therefore maps psi onto the matched
// phi branch, switching branch exactly when the sector crosses into the
// broken region. At a coalescence the eigenvectors span a line and the
// truncated eigenvector family loses one rank per degeneracy value, with an
// explicit orthogonal witness.

#include <array>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "ptg/dirac.hpp"
#include "ptg/spectrum.hpp"

namespace ptg {

enum class Branch : std::uint8_t { Plus = 0, Minus = 1 };

std::string to_string(Branch b);

// Gram matrix of the doubled-space products <phi_j, psi_k>. Entries with an
// absent branch stay empty.
struct GramReport {
  int degeneracy = 0;
  int landau = 0;
  RegionClass region = RegionClass::Symmetric;
  // entries[j][k] = <phi_j, psi_k>, index 0 = plus branch, 1 = minus branch.
  std::array<std::array<std::optional<Complex>, 2>, 2> entries;
};

GramReport gram(const DiracModel& m, int degeneracy, int landau, double tol_ep = kDefaultTolEp);

// <phi_plus, phi_minus> for landau >= 1. Zero in the Hermitian limit, unity
// at a coalescence.
Complex phi_phi_overlap(const DiracModel& m, int degeneracy, int landau,
                        double tol_ep = kDefaultTolEp);

// Sector intertwiners in the sector basis returned by sector_block.
struct SectorIntertwiner {
  int degeneracy = 0;
  int landau = 0;
  std::vector<BasisLabel> basis;
  Eigen::MatrixXcd s_phi;
  Eigen::MatrixXcd s_psi;
  int rank_s_phi = 0;  // numerical rank, drops to 1 at a coalescence
};

SectorIntertwiner sector_intertwiner(const DiracModel& m, int degeneracy, int landau,
                                     double rank_tol = 1e-10);

// Result of acting with the sector S_phi on one psi branch.
struct IntertwinerAction {
  Branch input = Branch::Plus;
  Branch matched = Branch::Plus;
  double parallel_residual = 0.0;  // sine of the angle to the matched phi
  Spinor image;
};

// S_phi applied to psi(branch) in sector (degeneracy, landau >= 1). The image
// is parallel to exactly one phi branch; which one is reported, not assumed.
// Throws RankDeficiency inside the coalescence tolerance band.
IntertwinerAction intertwiner_action(const DiracModel& m, int degeneracy, int landau,
                                     Branch branch, double tol_ep = kDefaultTolEp);

// Mirror image check: S_psi applied to phi(branch), measured symmetrically.
IntertwinerAction intertwiner_action_dual(const DiracModel& m, int degeneracy, int landau,
                                          Branch branch, double tol_ep = kDefaultTolEp);

// Eigenvector completeness over a sector-complete truncation.
struct CompletenessReport {
  bool complete = false;
  int dimension = 0;
  int columns = 0;
  int rank = 0;
  double smallest_singular_value = 0.0;
  // Coalescing Landau index when V^2 sits on an integer within tol_ep.
  std::optional<int> deficient_landau;
  std::optional<Spinor> witness;
  // Largest |<w, phi>| over all eigenvector columns for the witness or the
  // supplied probe; without either, the smallest singular value, which is
  // the best orthogonality defect any unit vector can achieve.
  double max_overlap = 0.0;
};

// All right eigenvectors over the truncation, one unit column per present
// branch, in the basis_labels(m, trunc) coordinates.
Eigen::MatrixXcd eigenvector_matrix(const DiracModel& m, const TruncationSpec& trunc,
                                    double tol_ep = kDefaultTolEp);

CompletenessReport completeness_check(const DiracModel& m, const TruncationSpec& trunc,
                                      const std::optional<Spinor>& probe = std::nullopt,
                                      double sv_tol = 1e-10, double tol_ep = kDefaultTolEp);

// The l = 0 sector has a one-sided spectrum: a single eigenvector serving
// both the right plus branch and the left minus branch.
struct ZeroModeGram {
  Complex overlap;  // <phi_plus, psi_minus>
  bool phi_minus_absent = true;
  bool psi_plus_absent = true;
  bool degenerate_zero_limit = false;
};

ZeroModeGram zero_mode_gram(const DiracModel& m, int degeneracy,
                            double tol_zero = kDefaultTolZero);

}  // namespace ptg
