#pragma once

// Truncated Dirac Hamiltonians for a single graphene valley in a uniform
// magnetic field, with an imaginary on-site potential +iV on one sublattice
// and -iV on the other. Four variants: valley K or K', field sign + or -.
// In units where the magnetic energy scale is epsilon, the K valley at
// positive field acts on doubled Fock states as
//
//   H f = i*epsilon * ( V f1 + A2dag f2 ,  -A2 f1 - V f2 )
//
// and the other three variants permute the ladder mode (A1 vs A2) and the
// off-diagonal signs. The operator never mixes bare ladder modes, so it
// splits into closed sectors of dimension at most two: a degeneracy index d
// labels the silent mode and a Landau index l labels the active one. The
// truncation contract is sector complete: "n2_max sectors" means every
// sector with l <= n2_max is present in full, which pins the active-mode
// support of one spinor component at l <= n2_max - 1. Blocks then close with
// zero truncation error.

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "ptg/fock.hpp"

namespace ptg {

enum class Cone : std::uint8_t { K, KPrime };
enum class FieldSign : std::uint8_t { Positive, Negative };

std::string to_string(Cone c);
std::string to_string(FieldSign s);

// Model parameters. V is the strength of the balanced imaginary sublattice
// potential; epsilon > 0 sets the Landau energy scale. The canonical regime
// is V >= 0; negative V is admitted because the adjoint of every variant is
// the same variant with V negated, and adjoint actions are first-class here.
struct DiracModel {
  Cone cone = Cone::K;
  FieldSign field_sign = FieldSign::Positive;
  double V = 0.0;
  double epsilon = 1.0;

  DiracModel() = default;
  DiracModel(Cone cone_, FieldSign field_sign_, double V_, double epsilon_ = 1.0);
};

// Same variant, V negated. adjoint(m) realizes the Hilbert adjoint of m.
DiracModel adjoint(const DiracModel& m);

// Position of one basis vector of the doubled space.
struct BasisLabel {
  Component component = Component::Upper;
  FockIndex index;

  friend auto operator<=>(const BasisLabel&, const BasisLabel&) = default;
};

// Closed sector of the Hamiltonian. For landau >= 1 the sector is spanned by
// two basis vectors listed in `basis`, and `matrix` is the 2x2 action in that
// order; for landau == 0 it is one-dimensional.
struct SectorBlock {
  int degeneracy = 0;  // index of the silent mode
  int landau = 0;      // index of the active mode
  int dim = 0;
  Eigen::MatrixXcd matrix;
  std::vector<BasisLabel> basis;
};

// True for the variants sharing the K-valley positive-field sign pattern,
// (K,+) and (K',-); false for the transposed pattern, (K',+) and (K,-).
bool is_direct(const DiracModel& m);

// 2 when the active ladder mode is mode 2 (positive field), else 1.
int active_mode(const DiracModel& m);

// Fock index with occupation `active` in the active mode and `degeneracy`
// in the silent mode.
FockIndex sector_index(const DiracModel& m, int active, int degeneracy);

// Applies the Hamiltonian to a spinor. Raising past the truncation bound of
// f propagates TruncationOverflow from the ladder layer.
Spinor apply(const DiracModel& m, const Spinor& f);

// Action of the adjoint Hamiltonian, identical to apply(adjoint(m), f).
Spinor apply_adjoint(const DiracModel& m, const Spinor& f);

// The closed sector with the given degeneracy and Landau indices.
SectorBlock sector_block(const DiracModel& m, int degeneracy, int landau);

// All sectors with degeneracy <= trunc.n1_max and landau <= trunc.n2_max,
// ordered by (degeneracy, landau).
std::vector<SectorBlock> sectors(const DiracModel& m, const TruncationSpec& trunc);

// Basis of the sector-complete domain in lexicographic (component, n1, n2)
// order, and the dense matrix of the Hamiltonian on it.
std::vector<BasisLabel> basis_labels(const DiracModel& m, const TruncationSpec& trunc);
Eigen::MatrixXcd matrix_on_basis(const DiracModel& m, const TruncationSpec& trunc);

// Smallest per-mode Fock bounds that contain the sector-complete domain.
TruncationSpec fock_bounds(const DiracModel& m, const TruncationSpec& trunc);

// Coordinate vector of a spinor in the given basis. Throws DomainError if
// the spinor is supported outside the basis.
Eigen::VectorXcd coordinates(const Spinor& s, const std::vector<BasisLabel>& labels);

// Inverse of `coordinates`, on the smallest Fock bounds covering the labels.
Spinor spinor_from_coordinates(const std::vector<BasisLabel>& labels,
                               const Eigen::VectorXcd& coords);

}  // namespace ptg
