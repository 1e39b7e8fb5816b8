#pragma once

// Parity, the sublattice sign flip, and antilinear time reversal on the
// doubled Fock space, plus residual verifiers for the conjugation identities
// that relate the four model variants.
//
// T's basis action is derived, not postulated. T conjugates scalars and
// exchanges the two bosonic modes, T A1 T = A2. The Fock basis is built by
// raising the vacuum, e_{n1,n2} ~ (A1^dag)^n1 (A2^dag)^n2 e_{0,0}, and T
// fixes the vacuum, so conjugating the raising string forces
//   T(c e_{n1,n2}) = conj(c) e_{n2,n1}
// componentwise. Index swap requires a square truncation; anything else
// would push amplitudes out of bounds, so apply_T rejects it.

#include <functional>
#include <string>

#include "ptg/dirac.hpp"
#include "ptg/fock.hpp"

namespace ptg {

enum class SymKind : std::uint8_t { P, U, T, Composite };
enum class Linearity : std::uint8_t { Linear, Antilinear };

std::string to_string(SymKind k);

// A symmetry operation packaged with its linearity tag. `action` owns the
// full behavior; the tag records whether scalars pass through conjugated.
struct SymmetryOp {
  SymKind kind = SymKind::Composite;
  Linearity linearity = Linearity::Linear;
  std::function<Spinor(const Spinor&)> action;

  Spinor operator()(const Spinor& f) const { return action(f); }
};

// Swaps the upper and lower components. Involution.
Spinor apply_P(const Spinor& f);

// Negates the lower component (diag(1, -1)). Involution.
Spinor apply_U(const Spinor& f);

// Conjugates every amplitude and swaps Fock indices (n1,n2) -> (n2,n1) in
// both components. Requires a square truncation; throws ShapeError otherwise.
// Involution, antilinear.
Spinor apply_T(const Spinor& f);

SymmetryOp p_op();
SymmetryOp u_op();
SymmetryOp t_op();

// Composition acting as `a` after `b`. Antilinear iff exactly one factor is.
SymmetryOp compose(const SymmetryOp& a, const SymmetryOp& b);

// Residual verifiers. Each returns the maximum Euclidean deviation over all
// interior basis spinors (both components, n1 <= N-1, n2 <= N-1 for an NxN
// square truncation). The interior restriction keeps every intermediate
// raising step inside the truncation; the identities are (anti)linear, so
// basis coverage is complete coverage. All verifiers require a square
// truncation with n1_max >= 1 and throw ShapeError otherwise.

// T H_K^(+)(V) T against -H_{K'}^(-)(V): exact for every V, so the residual
// is rounding-level. The sign flip of the field under T is what lands the
// conjugation on the opposite-field variant.
double verify_T_identity(double V, const TruncationSpec& trunc, double epsilon = 1.0);

// (T P U) H_K^(+)(V) (U P T) against the opposite-field K-cone variant
// H_K^(-)(V): exact for every V. The right factor is the inverse of the left
// one; (PU)^2 = -1, so the composite is applied as U P T on the way in and
// T P U on the way out. The conjugation lands on the K cone: chaining the
// exact T identity with the U and P flips gives
//   (T P U) H_K^(+)(V) (U P T) = -P U H_{K'}^(-)(V) U P = H_K^(-)(V),
// and the right-hand side's displayed matrix is i eps [[V, -A1],[A1^dag, -V]].
double verify_PT_identity(double V, const TruncationSpec& trunc, double epsilon = 1.0);

// Witness that T alone is broken for V > 0: compares (T U) H_K^(+)(V) (T U),
// which equals H_{K'}^(-)(-V) exactly, against H_{K'}^(-)(+V). The deviation
// is the diagonal difference 2 eps V, and 0 only at V = 0.
double t_breaking_residual(double V, const TruncationSpec& trunc, double epsilon = 1.0);

// Witness that P alone is broken for V > 0: compares P H_K^(+)(V) P, which
// equals H_{K'}^(+)(-V) exactly, against H_{K'}^(+)(+V). Same 2 eps V scale.
double p_breaking_residual(double V, const TruncationSpec& trunc, double epsilon = 1.0);

}  // namespace ptg
