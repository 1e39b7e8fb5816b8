#include "ptg/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace ptg {
namespace {

void require_square(const TruncationSpec& trunc, const char* who) {
  if (!trunc.is_square()) {
    throw ShapeError(std::string(who) + " requires a square truncation, got n1_max=" +
                     std::to_string(trunc.n1_max) + ", n2_max=" + std::to_string(trunc.n2_max));
  }
}

AmplitudeMap conj_swap(const AmplitudeMap& amps) {
  AmplitudeMap out;
  for (const auto& [idx, value] : amps) {
    out[FockIndex{idx.n2, idx.n1}] = std::conj(value);
  }
  return out;
}

// Max deviation of lhs(f) from rhs(f) over the interior basis spinors of a
// square truncation.
template <typename Lhs, typename Rhs>
double interior_basis_residual(const TruncationSpec& trunc, Lhs&& lhs, Rhs&& rhs) {
  require_square(trunc, "symmetry verifier");
  if (trunc.n1_max < 1) {
    throw ShapeError("symmetry verifier needs n1_max >= 1 so the interior is nonempty");
  }
  double worst = 0.0;
  for (Component c : {Component::Upper, Component::Lower}) {
    for (int n1 = 0; n1 < trunc.n1_max; ++n1) {
      for (int n2 = 0; n2 < trunc.n2_max; ++n2) {
        const Spinor f = basis_spinor(c, FockIndex{n1, n2}, trunc);
        worst = std::max(worst, norm(lhs(f) - rhs(f)));
      }
    }
  }
  return worst;
}

}  // namespace

std::string to_string(SymKind k) {
  switch (k) {
    case SymKind::P: return "P";
    case SymKind::U: return "U";
    case SymKind::T: return "T";
    case SymKind::Composite: return "composite";
  }
  return "?";
}

Spinor apply_P(const Spinor& f) {
  Spinor out(f.truncation());
  out.set_component(Component::Upper, f.lower());
  out.set_component(Component::Lower, f.upper());
  return out;
}

Spinor apply_U(const Spinor& f) {
  Spinor out(f.truncation());
  out.set_component(Component::Upper, f.upper());
  AmplitudeMap flipped = f.lower();
  for (auto& [idx, value] : flipped) value = -value;
  out.set_component(Component::Lower, std::move(flipped));
  return out;
}

Spinor apply_T(const Spinor& f) {
  require_square(f.truncation(), "apply_T");
  Spinor out(f.truncation());
  out.set_component(Component::Upper, conj_swap(f.upper()));
  out.set_component(Component::Lower, conj_swap(f.lower()));
  return out;
}

SymmetryOp p_op() { return {SymKind::P, Linearity::Linear, [](const Spinor& f) { return apply_P(f); }}; }
SymmetryOp u_op() { return {SymKind::U, Linearity::Linear, [](const Spinor& f) { return apply_U(f); }}; }
SymmetryOp t_op() {
  return {SymKind::T, Linearity::Antilinear, [](const Spinor& f) { return apply_T(f); }};
}

SymmetryOp compose(const SymmetryOp& a, const SymmetryOp& b) {
  SymmetryOp out;
  out.kind = SymKind::Composite;
  out.linearity =
      a.linearity == b.linearity ? Linearity::Linear : Linearity::Antilinear;
  out.action = [fa = a.action, fb = b.action](const Spinor& f) { return fa(fb(f)); };
  return out;
}

double verify_T_identity(double V, const TruncationSpec& trunc, double epsilon) {
  const DiracModel k_plus(Cone::K, FieldSign::Positive, V, epsilon);
  const DiracModel kp_minus(Cone::KPrime, FieldSign::Negative, V, epsilon);
  return interior_basis_residual(
      trunc,
      [&](const Spinor& f) { return apply_T(apply(k_plus, apply_T(f))); },
      [&](const Spinor& f) { return Complex(-1.0, 0.0) * apply(kp_minus, f); });
}

double verify_PT_identity(double V, const TruncationSpec& trunc, double epsilon) {
  const DiracModel k_plus(Cone::K, FieldSign::Positive, V, epsilon);
  const DiracModel k_minus(Cone::K, FieldSign::Negative, V, epsilon);
  return interior_basis_residual(
      trunc,
      [&](const Spinor& f) {
        Spinor g = apply_U(apply_P(apply_T(f)));
        g = apply(k_plus, g);
        return apply_T(apply_P(apply_U(g)));
      },
      [&](const Spinor& f) { return apply(k_minus, f); });
}

double t_breaking_residual(double V, const TruncationSpec& trunc, double epsilon) {
  const DiracModel k_plus(Cone::K, FieldSign::Positive, V, epsilon);
  const DiracModel kp_minus(Cone::KPrime, FieldSign::Negative, V, epsilon);
  return interior_basis_residual(
      trunc,
      [&](const Spinor& f) { return apply_T(apply_U(apply(k_plus, apply_T(apply_U(f))))); },
      [&](const Spinor& f) { return apply(kp_minus, f); });
}

double p_breaking_residual(double V, const TruncationSpec& trunc, double epsilon) {
  const DiracModel k_plus(Cone::K, FieldSign::Positive, V, epsilon);
  const DiracModel kp_plus(Cone::KPrime, FieldSign::Positive, V, epsilon);
  return interior_basis_residual(
      trunc,
      [&](const Spinor& f) { return apply_P(apply(k_plus, apply_P(f))); },
      [&](const Spinor& f) { return apply(kp_plus, f); });
}

}  // namespace ptg
