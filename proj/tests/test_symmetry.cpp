#include "doctest.h"

#include <cmath>

#include "ptg/fock.hpp"
#include "ptg/symmetry.hpp"

using namespace ptg;

namespace {

Spinor sample_state() {
  Spinor f(TruncationSpec(3, 3));
  f.set_amplitude(Component::Upper, {0, 1}, Complex(0.3, -0.4));
  f.set_amplitude(Component::Upper, {2, 3}, Complex(-1.0, 0.25));
  f.set_amplitude(Component::Lower, {1, 0}, Complex(0.0, 0.9));
  f.set_amplitude(Component::Lower, {3, 3}, Complex(0.7, 0.7));
  return f;
}

}  // namespace

TEST_CASE("the three generators are involutions with the stated actions") {
  const Spinor f = sample_state();

  SUBCASE("component swap") {
    const Spinor g = apply_P(f);
    CHECK(g.amplitude(Component::Lower, {0, 1}) == Complex(0.3, -0.4));
    CHECK(g.amplitude(Component::Upper, {1, 0}) == Complex(0.0, 0.9));
    CHECK(norm(apply_P(g) - f) == 0.0);
  }

  SUBCASE("lower-component sign flip") {
    const Spinor g = apply_U(f);
    CHECK(g.amplitude(Component::Upper, {0, 1}) == Complex(0.3, -0.4));
    CHECK(g.amplitude(Component::Lower, {1, 0}) == Complex(0.0, -0.9));
    CHECK(norm(apply_U(g) - f) == 0.0);
  }

  SUBCASE("conjugating index swap") {
    const Spinor g = apply_T(f);
    CHECK(g.amplitude(Component::Upper, {1, 0}) == Complex(0.3, 0.4));
    CHECK(g.amplitude(Component::Upper, {3, 2}) == Complex(-1.0, -0.25));
    CHECK(g.amplitude(Component::Lower, {0, 1}) == Complex(0.0, -0.9));
    CHECK(norm(apply_T(g) - f) == 0.0);
  }

  SUBCASE("index swap needs a square box") {
    const Spinor skew = basis_spinor(Component::Upper, {0, 2}, TruncationSpec(1, 2));
    CHECK_THROWS_AS(apply_T(skew), ShapeError);
  }
}

TEST_CASE("antilinearity is carried by T alone") {
  const Spinor f = sample_state();
  const Complex c(0.6, -1.7);

  CHECK(norm(apply_P(c * f) - c * apply_P(f)) == 0.0);
  CHECK(norm(apply_U(c * f) - c * apply_U(f)) == 0.0);
  CHECK(norm(apply_T(c * f) - std::conj(c) * apply_T(f)) == 0.0);

  CHECK(t_op().linearity == Linearity::Antilinear);
  CHECK(p_op().linearity == Linearity::Linear);
  CHECK(u_op().linearity == Linearity::Linear);
}

TEST_CASE("T exchanges the two bosonic modes") {
  // T A1 = A2 T on states whose raised image stays in the box.
  const TruncationSpec trunc(3, 3);
  for (int n1 = 0; n1 <= 2; ++n1) {
    for (int n2 = 0; n2 <= 2; ++n2) {
      const Spinor f = basis_spinor(Component::Upper, {n1, n2}, trunc);
      const Spinor lhs = apply_T(apply_ladder(LadderOp::Raise1, f));
      const Spinor rhs = apply_ladder(LadderOp::Raise2, apply_T(f));
      REQUIRE(norm(lhs - rhs) == 0.0);
      const Spinor lhs_low = apply_T(apply_ladder(LadderOp::Lower1, f));
      const Spinor rhs_low = apply_ladder(LadderOp::Lower2, apply_T(f));
      REQUIRE(norm(lhs_low - rhs_low) == 0.0);
    }
  }
}

TEST_CASE("composition respects order and linearity parity") {
  const Spinor f = sample_state();

  const SymmetryOp pu = compose(p_op(), u_op());
  CHECK(pu.kind == SymKind::Composite);
  CHECK(pu.linearity == Linearity::Linear);
  CHECK(norm(pu(f) - apply_P(apply_U(f))) == 0.0);
  // P and U anticommute, so the order matters by a sign.
  CHECK(norm(pu(f) + compose(u_op(), p_op())(f)) == 0.0);

  const SymmetryOp tp = compose(t_op(), p_op());
  CHECK(tp.linearity == Linearity::Antilinear);
  CHECK(norm(tp(f) - apply_T(apply_P(f))) == 0.0);

  const SymmetryOp tt = compose(t_op(), t_op());
  CHECK(tt.linearity == Linearity::Linear);
  CHECK(norm(tt(f) - f) == 0.0);
}

TEST_CASE("sign-flip conjugation isolates the off-diagonal part") {
  const DiracModel m(Cone::K, FieldSign::Positive, 0.8, 1.1);
  const TruncationSpec trunc(2, 2);
  for (Component c : {Component::Upper, Component::Lower}) {
    const Spinor f = basis_spinor(c, {1, 1}, trunc);
    const Spinor folded = apply_U(apply(m, apply_U(f))) + apply(m, f);
    const double sign = c == Component::Upper ? 1.0 : -1.0;
    const Spinor diag = Complex(0.0, 2.0 * 1.1 * 0.8 * sign) * f;
    REQUIRE(norm(folded - diag) < 1e-15);
  }
}

TEST_CASE("conjugation identities: exact ones hold, broken ones measure 2*eps*V") {
  const TruncationSpec trunc(4, 4);

  for (double V : {0.0, 0.7, 1.3}) {
    CAPTURE(V);
    CHECK(verify_T_identity(V, trunc) <= 1e-12);
    CHECK(verify_PT_identity(V, trunc) <= 1e-12);
  }
  CHECK(verify_T_identity(0.7, trunc, 2.5) <= 1e-12);
  CHECK(verify_PT_identity(0.7, trunc, 2.5) <= 1e-12);

  for (double V : {0.1, 0.5, 1.0, 2.0}) {
    CAPTURE(V);
    CHECK(t_breaking_residual(V, trunc) == doctest::Approx(2.0 * V).epsilon(1e-12));
    CHECK(p_breaking_residual(V, trunc) == doctest::Approx(2.0 * V).epsilon(1e-12));
    // The composite stays a symmetry while each factor individually fails.
    CHECK(verify_PT_identity(V, trunc) <= 1e-12);
    CHECK(t_breaking_residual(V, trunc) >= V);
    CHECK(p_breaking_residual(V, trunc) >= V);
  }
  CHECK(t_breaking_residual(0.0, trunc) <= 1e-15);
  CHECK(p_breaking_residual(0.0, trunc) <= 1e-15);
  CHECK(t_breaking_residual(0.5, trunc, 3.0) == doctest::Approx(3.0).epsilon(1e-12));

  CHECK_THROWS_AS(verify_T_identity(0.5, TruncationSpec(2, 3)), ShapeError);
  CHECK_THROWS_AS(verify_PT_identity(0.5, TruncationSpec(0, 1)), ShapeError);
}
