#include "doctest.h"

#include <cmath>

#include "ptg/fock.hpp"

using namespace ptg;

TEST_CASE("basis spinors are unit single-point states") {
  const TruncationSpec trunc(3, 4);

  const Spinor e1 = basis_spinor(Component::Upper, {0, 0}, trunc);
  CHECK(e1.upper().size() == 1);
  CHECK(e1.lower().empty());
  CHECK(e1.amplitude(Component::Upper, {0, 0}) == Complex(1.0, 0.0));
  CHECK(norm(e1) == doctest::Approx(1.0));

  const Spinor e2 = basis_spinor(Component::Lower, {3, 1}, trunc);
  CHECK(e2.amplitude(Component::Lower, {3, 1}) == Complex(1.0, 0.0));
  CHECK(e2.upper().empty());

  CHECK(inner(basis_spinor(Component::Upper, {0, 1}, trunc),
              basis_spinor(Component::Lower, {0, 0}, trunc)) == Complex(0.0, 0.0));

  CHECK_THROWS_AS(basis_spinor(Component::Upper, {4, 0}, trunc), DomainError);
  CHECK_THROWS_AS(basis_spinor(Component::Upper, {0, 5}, trunc), DomainError);
}

TEST_CASE("inner product matches the doubled-space rules") {
  const TruncationSpec trunc(2, 2);
  const Spinor a = basis_spinor(Component::Upper, {0, 0}, trunc);

  CHECK(inner(a, a) == Complex(1.0, 0.0));
  CHECK(inner(basis_spinor(Component::Upper, {0, 1}, trunc),
              basis_spinor(Component::Upper, {1, 1}, trunc)) == Complex(0.0, 0.0));

  // Conjugate linear in the first slot.
  const Spinor ia = Complex(0.0, 1.0) * a;
  CHECK(inner(ia, a) == Complex(0.0, -1.0));
  CHECK(inner(a, ia) == Complex(0.0, 1.0));

  // Mismatched truncations are unioned rather than rejected.
  const Spinor b = basis_spinor(Component::Upper, {0, 0}, TruncationSpec(5, 7));
  CHECK(inner(a, b) == Complex(1.0, 0.0));
}

TEST_CASE("orthonormality of the doubled basis, exhaustive on a 4x4 box") {
  const TruncationSpec trunc(4, 4);
  for (Component c1 : {Component::Upper, Component::Lower}) {
    for (int a1 = 0; a1 <= 4; ++a1) {
      for (int b1 = 0; b1 <= 4; ++b1) {
        const Spinor f = basis_spinor(c1, {a1, b1}, trunc);
        for (Component c2 : {Component::Upper, Component::Lower}) {
          for (int a2 = 0; a2 <= 4; ++a2) {
            for (int b2 = 0; b2 <= 4; ++b2) {
              const Spinor g = basis_spinor(c2, {a2, b2}, trunc);
              const Complex expect =
                  (c1 == c2 && a1 == a2 && b1 == b2) ? Complex(1, 0) : Complex(0, 0);
              REQUIRE(inner(f, g) == expect);
            }
          }
        }
      }
    }
  }
}

TEST_CASE("ladder actions: matrix elements, vacuum, and overflow") {
  const TruncationSpec trunc(2, 3);

  SUBCASE("annihilating the vacuum gives the zero spinor") {
    const Spinor vac = basis_spinor(Component::Upper, {0, 0}, trunc);
    CHECK(apply_ladder(LadderOp::Lower2, vac).empty());
    CHECK(apply_ladder(LadderOp::Lower1, vac).empty());
  }

  SUBCASE("raising carries the bosonic square root") {
    const Spinor f = basis_spinor(Component::Upper, {0, 1}, trunc);
    const Spinor g = apply_ladder(LadderOp::Raise2, f);
    CHECK(std::abs(g.amplitude(Component::Upper, {0, 2}) - Complex(std::sqrt(2.0), 0.0)) <
          1e-15);
    CHECK(g.support_size() == 1);
  }

  SUBCASE("raising past the bound is an error, not a silent drop") {
    const Spinor top2 = basis_spinor(Component::Upper, {0, 3}, trunc);
    CHECK_THROWS_AS(apply_ladder(LadderOp::Raise2, top2), TruncationOverflow);
    const Spinor top1 = basis_spinor(Component::Lower, {2, 0}, trunc);
    CHECK_THROWS_AS(apply_ladder(LadderOp::Raise1, top1), TruncationOverflow);
  }

  SUBCASE("both components are acted on") {
    Spinor f(trunc);
    f.set_amplitude(Component::Upper, {0, 1}, Complex(1.0, 0.0));
    f.set_amplitude(Component::Lower, {0, 2}, Complex(0.0, 1.0));
    const Spinor g = apply_ladder(LadderOp::Lower2, f);
    CHECK(g.amplitude(Component::Upper, {0, 0}) == Complex(1.0, 0.0));
    CHECK(std::abs(g.amplitude(Component::Lower, {0, 1}) - Complex(0.0, std::sqrt(2.0))) <
          1e-15);
  }
}

TEST_CASE("commutator and adjoint pairing on safe support") {
  const TruncationSpec trunc(3, 5);

  // [A2, A2^dag] = 1 for support with n2 <= n2_max - 1.
  for (int n1 = 0; n1 <= 3; ++n1) {
    for (int n2 = 0; n2 + 1 <= 5; ++n2) {
      const Spinor f = basis_spinor(Component::Upper, {n1, n2}, trunc);
      Spinor comm = apply_ladder(LadderOp::Lower2, apply_ladder(LadderOp::Raise2, f));
      comm -= apply_ladder(LadderOp::Raise2, apply_ladder(LadderOp::Lower2, f));
      comm -= f;
      REQUIRE(norm(comm) < 1e-14);
    }
  }

  // <f, A2^dag g> = <A2 f, g> over an exhaustive interior loop.
  for (int fn = 1; fn <= 4; ++fn) {
    for (int gn = 0; gn <= 3; ++gn) {
      const Spinor f = basis_spinor(Component::Upper, {1, fn}, trunc);
      const Spinor g = basis_spinor(Component::Upper, {1, gn}, trunc);
      const Complex lhs = inner(f, apply_ladder(LadderOp::Raise2, g));
      const Complex rhs = inner(apply_ladder(LadderOp::Lower2, f), g);
      REQUIRE(std::abs(lhs - rhs) < 1e-14);
    }
  }
}

TEST_CASE("spinor arithmetic merges truncations and prunes zeros") {
  Spinor f(TruncationSpec(1, 2));
  f.set_amplitude(Component::Upper, {0, 1}, Complex(2.0, 0.0));
  Spinor g(TruncationSpec(3, 1));
  g.set_amplitude(Component::Upper, {0, 1}, Complex(-2.0, 0.0));
  g.set_amplitude(Component::Lower, {2, 0}, Complex(0.0, 1.0));

  const Spinor sum = f + g;
  CHECK(sum.truncation() == TruncationSpec(3, 2));
  CHECK(sum.amplitude(Component::Upper, {0, 1}) == Complex(0.0, 0.0));
  CHECK(sum.support_size() == 1);  // the cancelled amplitude is pruned

  Spinor h = sum;
  h *= Complex(0.0, 0.0);
  CHECK(h.empty());
}

TEST_CASE("truncation validation") {
  CHECK_THROWS_AS(TruncationSpec(-1, 2), DomainError);
  CHECK_THROWS_AS(TruncationSpec(0, 0), DomainError);
  CHECK(TruncationSpec(0, 1).contains({0, 1}));
  CHECK_FALSE(TruncationSpec(0, 1).contains({1, 0}));
  CHECK(merge(TruncationSpec(1, 5), TruncationSpec(4, 2)) == TruncationSpec(4, 5));
}
