#include "doctest.h"
#include "foliatk/geometry.hpp"
#include "support.hpp"

using namespace foliatk;
using namespace foliatk::testing;

TEST_CASE("cotangent lift of brackets") {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    VariableSet B = chart(1 + trial % 3);
    VectorField X = random_field(rng, B, 3), Y = random_field(rng, B, 3);
    CHECK(canonical_poisson(cotangent_lift(X), cotangent_lift(Y)) == cotangent_lift(lie_bracket(X, Y)));
  }
}

TEST_CASE("lift of Lie derivatives of symmetric tensors") {
  std::mt19937 rng(32);
  for (int trial = 0; trial < 40; ++trial) {
    VariableSet B = chart(1 + trial % 3);
    VectorField X = random_field(rng, B, 2);
    SymTensor2 S = random_sym(rng, B, 2, TensorKind::contravariant);
    CHECK(canonical_poisson(cotangent_lift(X), sym_tensor_lift(S)) == sym_tensor_lift(lie_derivative(X, S)));
  }
}

TEST_CASE("Poisson bracket identities") {
  std::mt19937 rng(33);
  VariableSet T = cotangent(2);
  for (int trial = 0; trial < 30; ++trial) {
    Polynomial f = random_poly(rng, T, 2, 2, 3), g = random_poly(rng, T, 2, 2, 3), h = random_poly(rng, T, 2, 2, 3);
    CHECK(canonical_poisson(f, g) == -canonical_poisson(g, f));
    CHECK(canonical_poisson(f, g * h) == canonical_poisson(f, g) * h + g * canonical_poisson(f, h));
    Polynomial jac = canonical_poisson(f, canonical_poisson(g, h)) + canonical_poisson(g, canonical_poisson(h, f)) +
                     canonical_poisson(h, canonical_poisson(f, g));
    CHECK(jac.is_zero());
  }
  SymTensor2 S = random_sym(rng, chart(2), 2, TensorKind::contravariant);
  Polynomial H = sym_tensor_lift(S);
  CHECK(canonical_poisson(H, H).is_zero());
}

TEST_CASE("sign convention on basic pairs") {
  VariableSet T = cotangent(1);
  Polynomial x = var(T, "x"), px = var(T, "p_x");
  CHECK(canonical_poisson(px, x) == Polynomial(T, 1));
  CHECK(canonical_poisson(px, x * px) == px);
}

TEST_CASE("vector field operations") {
  VariableSet B = chart(2);
  Polynomial x = var(B, "x"), y = var(B, "y");
  VectorField rot(B, {-y, x});
  VectorField dx = VectorField::coordinate(B, 0);
  CHECK(rot.apply(x * x + y * y).is_zero());
  CHECK(lie_bracket(dx, rot) == VectorField(B, {Polynomial(B), Polynomial(B, 1)}));
  CHECK(lie_bracket(rot, rot).is_zero());
  VariableSet T = B.with_fiber();
  Polynomial lift = cotangent_lift(rot);
  CHECK(lift == var(T, "x") * var(T, "p_y") - var(T, "y") * var(T, "p_x"));
  CHECK(vector_field_of_linear(lift, B) == rot);
  CHECK_THROWS(vector_field_of_linear(lift * var(T, "p_x"), B));
  CHECK((x * rot)[1] == x * x);
}

TEST_CASE("rational functions") {
  VariableSet B = chart(2);
  Polynomial x = var(B, "x"), one(B, 1);
  RationalFunction a(x, one + x * x);
  RationalFunction b(x * (one + x * x), (one + x * x) * (one + x * x));
  CHECK(a == b);
  CHECK((a - b).is_zero());
  RationalFunction c(x * x - one, x - one);
  CHECK(c.is_polynomial());
  CHECK(c.numerator() == x + one);
  CHECK(exact_divide(x * x - one, x + one) == x - one);
  CHECK_FALSE(exact_divide(x, x + one));
}

TEST_CASE("metric data") {
  VariableSet B = chart(2);
  Polynomial x = var(B, "x"), one(B, 1), zero(B);
  SymTensor2 co(TensorKind::contravariant, B, {{one, zero}, {zero, one + x * x}});
  MetricData m(co, std::nullopt, {{0, 0}, {3, -1}});
  VariableSet T = B.with_fiber();
  CHECK(m.hamiltonian() == Rational(1, 2) * (var(T, "p_x").pow(2) + (Polynomial(T, 1) + var(T, "x").pow(2)) * var(T, "p_y").pow(2)));
  auto low = m.lowering();
  CHECK(low.denom == one + x * x);
  CHECK(low.numer[0][0] == one + x * x);
  CHECK(!polynomial_inverse(co));
  SymTensor2 twist(TensorKind::contravariant, B, {{one, x}, {x, one + x * x}});
  auto inv = polynomial_inverse(twist);
  REQUIRE(inv);
  CHECK((*inv)(0, 0) == one + x * x);
  CHECK((*inv)(0, 1) == -x);
  SymTensor2 bad(TensorKind::contravariant, B, {{-one, zero}, {zero, one}});
  CHECK_THROWS(MetricData(bad, std::nullopt, {{0, 0}}));
  CHECK_THROWS(SymTensor2(TensorKind::covariant, B, {{one, x}, {zero, one}}));
  // metric given with a cometric that is not its inverse
  CHECK_THROWS(MetricData(co, SymTensor2::identity(TensorKind::covariant, B), {{0, 0}}));
}

TEST_CASE("musical maps") {
  VariableSet B = chart(2);
  Polynomial x = var(B, "x"), one(B, 1), zero(B);
  SymTensor2 co(TensorKind::contravariant, B, {{one, x}, {x, one + x * x}});
  MetricData m(co, polynomial_inverse(co), {{0, 0}});
  VectorField v(B, {one, x});
  OneForm w = musical_flat(v, m);
  auto back = musical_sharp(w, m);
  CHECK(back[0] == RationalFunction(one));
  CHECK(back[1] == RationalFunction(x));
}
