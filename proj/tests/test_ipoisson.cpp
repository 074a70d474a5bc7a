#include <cmath>
#include <random>

#include "doctest.h"
#include "foliatk/ipoisson.hpp"
#include "support.hpp"

using namespace foliatk;
using namespace foliatk::testing;

namespace {

using DMat = std::vector<std::vector<double>>;

DMat invert(DMat a) {
  std::size_t n = a.size();
  DMat inv(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    std::swap(a[c], a[piv]);
    std::swap(inv[c], inv[piv]);
    double d = a[c][c];
    for (std::size_t k = 0; k < n; ++k) a[c][k] /= d, inv[c][k] /= d;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      double f = a[r][c];
      for (std::size_t k = 0; k < n; ++k) a[r][k] -= f * a[c][k], inv[r][k] -= f * inv[c][k];
    }
  }
  return inv;
}

DMat metric_at(const SymTensor2& co, std::vector<double> q) {
  DMat m(co.dimension(), std::vector<double>(co.dimension()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) m[i][j] = co(i, j).eval(std::span<const double>(q));
  return invert(m);
}

double eval_rf(const RationalFunction& r, const std::vector<double>& q) {
  return r.numerator().eval(std::span<const double>(q)) / r.denominator().eval(std::span<const double>(q));
}

// Largest residual of (L_{X_a} g)(d_i,d_j) = sum_b w_a^b(d_i) g(X_b,d_j) + g(d_i,X_b) w_a^b(d_j)
// at q, with the metric obtained by numeric inversion and its derivatives by
// central differences.
double killing_residual(const FoliationModule& F, const SymTensor2& co, const std::vector<std::vector<OneForm>>& w,
                        const std::vector<double>& q) {
  const std::size_t n = F.dimension(), N = F.size();
  const double h = 1e-5;
  DMat g = metric_at(co, q);
  std::vector<DMat> dg(n);
  for (std::size_t k = 0; k < n; ++k) {
    auto qp = q, qm = q;
    qp[k] += h;
    qm[k] -= h;
    DMat a = metric_at(co, qp), b = metric_at(co, qm);
    dg[k] = a;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) dg[k][i][j] = (a[i][j] - b[i][j]) / (2 * h);
  }
  std::span<const double> qs(q);
  double worst = 0;
  for (std::size_t a = 0; a < N; ++a) {
    const VectorField& X = F.generators()[a];
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        double lhs = 0;
        for (std::size_t k = 0; k < n; ++k) {
          lhs += X[k].eval(qs) * dg[k][i][j];
          lhs += g[k][j] * X[k].diff(i).eval(qs) + g[i][k] * X[k].diff(j).eval(qs);
        }
        double rhs = 0;
        for (std::size_t b = 0; b < N; ++b) {
          const VectorField& Y = F.generators()[b];
          double gYj = 0, giY = 0;
          for (std::size_t k = 0; k < n; ++k) gYj += Y[k].eval(qs) * g[k][j], giY += g[i][k] * Y[k].eval(qs);
          rhs += eval_rf(w[a][b][i], q) * gYj + giY * eval_rf(w[a][b][j], q);
        }
        worst = std::max(worst, std::abs(lhs - rhs));
      }
  }
  return worst;
}

std::vector<Polynomial> lifts(const FoliationModule& F) {
  std::vector<Polynomial> out;
  for (const auto& X : F.generators()) out.push_back(cotangent_lift(X));
  return out;
}

}  // namespace

TEST_CASE("closure of lifted ideals") {
  VariableSet B = chart(2);
  Polynomial x = var(B, "x"), y = var(B, "y"), o(B), one(B, 1);
  FoliationModule good(B, {VectorField(B, {-y, x}), VectorField(B, {x, y})});
  IdealPresentation I = lift_ideal(good);
  auto r = poisson_closure_check(I);
  CHECK(r.passed);
  for (const auto& pm : r.pairs) {
    CHECK(pm.bracket == canonical_poisson(I.generators()[pm.i], I.generators()[pm.j]));
    CHECK(verify(pm.certificate, pm.bracket, I.generators()));
  }
  FoliationModule bad(B, {VectorField(B, {one, o}), VectorField(B, {o, x})});
  auto r2 = poisson_closure_check(lift_ideal(bad));
  CHECK_FALSE(r2.passed);
  REQUIRE(r2.witness);
  CHECK(r2.pairs[*r2.witness].obstruction_point);
}

TEST_CASE("normalizer and reduced bracket") {
  VariableSet B = chart(2);
  VariableSet T = B.with_fiber();
  Polynomial x = var(B, "x"), y = var(B, "y");
  FoliationModule rot(B, {VectorField(B, {-y, x})});
  IdealPresentation I = lift_ideal(rot);
  Polynomial X = var(T, "x"), Y = var(T, "y"), px = var(T, "p_x"), py = var(T, "p_y");
  Polynomial r2 = X * X + Y * Y, H = Rational(1, 2) * (px * px + py * py), rad = X * px + Y * py;
  for (const auto& f : {r2, H, rad}) {
    auto n = normalizer_check(I, f);
    CHECK(n.passed);
    for (const auto& b : n.brackets) CHECK(verify(b.certificate, b.bracket, I.generators()));
  }
  auto n = normalizer_check(I, px);
  CHECK_FALSE(n.passed);
  REQUIRE(n.witness);
  CHECK(n.brackets[*n.witness].obstruction_point);
  CHECK_THROWS(reduced_bracket(I, px, H));

  std::vector<Polynomial> cands{r2, H, rad, r2 * H, X * py - Y * px};
  for (const auto& f : cands)
    for (const auto& g : cands) {
      Polynomial fg = reduced_bracket(I, f, g);
      CHECK(I.gb().normal_form(fg + reduced_bracket(I, g, f)).remainder.is_zero());
      CHECK(normalizer_check(I, fg).passed);
      for (const auto& h : cands) {
        Polynomial jac = reduced_bracket(I, f, reduced_bracket(I, g, h)) + reduced_bracket(I, g, reduced_bracket(I, h, f)) +
                         reduced_bracket(I, h, reduced_bracket(I, f, g));
        CHECK(I.contains(jac));
      }
    }
}

TEST_CASE("srf certificates") {
  VariableSet B = chart(2);
  Polynomial x = var(B, "x"), y = var(B, "y"), o(B), one(B, 1);
  FoliationModule rot(B, {VectorField(B, {-y, x})});
  MetricData flat(SymTensor2::identity(TensorKind::contravariant, B), std::nullopt, {{0, 0}});
  auto r = srf_check(rot, flat);
  CHECK(r.passed);
  REQUIRE(r.certificate);
  CHECK(r.certificate->lambda[0][0].is_zero());
  // srf implies closure and H_g in the normalizer
  IdealPresentation I = lift_ideal(rot);
  CHECK(poisson_closure_check(I).passed);
  CHECK(normalizer_check(I, flat.hamiltonian()).passed);

  SymTensor2 scaled(TensorKind::contravariant, B, {{Rational(2) * one, o}, {o, one}});
  auto bad = srf_check(rot, MetricData(scaled, std::nullopt, {{0, 0}}));
  CHECK_FALSE(bad.passed);
  REQUIRE(bad.witness);
  CHECK_FALSE(bad.brackets[*bad.witness].certificate.claim_holds());
}

TEST_CASE("lambda coefficients are fiber linear and re-expand") {
  VariableSet B = chart(2);
  VariableSet T = B.with_fiber();
  Polynomial x = var(B, "x"), y = var(B, "y"), o(B), one(B, 1);
  std::vector<SymTensor2> cometrics{
      SymTensor2(TensorKind::contravariant, B, {{one, o}, {o, one + x * x}}),
      SymTensor2(TensorKind::contravariant, B, {{one + y * y, x * y}, {x * y, one + x * x}}),
      SymTensor2(TensorKind::contravariant, B, {{one, x}, {x, one + x * x}}),
  };
  FoliationModule F(B, {VectorField::coordinate(B, 0), VectorField::coordinate(B, 1)});
  for (const auto& co : cometrics) {
    MetricData m(co, polynomial_inverse(co), {{0, 0}, {1, 2}});
    auto r = srf_check(F, m);
    REQUIRE(r.passed);
    REQUIRE(r.certificate);
    const auto& lam = r.certificate->lambda;
    auto gens = lifts(F);
    for (std::size_t a = 0; a < lam.size(); ++a) {
      Polynomial sum(T);
      for (std::size_t b = 0; b < lam[a].size(); ++b) {
        CHECK(lam[a][b].is_fiber_homogeneous(1));
        sum += lam[a][b] * gens[b];
      }
      CHECK(sum == canonical_poisson(gens[a], m.hamiltonian()));
    }
  }
}

TEST_CASE("killing connection against a numeric oracle") {
  VariableSet B = chart(2);
  Polynomial x = var(B, "x"), y = var(B, "y"), o(B), one(B, 1);
  struct Case {
    FoliationModule F;
    SymTensor2 co;
  };
  std::vector<Case> cases{
      {FoliationModule(B, {VectorField::coordinate(B, 0), VectorField::coordinate(B, 1)}),
       SymTensor2(TensorKind::contravariant, B, {{one, o}, {o, one + x * x}})},
      {FoliationModule(B, {VectorField::coordinate(B, 0), VectorField::coordinate(B, 1)}),
       SymTensor2(TensorKind::contravariant, B, {{one + y * y, x * y}, {x * y, one + x * x}})},
      {FoliationModule(B, {VectorField(B, {-y, x})}),
       SymTensor2(TensorKind::contravariant, B, {{one + x * x + y * y, o}, {o, one + x * x + y * y}})},
      {FoliationModule(B, {VectorField(B, {-y, x}), VectorField::coordinate(B, 0) + VectorField::coordinate(B, 1)}),
       SymTensor2(TensorKind::contravariant, B, {{one, o}, {o, one}})},
  };
  std::mt19937 rng(51);
  std::uniform_real_distribution<double> u(-2, 2);
  for (const auto& c : cases) {
    MetricData m(c.co, polynomial_inverse(c.co), {{0, 0}});
    REQUIRE(srf_check(c.F, m).passed);
    SRFCertificate cert = killing_connection(c.F, m);
    REQUIRE(cert.omega);
    CHECK(cert.verified_identity);
    CHECK(verify_killing_identity(c.F, m, *cert.omega));
    for (int s = 0; s < 10; ++s) CHECK(killing_residual(c.F, c.co, *cert.omega, {u(rng), u(rng)}) < 1e-6);
  }
  // the warped example: omega_1^2 = -x/(1+x^2) dy, every other entry zero
  SymTensor2 co(TensorKind::contravariant, B, {{one, o}, {o, one + x * x}});
  FoliationModule F(B, {VectorField::coordinate(B, 0), VectorField::coordinate(B, 1)});
  SRFCertificate cert = killing_connection(F, MetricData(co));
  REQUIRE(cert.omega);
  const auto& w = *cert.omega;
  CHECK(w[0][1][0].is_zero());
  CHECK(w[0][1][1] == RationalFunction(-x, one + x * x));
  CHECK(w[0][0].is_zero());
  CHECK(w[1][0].is_zero());
  CHECK(w[1][1].is_zero());
  // a perturbed connection must fail the identity
  auto wrong = w;
  wrong[0][1] = OneForm(B, {RationalFunction(o), RationalFunction(-x)});
  CHECK_FALSE(verify_killing_identity(F, MetricData(co), wrong));
}

TEST_CASE("morphism defects") {
  VariableSet B = chart(2);
  VariableSet T = B.with_fiber();
  Polynomial x = var(B, "x"), y = var(B, "y");
  IdealPresentation I = lift_ideal(FoliationModule(B, {VectorField(B, {-y, x})}));
  Polynomial X = var(T, "x"), Y = var(T, "y"), px = var(T, "p_x"), py = var(T, "p_y");
  std::vector<Polynomial> probes{X * X + Y * Y, px * px + py * py};
  auto id = morphism_defect_check(I, I, PolynomialMap::identity(T), probes);
  CHECK(id.passed);
  for (const auto& d : id.bracket_defects) CHECK(d.bracket.is_zero());
  // rotation by 90 degrees preserves the rotation ideal
  PolynomialMap rot90(T, T, {-Y, X, -py, px});
  CHECK(morphism_defect_check(I, I, rot90, probes).passed);
  // a scaling that is not symplectic
  PolynomialMap squash(T, T, {Rational(2) * X, Y, px, py});
  auto r = morphism_defect_check(I, I, squash, probes);
  CHECK_FALSE(r.passed);
}

TEST_CASE("polynomial maps compose") {
  VariableSet T = cotangent(1);
  Polynomial x = var(T, "x"), p = var(T, "p_x");
  PolynomialMap a(T, T, {x + p, p}), b(T, T, {x, p + x * x});
  Polynomial f = x * p + p * p * p;
  CHECK(a.after(b).pullback(f) == b.pullback(a.pullback(f)));
  CHECK(PolynomialMap::identity(T).pullback(f) == f);
}
