// Acceptance run: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "foliatk/dynamics.hpp"
#include "foliatk/ipoisson.hpp"
#include "foliatk/scene.hpp"
#include "foliatk/submersion.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace foliatk;
using namespace foliatk::testing;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream detail;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      if (ok) detail << "failed: ";
      else detail << "; ";
      detail << what;
      ok = false;
    }
  }
};

Scene scene(const char* name) { return load_scene(std::string(FOLIATK_SCENE_DIR) + "/" + name); }

void lie_poisson(Outcome& o) {
  std::mt19937 rng(2024);
  int pairs = 0, good = 0;
  for (int trial = 0; trial < 200; ++trial) {
    VariableSet B = chart(1 + trial % 3);
    VectorField X = random_field(rng, B, 3), Y = random_field(rng, B, 3);
    SymTensor2 S = random_sym(rng, B, 3, TensorKind::contravariant);
    bool a = canonical_poisson(cotangent_lift(X), cotangent_lift(Y)) == cotangent_lift(lie_bracket(X, Y));
    bool b = canonical_poisson(cotangent_lift(X), sym_tensor_lift(S)) == sym_tensor_lift(lie_derivative(X, S));
    ++pairs;
    good += a && b;
  }
  o.require(good == pairs, "bracket lift identities");
  o.detail << good << "/" << pairs << " pairs exact";
}

void worked_submersion(Outcome& o) {
  Scene sc = scene("submersion_r3_r2.json");
  const SubmersionData& s = sc.submersion->data;
  VariableSet TM = s.source().with_fiber(), TN = s.target().with_fiber();
  Polynomial x = var(TM, "x"), y = var(TM, "y"), px = var(TM, "p_x"), py = var(TM, "p_y"), pz = var(TM, "p_z");
  CotangentMap phi = phi_pi(s);
  auto b = phi.base_components();
  auto f = phi.fiber_components();
  o.require(b.size() == 2 && b[0] == x && b[1] == y && f[0] == px && f[1] == py + x * pz, "phi_pi map");
  auto d = poisson_defect(s, var(TN, "p_u"), var(TN, "p_v"));
  o.require(d.defect == pz, "Poisson defect");
  auto m = metric_defect(s);
  IdealPresentation V = vertical_ideal(s);
  o.require(m.defect == Rational(1, 2) * pz * pz && m.certificate.claim_holds() &&
                verify(m.certificate, m.defect, V.generators()),
            "metric defect certificate");
  auto integ = integrability_check(s);
  VectorField dz = VectorField::coordinate(s.source(), 2);
  bool witness = !integ.passed && integ.witnesses.size() == 1 &&
                 (integ.witnesses[0].defect == dz || integ.witnesses[0].defect == Rational(-1) * dz);
  o.require(witness, "curvature witness");
  o.detail << "phi = (" << b[0].to_string() << ", " << b[1].to_string() << ", " << f[0].to_string() << ", "
           << f[1].to_string() << "), defect " << d.defect.to_string() << ", metric defect " << m.defect.to_string();
  if (!integ.witnesses.empty()) o.detail << ", witness " << integ.witnesses[0].defect.to_string();
}

void srf_pair(Outcome& o) {
  Scene rot = scene("rotation.json");
  auto r = srf_check(rot.foliation_module(), rot.metric);
  bool lambda_zero = r.certificate.has_value();
  if (r.certificate)
    for (const auto& row : r.certificate->lambda)
      for (const auto& l : row) lambda_zero = lambda_zero && l.is_zero();
  o.require(r.passed && lambda_zero, "rotation passes with lambda = 0");
  Scene sc = scene("rotation_scaled.json");
  auto s = srf_check(sc.foliation_module(), sc.metric);
  bool refuted = !s.passed && s.witness && !s.brackets[*s.witness].certificate.claim_holds();
  o.require(refuted, "scaled rotation refuted");
  if (refuted) o.detail << "scaled rotation remainder " << s.brackets[*s.witness].certificate.remainder.to_string();
}

void killing(Outcome& o) {
  Scene sc = scene("killing.json");
  FoliationModule F = sc.foliation_module();
  SRFCertificate c = killing_connection(F, sc.metric);
  o.require(c.omega.has_value(), "connection extracted");
  if (!c.omega) return;
  Polynomial x = var(sc.chart, "x");
  const auto& w = *c.omega;
  bool omega12 = w[0][1][0].is_zero() && w[0][1][1] == RationalFunction(-x, 1 + x * x);
  o.require(omega12, "omega_1^2 = -x/(1+x^2) dy");
  o.require(c.verified_identity && verify_killing_identity(F, sc.metric, w), "identity after clearing denominators");
  o.detail << "omega_1^2 = (" << w[0][1][0].to_string() << ") dx + (" << w[0][1][1].to_string() << ") dy";
}

int bound_for(const Polynomial& f, const std::vector<Polynomial>& gens) {
  int m = 1 << 20;
  for (const auto& g : gens) m = std::min(m, g.total_degree());
  return f.total_degree() - m + 2;
}

void groebner_oracle(Outcome& o) {
  std::mt19937 rng(5);
  int total = 0, agree = 0, members = 0;
  for (int trial = 0; trial < 120; ++trial) {
    VariableSet T = cotangent(1 + trial % 3);
    std::vector<Polynomial> gens;
    while (static_cast<int>(gens.size()) < 1 + trial % 2) {
      Polynomial p = random_poly(rng, T, 2, 2, 2);
      if (!p.is_zero()) gens.push_back(p);
    }
    Polynomial f(T);
    if (trial % 2 == 0)
      for (const auto& g : gens) f += random_poly(rng, T, 1, 1, 2) * g;
    else
      f = random_poly(rng, T, 2, 2, 3);
    IdealPresentation I(T, gens);
    Certificate c = I.membership(f);
    bool gb = c.claim_holds();
    int bound = bound_for(f, gens);
    if (gb)
      for (const auto& k : c.cofactors) bound = std::max(bound, k.total_degree());
    bool orc = oracle::member_bounded(f, gens, std::max(0, bound));
    agree += gb == orc;
    members += gb;
    ++total;
  }
  o.require(agree == total, "oracle agreement");
  o.detail << agree << "/" << total << " agree (" << members << " members)";
}

std::size_t binom(std::size_t n, std::size_t k) {
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

void fiber_isotropy(Outcome& o) {
  for (int k = 1; k <= 3; ++k) {
    std::string name = "order_k" + std::to_string(k) + "_n1.json";
    Scene sc = scene(name.c_str());
    std::vector<Rational> zero{0};
    std::size_t d = fiber_dim(sc.foliation_module(), zero);
    o.require(d == 1, "fiber_dim(0) for x^" + std::to_string(k) + " d/dx");
  }
  o.detail << "x^k d/dx: fiber_dim(0) = 1 for k = 1..3";
  Scene so3 = scene("so3.json");
  FoliationModule F = so3.foliation_module();
  PointReport a = isotropy_algebra(F, std::vector<Rational>{0, 0, 0});
  PointReport b = isotropy_algebra(F, std::vector<Rational>{1, 0, 0});
  o.require(a.fiber_dim == 3 && a.tangent_dim == 0 && a.isotropy_dim == 3, "so(3) at origin");
  o.require(b.fiber_dim == 2 && b.tangent_dim == 2 && b.isotropy_dim == 0, "so(3) at (1,0,0)");
  // generators e12, e13, e23; expect [e12,e13] = -e23, [e12,e23] = e13, [e13,e23] = -e12
  bool standard = a.isotropy_basis.size() == 3;
  for (std::size_t i = 0; standard && i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) standard = standard && a.isotropy_basis[i][j] == Rational(i == j ? 1 : 0);
  o.require(standard, "isotropy basis at origin is the generator basis");
  if (standard) {
    const auto& C = a.structure_constants;
    bool sc = C[2][0][1] == -1 && C[0][0][1] == 0 && C[1][0][1] == 0 && C[1][0][2] == 1 && C[0][0][2] == 0 &&
              C[2][0][2] == 0 && C[0][1][2] == -1 && C[1][1][2] == 0 && C[2][1][2] == 0;
    o.require(sc, "so(3) structure constants");
  }
  o.detail << "; so(3) (fiber, tangent, isotropy) = (" << a.fiber_dim << "," << a.tangent_dim << "," << a.isotropy_dim
           << ") and (" << b.fiber_dim << "," << b.tangent_dim << "," << b.isotropy_dim << ")";
  o.detail << "; reference C(k+n-1,n-1) vs computed at 0:";
  for (std::size_t n = 1; n <= 3; ++n)
    for (int k = 1; k <= 3; ++k) {
      std::string name = "order_k" + std::to_string(k) + "_n" + std::to_string(n) + ".json";
      Scene sc = scene(name.c_str());
      std::size_t d = fiber_dim(sc.foliation_module(), std::vector<Rational>(n, 0));
      o.detail << " (k" << k << ",n" << n << ") " << binom(k + n - 1, n - 1) << "/" << d;
    }
}

void monitors(Outcome& o) {
  Scene r3 = scene("rotation_r3.json");
  auto a = geodesic_orthogonality_check(r3.foliation_module(), r3.metric, r3.flow->start, 1.0, 1e-3);
  o.require(a.max_abs_generator <= 1e-9, "rotation geodesic check");
  Scene s3 = scene("rotation_scaled_r3.json");
  auto b = geodesic_orthogonality_check(s3.foliation_module(), s3.metric, s3.flow->start, 1.0, 1e-3);
  bool srf = srf_check(s3.foliation_module(), s3.metric).passed;
  o.require(b.max_abs_generator <= 1e-6 && !srf, "geometric but not module SRF");
  Scene so3 = scene("so3.json");
  auto c = monitor_ideal_preservation(so3.ideal_presentation(), so3.metric.hamiltonian(), so3.flow->start, 1.0, 1e-3);
  o.require(c.max_abs_generator <= 1e-9 && c.energy_drift <= 1e-8, "so(3) ideal preservation");
  char buf[256];
  std::snprintf(buf, sizeof buf, "rotation max %.3g; scaled max %.3g with srf_check %s; so(3) max %.3g, drift %.3g",
                a.max_abs_generator, b.max_abs_generator, srf ? "passing" : "failing", c.max_abs_generator,
                c.energy_drift);
  o.detail << buf;
}

void morita(Outcome& o) {
  auto run = [](const char* name) {
    Scene sc = scene(name);
    const auto& [l, r] = *sc.morita;
    return morita_span_check(l.data, r.data, FoliationModule(l.data.target(), l.target_foliation),
                             FoliationModule(r.data.target(), r.target_foliation));
  };
  o.require(run("morita_reflexive.json").passed, "reflexive span");
  o.require(run("morita_two_projections.json").passed, "two projections");
  auto bad = run("morita_mismatch.json");
  o.require(!bad.passed && bad.comparison.witness.has_value(), "mismatch witness");
  Scene sc = scene("composition.json");
  SubmersionData s12 = sc.submersion->data.then(sc.outer->data);
  FoliationModule F(sc.outer->data.target(), sc.outer->target_foliation);
  bool law = module_equal(pullback_foliation(s12, F),
                          pullback_foliation(sc.submersion->data, pullback_foliation(sc.outer->data, F)))
                 .passed;
  o.require(law, "composition law");
  o.detail << "reflexive, two-projection and composition pass; mismatch refuted";
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    double limit_s;
    std::function<void(Outcome&)> run;
  };
  std::vector<Criterion> all{
      {1, "bracket lifts on 200 random pairs", 5, lie_poisson},
      {2, "worked submersion example", 1, worked_submersion},
      {3, "SRF decision pair", 1, srf_pair},
      {4, "Killing connection", 1, killing},
      {5, "Groebner membership vs linear-solve oracle", 60, groebner_oracle},
      {6, "fiber and isotropy data", 5, fiber_isotropy},
      {7, "numeric monitors", 10, monitors},
      {8, "Morita spans and composition", 5, morita},
  };
  int failures = 0;
  for (const auto& c : all) {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs >= c.limit_s) o.require(false, "over time limit");
    failures += !o.ok;
    std::printf("[%s] criterion %d: %s (%.3f s, limit %.0f s) %s\n", o.ok ? "PASS" : "FAIL", c.id, c.title, secs,
                c.limit_s, o.detail.str().c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(all.size()) - failures, all.size());
  return failures == 0 ? 0 : 1;
}
