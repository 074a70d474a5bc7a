#include "foliatk/submersion.hpp"

#include <algorithm>

namespace foliatk {

SubmersionData::SubmersionData(VariableSet source, VariableSet target, std::vector<std::size_t> base_indices,
                               SymTensor2 source_cometric, MetricData target_metric)
    : source_(source.base_only()),
      target_(target.base_only()),
      base_(std::move(base_indices)),
      source_cometric_(std::move(source_cometric)),
      target_metric_(std::move(target_metric)) {
  if (base_.size() != target_.dimension()) throw Error("submersion needs one source index per target coordinate");
  std::vector<bool> used(source_.dimension(), false);
  for (auto b : base_) {
    if (b >= source_.dimension() || used[b]) throw Error("invalid or repeated submersion base index");
    used[b] = true;
  }
  for (std::size_t a = 0; a < source_.dimension(); ++a)
    if (!used[a]) vertical_.push_back(a);
  if (!(source_cometric_.chart() == source_)) throw VariableMismatch("source cometric on a foreign chart");
  if (source_cometric_.kind() != TensorKind::contravariant) throw Error("source cometric must be contravariant");
  if (!(target_metric_.chart() == target_)) throw VariableMismatch("target metric on a foreign chart");
}

Polynomial SubmersionData::compose_base(const Polynomial& f) const {
  std::vector<Polynomial> images;
  for (auto b : base_) images.push_back(Polynomial::variable(source_, b));
  return f.embed(target_).substitute(images);
}

SubmersionData SubmersionData::then(const SubmersionData& outer) const {
  if (!(outer.source() == target_)) throw VariableMismatch("submersions are not composable");
  std::vector<std::size_t> idx;
  for (auto b : outer.base_indices()) idx.push_back(base_[b]);
  return SubmersionData(source_, outer.target(), std::move(idx), source_cometric_, outer.target_metric());
}

RiemannianResult check_riemannian(const SubmersionData& s) {
  RiemannianResult res;
  const auto& G = s.target_metric().cometric();
  const auto& b = s.base_indices();
  for (std::size_t i = 0; i < b.size(); ++i) {
    for (std::size_t j = i; j < b.size(); ++j) {
      Polynomial d = s.source_cometric()(b[i], b[j]) - s.compose_base(G(i, j));
      if (!d.is_zero()) {
        res.passed = false;
        res.defects.push_back(EntryDefect{i, j, std::move(d)});
      }
    }
  }
  return res;
}

CotangentMap::CotangentMap(PolynomialMap map) : map_(std::move(map)) {
  const VariableSet& t = map_.target();
  if (!t.has_fiber() || !map_.source().has_fiber()) throw Error("cotangent maps need cotangent charts");
  for (std::size_t j = 0; j < t.dimension(); ++j) {
    if (map_.images()[j].depends_on_fiber()) throw Error("cotangent map base component depends on momenta");
    if (!map_.images()[t.fiber_index(j)].is_fiber_homogeneous(1))
      throw Error("cotangent map fiber component is not linear in momenta");
  }
}

std::vector<Polynomial> CotangentMap::base_components() const {
  const auto& im = map_.images();
  return {im.begin(), im.begin() + static_cast<long>(target().dimension())};
}

std::vector<Polynomial> CotangentMap::fiber_components() const {
  const auto& im = map_.images();
  return {im.begin() + static_cast<long>(target().dimension()), im.end()};
}

CotangentMap phi_pi(const SubmersionData& s) {
  const auto& metric = s.target_metric().metric();
  if (!metric) throw PreconditionError("phi_pi needs a polynomial covariant metric on the target");
  VariableSet Ts = s.source().with_fiber();
  VariableSet Tt = s.target().with_fiber();
  const std::size_t n = s.source().dimension();
  const auto& h = s.source_cometric();
  // (h^-1 p)^a
  std::vector<Polynomial> raised;
  for (std::size_t a = 0; a < n; ++a) {
    Polynomial v(Ts);
    for (std::size_t c = 0; c < n; ++c)
      if (!h(a, c).is_zero()) v += h(a, c).embed(Ts) * Polynomial::variable(Ts, Ts.fiber_index(c));
    raised.push_back(std::move(v));
  }
  const auto& b = s.base_indices();
  std::vector<Polynomial> images;
  for (auto bi : b) images.push_back(Polynomial::variable(Ts, bi));
  for (std::size_t j = 0; j < b.size(); ++j) {
    Polynomial v(Ts);
    for (std::size_t k = 0; k < b.size(); ++k) {
      const Polynomial& gjk = (*metric)(j, k);
      if (!gjk.is_zero()) v += s.compose_base(gjk).embed(Ts) * raised[b[k]];
    }
    images.push_back(std::move(v));
  }
  return CotangentMap(PolynomialMap(Ts, Tt, std::move(images)));
}

Polynomial pullback_function(const SubmersionData& s, const Polynomial& f) { return phi_pi(s).pullback(f); }

VectorField horizontal_lift(const SubmersionData& s, const VectorField& X) {
  if (!(X.chart() == s.target())) throw VariableMismatch("vector field is not on the submersion target");
  Polynomial lifted = pullback_function(s, cotangent_lift(X));
  VectorField V = vector_field_of_linear(lifted, s.source());
  const auto& b = s.base_indices();
  for (std::size_t j = 0; j < b.size(); ++j) {
    if (!(V[b[j]] == s.compose_base(X[j])))
      throw PreconditionError("horizontal lift is not pi-related to X; is the submersion Riemannian?");
  }
  // h(V, d_alpha) = 0  <=>  (adj(h^-1) V)_alpha = 0
  PolyMatrix adj = adjugate(s.source_cometric().entries());
  for (auto alpha : s.vertical_indices()) {
    Polynomial v(s.source());
    for (std::size_t c = 0; c < s.source().dimension(); ++c) v += adj[alpha][c] * V[c];
    if (!v.is_zero()) throw InternalError("horizontal lift is not orthogonal to the fibers");
  }
  return V;
}

FoliationModule pullback_foliation(const SubmersionData& s, const FoliationModule& F) {
  if (!(F.chart() == s.target())) throw VariableMismatch("foliation is not on the submersion target");
  std::vector<VectorField> gens;
  for (const auto& X : F.generators()) gens.push_back(horizontal_lift(s, X));
  for (auto alpha : s.vertical_indices()) gens.push_back(VectorField::coordinate(s.source(), alpha));
  return FoliationModule(s.source(), std::move(gens));
}

IdealPresentation vertical_ideal(const SubmersionData& s) {
  VariableSet Ts = s.source().with_fiber();
  std::vector<Polynomial> gens;
  for (auto alpha : s.vertical_indices()) gens.push_back(Polynomial::variable(Ts, Ts.fiber_index(alpha)));
  return IdealPresentation(Ts, std::move(gens));
}

DefectResult poisson_defect(const SubmersionData& s, const Polynomial& f, const Polynomial& g) {
  CotangentMap phi = phi_pi(s);
  Polynomial defect = canonical_poisson(phi.pullback(f), phi.pullback(g)) - phi.pullback(canonical_poisson(f, g));
  auto cert = vertical_ideal(s).membership(defect);
  if (!cert.claim_holds() && check_riemannian(s).passed)
    throw InternalError("Poisson defect of a Riemannian submersion left the vertical ideal");
  return DefectResult{std::move(defect), std::move(cert)};
}

DefectResult metric_defect(const SubmersionData& s) {
  CotangentMap phi = phi_pi(s);
  Polynomial Hh = sym_tensor_lift(s.source_cometric()) * Rational(1, 2);
  Polynomial defect = Hh - phi.pullback(s.target_metric().hamiltonian());
  auto cert = vertical_ideal(s).membership(defect);
  return DefectResult{std::move(defect), std::move(cert)};
}

IntegrabilityResult integrability_check(const SubmersionData& s) {
  IntegrabilityResult res;
  const std::size_t m = s.target().dimension();
  std::vector<VectorField> lifts;
  for (std::size_t i = 0; i < m; ++i) lifts.push_back(horizontal_lift(s, VectorField::coordinate(s.target(), i)));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      // coordinate fields commute, so the lift of their bracket is zero
      VectorField d = lie_bracket(lifts[i], lifts[j]);
      for (auto b : s.base_indices())
        if (!d[b].is_zero()) throw InternalError("curvature defect has a horizontal component");
      if (!d.is_zero()) {
        res.passed = false;
        res.witnesses.push_back(CurvatureWitness{i, j, std::move(d)});
      }
    }
  }
  return res;
}

MoritaResult morita_span_check(const SubmersionData& s1, const SubmersionData& s2, const FoliationModule& F1,
                               const FoliationModule& F2) {
  if (!(s1.source() == s2.source())) throw VariableMismatch("span legs have different sources");
  if (!(s1.source_cometric() == s2.source_cometric())) throw PreconditionError("span legs use different source cometrics");
  FoliationModule left = pullback_foliation(s1, F1);
  FoliationModule right = pullback_foliation(s2, F2);
  ModuleEqualResult cmp = module_equal(left, right);
  bool ok = cmp.passed;
  return MoritaResult{ok, std::move(left), std::move(right), std::move(cmp)};
}

}  // namespace foliatk
