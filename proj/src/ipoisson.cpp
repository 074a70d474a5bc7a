#include "foliatk/ipoisson.hpp"

namespace foliatk {

PolynomialMap::PolynomialMap(VariableSet source, VariableSet target, std::vector<Polynomial> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
  if (images_.size() != target_.size()) throw Error("polynomial map needs one image per target variable");
  for (const auto& im : images_)
    if (!(im.vars() == source_)) throw VariableMismatch("map image on a foreign variable set");
}

PolynomialMap PolynomialMap::identity(const VariableSet& vars) {
  std::vector<Polynomial> images;
  for (std::size_t i = 0; i < vars.size(); ++i) images.push_back(Polynomial::variable(vars, i));
  return PolynomialMap(vars, vars, std::move(images));
}

Polynomial PolynomialMap::pullback(const Polynomial& f) const {
  if (!(f.vars() == target_)) throw VariableMismatch("pullback of a polynomial on a foreign chart");
  return f.substitute(images_);
}

PolynomialMap PolynomialMap::after(const PolynomialMap& inner) const {
  if (!(inner.target() == source_)) throw VariableMismatch("maps are not composable");
  std::vector<Polynomial> images;
  for (const auto& im : images_) images.push_back(inner.pullback(im));
  return PolynomialMap(inner.source(), target_, std::move(images));
}

namespace {

BracketMembership member(const IdealPresentation& I, std::size_t i, std::size_t j, Polynomial bracket) {
  BracketMembership m{i, j, bracket, I.membership(bracket), std::nullopt};
  if (!m.certificate.claim_holds()) m.obstruction_point = I.zero_set_obstruction(bracket);
  return m;
}

}  // namespace

ClosureResult poisson_closure_check(const IdealPresentation& I) {
  ClosureResult res;
  const auto& g = I.generators();
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = i + 1; j < g.size(); ++j) {
      res.pairs.push_back(member(I, i, j, canonical_poisson(g[i], g[j])));
      if (!res.pairs.back().certificate.claim_holds() && !res.witness) {
        res.passed = false;
        res.witness = res.pairs.size() - 1;
      }
    }
  }
  return res;
}

NormalizerResult normalizer_check(const IdealPresentation& I, const Polynomial& f) {
  NormalizerResult res{true, f, {}, std::nullopt};
  const auto& g = I.generators();
  for (std::size_t i = 0; i < g.size(); ++i) {
    res.brackets.push_back(member(I, i, i, canonical_poisson(f, g[i])));
    if (!res.brackets.back().certificate.claim_holds() && !res.witness) {
      res.passed = false;
      res.witness = i;
    }
  }
  return res;
}

Polynomial reduced_bracket(const IdealPresentation& I, const Polynomial& f, const Polynomial& g) {
  for (const auto* h : {&f, &g}) {
    auto check = normalizer_check(I, *h);
    if (!check.passed) {
      const auto& w = check.brackets[*check.witness];
      throw PreconditionError("'" + h->to_string() + "' is not in the normalizer: {f, g_" +
                              std::to_string(w.i) + "} leaves remainder " + w.certificate.remainder.to_string());
    }
  }
  return I.membership(canonical_poisson(f, g)).remainder;
}

SRFResult srf_check(const FoliationModule& F, const MetricData& m) {
  if (!(m.chart() == F.chart())) throw VariableMismatch("metric and foliation on different charts");
  IdealPresentation I = lift_ideal(F);
  SRFResult res{true, m.hamiltonian(), {}, std::nullopt, std::nullopt};
  const auto& lifts = I.generators();
  for (std::size_t a = 0; a < lifts.size(); ++a) {
    res.brackets.push_back(member(I, a, a, canonical_poisson(lifts[a], res.hamiltonian)));
    if (!res.brackets.back().certificate.claim_holds() && !res.witness) {
      res.passed = false;
      res.witness = a;
    }
  }
  if (!res.passed) return res;
  SRFCertificate cert;
  const VariableSet& T = I.vars();
  for (std::size_t a = 0; a < lifts.size(); ++a) {
    std::vector<Polynomial> row;
    Polynomial sum(T);
    for (std::size_t b = 0; b < lifts.size(); ++b) {
      row.push_back(res.brackets[a].certificate.cofactors[b].fiber_component(1));
      sum += row.back() * lifts[b];
    }
    if (!(sum == res.brackets[a].bracket)) throw InternalError("lambda certificate does not re-expand");
    cert.lambda.push_back(std::move(row));
  }
  cert.verified_identity = true;
  res.certificate = std::move(cert);
  return res;
}

namespace {

// (A v)_i / D as one-form components
std::vector<RationalFunction> lower(const RationalMetric& g, const VectorField& v) {
  std::size_t n = v.dimension();
  std::vector<RationalFunction> out;
  for (std::size_t i = 0; i < n; ++i) {
    Polynomial s(v.chart());
    for (std::size_t k = 0; k < n; ++k)
      if (!g.numer[i][k].is_zero()) s += g.numer[i][k] * v[k];
    out.emplace_back(std::move(s), g.denom);
  }
  return out;
}

}  // namespace

SRFCertificate killing_connection(const FoliationModule& F, const MetricData& m) {
  auto srf = srf_check(F, m);
  if (!srf.passed) throw PreconditionError("killing_connection requires a module SRF (srf_check failed)");
  RationalMetric g = m.lowering();
  SRFCertificate cert = *srf.certificate;
  std::vector<std::vector<OneForm>> omega;
  for (std::size_t a = 0; a < F.size(); ++a) {
    std::vector<OneForm> row;
    for (std::size_t b = 0; b < F.size(); ++b) {
      VectorField Lambda = vector_field_of_linear(cert.lambda[a][b], F.chart());
      auto comps = lower(g, Lambda);
      for (auto& c : comps) c = -c;
      row.emplace_back(F.chart(), std::move(comps));
    }
    omega.push_back(std::move(row));
  }
  if (!verify_killing_identity(F, m, omega))
    throw InternalError("extracted connection fails the Killing identity");
  cert.omega = std::move(omega);
  cert.verified_identity = true;
  return cert;
}

bool verify_killing_identity(const FoliationModule& F, const MetricData& m,
                             const std::vector<std::vector<OneForm>>& omega) {
  RationalMetric g = m.lowering();
  const std::size_t n = F.dimension();
  const VariableSet& chart = F.chart();
  const Polynomial& D = g.denom;
  // g X_b for every generator
  std::vector<std::vector<RationalFunction>> flat;
  for (const auto& X : F.generators()) flat.push_back(lower(g, X));
  for (std::size_t a = 0; a < F.size(); ++a) {
    const VectorField& X = F.generators()[a];
    Polynomial XD = X.apply(D);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) {
        // (L_X g)_ij with g = A / D
        const Polynomial& Aij = g.numer[i][j];
        RationalFunction lhs(X.apply(Aij) * D - Aij * XD, D * D);
        Polynomial rest(chart);
        for (std::size_t k = 0; k < n; ++k) {
          rest += g.numer[k][j] * X[k].diff(i);
          rest += g.numer[i][k] * X[k].diff(j);
        }
        lhs = lhs + RationalFunction(rest, D);
        RationalFunction rhs{Polynomial(chart)};
        for (std::size_t b = 0; b < F.size(); ++b) {
          const OneForm& w = omega[a][b];
          rhs = rhs + w[i] * flat[b][j] + flat[b][i] * w[j];
        }
        if (!(lhs == rhs)) return false;
      }
    }
  }
  return true;
}

MorphismReport morphism_defect_check(const IdealPresentation& I1, const IdealPresentation& I2,
                                     const PolynomialMap& phi, const std::vector<Polynomial>& probes) {
  if (!(phi.source() == I1.vars()) || !(phi.target() == I2.vars()))
    throw VariableMismatch("map does not connect the two ideals' charts");
  for (const auto& f : probes) {
    if (!normalizer_check(I2, f).passed)
      throw PreconditionError("probe '" + f.to_string() + "' is not in the normalizer of the target ideal");
  }
  MorphismReport rep;
  for (const auto& g : I2.generators()) {
    rep.ideal_pullbacks.push_back(I1.membership(phi.pullback(g)));
    if (!rep.ideal_pullbacks.back().claim_holds()) rep.passed = false;
  }
  for (const auto& f : probes) {
    rep.probe_normalizers.push_back(normalizer_check(I1, phi.pullback(f)));
    if (!rep.probe_normalizers.back().passed) rep.passed = false;
  }
  for (std::size_t i = 0; i < probes.size(); ++i) {
    for (std::size_t j = i + 1; j < probes.size(); ++j) {
      Polynomial defect = canonical_poisson(phi.pullback(probes[i]), phi.pullback(probes[j])) -
                          phi.pullback(canonical_poisson(probes[i], probes[j]));
      rep.bracket_defects.push_back(member(I1, i, j, defect));
      if (!rep.bracket_defects.back().certificate.claim_holds()) rep.passed = false;
    }
  }
  return rep;
}

}  // namespace foliatk
