#include "foliatk/foliation.hpp"

#include <algorithm>

namespace foliatk {

namespace {

std::vector<VectorField> nonzero(std::vector<VectorField> gens, const VariableSet& chart) {
  std::vector<VectorField> out;
  for (auto& g : gens) {
    if (!(g.chart() == chart)) throw VariableMismatch("foliation generator on a foreign chart");
    if (!g.is_zero()) out.push_back(std::move(g));
  }
  return out;
}

std::vector<ModuleElement> as_elements(const std::vector<VectorField>& gens) {
  std::vector<ModuleElement> out;
  for (const auto& g : gens) out.push_back(g.as_module_element());
  return out;
}

}  // namespace

FoliationModule::FoliationModule(VariableSet chart, std::vector<VectorField> generators, OrderKind order)
    : chart_(chart.base_only()),
      generators_(nonzero(std::move(generators), chart_)),
      basis_(chart_, chart_.dimension(), as_elements(generators_), MonomialOrder(order, chart_)),
      syzygies_(generators_.empty()
                    ? std::vector<ModuleElement>{}
                    : syzygy_basis(chart_, chart_.dimension(), as_elements(generators_), MonomialOrder(order, chart_))) {}

ModuleCertificate FoliationModule::membership(const VectorField& v) const {
  if (!(v.chart() == chart_)) throw VariableMismatch("vector field on a foreign chart");
  return basis_.normal_form(v.as_module_element());
}

RationalMatrix FoliationModule::evaluate(std::span<const Rational> point) const {
  if (point.size() != dimension()) throw Error("point has wrong dimension");
  RationalMatrix E(dimension(), RationalVector(size()));
  for (std::size_t a = 0; a < size(); ++a)
    for (std::size_t i = 0; i < dimension(); ++i) E[i][a] = generators_[a][i].eval(point);
  return E;
}

std::optional<std::vector<Rational>> FoliationModule::point_obstruction(const VectorField& v) const {
  for (const auto& q : obstruction_grid(dimension())) {
    std::span<const Rational> s(q);
    RationalVector target(dimension());
    for (std::size_t i = 0; i < dimension(); ++i) target[i] = v[i].eval(s);
    if (std::all_of(target.begin(), target.end(), [](const Rational& r) { return r == 0; })) continue;
    RationalMatrix E = evaluate(s);
    if (size() == 0 || !solve(E, target)) return q;
  }
  return std::nullopt;
}

InvolutivityResult involutivity_check(const FoliationModule& F) {
  InvolutivityResult result;
  const auto& gens = F.generators();
  for (std::size_t a = 0; a < gens.size(); ++a) {
    for (std::size_t b = a + 1; b < gens.size(); ++b) {
      VectorField br = lie_bracket(gens[a], gens[b]);
      auto cert = F.membership(br);
      bool ok = cert.claim_holds();
      result.brackets.push_back(BracketCertificate{a, b, br, std::move(cert)});
      if (!ok && !result.witness) {
        result.passed = false;
        result.witness = result.brackets.size() - 1;
        result.obstruction_point = F.point_obstruction(br);
      }
    }
  }
  return result;
}

std::size_t tangent_dim(const FoliationModule& F, std::span<const Rational> point) {
  if (F.size() == 0) return 0;
  return rank(F.evaluate(point));
}

namespace {

RationalMatrix evaluated_syzygies(const FoliationModule& F, std::span<const Rational> point) {
  RationalMatrix rows;
  for (const auto& s : F.syzygies()) rows.push_back(s.eval(point));
  return rows;
}

}  // namespace

std::size_t fiber_dim(const FoliationModule& F, std::span<const Rational> point) {
  if (point.size() != F.dimension()) throw Error("point has wrong dimension");
  return F.size() - rank(evaluated_syzygies(F, point));
}

PointReport isotropy_algebra(const FoliationModule& F, std::span<const Rational> point) {
  PointReport rep;
  rep.point.assign(point.begin(), point.end());
  rep.tangent_dim = tangent_dim(F, point);
  RationalMatrix S = evaluated_syzygies(F, point);
  const std::size_t N = F.size();
  const std::size_t rank_s = rank(S);
  rep.fiber_dim = N - rank_s;
  if (rep.fiber_dim < rep.tangent_dim) throw InternalError("fiber dimension below tangent dimension");
  rep.isotropy_dim = rep.fiber_dim - rep.tangent_dim;
  if (rep.isotropy_dim == 0) return rep;

  // basis of ker(ev_q) modulo I_q F, preferring generator classes
  RationalMatrix E = F.evaluate(point);
  std::vector<RationalVector> candidates;
  for (std::size_t a = 0; a < N; ++a) {
    bool vanishes = true;
    for (std::size_t i = 0; i < F.dimension(); ++i)
      if (E[i][a] != 0) vanishes = false;
    if (vanishes) {
      RationalVector e(N, 0);
      e[a] = 1;
      candidates.push_back(std::move(e));
    }
  }
  for (auto& v : kernel(E, N)) candidates.push_back(std::move(v));
  RationalMatrix span = S;
  std::size_t current = rank_s;
  for (const auto& c : candidates) {
    if (rep.isotropy_basis.size() == rep.isotropy_dim) break;
    span.push_back(c);
    std::size_t r = rank(span);
    if (r > current) {
      current = r;
      rep.isotropy_basis.push_back(c);
    } else {
      span.pop_back();
    }
  }
  if (rep.isotropy_basis.size() != rep.isotropy_dim) throw InternalError("could not complete the isotropy basis");

  auto inv = involutivity_check(F);
  if (!inv.passed) throw PreconditionError("isotropy algebra requires an involutive module");
  // cofactor vectors C[a][b] of [X_a, X_b] evaluated at the point
  std::vector<std::vector<RationalVector>> C(N, std::vector<RationalVector>(N, RationalVector(N, 0)));
  for (const auto& bc : inv.brackets) {
    for (std::size_t e = 0; e < N; ++e) {
      Rational v = bc.certificate.cofactors[e].eval(point);
      C[bc.a][bc.b][e] = v;
      C[bc.b][bc.a][e] = -v;
    }
  }
  const std::size_t k = rep.isotropy_dim;
  // columns: isotropy basis then evaluated syzygies
  RationalMatrix A(N, RationalVector(k + S.size()));
  for (std::size_t r = 0; r < N; ++r) {
    for (std::size_t c = 0; c < k; ++c) A[r][c] = rep.isotropy_basis[c][r];
    for (std::size_t c = 0; c < S.size(); ++c) A[r][k + c] = S[c][r];
  }
  rep.structure_constants.assign(k, std::vector<std::vector<Rational>>(k, std::vector<Rational>(k, 0)));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      RationalVector w(N, 0);
      const auto& u = rep.isotropy_basis[i];
      const auto& v = rep.isotropy_basis[j];
      for (std::size_t a = 0; a < N; ++a) {
        if (u[a] == 0) continue;
        for (std::size_t b = 0; b < N; ++b) {
          if (v[b] == 0) continue;
          for (std::size_t e = 0; e < N; ++e) w[e] += u[a] * v[b] * C[a][b][e];
        }
      }
      auto x = solve(A, w);
      if (!x) throw AmbiguityError("bracket of isotropy classes is not representable modulo I_q F");
      for (std::size_t m = 0; m < k; ++m) {
        rep.structure_constants[m][i][j] = (*x)[m];
        rep.structure_constants[m][j][i] = -(*x)[m];
      }
    }
  }
  return rep;
}

ModuleEqualResult module_equal(const FoliationModule& F1, const FoliationModule& F2) {
  if (!(F1.chart() == F2.chart())) throw VariableMismatch("module_equal on different charts");
  ModuleEqualResult res;
  for (std::size_t a = 0; a < F1.size(); ++a) {
    auto cert = F2.membership(F1.generators()[a]);
    if (!cert.claim_holds() && !res.witness) {
      res.passed = false;
      res.witness = ModuleEqualResult::Witness{0, a, cert};
    }
    res.forward.push_back(std::move(cert));
  }
  for (std::size_t a = 0; a < F2.size(); ++a) {
    auto cert = F1.membership(F2.generators()[a]);
    if (!cert.claim_holds() && !res.witness) {
      res.passed = false;
      res.witness = ModuleEqualResult::Witness{1, a, cert};
    }
    res.backward.push_back(std::move(cert));
  }
  return res;
}

IdealPresentation lift_ideal(const FoliationModule& F, OrderKind order) {
  std::vector<Polynomial> gens;
  for (const auto& X : F.generators()) gens.push_back(cotangent_lift(X));
  return IdealPresentation(F.chart().with_fiber(), std::move(gens), order);
}

}  // namespace foliatk
