#pragma once

#include <optional>
#include <vector>

#include "foliatk/foliation.hpp"
#include "foliatk/geometry.hpp"
#include "foliatk/ideal.hpp"
#include "foliatk/ipoisson.hpp"

namespace foliatk {

/// Riemannian submersion in adapted coordinates: the coordinate projection
/// (q^i, q^alpha) -> (q^i) where base_indices lists the source indices of the
/// target coordinates, in target order. Surjectivity and connected fibers
/// hold for such projections of R^n and are not checked.
class SubmersionData {
 public:
  SubmersionData(VariableSet source, VariableSet target, std::vector<std::size_t> base_indices,
                 SymTensor2 source_cometric, MetricData target_metric);

  const VariableSet& source() const { return source_; }
  const VariableSet& target() const { return target_; }
  const std::vector<std::size_t>& base_indices() const { return base_; }
  const std::vector<std::size_t>& vertical_indices() const { return vertical_; }
  const SymTensor2& source_cometric() const { return source_cometric_; }
  const MetricData& target_metric() const { return target_metric_; }

  /// f o pi for f on the target base chart.
  Polynomial compose_base(const Polynomial& f) const;
  /// this followed by outer (outer.source() must equal this->target()).
  SubmersionData then(const SubmersionData& outer) const;

 private:
  VariableSet source_;
  VariableSet target_;
  std::vector<std::size_t> base_;
  std::vector<std::size_t> vertical_;
  SymTensor2 source_cometric_;
  MetricData target_metric_;
};

struct EntryDefect {
  std::size_t i;
  std::size_t j;
  Polynomial defect;
};

struct RiemannianResult {
  bool passed = true;
  std::vector<EntryDefect> defects;  // nonzero entries only
};

/// (i,j)-block of h^-1 against g^-1 o pi, entrywise and exact.
RiemannianResult check_riemannian(const SubmersionData& s);

/// phi_pi = g_flat o d pi o h_flat^-1 as a map T*N -> T*M.
class CotangentMap {
 public:
  explicit CotangentMap(PolynomialMap map);

  const PolynomialMap& map() const { return map_; }
  const VariableSet& source() const { return map_.source(); }
  const VariableSet& target() const { return map_.target(); }
  std::vector<Polynomial> base_components() const;
  std::vector<Polynomial> fiber_components() const;
  Polynomial pullback(const Polynomial& f) const { return map_.pullback(f); }
  CotangentMap after(const CotangentMap& inner) const { return CotangentMap(map_.after(inner.map_)); }
  bool operator==(const CotangentMap& other) const = default;

 private:
  PolynomialMap map_;
};

CotangentMap phi_pi(const SubmersionData& s);
Polynomial pullback_function(const SubmersionData& s, const Polynomial& f);

/// The unique V with Vbar = phi_pi^* Xbar; verified h-orthogonal to the
/// fibers and pi-related to X.
VectorField horizontal_lift(const SubmersionData& s, const VectorField& X);

/// Horizontal lifts of the target generators together with d/dq^alpha.
FoliationModule pullback_foliation(const SubmersionData& s, const FoliationModule& F);

/// I_{ker d pi} = <p_alpha> on the source cotangent chart.
IdealPresentation vertical_ideal(const SubmersionData& s);

struct DefectResult {
  Polynomial defect;
  Certificate certificate;  // against I_{ker d pi}
};

/// {f o phi, g o phi}_1 - {f, g}_2 o phi.
DefectResult poisson_defect(const SubmersionData& s, const Polynomial& f, const Polynomial& g);
/// H_h - H_g o phi.
DefectResult metric_defect(const SubmersionData& s);

struct CurvatureWitness {
  std::size_t i;
  std::size_t j;
  VectorField defect;  // [X_i^H, X_j^H] - [X_i, X_j]^H, always vertical
};

struct IntegrabilityResult {
  bool passed = true;
  std::vector<CurvatureWitness> witnesses;
};

IntegrabilityResult integrability_check(const SubmersionData& s);

struct MoritaResult {
  bool passed = true;
  FoliationModule left;
  FoliationModule right;
  ModuleEqualResult comparison;
};

MoritaResult morita_span_check(const SubmersionData& s1, const SubmersionData& s2,
                               const FoliationModule& F1, const FoliationModule& F2);

}  // namespace foliatk
