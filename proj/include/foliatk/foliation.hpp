#pragma once

#include <optional>
#include <vector>

#include "foliatk/geometry.hpp"
#include "foliatk/groebner.hpp"
#include "foliatk/ideal.hpp"
#include "foliatk/linalg.hpp"

namespace foliatk {

/// Singular foliation on one polynomial chart: the module generated by
/// finitely many polynomial vector fields. Zero generators are dropped;
/// an empty list is the zero foliation. The module basis and the syzygies
/// are computed once, at construction.
class FoliationModule {
 public:
  FoliationModule(VariableSet chart, std::vector<VectorField> generators,
                  OrderKind order = OrderKind::grevlex);

  const VariableSet& chart() const { return chart_; }
  std::size_t dimension() const { return chart_.dimension(); }
  const std::vector<VectorField>& generators() const { return generators_; }
  std::size_t size() const { return generators_.size(); }
  const ModuleGroebnerBasis& module_basis() const { return basis_; }
  const std::vector<ModuleElement>& syzygies() const { return syzygies_; }

  ModuleCertificate membership(const VectorField& v) const;
  /// A rational point q with v(q) outside span{X_a(q)}; refutes smooth
  /// membership.
  std::optional<std::vector<Rational>> point_obstruction(const VectorField& v) const;

  /// n x N matrix of generator values at q.
  RationalMatrix evaluate(std::span<const Rational> point) const;

 private:
  VariableSet chart_;
  std::vector<VectorField> generators_;
  ModuleGroebnerBasis basis_;
  std::vector<ModuleElement> syzygies_;
};

struct BracketCertificate {
  std::size_t a;
  std::size_t b;
  VectorField bracket;
  ModuleCertificate certificate;
};

struct InvolutivityResult {
  bool passed = true;
  std::vector<BracketCertificate> brackets;   // every pair a < b
  std::optional<std::size_t> witness;         // index into brackets
  std::optional<std::vector<Rational>> obstruction_point;
};

InvolutivityResult involutivity_check(const FoliationModule& F);

std::size_t tangent_dim(const FoliationModule& F, std::span<const Rational> point);
std::size_t fiber_dim(const FoliationModule& F, std::span<const Rational> point);

struct PointReport {
  std::vector<Rational> point;
  std::size_t tangent_dim = 0;
  std::size_t fiber_dim = 0;
  std::size_t isotropy_dim = 0;
  /// Isotropy basis as coefficient vectors over the generators.
  std::vector<RationalVector> isotropy_basis;
  /// [b_i, b_j] = sum_k structure_constants[k][i][j] b_k.
  std::vector<std::vector<std::vector<Rational>>> structure_constants;
};

class AmbiguityError : public Error {
 public:
  using Error::Error;
};

/// Fiber, tangent and isotropy data at a point; requires an involutive F.
PointReport isotropy_algebra(const FoliationModule& F, std::span<const Rational> point);

struct ModuleEqualResult {
  bool passed = true;
  /// (which side failed: 0 means a generator of F1 is not in F2), generator index, certificate
  struct Witness {
    int side;
    std::size_t generator;
    ModuleCertificate certificate;
  };
  std::optional<Witness> witness;
  std::vector<ModuleCertificate> forward;   // F1 generators in F2
  std::vector<ModuleCertificate> backward;  // F2 generators in F1
};

ModuleEqualResult module_equal(const FoliationModule& F1, const FoliationModule& F2);

/// I_F = <Xbar_1, ..., Xbar_N> on the cotangent chart.
IdealPresentation lift_ideal(const FoliationModule& F, OrderKind order = OrderKind::block);

}  // namespace foliatk
