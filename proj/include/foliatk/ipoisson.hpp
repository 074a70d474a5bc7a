#pragma once

#include <optional>
#include <vector>

#include "foliatk/foliation.hpp"
#include "foliatk/geometry.hpp"
#include "foliatk/ideal.hpp"

namespace foliatk {

/// Polynomial map between charts, given by the images of the target
/// variables in the source ring. Pullback is a ring homomorphism.
class PolynomialMap {
 public:
  PolynomialMap(VariableSet source, VariableSet target, std::vector<Polynomial> images);
  static PolynomialMap identity(const VariableSet& vars);

  const VariableSet& source() const { return source_; }
  const VariableSet& target() const { return target_; }
  const std::vector<Polynomial>& images() const { return images_; }
  Polynomial pullback(const Polynomial& f) const;
  /// this after inner: source of inner -> target of this.
  PolynomialMap after(const PolynomialMap& inner) const;
  bool operator==(const PolynomialMap& other) const = default;

 private:
  VariableSet source_;
  VariableSet target_;
  std::vector<Polynomial> images_;
};

struct BracketMembership {
  std::size_t i = 0;
  std::size_t j = 0;
  Polynomial bracket;
  Certificate certificate;
  std::optional<std::vector<Rational>> obstruction_point;
};

struct ClosureResult {
  bool passed = true;
  std::vector<BracketMembership> pairs;
  std::optional<std::size_t> witness;
};

/// {g_i, g_j} in I for all generator pairs.
ClosureResult poisson_closure_check(const IdealPresentation& I);

struct NormalizerResult {
  bool passed = true;
  Polynomial candidate;
  std::vector<BracketMembership> brackets;  // {f, g_i} per generator, j unused
  std::optional<std::size_t> witness;
};

NormalizerResult normalizer_check(const IdealPresentation& I, const Polynomial& f);

/// Normal form of {f, g} modulo I; both arguments must normalize I.
Polynomial reduced_bracket(const IdealPresentation& I, const Polynomial& f, const Polynomial& g);

/// {Xbar_a, H_g} = sum_b lambda[a][b] Xbar_b, with omega[a][b] derived
/// from lambda when a connection has been extracted.
struct SRFCertificate {
  std::vector<std::vector<Polynomial>> lambda;
  std::optional<std::vector<std::vector<OneForm>>> omega;
  bool verified_identity = false;
};

struct SRFResult {
  bool passed = true;
  Polynomial hamiltonian;
  std::vector<BracketMembership> brackets;  // {Xbar_a, H_g}, i = a
  std::optional<SRFCertificate> certificate;
  std::optional<std::size_t> witness;
};

/// Decides H_g in N(I_F) for the generators of F.
SRFResult srf_check(const FoliationModule& F, const MetricData& m);

/// omega_a^b = -g_flat(Lambda_a^b), Lambda read off lambda by p_i -> d_i,
/// verified against (L_{X_a} g)(d_i, d_j) = sum_b omega_a^b(d_i) g(X_b, d_j)
/// + g(d_i, X_b) omega_a^b(d_j).
SRFCertificate killing_connection(const FoliationModule& F, const MetricData& m);

/// Re-checks the connection identity for a given omega; exact.
bool verify_killing_identity(const FoliationModule& F, const MetricData& m,
                             const std::vector<std::vector<OneForm>>& omega);

struct MorphismReport {
  bool passed = true;
  std::vector<Certificate> ideal_pullbacks;          // phi^* I_2 generators in I_1
  std::vector<NormalizerResult> probe_normalizers;   // phi^* probe in N(I_1)
  std::vector<BracketMembership> bracket_defects;    // {phi^*f, phi^*g} - phi^*{f,g} in I_1
};

MorphismReport morphism_defect_check(const IdealPresentation& I1, const IdealPresentation& I2,
                                     const PolynomialMap& phi, const std::vector<Polynomial>& probes);

}  // namespace foliatk
