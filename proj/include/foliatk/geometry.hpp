#pragma once

#include <optional>
#include <string>
#include <vector>

#include "foliatk/groebner.hpp"
#include "foliatk/linalg.hpp"
#include "foliatk/polynomial.hpp"

namespace foliatk {

/// Polynomial vector field X = sum X^i d/dq^i on a base chart.
class VectorField {
 public:
  VectorField(VariableSet chart, std::vector<Polynomial> components);
  static VectorField zero(const VariableSet& chart);
  static VectorField coordinate(const VariableSet& chart, std::size_t i);

  const VariableSet& chart() const { return chart_; }
  std::size_t dimension() const { return components_.size(); }
  const std::vector<Polynomial>& components() const { return components_; }
  const Polynomial& operator[](std::size_t i) const { return components_[i]; }
  bool is_zero() const;

  /// The derivation X(f) for f on the base chart.
  Polynomial apply(const Polynomial& f) const;

  VectorField& operator+=(const VectorField& other);
  VectorField& operator-=(const VectorField& other);
  friend VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
  friend VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
  friend VectorField operator*(const Polynomial& f, const VectorField& X);
  friend VectorField operator*(const Rational& c, const VectorField& X);
  bool operator==(const VectorField& other) const = default;

  ModuleElement as_module_element() const { return ModuleElement(chart_, components_); }
  std::string to_string() const;

 private:
  VariableSet chart_;
  std::vector<Polynomial> components_;
};

/// Quotient of polynomials, kept with a monic denominator. Exact divisions
/// are carried out, no general gcd is taken.
class RationalFunction {
 public:
  explicit RationalFunction(Polynomial numerator);
  RationalFunction(Polynomial numerator, Polynomial denominator);

  const Polynomial& numerator() const { return num_; }
  const Polynomial& denominator() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  RationalFunction operator-() const { return RationalFunction(-num_, den_); }
  /// Equality as functions (cross multiplication).
  bool operator==(const RationalFunction& other) const;

  std::string to_string() const;

 private:
  Polynomial num_;
  Polynomial den_;
};

/// Quotient of exact multivariate division when it is exact.
std::optional<Polynomial> exact_divide(const Polynomial& num, const Polynomial& den);

/// One-form sum w_i dq^i with rational-function coefficients.
class OneForm {
 public:
  OneForm(VariableSet chart, std::vector<RationalFunction> components);
  static OneForm zero(const VariableSet& chart);

  const VariableSet& chart() const { return chart_; }
  const std::vector<RationalFunction>& components() const { return components_; }
  const RationalFunction& operator[](std::size_t i) const { return components_[i]; }
  bool is_zero() const;
  bool operator==(const OneForm& other) const;
  std::string to_string() const;

 private:
  VariableSet chart_;
  std::vector<RationalFunction> components_;
};

enum class TensorKind { covariant, contravariant };

/// Symmetric 2-tensor with polynomial entries, either g_ij or g^ij.
class SymTensor2 {
 public:
  SymTensor2(TensorKind kind, VariableSet chart, PolyMatrix entries);
  static SymTensor2 identity(TensorKind kind, const VariableSet& chart);

  TensorKind kind() const { return kind_; }
  const VariableSet& chart() const { return chart_; }
  std::size_t dimension() const { return entries_.size(); }
  const Polynomial& operator()(std::size_t i, std::size_t j) const { return entries_[i][j]; }
  const PolyMatrix& entries() const { return entries_; }
  bool is_zero() const;
  bool operator==(const SymTensor2& other) const = default;
  std::string to_string() const;

 private:
  TensorKind kind_;
  VariableSet chart_;
  PolyMatrix entries_;
};

/// Inverse tensor when it is polynomial (constant nonzero determinant).
std::optional<SymTensor2> polynomial_inverse(const SymTensor2& t);
/// Sylvester's criterion at a rational point.
bool positive_definite_at(const SymTensor2& t, std::span<const Rational> point);

/// Covariant metric as numerator/denominator: g_ij = numer_ij / denom.
struct RationalMetric {
  PolyMatrix numer;
  Polynomial denom;
};

/// Cometric (required) plus optional polynomial metric. The cometric is the
/// primary datum; H_g and every cotangent criterion use only it.
class MetricData {
 public:
  explicit MetricData(SymTensor2 cometric, std::optional<SymTensor2> metric = std::nullopt,
                      std::vector<std::vector<Rational>> sample_points = {});

  const VariableSet& chart() const { return cometric_.chart(); }
  const SymTensor2& cometric() const { return cometric_; }
  const std::optional<SymTensor2>& metric() const { return metric_; }
  const std::vector<std::vector<Rational>>& sample_points() const { return samples_; }

  /// H_g = 1/2 sum g^ij p_i p_j on the cotangent chart.
  Polynomial hamiltonian() const;
  /// Polynomial metric when given, else adj(g^-1) / det(g^-1).
  RationalMetric lowering() const;

 private:
  SymTensor2 cometric_;
  std::optional<SymTensor2> metric_;
  std::vector<std::vector<Rational>> samples_;
};

VectorField lie_bracket(const VectorField& X, const VectorField& Y);

/// Xbar = sum X^i p_i on chart.with_fiber().
Polynomial cotangent_lift(const VectorField& X);
/// Sbar = sum S^ij p_i p_j for contravariant S.
Polynomial sym_tensor_lift(const SymTensor2& S);
/// Inverse of cotangent_lift on fiber-linear polynomials.
VectorField vector_field_of_linear(const Polynomial& fiber_linear, const VariableSet& chart);

/// {f,g} = sum_i df/dp_i dg/dq^i - df/dq^i dg/dp_i.
Polynomial canonical_poisson(const Polynomial& f, const Polynomial& g);

SymTensor2 lie_derivative(const VectorField& X, const SymTensor2& T);

OneForm musical_flat(const VectorField& v, const MetricData& m);
std::vector<RationalFunction> musical_sharp(const OneForm& w, const MetricData& m);

}  // namespace foliatk
