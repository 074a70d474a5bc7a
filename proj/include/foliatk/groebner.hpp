#pragma once

#include <memory>
#include <string>
#include <vector>

#include "foliatk/polynomial.hpp"

namespace foliatk {

/// Element of the free module R^rank over the polynomial ring of `vars`.
class ModuleElement {
 public:
  ModuleElement(VariableSet vars, std::vector<Polynomial> components);
  static ModuleElement zero(const VariableSet& vars, std::size_t rank);
  static ModuleElement unit(const VariableSet& vars, std::size_t rank, std::size_t position);

  const VariableSet& vars() const { return vars_; }
  std::size_t rank() const { return components_.size(); }
  const std::vector<Polynomial>& components() const { return components_; }
  const Polynomial& operator[](std::size_t i) const { return components_[i]; }
  bool is_zero() const;

  ModuleElement& operator+=(const ModuleElement& other);
  ModuleElement& operator-=(const ModuleElement& other);
  friend ModuleElement operator+(ModuleElement a, const ModuleElement& b) { return a += b; }
  friend ModuleElement operator-(ModuleElement a, const ModuleElement& b) { return a -= b; }
  friend ModuleElement operator*(const Polynomial& f, const ModuleElement& v);
  bool operator==(const ModuleElement& other) const = default;

  std::vector<Rational> eval(std::span<const Rational> point) const;
  std::string to_string() const;

 private:
  VariableSet vars_;
  std::vector<Polynomial> components_;
};

/// input = sum_i cofactors[i] * generators[i] + remainder, exactly. Cofactors
/// refer to the generators the basis was built from, in their given order.
struct Certificate {
  std::vector<Polynomial> cofactors;
  Polynomial remainder;
  bool claim_holds() const { return remainder.is_zero(); }
};

struct ModuleCertificate {
  std::vector<Polynomial> cofactors;
  ModuleElement remainder;
  bool claim_holds() const { return remainder.is_zero(); }
};

/// Re-expands a certificate; true iff the identity holds exactly.
bool verify(const Certificate& cert, const Polynomial& input, const std::vector<Polynomial>& generators);
bool verify(const ModuleCertificate& cert, const ModuleElement& input,
            const std::vector<ModuleElement>& generators);

namespace detail {
struct GbEngine;
}

/// Reduced Groebner basis of an ideal, remembering how every basis element
/// is expressed through the original generators.
class GroebnerBasis {
 public:
  GroebnerBasis(VariableSet vars, std::vector<Polynomial> generators, MonomialOrder order);

  const VariableSet& vars() const { return vars_; }
  const std::vector<Polynomial>& generators() const { return generators_; }
  const std::vector<Polynomial>& basis() const { return basis_; }
  const MonomialOrder& order() const { return order_; }
  bool reduced() const { return true; }
  /// All generators fiber-homogeneous; normal forms are then taken per
  /// fiber-degree component.
  bool fiber_graded() const { return fiber_graded_; }

  Certificate normal_form(const Polynomial& f) const;
  bool contains(const Polynomial& f) const { return normal_form(f).claim_holds(); }

 private:
  VariableSet vars_;
  std::vector<Polynomial> generators_;
  std::vector<Polynomial> basis_;
  MonomialOrder order_;
  bool fiber_graded_ = false;
  std::shared_ptr<const detail::GbEngine> engine_;
};

/// Position-over-term Groebner basis of a submodule of R^rank.
class ModuleGroebnerBasis {
 public:
  ModuleGroebnerBasis(VariableSet vars, std::size_t rank, std::vector<ModuleElement> generators,
                      MonomialOrder order);

  const VariableSet& vars() const { return vars_; }
  std::size_t rank() const { return rank_; }
  const std::vector<ModuleElement>& generators() const { return generators_; }
  const std::vector<ModuleElement>& basis() const { return basis_; }
  const MonomialOrder& order() const { return order_; }

  ModuleCertificate normal_form(const ModuleElement& v) const;
  bool contains(const ModuleElement& v) const { return normal_form(v).claim_holds(); }

 private:
  VariableSet vars_;
  std::size_t rank_;
  std::vector<ModuleElement> generators_;
  std::vector<ModuleElement> basis_;
  MonomialOrder order_;
  std::shared_ptr<const detail::GbEngine> engine_;
};

GroebnerBasis buchberger(const VariableSet& vars, std::vector<Polynomial> gens, MonomialOrder order);
Certificate normal_form_with_cofactors(const Polynomial& f, const GroebnerBasis& gb);

ModuleGroebnerBasis module_groebner(const VariableSet& vars, std::size_t rank,
                                    std::vector<ModuleElement> gens, MonomialOrder order);
ModuleCertificate module_membership(const ModuleElement& v, const ModuleGroebnerBasis& gb);

/// Generators of {s in R^N : sum_a s_a gens[a] = 0}, via a POT basis of the
/// generators tagged with unit vectors.
std::vector<ModuleElement> syzygy_basis(const VariableSet& vars, std::size_t rank,
                                        const std::vector<ModuleElement>& gens, MonomialOrder order);

}  // namespace foliatk
