#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace foliatk {

/// Exact coefficient field. GMP keeps mpq_class canonical after every
/// arithmetic operation (gcd(|num|, den) = 1, den > 0).
using Rational = mpq_class;

Rational parse_rational(std::string_view text);
std::string to_string(const Rational& r);

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class VariableMismatch : public Error {
 public:
  using Error::Error;
};

class UnknownVariable : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Raised when a result that holds by theorem fails to verify. Always a bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

/// Ordered chart coordinates q^1..q^n and, optionally, the paired canonical
/// momenta p_1..p_n. Variable index i < n is base, n <= i < 2n is fiber.
class VariableSet {
 public:
  explicit VariableSet(std::vector<std::string> base,
                       std::vector<std::string> fiber = {});

  /// Base names with momenta named "p_<name>".
  static VariableSet cotangent(std::vector<std::string> base);

  std::size_t dimension() const { return data_->base.size(); }
  std::size_t size() const { return data_->base.size() + data_->fiber.size(); }
  bool has_fiber() const { return !data_->fiber.empty(); }
  bool is_fiber(std::size_t index) const { return index >= dimension(); }
  std::size_t fiber_index(std::size_t base_index) const { return dimension() + base_index; }

  const std::vector<std::string>& base_names() const { return data_->base; }
  const std::vector<std::string>& fiber_names() const { return data_->fiber; }
  const std::string& name(std::size_t index) const;
  std::optional<std::size_t> find(std::string_view name) const;
  std::size_t index(std::string_view name) const;

  VariableSet base_only() const;
  /// Same base with momenta attached (identity if already cotangent).
  VariableSet with_fiber() const;

  bool operator==(const VariableSet& other) const;

 private:
  struct Data {
    std::vector<std::string> base;
    std::vector<std::string> fiber;
  };
  std::shared_ptr<const Data> data_;
};

using Exponent = std::vector<std::uint16_t>;

enum class OrderKind { grevlex, lex, block };

std::string to_string(OrderKind kind);
OrderKind parse_order(std::string_view name);

/// Monomial order on exponent vectors of a VariableSet. Variable 0 is the
/// largest. The block order compares the fiber block first (grevlex), then
/// the base block (grevlex), so terms of higher fiber degree lead.
class MonomialOrder {
 public:
  MonomialOrder() = default;
  MonomialOrder(OrderKind kind, std::size_t fiber_start)
      : kind_(kind), fiber_start_(fiber_start) {}
  MonomialOrder(OrderKind kind, const VariableSet& vars)
      : kind_(kind), fiber_start_(vars.dimension()) {}

  OrderKind kind() const { return kind_; }
  /// <0, 0, >0 as a is smaller than, equal to, greater than b.
  int compare(const Exponent& a, const Exponent& b) const;

 private:
  OrderKind kind_ = OrderKind::block;
  std::size_t fiber_start_ = 0;
};

class Polynomial {
 public:
  using TermMap = std::map<Exponent, Rational>;

  explicit Polynomial(VariableSet vars);
  Polynomial(VariableSet vars, const Rational& constant);

  static Polynomial variable(const VariableSet& vars, std::size_t index);
  static Polynomial variable(const VariableSet& vars, std::string_view name);
  static Polynomial monomial(const VariableSet& vars, Exponent exponent, const Rational& coeff);

  const VariableSet& vars() const { return vars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  std::size_t term_count() const { return terms_.size(); }
  /// Coefficient of the exponent, zero when absent.
  Rational coefficient(const Exponent& exponent) const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Polynomial& other);
  Polynomial& operator*=(const Rational& scalar);
  Polynomial operator-() const;

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
  friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }
  friend Polynomial operator+(Polynomial a, const Rational& c) { return a += Polynomial(a.vars(), c); }
  friend Polynomial operator+(const Rational& c, Polynomial a) { return a += Polynomial(a.vars(), c); }
  friend Polynomial operator-(Polynomial a, const Rational& c) { return a -= Polynomial(a.vars(), c); }
  friend Polynomial operator-(const Rational& c, const Polynomial& a) { return Polynomial(a.vars(), c) - a; }

  bool operator==(const Polynomial& other) const;

  Polynomial diff(std::size_t index) const;
  Polynomial diff(std::string_view name) const;

  Rational eval(std::span<const Rational> point) const;
  Rational eval(const std::map<std::string, Rational>& point) const;
  double eval(std::span<const double> point) const;
  double eval(const std::map<std::string, double>& point) const;

  int total_degree() const;  ///< -1 for the zero polynomial
  int fiber_degree_max() const;
  bool depends_on_fiber() const;
  /// True when every term has fiber degree exactly k (zero qualifies).
  bool is_fiber_homogeneous(int k) const;
  /// Nonzero homogeneous components by ascending fiber degree.
  std::vector<std::pair<int, Polynomial>> fiber_grade_decompose() const;
  Polynomial fiber_component(int k) const;

  /// Ring homomorphism: variable i maps to images[i]; all images share a
  /// VariableSet which becomes the result's VariableSet.
  Polynomial substitute(const std::vector<Polynomial>& images) const;
  /// Re-home onto another VariableSet by variable name; only occurring
  /// variables must exist there.
  Polynomial embed(const VariableSet& target) const;

  Polynomial pow(unsigned k) const;

  /// Parseable text, terms by descending grevlex.
  std::string to_string() const;

 private:
  void add_term(const Exponent& exponent, const Rational& coeff);
  void require_same(const Polynomial& other) const;

  VariableSet vars_;
  TermMap terms_;
};

int fiber_degree(const Exponent& e, const VariableSet& vars);
int total_degree(const Exponent& e);

}  // namespace foliatk
