#pragma once

#include <random>
#include <string>
#include <vector>

#include "foliatk/geometry.hpp"
#include "foliatk/polynomial.hpp"

namespace foliatk::testing {

inline std::vector<std::string> coordinate_names(std::size_t n) {
  static const char* names[] = {"x", "y", "z", "w"};
  return {names, names + n};
}

inline VariableSet chart(std::size_t n) { return VariableSet(coordinate_names(n)); }
inline VariableSet cotangent(std::size_t n) { return VariableSet::cotangent(coordinate_names(n)); }

/// Random polynomial with small integer coefficients. Base degree and fiber
/// degree are bounded separately; fiber variables only exist on cotangent sets.
inline Polynomial random_poly(std::mt19937& rng, const VariableSet& vars, int base_degree, int fiber_degree = 0,
                              int terms = 4) {
  std::uniform_int_distribution<int> coeff(-3, 3);
  std::uniform_int_distribution<int> bdeg(0, base_degree);
  std::uniform_int_distribution<int> fdeg(0, fiber_degree);
  std::uniform_int_distribution<std::size_t> base_var(0, vars.dimension() - 1);
  Polynomial p(vars);
  for (int t = 0; t < terms; ++t) {
    Exponent e(vars.size(), 0);
    int db = bdeg(rng);
    for (int k = 0; k < db; ++k) ++e[base_var(rng)];
    if (vars.has_fiber()) {
      int df = fdeg(rng);
      for (int k = 0; k < df; ++k) ++e[vars.dimension() + base_var(rng)];
    }
    int c = coeff(rng);
    if (c != 0) p += Polynomial::monomial(vars, e, Rational(c));
  }
  return p;
}

inline VectorField random_field(std::mt19937& rng, const VariableSet& chart, int degree, int terms = 3) {
  std::vector<Polynomial> comps;
  for (std::size_t i = 0; i < chart.dimension(); ++i) comps.push_back(random_poly(rng, chart, degree, 0, terms));
  return VectorField(chart, std::move(comps));
}

inline SymTensor2 random_sym(std::mt19937& rng, const VariableSet& chart, int degree, TensorKind kind) {
  std::size_t n = chart.dimension();
  PolyMatrix m(n, std::vector<Polynomial>(n, Polynomial(chart)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) m[i][j] = m[j][i] = random_poly(rng, chart, degree, 0, 2);
  return SymTensor2(kind, chart, std::move(m));
}

inline std::vector<Rational> random_point(std::mt19937& rng, std::size_t n) {
  std::uniform_int_distribution<int> num(-5, 5);
  std::uniform_int_distribution<int> den(1, 4);
  std::vector<Rational> p;
  for (std::size_t i = 0; i < n; ++i) {
    Rational r(num(rng), den(rng));
    r.canonicalize();
    p.push_back(r);
  }
  return p;
}

inline Polynomial var(const VariableSet& vars, std::string_view name) { return Polynomial::variable(vars, name); }

}  // namespace foliatk::testing

#ifdef DOCTEST_LIBRARY_INCLUDED
namespace doctest {
template <>
struct StringMaker<foliatk::Polynomial> {
  static String convert(const foliatk::Polynomial& p) { return p.to_string().c_str(); }
};
template <>
struct StringMaker<foliatk::VectorField> {
  static String convert(const foliatk::VectorField& X) { return X.to_string().c_str(); }
};
}  // namespace doctest
#endif
