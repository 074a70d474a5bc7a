#include "foliatk/ideal.hpp"

#include <algorithm>
#include <random>

#include "foliatk/linalg.hpp"

namespace foliatk {

namespace {

GroebnerBasis make_basis(VariableSet vars, std::vector<Polynomial> generators, OrderKind order) {
  for (const auto& g : generators)
    if (g.is_zero()) throw PreconditionError("ideal generator list contains the zero polynomial");
  MonomialOrder mo(order, vars);
  return GroebnerBasis(std::move(vars), std::move(generators), mo);
}

constexpr std::size_t kMaxGridPoints = 4096;

}  // namespace

IdealPresentation::IdealPresentation(VariableSet vars, std::vector<Polynomial> generators, OrderKind order)
    : gb_(make_basis(std::move(vars), std::move(generators), order)) {}

bool IdealPresentation::fiber_linear() const {
  return vars().has_fiber() && std::all_of(generators().begin(), generators().end(),
                                           [](const auto& g) { return g.is_fiber_homogeneous(1); });
}

std::vector<std::vector<Rational>> obstruction_grid(std::size_t dimension) {
  static const Rational values[] = {0, 1, -1, 2};
  std::vector<std::vector<Rational>> grid;
  std::size_t full = 1;
  for (std::size_t i = 0; i < dimension && full <= kMaxGridPoints; ++i) full *= 4;
  if (full <= kMaxGridPoints) {
    std::vector<std::size_t> idx(dimension, 0);
    for (std::size_t k = 0; k < full; ++k) {
      std::vector<Rational> pt(dimension);
      std::size_t c = k;
      for (std::size_t i = 0; i < dimension; ++i) {
        pt[i] = values[c % 4];
        c /= 4;
      }
      grid.push_back(std::move(pt));
    }
    return grid;
  }
  std::mt19937 rng(12345);
  std::uniform_int_distribution<int> pick(0, 3);
  for (std::size_t k = 0; k < kMaxGridPoints; ++k) {
    std::vector<Rational> pt(dimension);
    for (auto& v : pt) v = values[pick(rng)];
    grid.push_back(std::move(pt));
  }
  return grid;
}

std::optional<std::vector<Rational>> IdealPresentation::zero_set_obstruction(const Polynomial& f) const {
  const VariableSet& T = vars();
  if (f.is_zero()) return std::nullopt;
  if (fiber_linear()) {
    const std::size_t n = T.dimension();
    for (const auto& q : obstruction_grid(n)) {
      // zero set over q is the kernel of the generators' coefficient matrix
      RationalMatrix E;
      std::vector<Rational> probe(T.size(), 0);
      std::copy(q.begin(), q.end(), probe.begin());
      for (const auto& g : generators()) {
        RationalVector row(n);
        for (std::size_t i = 0; i < n; ++i) row[i] = g.diff(T.fiber_index(i)).eval(std::span<const Rational>(probe));
        E.push_back(std::move(row));
      }
      auto ker = kernel(E, n);
      std::vector<RationalVector> candidates = ker;
      if (ker.size() > 1) {
        RationalVector sum(n, 0);
        for (const auto& v : ker)
          for (std::size_t i = 0; i < n; ++i) sum[i] += v[i];
        candidates.push_back(sum);
      }
      for (const auto& p : candidates) {
        std::vector<Rational> pt = probe;
        for (std::size_t i = 0; i < n; ++i) pt[n + i] = p[i];
        if (f.eval(std::span<const Rational>(pt)) != 0) return pt;
      }
    }
    return std::nullopt;
  }
  for (const auto& pt : obstruction_grid(T.size())) {
    std::span<const Rational> s(pt);
    bool on_zero_set = std::all_of(generators().begin(), generators().end(),
                                   [&](const auto& g) { return g.eval(s) == 0; });
    if (on_zero_set && f.eval(s) != 0) return pt;
  }
  return std::nullopt;
}

}  // namespace foliatk
