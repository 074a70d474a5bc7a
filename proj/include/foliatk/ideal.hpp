#pragma once

#include <optional>
#include <vector>

#include "foliatk/groebner.hpp"

namespace foliatk {

/// Finitely generated ideal in the q,p-ring with its reduced Groebner basis.
/// An empty generator list presents the zero ideal; an explicit zero
/// generator is rejected.
class IdealPresentation {
 public:
  IdealPresentation(VariableSet vars, std::vector<Polynomial> generators,
                    OrderKind order = OrderKind::block);

  const VariableSet& vars() const { return gb_.vars(); }
  const std::vector<Polynomial>& generators() const { return gb_.generators(); }
  const GroebnerBasis& gb() const { return gb_; }
  bool is_zero_ideal() const { return generators().empty(); }
  /// All generators homogeneous of fiber degree 1 (true for every I_F).
  bool fiber_linear() const;

  Certificate membership(const Polynomial& f) const { return gb_.normal_form(f); }
  bool contains(const Polynomial& f) const { return gb_.contains(f); }

  /// A rational point of the common zero set of the generators where f does
  /// not vanish. Such a point refutes membership of f for smooth
  /// coefficients as well, not only polynomial ones.
  std::optional<std::vector<Rational>> zero_set_obstruction(const Polynomial& f) const;

 private:
  GroebnerBasis gb_;
};

/// Small integer grid used by the point-obstruction searches.
std::vector<std::vector<Rational>> obstruction_grid(std::size_t dimension);

}  // namespace foliatk
