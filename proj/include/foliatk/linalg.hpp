#pragma once

#include <optional>
#include <vector>

#include "foliatk/polynomial.hpp"

namespace foliatk {

/// Row-major dense matrix over Q, used for pointwise ranks and kernels.
using RationalMatrix = std::vector<std::vector<Rational>>;
using RationalVector = std::vector<Rational>;

std::size_t rank(RationalMatrix m);
/// Basis of {x : m x = 0}; `cols` is needed when m has no rows.
std::vector<RationalVector> kernel(const RationalMatrix& m, std::size_t cols);
/// Some x with m x = b, or nullopt when inconsistent.
std::optional<RationalVector> solve(const RationalMatrix& m, const RationalVector& b);
/// Matrix whose rows are the given vectors.
RationalMatrix from_rows(const std::vector<RationalVector>& rows);
RationalMatrix transpose(const RationalMatrix& m, std::size_t cols);

/// Square polynomial matrix helpers (cometric inversion by adjugate).
using PolyMatrix = std::vector<std::vector<Polynomial>>;
Polynomial determinant(const PolyMatrix& m);
PolyMatrix adjugate(const PolyMatrix& m);
PolyMatrix multiply(const PolyMatrix& a, const PolyMatrix& b);

}  // namespace foliatk
