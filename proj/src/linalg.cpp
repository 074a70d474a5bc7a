#include "foliatk/linalg.hpp"

#include <utility>

namespace foliatk {

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(RationalMatrix& m, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
    std::size_t sel = row;
    while (sel < m.size() && m[sel][col] == 0) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[row], m[sel]);
    Rational inv = 1 / m[row][col];
    for (auto& v : m[row]) v *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][col] == 0) continue;
      Rational f = m[r][col];
      for (std::size_t c = col; c < cols; ++c) m[r][c] -= f * m[row][c];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

std::size_t rank(RationalMatrix m) {
  if (m.empty()) return 0;
  return rref(m, m.front().size()).size();
}

std::vector<RationalVector> kernel(const RationalMatrix& m, std::size_t cols) {
  RationalMatrix a = m;
  auto pivots = rref(a, cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<RationalVector> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    RationalVector v(cols, 0);
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<RationalVector> solve(const RationalMatrix& m, const RationalVector& b) {
  std::size_t cols = m.empty() ? 0 : m.front().size();
  RationalMatrix a = m;
  for (std::size_t r = 0; r < a.size(); ++r) a[r].push_back(b[r]);
  auto pivots = rref(a, cols + 1);
  if (!pivots.empty() && pivots.back() == cols) return std::nullopt;
  RationalVector x(cols, 0);
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = a[r][cols];
  return x;
}

RationalMatrix from_rows(const std::vector<RationalVector>& rows) { return rows; }

RationalMatrix transpose(const RationalMatrix& m, std::size_t cols) {
  RationalMatrix t(cols, RationalVector(m.size()));
  for (std::size_t r = 0; r < m.size(); ++r)
    for (std::size_t c = 0; c < cols; ++c) t[c][r] = m[r][c];
  return t;
}

namespace {

PolyMatrix minor_of(const PolyMatrix& m, std::size_t skip_row, std::size_t skip_col) {
  PolyMatrix out;
  for (std::size_t r = 0; r < m.size(); ++r) {
    if (r == skip_row) continue;
    std::vector<Polynomial> row;
    for (std::size_t c = 0; c < m.size(); ++c)
      if (c != skip_col) row.push_back(m[r][c]);
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace

Polynomial determinant(const PolyMatrix& m) {
  if (m.empty()) throw Error("determinant of an empty matrix");
  if (m.size() == 1) return m[0][0];
  if (m.size() == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
  Polynomial det(m[0][0].vars());
  for (std::size_t c = 0; c < m.size(); ++c) {
    if (m[0][c].is_zero()) continue;
    Polynomial term = m[0][c] * determinant(minor_of(m, 0, c));
    if (c % 2) det -= term;
    else det += term;
  }
  return det;
}

PolyMatrix adjugate(const PolyMatrix& m) {
  std::size_t n = m.size();
  const VariableSet& vars = m[0][0].vars();
  PolyMatrix adj(n, std::vector<Polynomial>(n, Polynomial(vars)));
  if (n == 1) {
    adj[0][0] = Polynomial(vars, 1);
    return adj;
  }
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      Polynomial cof = determinant(minor_of(m, r, c));
      adj[c][r] = ((r + c) % 2) ? -cof : cof;
    }
  }
  return adj;
}

PolyMatrix multiply(const PolyMatrix& a, const PolyMatrix& b) {
  const VariableSet& vars = a[0][0].vars();
  PolyMatrix out(a.size(), std::vector<Polynomial>(b[0].size(), Polynomial(vars)));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (a[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < b[0].size(); ++j) out[i][j] += a[i][k] * b[k][j];
    }
  return out;
}

}  // namespace foliatk
