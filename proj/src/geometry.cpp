#include "foliatk/geometry.hpp"

#include <algorithm>
#include <sstream>

namespace foliatk {

// ---------------------------------------------------------------------------
// VectorField

VectorField::VectorField(VariableSet chart, std::vector<Polynomial> components)
    : chart_(std::move(chart)), components_(std::move(components)) {
  if (chart_.has_fiber()) throw Error("vector fields live on a base chart");
  if (components_.size() != chart_.dimension()) throw Error("vector field needs one component per coordinate");
  for (const auto& c : components_)
    if (!(c.vars() == chart_)) throw VariableMismatch("vector field component on a foreign chart");
}

VectorField VectorField::zero(const VariableSet& chart) {
  return VectorField(chart, std::vector<Polynomial>(chart.dimension(), Polynomial(chart)));
}

VectorField VectorField::coordinate(const VariableSet& chart, std::size_t i) {
  auto X = zero(chart);
  X.components_.at(i) = Polynomial(chart, 1);
  return X;
}

bool VectorField::is_zero() const {
  return std::all_of(components_.begin(), components_.end(), [](const auto& c) { return c.is_zero(); });
}

Polynomial VectorField::apply(const Polynomial& f) const {
  Polynomial out(chart_);
  for (std::size_t i = 0; i < dimension(); ++i) {
    if (components_[i].is_zero()) continue;
    out += components_[i] * f.diff(i);
  }
  return out;
}

VectorField& VectorField::operator+=(const VectorField& other) {
  if (!(chart_ == other.chart_)) throw VariableMismatch("vector fields on different charts");
  for (std::size_t i = 0; i < dimension(); ++i) components_[i] += other.components_[i];
  return *this;
}

VectorField& VectorField::operator-=(const VectorField& other) {
  if (!(chart_ == other.chart_)) throw VariableMismatch("vector fields on different charts");
  for (std::size_t i = 0; i < dimension(); ++i) components_[i] -= other.components_[i];
  return *this;
}

VectorField operator*(const Polynomial& f, const VectorField& X) {
  VectorField out(X);
  for (auto& c : out.components_) c = f * c;
  return out;
}

VectorField operator*(const Rational& s, const VectorField& X) {
  VectorField out(X);
  for (auto& c : out.components_) c *= s;
  return out;
}

std::string VectorField::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < dimension(); ++i) {
    if (components_[i].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << components_[i].to_string() << ")*d_" << chart_.name(i);
  }
  if (first) os << "0";
  return os.str();
}

// ---------------------------------------------------------------------------
// RationalFunction

std::optional<Polynomial> exact_divide(const Polynomial& num, const Polynomial& den) {
  if (den.is_zero()) throw Error("division by the zero polynomial");
  MonomialOrder ord(OrderKind::grevlex, num.vars());
  auto leading = [&](const Polynomial& p) {
    auto it = p.terms().begin();
    for (auto jt = p.terms().begin(); jt != p.terms().end(); ++jt)
      if (ord.compare(jt->first, it->first) > 0) it = jt;
    return *it;
  };
  const auto [dexp, dcoef] = leading(den);
  Polynomial rest = num;
  Polynomial quotient(num.vars());
  while (!rest.is_zero()) {
    const auto [e, c] = leading(rest);
    Exponent shift(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] < dexp[i]) return std::nullopt;
      shift[i] = e[i] - dexp[i];
    }
    auto m = Polynomial::monomial(num.vars(), shift, c / dcoef);
    quotient += m;
    rest -= m * den;
  }
  return quotient;
}

RationalFunction::RationalFunction(Polynomial numerator)
    : num_(std::move(numerator)), den_(num_.vars(), 1) {}

RationalFunction::RationalFunction(Polynomial numerator, Polynomial denominator)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
  if (den_.is_zero()) throw Error("rational function with zero denominator");
  if (!(num_.vars() == den_.vars())) throw VariableMismatch("rational function parts on different charts");
  if (num_.is_zero()) {
    den_ = Polynomial(num_.vars(), 1);
    return;
  }
  if (auto q = exact_divide(num_, den_)) {
    num_ = std::move(*q);
    den_ = Polynomial(num_.vars(), 1);
    return;
  }
  MonomialOrder ord(OrderKind::grevlex, den_.vars());
  auto it = den_.terms().begin();
  for (auto jt = den_.terms().begin(); jt != den_.terms().end(); ++jt)
    if (ord.compare(jt->first, it->first) > 0) it = jt;
  Rational inv = 1 / it->second;
  num_ *= inv;
  den_ *= inv;
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  if (a.den_ == b.den_) return RationalFunction(a.num_ + b.num_, a.den_);
  return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
}

bool RationalFunction::operator==(const RationalFunction& other) const {
  return num_ * other.den_ == other.num_ * den_;
}

std::string RationalFunction::to_string() const {
  if (is_polynomial()) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

// ---------------------------------------------------------------------------
// OneForm

OneForm::OneForm(VariableSet chart, std::vector<RationalFunction> components)
    : chart_(std::move(chart)), components_(std::move(components)) {
  if (components_.size() != chart_.dimension()) throw Error("one-form needs one component per coordinate");
}

OneForm OneForm::zero(const VariableSet& chart) {
  return OneForm(chart, std::vector<RationalFunction>(chart.dimension(), RationalFunction(Polynomial(chart))));
}

bool OneForm::is_zero() const {
  return std::all_of(components_.begin(), components_.end(), [](const auto& c) { return c.is_zero(); });
}

bool OneForm::operator==(const OneForm& other) const {
  return chart_ == other.chart_ && components_ == other.components_;
}

std::string OneForm::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < components_.size(); ++i) {
    if (components_[i].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << components_[i].to_string() << ")*d" << chart_.name(i);
  }
  if (first) os << "0";
  return os.str();
}

// ---------------------------------------------------------------------------
// SymTensor2

SymTensor2::SymTensor2(TensorKind kind, VariableSet chart, PolyMatrix entries)
    : kind_(kind), chart_(std::move(chart)), entries_(std::move(entries)) {
  if (chart_.has_fiber()) throw Error("tensors live on a base chart");
  std::size_t n = chart_.dimension();
  if (entries_.size() != n) throw Error("tensor must be n x n");
  for (const auto& row : entries_) {
    if (row.size() != n) throw Error("tensor must be n x n");
    for (const auto& e : row)
      if (!(e.vars() == chart_)) throw VariableMismatch("tensor entry on a foreign chart");
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!(entries_[i][j] == entries_[j][i])) throw Error("tensor is not symmetric");
}

SymTensor2 SymTensor2::identity(TensorKind kind, const VariableSet& chart) {
  std::size_t n = chart.dimension();
  PolyMatrix m(n, std::vector<Polynomial>(n, Polynomial(chart)));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = Polynomial(chart, 1);
  return SymTensor2(kind, chart, std::move(m));
}

bool SymTensor2::is_zero() const {
  for (const auto& row : entries_)
    for (const auto& e : row)
      if (!e.is_zero()) return false;
  return true;
}

std::string SymTensor2::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < entries_.size(); ++j) os << (j ? ", " : "") << entries_[i][j].to_string();
    os << "]";
  }
  os << "]";
  return os.str();
}

std::optional<SymTensor2> polynomial_inverse(const SymTensor2& t) {
  Polynomial det = determinant(t.entries());
  if (det.is_zero() || !det.is_constant()) return std::nullopt;
  Rational inv = 1 / det.terms().begin()->second;
  PolyMatrix adj = adjugate(t.entries());
  for (auto& row : adj)
    for (auto& e : row) e *= inv;
  auto kind = t.kind() == TensorKind::covariant ? TensorKind::contravariant : TensorKind::covariant;
  return SymTensor2(kind, t.chart(), std::move(adj));
}

bool positive_definite_at(const SymTensor2& t, std::span<const Rational> point) {
  std::size_t n = t.dimension();
  RationalMatrix m(n, RationalVector(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = t(i, j).eval(point);
  // Gaussian elimination without pivoting: all pivots positive iff all
  // leading principal minors positive.
  for (std::size_t k = 0; k < n; ++k) {
    if (m[k][k] <= 0) return false;
    for (std::size_t r = k + 1; r < n; ++r) {
      Rational f = m[r][k] / m[k][k];
      for (std::size_t c = k; c < n; ++c) m[r][c] -= f * m[k][c];
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// MetricData

MetricData::MetricData(SymTensor2 cometric, std::optional<SymTensor2> metric,
                       std::vector<std::vector<Rational>> sample_points)
    : cometric_(std::move(cometric)), metric_(std::move(metric)), samples_(std::move(sample_points)) {
  if (cometric_.kind() != TensorKind::contravariant) throw Error("cometric must be contravariant");
  if (metric_) {
    if (metric_->kind() != TensorKind::covariant) throw Error("metric must be covariant");
    if (!(metric_->chart() == cometric_.chart())) throw VariableMismatch("metric and cometric on different charts");
    PolyMatrix prod = multiply(metric_->entries(), cometric_.entries());
    for (std::size_t i = 0; i < prod.size(); ++i)
      for (std::size_t j = 0; j < prod.size(); ++j)
        if (!(prod[i][j] == Polynomial(chart(), i == j ? 1 : 0)))
          throw Error("metric * cometric is not the identity");
  }
  for (const auto& p : samples_) {
    if (p.size() != chart().dimension()) throw Error("sample point has wrong dimension");
    if (!positive_definite_at(cometric_, p)) throw Error("cometric is not positive definite at a sample point");
  }
}

Polynomial MetricData::hamiltonian() const { return sym_tensor_lift(cometric_) * Rational(1, 2); }

RationalMetric MetricData::lowering() const {
  if (metric_) return RationalMetric{metric_->entries(), Polynomial(chart(), 1)};
  Polynomial det = determinant(cometric_.entries());
  if (det.is_zero()) throw PreconditionError("cometric is singular");
  return RationalMetric{adjugate(cometric_.entries()), det};
}

// ---------------------------------------------------------------------------
// Operators

VectorField lie_bracket(const VectorField& X, const VectorField& Y) {
  if (!(X.chart() == Y.chart())) throw VariableMismatch("vector fields on different charts");
  std::vector<Polynomial> out;
  out.reserve(X.dimension());
  for (std::size_t i = 0; i < X.dimension(); ++i) out.push_back(X.apply(Y[i]) - Y.apply(X[i]));
  return VectorField(X.chart(), std::move(out));
}

Polynomial cotangent_lift(const VectorField& X) {
  VariableSet T = X.chart().with_fiber();
  Polynomial out(T);
  for (std::size_t i = 0; i < X.dimension(); ++i) {
    if (X[i].is_zero()) continue;
    out += X[i].embed(T) * Polynomial::variable(T, T.fiber_index(i));
  }
  return out;
}

Polynomial sym_tensor_lift(const SymTensor2& S) {
  if (S.kind() != TensorKind::contravariant) throw Error("only contravariant tensors lift to T*M");
  VariableSet T = S.chart().with_fiber();
  Polynomial out(T);
  std::size_t n = S.dimension();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (S(i, j).is_zero()) continue;
      out += S(i, j).embed(T) * Polynomial::variable(T, T.fiber_index(i)) *
             Polynomial::variable(T, T.fiber_index(j));
    }
  return out;
}

VectorField vector_field_of_linear(const Polynomial& fiber_linear, const VariableSet& chart) {
  if (!fiber_linear.is_fiber_homogeneous(1)) throw Error("expected a fiber-linear polynomial");
  const VariableSet& T = fiber_linear.vars();
  std::vector<Polynomial> comps;
  for (std::size_t i = 0; i < T.dimension(); ++i) {
    Polynomial c = fiber_linear.diff(T.fiber_index(i));
    comps.push_back(c.embed(chart));
  }
  return VectorField(chart, std::move(comps));
}

Polynomial canonical_poisson(const Polynomial& f, const Polynomial& g) {
  const VariableSet& T = f.vars();
  if (!(T == g.vars())) throw VariableMismatch("Poisson bracket of polynomials on different charts");
  if (!T.has_fiber()) throw Error("Poisson bracket needs a cotangent chart");
  Polynomial out(T);
  for (std::size_t i = 0; i < T.dimension(); ++i) {
    std::size_t pi = T.fiber_index(i);
    Polynomial fp = f.diff(pi), gq = g.diff(i);
    if (!fp.is_zero() && !gq.is_zero()) out += fp * gq;
    Polynomial fq = f.diff(i), gp = g.diff(pi);
    if (!fq.is_zero() && !gp.is_zero()) out -= fq * gp;
  }
  return out;
}

SymTensor2 lie_derivative(const VectorField& X, const SymTensor2& T) {
  if (!(X.chart() == T.chart())) throw VariableMismatch("vector field and tensor on different charts");
  std::size_t n = T.dimension();
  const VariableSet& chart = T.chart();
  // dX[i][k] = d_k X^i
  std::vector<std::vector<Polynomial>> dX(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) dX[i].push_back(X[i].diff(k));
  PolyMatrix out(n, std::vector<Polynomial>(n, Polynomial(chart)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      Polynomial v = X.apply(T(i, j));
      for (std::size_t k = 0; k < n; ++k) {
        if (T.kind() == TensorKind::contravariant) {
          v -= T(k, j) * dX[i][k] + T(i, k) * dX[j][k];
        } else {
          v += T(k, j) * dX[k][i] + T(i, k) * dX[k][j];
        }
      }
      out[i][j] = v;
      out[j][i] = v;
    }
  }
  return SymTensor2(T.kind(), chart, std::move(out));
}

OneForm musical_flat(const VectorField& v, const MetricData& m) {
  if (!m.metric()) throw PreconditionError("musical_flat needs a covariant metric");
  const auto& g = *m.metric();
  std::size_t n = g.dimension();
  std::vector<RationalFunction> comps;
  for (std::size_t i = 0; i < n; ++i) {
    Polynomial s(v.chart());
    for (std::size_t j = 0; j < n; ++j) s += g(i, j) * v[j];
    comps.emplace_back(std::move(s));
  }
  return OneForm(v.chart(), std::move(comps));
}

std::vector<RationalFunction> musical_sharp(const OneForm& w, const MetricData& m) {
  const auto& G = m.cometric();
  std::size_t n = G.dimension();
  std::vector<RationalFunction> out;
  for (std::size_t i = 0; i < n; ++i) {
    RationalFunction s{Polynomial(w.chart())};
    for (std::size_t j = 0; j < n; ++j) s = s + RationalFunction(G(i, j)) * w[j];
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace foliatk
