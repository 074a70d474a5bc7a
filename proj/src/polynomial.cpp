#include "foliatk/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <set>
#include <sstream>

namespace foliatk {

Rational parse_rational(std::string_view text) {
  Rational r;
  std::string s(text);
  if (s.empty() || r.set_str(s, 10) != 0) throw Error("invalid rational literal '" + s + "'");
  if (r.get_den() == 0) throw Error("zero denominator in '" + s + "'");
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) { return r.get_str(); }

// ---------------------------------------------------------------------------

VariableSet::VariableSet(std::vector<std::string> base, std::vector<std::string> fiber) {
  if (base.empty()) throw Error("a chart needs at least one coordinate");
  if (!fiber.empty() && fiber.size() != base.size())
    throw Error("fiber variables must pair 1:1 with base variables");
  std::set<std::string> seen;
  for (const auto* list : {&base, &fiber}) {
    for (const auto& n : *list) {
      if (n.empty()) throw Error("empty variable name");
      if (!seen.insert(n).second) throw Error("duplicate variable name '" + n + "'");
    }
  }
  // interned so that equal charts share one pointer
  static std::mutex mutex;
  static std::map<std::pair<std::vector<std::string>, std::vector<std::string>>, std::weak_ptr<const Data>> pool;
  std::lock_guard lock(mutex);
  auto key = std::make_pair(base, fiber);
  auto& slot = pool[key];
  if (auto existing = slot.lock()) {
    data_ = std::move(existing);
    return;
  }
  data_ = std::make_shared<const Data>(Data{std::move(base), std::move(fiber)});
  slot = data_;
}

VariableSet VariableSet::cotangent(std::vector<std::string> base) {
  std::vector<std::string> fiber;
  fiber.reserve(base.size());
  for (const auto& b : base) fiber.push_back("p_" + b);
  return VariableSet(std::move(base), std::move(fiber));
}

const std::string& VariableSet::name(std::size_t index) const {
  if (index < dimension()) return data_->base[index];
  if (index < size()) return data_->fiber[index - dimension()];
  throw UnknownVariable("variable index " + std::to_string(index) + " out of range");
}

std::optional<std::size_t> VariableSet::find(std::string_view name) const {
  for (std::size_t i = 0; i < data_->base.size(); ++i)
    if (data_->base[i] == name) return i;
  for (std::size_t i = 0; i < data_->fiber.size(); ++i)
    if (data_->fiber[i] == name) return dimension() + i;
  return std::nullopt;
}

std::size_t VariableSet::index(std::string_view name) const {
  if (auto i = find(name)) return *i;
  throw UnknownVariable("unknown variable '" + std::string(name) + "'");
}

VariableSet VariableSet::base_only() const {
  if (!has_fiber()) return *this;
  return VariableSet(data_->base);
}

VariableSet VariableSet::with_fiber() const {
  if (has_fiber()) return *this;
  return cotangent(data_->base);
}

bool VariableSet::operator==(const VariableSet& other) const {
  return data_ == other.data_ ||
         (data_->base == other.data_->base && data_->fiber == other.data_->fiber);
}

// ---------------------------------------------------------------------------

std::string to_string(OrderKind kind) {
  switch (kind) {
    case OrderKind::grevlex: return "grevlex";
    case OrderKind::lex: return "lex";
    case OrderKind::block: return "block";
  }
  return "?";
}

OrderKind parse_order(std::string_view name) {
  if (name == "grevlex") return OrderKind::grevlex;
  if (name == "lex") return OrderKind::lex;
  if (name == "block") return OrderKind::block;
  throw Error("unknown monomial order '" + std::string(name) + "'");
}

namespace {

int grevlex_range(const Exponent& a, const Exponent& b, std::size_t lo, std::size_t hi) {
  long da = 0, db = 0;
  for (std::size_t i = lo; i < hi; ++i) {
    da += a[i];
    db += b[i];
  }
  if (da != db) return da < db ? -1 : 1;
  for (std::size_t i = hi; i-- > lo;) {
    if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
  }
  return 0;
}

}  // namespace

int MonomialOrder::compare(const Exponent& a, const Exponent& b) const {
  switch (kind_) {
    case OrderKind::lex:
      for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
      return 0;
    case OrderKind::grevlex:
      return grevlex_range(a, b, 0, a.size());
    case OrderKind::block: {
      std::size_t split = std::min(fiber_start_, a.size());
      if (int c = grevlex_range(a, b, split, a.size())) return c;
      return grevlex_range(a, b, 0, split);
    }
  }
  return 0;
}

int total_degree(const Exponent& e) {
  int d = 0;
  for (auto x : e) d += x;
  return d;
}

int fiber_degree(const Exponent& e, const VariableSet& vars) {
  int d = 0;
  for (std::size_t i = vars.dimension(); i < e.size(); ++i) d += e[i];
  return d;
}

// ---------------------------------------------------------------------------

Polynomial::Polynomial(VariableSet vars) : vars_(std::move(vars)) {}

Polynomial::Polynomial(VariableSet vars, const Rational& constant) : vars_(std::move(vars)) {
  if (constant != 0) terms_.emplace(Exponent(vars_.size(), 0), constant);
}

Polynomial Polynomial::variable(const VariableSet& vars, std::size_t index) {
  if (index >= vars.size()) throw UnknownVariable("variable index out of range");
  Exponent e(vars.size(), 0);
  e[index] = 1;
  return monomial(vars, std::move(e), 1);
}

Polynomial Polynomial::variable(const VariableSet& vars, std::string_view name) {
  return variable(vars, vars.index(name));
}

Polynomial Polynomial::monomial(const VariableSet& vars, Exponent exponent, const Rational& coeff) {
  if (exponent.size() != vars.size()) throw Error("exponent length does not match variable count");
  Polynomial p(vars);
  if (coeff != 0) p.terms_.emplace(std::move(exponent), coeff);
  return p;
}

bool Polynomial::is_constant() const {
  if (terms_.empty()) return true;
  return terms_.size() == 1 && foliatk::total_degree(terms_.begin()->first) == 0;
}

Rational Polynomial::coefficient(const Exponent& exponent) const {
  auto it = terms_.find(exponent);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Polynomial::add_term(const Exponent& exponent, const Rational& coeff) {
  if (coeff == 0) return;
  auto [it, inserted] = terms_.try_emplace(exponent, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

void Polynomial::require_same(const Polynomial& other) const {
  if (!(vars_ == other.vars_)) throw VariableMismatch("polynomials live on different variable sets");
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  require_same(other);
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  require_same(other);
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.require_same(b);
  Polynomial out(a.vars_);
  Exponent e(a.vars_.size());
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

Polynomial& Polynomial::operator*=(const Polynomial& other) {
  *this = *this * other;
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& scalar) {
  if (scalar == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= scalar;
  return *this;
}

Polynomial Polynomial::operator-() const {
  Polynomial out(*this);
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

bool Polynomial::operator==(const Polynomial& other) const {
  return vars_ == other.vars_ && terms_ == other.terms_;
}

Polynomial Polynomial::diff(std::size_t index) const {
  if (index >= vars_.size()) throw UnknownVariable("variable index out of range");
  Polynomial out(vars_);
  for (const auto& [e, c] : terms_) {
    if (e[index] == 0) continue;
    Exponent d = e;
    --d[index];
    out.add_term(d, c * e[index]);
  }
  return out;
}

Polynomial Polynomial::diff(std::string_view name) const { return diff(vars_.index(name)); }

Rational Polynomial::eval(std::span<const Rational> point) const {
  if (point.size() != vars_.size()) throw Error("evaluation point has wrong length");
  Rational sum = 0;
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      for (unsigned k = 0; k < e[i]; ++k) t *= point[i];
    }
    sum += t;
  }
  return sum;
}

namespace {

template <class T>
std::vector<T> assignment(const VariableSet& vars, const std::map<std::string, T>& point) {
  std::vector<T> values(vars.size());
  for (std::size_t i = 0; i < vars.size(); ++i) {
    auto it = point.find(vars.name(i));
    if (it == point.end()) throw Error("missing assignment for variable '" + vars.name(i) + "'");
    values[i] = it->second;
  }
  return values;
}

}  // namespace

Rational Polynomial::eval(const std::map<std::string, Rational>& point) const {
  auto values = assignment(vars_, point);
  return eval(std::span<const Rational>(values));
}

double Polynomial::eval(std::span<const double> point) const {
  if (point.size() != vars_.size()) throw Error("evaluation point has wrong length");
  double sum = 0;
  for (const auto& [e, c] : terms_) {
    double t = c.get_d();
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i]) t *= std::pow(point[i], static_cast<int>(e[i]));
    sum += t;
  }
  return sum;
}

double Polynomial::eval(const std::map<std::string, double>& point) const {
  auto values = assignment(vars_, point);
  return eval(std::span<const double>(values));
}

int Polynomial::total_degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, foliatk::total_degree(e));
  return d;
}

int Polynomial::fiber_degree_max() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, fiber_degree(e, vars_));
  return d;
}

bool Polynomial::depends_on_fiber() const { return fiber_degree_max() > 0; }

bool Polynomial::is_fiber_homogeneous(int k) const {
  for (const auto& [e, c] : terms_)
    if (fiber_degree(e, vars_) != k) return false;
  return true;
}

std::vector<std::pair<int, Polynomial>> Polynomial::fiber_grade_decompose() const {
  std::map<int, Polynomial> parts;
  for (const auto& [e, c] : terms_) {
    int k = fiber_degree(e, vars_);
    parts.try_emplace(k, vars_).first->second.terms_.emplace(e, c);
  }
  return {parts.begin(), parts.end()};
}

Polynomial Polynomial::fiber_component(int k) const {
  Polynomial out(vars_);
  for (const auto& [e, c] : terms_)
    if (fiber_degree(e, vars_) == k) out.terms_.emplace(e, c);
  return out;
}

Polynomial Polynomial::substitute(const std::vector<Polynomial>& images) const {
  if (images.size() != vars_.size()) throw Error("substitution needs one image per variable");
  const VariableSet& target = images.front().vars();
  for (const auto& im : images) {
    if (!(im.vars() == target)) throw VariableMismatch("substitution images on different variable sets");
  }
  // cache powers per variable
  std::vector<std::vector<Polynomial>> powers(images.size());
  auto power = [&](std::size_t i, unsigned k) -> const Polynomial& {
    auto& cache = powers[i];
    if (cache.empty()) cache.emplace_back(target, Rational(1));
    while (cache.size() <= k) cache.push_back(cache.back() * images[i]);
    return cache[k];
  };
  Polynomial out(target);
  for (const auto& [e, c] : terms_) {
    Polynomial t(target, c);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i]) t *= power(i, e[i]);
    out += t;
  }
  return out;
}

Polynomial Polynomial::embed(const VariableSet& target) const {
  if (vars_ == target) return *this;
  // only variables that occur need a counterpart in the target
  std::vector<bool> used(vars_.size(), false);
  for (const auto& [e, c] : terms_)
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i]) used[i] = true;
  std::vector<std::size_t> map(vars_.size(), 0);
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (used[i]) map[i] = target.index(vars_.name(i));
  Polynomial out(target);
  for (const auto& [e, c] : terms_) {
    Exponent f(target.size(), 0);
    for (std::size_t i = 0; i < e.size(); ++i) f[map[i]] += e[i];
    out.add_term(f, c);
  }
  return out;
}

Polynomial Polynomial::pow(unsigned k) const {
  Polynomial out(vars_, Rational(1));
  for (unsigned i = 0; i < k; ++i) out *= *this;
  return out;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::vector<const TermMap::value_type*> order;
  for (const auto& t : terms_) order.push_back(&t);
  MonomialOrder grevlex(OrderKind::grevlex, vars_);
  std::sort(order.begin(), order.end(),
            [&](auto* a, auto* b) { return grevlex.compare(a->first, b->first) > 0; });
  std::ostringstream os;
  bool first = true;
  for (const auto* t : order) {
    const auto& [e, c] = *t;
    Rational mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool has_var = foliatk::total_degree(e) > 0;
    bool wrote = false;
    if (mag != 1 || !has_var) {
      os << mag.get_str();
      wrote = true;
    }
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (!e[i]) continue;
      if (wrote) os << "*";
      os << vars_.name(i);
      if (e[i] > 1) os << "^" << e[i];
      wrote = true;
    }
  }
  return os.str();
}

}  // namespace foliatk
