#include "foliatk/groebner.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace foliatk {

// ---------------------------------------------------------------------------
// ModuleElement

ModuleElement::ModuleElement(VariableSet vars, std::vector<Polynomial> components)
    : vars_(std::move(vars)), components_(std::move(components)) {
  for (const auto& c : components_)
    if (!(c.vars() == vars_)) throw VariableMismatch("module element component on a foreign variable set");
}

ModuleElement ModuleElement::zero(const VariableSet& vars, std::size_t rank) {
  return ModuleElement(vars, std::vector<Polynomial>(rank, Polynomial(vars)));
}

ModuleElement ModuleElement::unit(const VariableSet& vars, std::size_t rank, std::size_t position) {
  auto e = zero(vars, rank);
  e.components_.at(position) = Polynomial(vars, 1);
  return e;
}

bool ModuleElement::is_zero() const {
  return std::all_of(components_.begin(), components_.end(), [](const auto& c) { return c.is_zero(); });
}

ModuleElement& ModuleElement::operator+=(const ModuleElement& other) {
  if (rank() != other.rank()) throw Error("module rank mismatch");
  for (std::size_t i = 0; i < rank(); ++i) components_[i] += other.components_[i];
  return *this;
}

ModuleElement& ModuleElement::operator-=(const ModuleElement& other) {
  if (rank() != other.rank()) throw Error("module rank mismatch");
  for (std::size_t i = 0; i < rank(); ++i) components_[i] -= other.components_[i];
  return *this;
}

ModuleElement operator*(const Polynomial& f, const ModuleElement& v) {
  ModuleElement out(v);
  for (auto& c : out.components_) c = f * c;
  return out;
}

std::vector<Rational> ModuleElement::eval(std::span<const Rational> point) const {
  std::vector<Rational> out;
  out.reserve(rank());
  for (const auto& c : components_) out.push_back(c.eval(point));
  return out;
}

std::string ModuleElement::to_string() const {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < rank(); ++i) os << (i ? ", " : "") << components_[i].to_string();
  os << ")";
  return os.str();
}

bool verify(const Certificate& cert, const Polynomial& input, const std::vector<Polynomial>& generators) {
  if (cert.cofactors.size() != generators.size()) return false;
  Polynomial sum = cert.remainder;
  for (std::size_t i = 0; i < generators.size(); ++i) sum += cert.cofactors[i] * generators[i];
  return sum == input;
}

bool verify(const ModuleCertificate& cert, const ModuleElement& input,
            const std::vector<ModuleElement>& generators) {
  if (cert.cofactors.size() != generators.size()) return false;
  ModuleElement sum = cert.remainder;
  for (std::size_t i = 0; i < generators.size(); ++i) sum += cert.cofactors[i] * generators[i];
  return sum == input;
}

// ---------------------------------------------------------------------------
// Engine. Module elements are sparse term lists sorted descending in the
// position-over-term order (position 0 is the largest).

namespace detail {

struct Term {
  std::uint32_t pos;
  Exponent exp;
  Rational coeff;
};
using Vec = std::vector<Term>;

struct Elem {
  Vec f;
  Vec rep;  // representation through the original generators
};

struct GbEngine {
  VariableSet vars;
  MonomialOrder order;
  std::size_t rank;
  std::size_t ngens;
  bool track;
  std::vector<Elem> basis;

  GbEngine(VariableSet v, MonomialOrder o, std::size_t r, std::size_t n, bool t)
      : vars(std::move(v)), order(o), rank(r), ngens(n), track(t) {}

  int cmp(std::uint32_t pa, const Exponent& a, std::uint32_t pb, const Exponent& b) const {
    if (pa != pb) return pa < pb ? 1 : -1;
    return order.compare(a, b);
  }
  int cmp(const Term& a, const Term& b) const { return cmp(a.pos, a.exp, b.pos, b.exp); }

  // a - coeff * x^shift * b
  Vec sub_mul(const Vec& a, const Rational& coeff, const Exponent& shift, const Vec& b) const {
    Vec out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    Exponent e(shift.size());
    while (i < a.size() || j < b.size()) {
      if (j < b.size()) {
        for (std::size_t k = 0; k < e.size(); ++k) e[k] = b[j].exp[k] + shift[k];
      }
      int c = (i == a.size()) ? -1 : (j == b.size()) ? 1 : cmp(a[i].pos, a[i].exp, b[j].pos, e);
      if (c > 0) {
        out.push_back(a[i++]);
      } else if (c < 0) {
        out.push_back(Term{b[j].pos, e, -coeff * b[j].coeff});
        ++j;
      } else {
        Rational v = a[i].coeff - coeff * b[j].coeff;
        if (v != 0) out.push_back(Term{a[i].pos, a[i].exp, v});
        ++i;
        ++j;
      }
    }
    return out;
  }

  void scale(Vec& v, const Rational& s) const {
    for (auto& t : v) t.coeff *= s;
  }

  Vec from_components(const std::vector<Polynomial>& comps) const {
    Vec v;
    for (std::uint32_t p = 0; p < comps.size(); ++p)
      for (const auto& [e, c] : comps[p].terms()) v.push_back(Term{p, e, c});
    sort(v);
    return v;
  }

  void sort(Vec& v) const {
    std::sort(v.begin(), v.end(), [this](const Term& a, const Term& b) { return cmp(a, b) > 0; });
  }

  std::vector<Polynomial> to_components(const Vec& v, std::size_t r) const {
    std::vector<Polynomial> out(r, Polynomial(vars));
    for (const auto& t : v) out[t.pos] += Polynomial::monomial(vars, t.exp, t.coeff);
    return out;
  }

  static bool divides(const Exponent& a, const Exponent& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i] > b[i]) return false;
    return true;
  }
  static Exponent quotient(const Exponent& b, const Exponent& a) {
    Exponent q(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) q[i] = b[i] - a[i];
    return q;
  }
  static Exponent lcm(const Exponent& a, const Exponent& b) {
    Exponent l(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) l[i] = std::max(a[i], b[i]);
    return l;
  }

  // Full reduction of f by `elems` (first divisor in list order). Returns the
  // remainder; quot accumulates sum of multiplier * elems[k].rep.
  Vec reduce(Vec f, const std::vector<Elem>& elems, Vec* quot, std::size_t skip = SIZE_MAX) const {
    Vec remainder;
    while (!f.empty()) {
      const Term lead = f.front();
      std::size_t k = 0;
      for (; k < elems.size(); ++k) {
        if (k == skip) continue;
        const Term& lt = elems[k].f.front();
        if (lt.pos == lead.pos && divides(lt.exp, lead.exp)) break;
      }
      if (k == elems.size()) {
        remainder.push_back(lead);
        f.erase(f.begin());
        continue;
      }
      const Term& lt = elems[k].f.front();
      Rational c = lead.coeff / lt.coeff;
      Exponent shift = quotient(lead.exp, lt.exp);
      f = sub_mul(f, c, shift, elems[k].f);
      if (quot && track) *quot = sub_mul(*quot, -c, shift, elems[k].rep);
    }
    return remainder;
  }

  void make_monic(Elem& e) const {
    Rational inv = 1 / e.f.front().coeff;
    if (inv == 1) return;
    scale(e.f, inv);
    scale(e.rep, inv);
  }

  void run(std::vector<Vec> inputs) {
    struct Pair {
      std::size_t i, j;
      Exponent lcm;
      std::uint32_t pos;
    };
    std::vector<Pair> pending;
    std::set<std::pair<std::size_t, std::size_t>> open;

    auto add = [&](Elem e) {
      make_monic(e);
      std::size_t idx = basis.size();
      const Term& lt = e.f.front();
      for (std::size_t i = 0; i < idx; ++i) {
        const Term& li = basis[i].f.front();
        if (li.pos != lt.pos) continue;
        pending.push_back(Pair{i, idx, lcm(li.exp, lt.exp), lt.pos});
        open.insert({i, idx});
      }
      basis.push_back(std::move(e));
    };

    Exponent zero_shift(vars.size(), 0);
    for (std::size_t a = 0; a < inputs.size(); ++a) {
      if (inputs[a].empty()) continue;
      Elem e{std::move(inputs[a]), {}};
      if (track) e.rep.push_back(Term{static_cast<std::uint32_t>(a), zero_shift, 1});
      add(std::move(e));
    }

    while (!pending.empty()) {
      // normal selection strategy: smallest lcm first
      std::size_t best = 0;
      for (std::size_t k = 1; k < pending.size(); ++k)
        if (cmp(pending[k].pos, pending[k].lcm, pending[best].pos, pending[best].lcm) < 0) best = k;
      Pair pr = pending[best];
      pending.erase(pending.begin() + static_cast<long>(best));
      open.erase({pr.i, pr.j});

      const Term& li = basis[pr.i].f.front();
      const Term& lj = basis[pr.j].f.front();
      if (rank == 1) {
        // product criterion (valid for ideals only)
        bool coprime = true;
        for (std::size_t k = 0; k < li.exp.size(); ++k)
          if (li.exp[k] && lj.exp[k]) coprime = false;
        if (coprime) continue;
      }
      // chain criterion
      bool chained = false;
      for (std::size_t k = 0; k < basis.size() && !chained; ++k) {
        if (k == pr.i || k == pr.j) continue;
        const Term& lk = basis[k].f.front();
        if (lk.pos != pr.pos || !divides(lk.exp, pr.lcm)) continue;
        auto key = [](std::size_t a, std::size_t b) { return std::make_pair(std::min(a, b), std::max(a, b)); };
        if (!open.count(key(pr.i, k)) && !open.count(key(pr.j, k))) chained = true;
      }
      if (chained) continue;

      Exponent si = quotient(pr.lcm, li.exp);
      Exponent sj = quotient(pr.lcm, lj.exp);
      // both monic: S = x^si g_i - x^sj g_j
      Vec s = sub_mul(Vec{}, -1, si, basis[pr.i].f);
      s = sub_mul(s, 1, sj, basis[pr.j].f);
      Vec srep;
      if (track) {
        srep = sub_mul(Vec{}, -1, si, basis[pr.i].rep);
        srep = sub_mul(srep, 1, sj, basis[pr.j].rep);
      }
      Vec q;
      Vec h = reduce(std::move(s), basis, &q);
      if (h.empty()) continue;
      Elem e{std::move(h), {}};
      if (track) e.rep = sub_mul(srep, 1, zero_shift, q);
      add(std::move(e));
    }
    finalize();
  }

  void finalize() {
    // minimal basis: drop elements whose leading term another one divides
    std::vector<bool> keep(basis.size(), true);
    for (std::size_t i = 0; i < basis.size(); ++i) {
      const Term& li = basis[i].f.front();
      bool redundant = false;
      for (std::size_t j = 0; j < basis.size() && !redundant; ++j) {
        if (i == j) continue;
        const Term& lj = basis[j].f.front();
        if (lj.pos != li.pos || !divides(lj.exp, li.exp)) continue;
        // equal leading terms: keep the earlier one
        if (lj.exp == li.exp && j > i) continue;
        redundant = true;
      }
      keep[i] = !redundant;
    }
    std::vector<Elem> minimal;
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (keep[i]) minimal.push_back(std::move(basis[i]));
    // interreduce tails
    Exponent zero_shift(vars.size(), 0);
    for (std::size_t i = 0; i < minimal.size(); ++i) {
      Vec lead{minimal[i].f.front()};
      Vec tail(minimal[i].f.begin() + 1, minimal[i].f.end());
      Vec q;
      Vec r = reduce(std::move(tail), minimal, &q, i);
      lead.insert(lead.end(), r.begin(), r.end());
      minimal[i].f = std::move(lead);
      if (track) minimal[i].rep = sub_mul(minimal[i].rep, 1, zero_shift, q);
    }
    std::sort(minimal.begin(), minimal.end(),
              [this](const Elem& a, const Elem& b) { return cmp(a.f.front(), b.f.front()) > 0; });
    basis = std::move(minimal);
  }

  // returns (cofactors over the original generators, remainder)
  std::pair<std::vector<Polynomial>, std::vector<Polynomial>> normal_form(const std::vector<Polynomial>& v) const {
    Vec q;
    Vec r = reduce(from_components(v), basis, &q);
    return {to_components(q, ngens), to_components(r, rank)};
  }
};

}  // namespace detail

// ---------------------------------------------------------------------------

GroebnerBasis::GroebnerBasis(VariableSet vars, std::vector<Polynomial> generators, MonomialOrder order)
    : vars_(std::move(vars)), generators_(std::move(generators)), order_(order) {
  auto engine = std::make_shared<detail::GbEngine>(vars_, order_, 1, generators_.size(), true);
  std::vector<detail::Vec> inputs;
  fiber_graded_ = vars_.has_fiber();
  for (const auto& g : generators_) {
    if (!(g.vars() == vars_)) throw VariableMismatch("generator on a foreign variable set");
    inputs.push_back(engine->from_components({g}));
    if (!g.is_zero()) {
      auto parts = g.fiber_grade_decompose();
      if (parts.size() != 1) fiber_graded_ = false;
    }
  }
  engine->run(std::move(inputs));
  for (const auto& e : engine->basis) basis_.push_back(engine->to_components(e.f, 1)[0]);
  engine_ = std::move(engine);
}

Certificate GroebnerBasis::normal_form(const Polynomial& f) const {
  if (!(f.vars() == vars_)) throw VariableMismatch("normal form of a polynomial on a foreign variable set");
  Certificate cert{std::vector<Polynomial>(generators_.size(), Polynomial(vars_)), Polynomial(vars_)};
  if (fiber_graded_) {
    for (const auto& [k, part] : f.fiber_grade_decompose()) {
      auto [q, r] = engine_->normal_form({part});
      for (std::size_t i = 0; i < q.size(); ++i) cert.cofactors[i] += q[i];
      cert.remainder += r[0];
    }
    return cert;
  }
  auto [q, r] = engine_->normal_form({f});
  cert.cofactors = std::move(q);
  cert.remainder = std::move(r[0]);
  return cert;
}

ModuleGroebnerBasis::ModuleGroebnerBasis(VariableSet vars, std::size_t rank, std::vector<ModuleElement> generators,
                                         MonomialOrder order)
    : vars_(std::move(vars)), rank_(rank), generators_(std::move(generators)), order_(order) {
  auto engine = std::make_shared<detail::GbEngine>(vars_, order_, rank_, generators_.size(), true);
  std::vector<detail::Vec> inputs;
  for (const auto& g : generators_) {
    if (g.rank() != rank_) throw Error("module generator rank mismatch");
    if (!(g.vars() == vars_)) throw VariableMismatch("module generator on a foreign variable set");
    inputs.push_back(engine->from_components(g.components()));
  }
  engine->run(std::move(inputs));
  for (const auto& e : engine->basis) basis_.emplace_back(vars_, engine->to_components(e.f, rank_));
  engine_ = std::move(engine);
}

ModuleCertificate ModuleGroebnerBasis::normal_form(const ModuleElement& v) const {
  if (v.rank() != rank_) throw Error("module element rank mismatch");
  if (!(v.vars() == vars_)) throw VariableMismatch("module element on a foreign variable set");
  auto [q, r] = engine_->normal_form(v.components());
  return ModuleCertificate{std::move(q), ModuleElement(vars_, std::move(r))};
}

GroebnerBasis buchberger(const VariableSet& vars, std::vector<Polynomial> gens, MonomialOrder order) {
  return GroebnerBasis(vars, std::move(gens), order);
}

Certificate normal_form_with_cofactors(const Polynomial& f, const GroebnerBasis& gb) { return gb.normal_form(f); }

ModuleGroebnerBasis module_groebner(const VariableSet& vars, std::size_t rank, std::vector<ModuleElement> gens,
                                    MonomialOrder order) {
  return ModuleGroebnerBasis(vars, rank, std::move(gens), order);
}

ModuleCertificate module_membership(const ModuleElement& v, const ModuleGroebnerBasis& gb) {
  return gb.normal_form(v);
}

std::vector<ModuleElement> syzygy_basis(const VariableSet& vars, std::size_t rank,
                                        const std::vector<ModuleElement>& gens, MonomialOrder order) {
  const std::size_t n = gens.size();
  detail::GbEngine engine(vars, order, rank + n, n, false);
  std::vector<detail::Vec> inputs;
  for (std::size_t a = 0; a < n; ++a) {
    if (gens[a].rank() != rank) throw Error("module generator rank mismatch");
    auto comps = gens[a].components();
    for (std::size_t b = 0; b < n; ++b) comps.push_back(Polynomial(vars, a == b ? 1 : 0));
    inputs.push_back(engine.from_components(comps));
  }
  engine.run(std::move(inputs));
  std::vector<ModuleElement> out;
  for (const auto& e : engine.basis) {
    if (e.f.front().pos < rank) continue;
    auto comps = engine.to_components(e.f, rank + n);
    out.emplace_back(vars, std::vector<Polynomial>(comps.begin() + static_cast<long>(rank), comps.end()));
  }
  return out;
}

}  // namespace foliatk
