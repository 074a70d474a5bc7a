#include "foliatk/dynamics.hpp"

#include <cmath>

namespace foliatk {

CompiledPolynomial::CompiledPolynomial(const Polynomial& f) {
  for (const auto& [exp, c] : f.terms()) {
    Term t{c.get_d(), {}};
    for (std::size_t i = 0; i < exp.size(); ++i)
      if (exp[i] != 0) t.powers.emplace_back(i, exp[i]);
    terms_.push_back(std::move(t));
  }
}

double CompiledPolynomial::operator()(std::span<const double> z) const {
  double sum = 0.0;
  for (const auto& t : terms_) {
    double v = t.coeff;
    for (auto [i, k] : t.powers)
      for (unsigned e = 0; e < k; ++e) v *= z[i];
    sum += v;
  }
  return sum;
}

namespace {

bool is_separable(const Polynomial& H) {
  const VariableSet& vars = H.vars();
  for (const auto& [exp, c] : H.terms()) {
    bool has_q = false;
    bool has_p = false;
    for (std::size_t i = 0; i < exp.size(); ++i) {
      if (exp[i] == 0) continue;
      (vars.is_fiber(i) ? has_p : has_q) = true;
    }
    if (has_q && has_p) return false;
  }
  return true;
}

}  // namespace

HamiltonianRhs::HamiltonianRhs(const Polynomial& H) : n_(H.vars().dimension()), H_(H), separable_(is_separable(H)) {
  const VariableSet& vars = H.vars();
  if (!vars.has_fiber()) throw Error("Hamiltonian must live on a cotangent chart");
  for (std::size_t i = 0; i < n_; ++i) {
    dq_.emplace_back(H.diff(vars.fiber_index(i)));
    dp_.emplace_back(-H.diff(i));
  }
}

void HamiltonianRhs::operator()(std::span<const double> z, std::span<double> dz) const {
  for (std::size_t i = 0; i < n_; ++i) {
    dz[i] = dq_[i](z);
    dz[n_ + i] = dp_[i](z);
  }
}

namespace {

void rk4_step(const HamiltonianRhs& f, std::vector<double>& z, double h, std::vector<std::vector<double>>& work) {
  const std::size_t m = z.size();
  auto& k1 = work[0];
  auto& k2 = work[1];
  auto& k3 = work[2];
  auto& k4 = work[3];
  auto& y = work[4];
  f(z, k1);
  for (std::size_t i = 0; i < m; ++i) y[i] = z[i] + 0.5 * h * k1[i];
  f(y, k2);
  for (std::size_t i = 0; i < m; ++i) y[i] = z[i] + 0.5 * h * k2[i];
  f(y, k3);
  for (std::size_t i = 0; i < m; ++i) y[i] = z[i] + h * k3[i];
  f(y, k4);
  for (std::size_t i = 0; i < m; ++i) z[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
}

// Stoermer-Verlet; valid because dH/dp depends on p only and dH/dq on q only.
void leapfrog_step(const HamiltonianRhs& f, std::vector<double>& z, double h, std::vector<std::vector<double>>& work) {
  const std::size_t n = f.dimension();
  auto& d = work[0];
  f(z, d);
  for (std::size_t i = 0; i < n; ++i) z[n + i] += 0.5 * h * d[n + i];
  f(z, d);
  for (std::size_t i = 0; i < n; ++i) z[i] += h * d[i];
  f(z, d);
  for (std::size_t i = 0; i < n; ++i) z[n + i] += 0.5 * h * d[n + i];
}

std::vector<double> pack(const FlowState& s, std::size_t n) {
  if (s.q.size() != n || s.p.size() != n) throw Error("flow start has wrong dimension");
  std::vector<double> z(s.q);
  z.insert(z.end(), s.p.begin(), s.p.end());
  for (double v : z)
    if (!std::isfinite(v)) throw FlowError("flow start is not finite");
  return z;
}

FlowState unpack(const std::vector<double>& z, std::size_t n, double t) {
  return FlowState{{z.begin(), z.begin() + static_cast<long>(n)}, {z.begin() + static_cast<long>(n), z.end()}, t};
}

}  // namespace

FlowState integrate_flow(const Polynomial& H, const FlowState& start, double t_end, double dt, Integrator method,
                         const StepObserver& observer) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw Error("time step must be positive");
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw Error("end time must be nonnegative");
  HamiltonianRhs rhs(H);
  if (method == Integrator::leapfrog && !rhs.separable())
    throw PreconditionError("leapfrog needs a separable Hamiltonian T(p) + V(q)");
  const std::size_t n = rhs.dimension();
  std::vector<double> z = pack(start, n);
  std::vector<std::vector<double>> work(5, std::vector<double>(2 * n));
  // integer step counting avoids drift in t
  const auto full = static_cast<std::size_t>(std::floor(t_end / dt * (1.0 + 1e-12)));
  const double rest = t_end - static_cast<double>(full) * dt;
  const std::size_t total = full + (rest > dt * 1e-9 ? 1 : 0);
  double t = start.t;
  for (std::size_t step = 1; step <= total; ++step) {
    const double h = step <= full ? dt : rest;
    if (method == Integrator::rk4)
      rk4_step(rhs, z, h, work);
    else
      leapfrog_step(rhs, z, h, work);
    t = step <= full ? start.t + static_cast<double>(step) * dt : start.t + t_end;
    for (double v : z)
      if (!std::isfinite(v)) throw FlowError("flow became non-finite at t = " + std::to_string(t));
    if (observer) observer(z, t);
  }
  return unpack(z, n, t);
}

namespace {

MonitorReport monitor(const std::vector<Polynomial>& gens, const Polynomial& H, const FlowState& start, double t_end,
                      double dt, const MonitorOptions& opt) {
  std::vector<CompiledPolynomial> G;
  for (const auto& g : gens) G.emplace_back(g);
  CompiledPolynomial E(H);
  const std::size_t n = H.vars().dimension();
  std::vector<double> z0 = pack(start, n);
  MonitorReport rep;
  const double e0 = E(z0);
  auto sample = [&](std::span<const double> z, double t, bool keep) {
    MonitorSample s{t, {}, E(z)};
    for (const auto& g : G) {
      double v = g(z);
      s.generator_values.push_back(v);
      rep.max_abs_generator = std::max(rep.max_abs_generator, std::abs(v));
    }
    rep.energy_drift = std::max(rep.energy_drift, std::abs(s.energy - e0));
    if (keep) rep.samples.push_back(std::move(s));
  };
  sample(z0, start.t, true);
  for (double v : rep.samples.front().generator_values)
    if (std::abs(v) > opt.start_tolerance)
      throw PreconditionError("flow start is not on the zero set (generator value " + std::to_string(v) + ")");
  const std::size_t k = std::max<std::size_t>(opt.decimation, 1);
  std::size_t count = 0;
  double last_t = start.t;
  std::vector<double> last(z0);
  rep.final_state = integrate_flow(H, start, t_end, dt, opt.method, [&](std::span<const double> z, double t) {
    ++count;
    sample(z, t, count % k == 0);
    last.assign(z.begin(), z.end());
    last_t = t;
  });
  rep.steps = count;
  if (count % k != 0) {
    // endpoint, already counted in the maxima
    MonitorSample s{last_t, {}, E(last)};
    for (const auto& g : G) s.generator_values.push_back(g(last));
    rep.samples.push_back(std::move(s));
  }
  return rep;
}

}  // namespace

MonitorReport monitor_ideal_preservation(const IdealPresentation& I, const Polynomial& H, const FlowState& start,
                                         double t_end, double dt, const MonitorOptions& options) {
  if (!(H.vars() == I.vars())) throw VariableMismatch("Hamiltonian and ideal on different charts");
  return monitor(I.generators(), H, start, t_end, dt, options);
}

MonitorReport geodesic_orthogonality_check(const FoliationModule& F, const MetricData& m, const FlowState& start,
                                           double t_end, double dt, const MonitorOptions& options) {
  if (!(m.chart() == F.chart())) throw VariableMismatch("metric and foliation on different charts");
  std::vector<Polynomial> lifts;
  for (const auto& X : F.generators()) lifts.push_back(cotangent_lift(X));
  return monitor(lifts, m.hamiltonian(), start, t_end, dt, options);
}

}  // namespace foliatk
