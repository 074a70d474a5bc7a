#pragma once

#include <functional>
#include <span>
#include <vector>

#include "foliatk/foliation.hpp"
#include "foliatk/geometry.hpp"
#include "foliatk/ideal.hpp"

namespace foliatk {

/// Raised when the integrator produces NaN or Inf.
class FlowError : public Error {
 public:
  using Error::Error;
};

struct FlowState {
  std::vector<double> q;
  std::vector<double> p;
  double t = 0.0;
};

/// Term list evaluated in doubles. Powers are taken by repeated products.
class CompiledPolynomial {
 public:
  explicit CompiledPolynomial(const Polynomial& f);
  double operator()(std::span<const double> z) const;
  bool is_zero() const { return terms_.empty(); }

 private:
  struct Term {
    double coeff;
    std::vector<std::pair<std::size_t, unsigned>> powers;
  };
  std::vector<Term> terms_;
};

/// Hamilton's equations dq = dH/dp, dp = -dH/dq with derivatives taken once.
class HamiltonianRhs {
 public:
  explicit HamiltonianRhs(const Polynomial& H);

  std::size_t dimension() const { return n_; }
  /// z = (q, p), dz has the same layout.
  void operator()(std::span<const double> z, std::span<double> dz) const;
  double energy(std::span<const double> z) const { return H_(z); }
  /// H = T(p) + V(q).
  bool separable() const { return separable_; }

 private:
  std::size_t n_;
  CompiledPolynomial H_;
  std::vector<CompiledPolynomial> dq_;  // dH/dp_i
  std::vector<CompiledPolynomial> dp_;  // -dH/dq^i
  bool separable_;
};

enum class Integrator { rk4, leapfrog };

/// Called after every step with the current (q, p) and time.
using StepObserver = std::function<void(std::span<const double> z, double t)>;

/// Fixed-step integration from start to t_end; the last step is shortened
/// to land on t_end. Returns the final state.
FlowState integrate_flow(const Polynomial& H, const FlowState& start, double t_end, double dt,
                         Integrator method = Integrator::rk4, const StepObserver& observer = {});

struct MonitorSample {
  double t;
  std::vector<double> generator_values;
  double energy;
};

struct MonitorReport {
  std::vector<MonitorSample> samples;  // every decimation-th step plus the endpoints
  double max_abs_generator = 0.0;      // over every step, not only samples
  double energy_drift = 0.0;           // max |H(t) - H(0)|
  std::size_t steps = 0;
  FlowState final_state;
};

struct MonitorOptions {
  double start_tolerance = 1e-12;
  std::size_t decimation = 10;
  Integrator method = Integrator::rk4;
};

/// Integrates H and samples the generators of I along the flow.
MonitorReport monitor_ideal_preservation(const IdealPresentation& I, const Polynomial& H, const FlowState& start,
                                         double t_end, double dt, const MonitorOptions& options = {});

/// Geodesic flow of H_g from a start orthogonal to the leaf, monitoring the
/// lifts of the generators of F.
MonitorReport geodesic_orthogonality_check(const FoliationModule& F, const MetricData& m, const FlowState& start,
                                           double t_end, double dt, const MonitorOptions& options = {});

}  // namespace foliatk
