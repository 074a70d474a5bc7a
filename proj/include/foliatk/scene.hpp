#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "foliatk/dynamics.hpp"
#include "foliatk/foliation.hpp"
#include "foliatk/geometry.hpp"
#include "foliatk/submersion.hpp"

namespace foliatk {

/// Malformed scene: bad JSON, missing field or a bad expression.
class SceneError : public Error {
 public:
  using Error::Error;
};

struct SubmersionSpec {
  SubmersionData data;
  std::vector<VectorField> target_foliation;  // empty means the zero foliation
};

struct FlowSpec {
  FlowState start;
  double t_end = 1.0;
  double dt = 1e-3;
  std::optional<Polynomial> hamiltonian;  // defaults to H_g
  std::optional<double> tolerance;
};

/// A parsed scene file. Momenta are always named p_<coordinate>.
struct Scene {
  std::string name;
  VariableSet chart;      // base coordinates
  VariableSet cotangent;  // chart.with_fiber()
  MetricData metric;      // cometric defaults to the identity
  std::vector<VectorField> foliation;
  std::optional<std::vector<VectorField>> foliation_other;
  std::optional<std::vector<Polynomial>> ideal;  // explicit; otherwise the lift of the foliation
  std::vector<std::vector<Rational>> points;
  std::vector<std::pair<std::string, Polynomial>> candidates;  // file order
  std::vector<Polynomial> probes;  // target cotangent chart when a submersion is present
  std::optional<SubmersionSpec> submersion;
  std::optional<SubmersionSpec> outer;  // composable after submersion
  std::optional<std::pair<SubmersionSpec, SubmersionSpec>> morita;
  std::optional<FlowSpec> flow;
  std::vector<std::string> notes;  // echoed into every report
  /// Expected fiber dimension per entry of points (externally sourced,
  /// compared but never trusted).
  std::vector<std::optional<std::size_t>> reference_fiber_dims;

  FoliationModule foliation_module(OrderKind order = OrderKind::grevlex) const;
  IdealPresentation ideal_presentation(OrderKind order = OrderKind::block) const;
  const Polynomial& candidate(const std::string& name) const;
};

Scene parse_scene(const std::string& json_text);
Scene load_scene(const std::filesystem::path& path);

/// "1,0,-1/2" -> rationals.
std::vector<Rational> parse_point(std::string_view text);

}  // namespace foliatk
