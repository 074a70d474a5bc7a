#include "foliatk/scene.hpp"

#include <fstream>
#include <sstream>

#include "foliatk/parser.hpp"
#include "json.hpp"

namespace foliatk {

using Json = nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw SceneError(where + ": " + what);
}

const Json& require(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) fail(where, std::string("missing field '") + key + "'");
  return j.at(key);
}

Polynomial expression(const Json& j, const VariableSet& vars, const std::string& where) {
  if (j.is_number_integer()) return Polynomial(vars, Rational(j.get<long>()));
  if (!j.is_string()) fail(where, "expected an expression string");
  try {
    return parse_expression(j.get<std::string>(), vars);
  } catch (const Error& e) {
    fail(where, e.what());
  }
}

Rational rational(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const Error& e) {
      fail(where, e.what());
    }
  }
  fail(where, "expected an integer or a rational string");
}

double real(const Json& j, const std::string& where) {
  if (j.is_number()) return j.get<double>();
  return rational(j, where).get_d();
}

std::vector<std::string> names(const Json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) fail(where, "expected a nonempty list of names");
  std::vector<std::string> out;
  for (const auto& n : j) {
    if (!n.is_string()) fail(where, "coordinate names must be strings");
    out.push_back(n.get<std::string>());
  }
  return out;
}

VariableSet chart_of(const Json& j, const std::string& where) {
  auto coords = names(require(j, "coordinates", where), where + ".coordinates");
  if (j.contains("momenta")) {
    auto mom = names(j.at("momenta"), where + ".momenta");
    if (mom != VariableSet::cotangent(coords).fiber_names()) fail(where, "momenta must be named p_<coordinate>");
  }
  try {
    return VariableSet(std::move(coords));
  } catch (const Error& e) {
    fail(where, e.what());
  }
}

PolyMatrix matrix(const Json& j, const VariableSet& chart, const std::string& where) {
  const std::size_t n = chart.dimension();
  if (!j.is_array() || j.size() != n) fail(where, "expected a " + std::to_string(n) + "x" + std::to_string(n) + " matrix");
  PolyMatrix m;
  for (std::size_t i = 0; i < n; ++i) {
    if (!j[i].is_array() || j[i].size() != n) fail(where, "row " + std::to_string(i) + " has wrong length");
    std::vector<Polynomial> row;
    for (std::size_t k = 0; k < n; ++k)
      row.push_back(expression(j[i][k], chart, where + "[" + std::to_string(i) + "][" + std::to_string(k) + "]"));
    m.push_back(std::move(row));
  }
  return m;
}

std::vector<std::vector<Rational>> points(const Json& j, std::size_t dim, const std::string& where) {
  std::vector<std::vector<Rational>> out;
  if (!j.is_array()) fail(where, "expected a list of points");
  for (const auto& p : j) {
    std::vector<Rational> pt;
    if (p.is_string()) {
      try {
        pt = parse_point(p.get<std::string>());
      } catch (const Error& e) {
        fail(where, e.what());
      }
    } else if (p.is_array()) {
      for (const auto& c : p) pt.push_back(rational(c, where));
    } else {
      fail(where, "a point is a list or a \"a,b,c\" string");
    }
    if (pt.size() != dim) fail(where, "point has wrong dimension");
    out.push_back(std::move(pt));
  }
  return out;
}

// cometric plus metric; a missing metric is the polynomial inverse when one exists
MetricData metric_of(const Json& j, const char* cometric_key, const char* metric_key, const VariableSet& chart,
                     std::vector<std::vector<Rational>> samples, const std::string& where) {
  try {
    std::optional<SymTensor2> cometric;
    std::optional<SymTensor2> metric;
    if (j.contains(cometric_key))
      cometric.emplace(TensorKind::contravariant, chart, matrix(j.at(cometric_key), chart, where + "." + cometric_key));
    if (j.contains(metric_key))
      metric.emplace(TensorKind::covariant, chart, matrix(j.at(metric_key), chart, where + "." + metric_key));
    if (!cometric) {
      if (metric) {
        auto inv = polynomial_inverse(*metric);
        if (!inv) fail(where, std::string("'") + cometric_key + "' is required when the metric has no polynomial inverse");
        cometric = *inv;
      } else {
        cometric = SymTensor2::identity(TensorKind::contravariant, chart);
      }
    }
    if (!metric) {
      if (auto inv = polynomial_inverse(*cometric)) metric = *inv;
    }
    if (samples.empty()) samples.emplace_back(chart.dimension(), Rational(0));
    return MetricData(*cometric, metric, std::move(samples));
  } catch (const SceneError&) {
    throw;
  } catch (const Error& e) {
    fail(where, e.what());
  }
}

std::vector<VectorField> fields(const Json& j, const VariableSet& chart, const std::string& where) {
  if (!j.is_array()) fail(where, "expected a list of generators");
  std::vector<VectorField> out;
  for (std::size_t a = 0; a < j.size(); ++a) {
    const Json& g = j[a];
    std::string w = where + "[" + std::to_string(a) + "]";
    if (!g.is_array() || g.size() != chart.dimension())
      fail(w, "a generator lists one component per coordinate");
    std::vector<Polynomial> comps;
    for (const auto& c : g) comps.push_back(expression(c, chart, w));
    out.emplace_back(chart, std::move(comps));
  }
  return out;
}

SubmersionSpec submersion_of(const Json& j, const VariableSet& source, const SymTensor2& source_cometric,
                             const std::string& where) {
  VariableSet target = chart_of(require(j, "target", where), where + ".target");
  const Json& idx = require(j, "base_indices", where);
  if (!idx.is_array()) fail(where, "base_indices must be a list");
  std::vector<std::size_t> base;
  for (const auto& b : idx) {
    if (b.is_number_unsigned()) {
      base.push_back(b.get<std::size_t>());
    } else if (b.is_string() && source.find(b.get<std::string>()) && *source.find(b.get<std::string>()) < source.dimension()) {
      base.push_back(*source.find(b.get<std::string>()));
    } else {
      fail(where, "base_indices entries are source indices or source coordinate names");
    }
  }
  std::vector<std::vector<Rational>> samples;
  if (j.contains("target_sample_points"))
    samples = points(j.at("target_sample_points"), target.dimension(), where + ".target_sample_points");
  MetricData tm = metric_of(j, "target_cometric", "target_metric", target, std::move(samples), where);
  std::vector<VectorField> tf;
  if (j.contains("target_foliation")) tf = fields(j.at("target_foliation"), target, where + ".target_foliation");
  try {
    return SubmersionSpec{SubmersionData(source, target, std::move(base), source_cometric, std::move(tm)), std::move(tf)};
  } catch (const Error& e) {
    fail(where, e.what());
  }
}

}  // namespace

std::vector<Rational> parse_point(std::string_view text) {
  std::vector<Rational> out;
  std::string s(text);
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto b = item.find_first_not_of(" \t");
    auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) throw Error("empty coordinate in point '" + s + "'");
    out.push_back(parse_rational(item.substr(b, e - b + 1)));
  }
  if (out.empty()) throw Error("empty point");
  return out;
}

Scene parse_scene(const std::string& json_text) {
  Json j;
  try {
    j = Json::parse(json_text);
  } catch (const Json::parse_error& e) {
    throw SceneError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw SceneError("scene must be a JSON object");
  std::string name = j.value("name", std::string("unnamed"));
  VariableSet chart = chart_of(require(j, "chart", "scene"), "chart");
  VariableSet cot = chart.with_fiber();
  const std::size_t n = chart.dimension();

  std::vector<std::vector<Rational>> samples;
  if (j.contains("sample_points")) samples = points(j.at("sample_points"), n, "sample_points");
  MetricData metric = metric_of(j, "cometric", "metric", chart, std::move(samples), "scene");

  std::vector<VectorField> fol;
  if (j.contains("foliation")) fol = fields(j.at("foliation"), chart, "foliation");
  std::optional<std::vector<VectorField>> other;
  if (j.contains("foliation_other")) other = fields(j.at("foliation_other"), chart, "foliation_other");

  std::optional<std::vector<Polynomial>> ideal;
  if (j.contains("ideal")) {
    const Json& I = j.at("ideal");
    if (!I.is_array()) fail("ideal", "expected a list of generators");
    ideal.emplace();
    for (std::size_t i = 0; i < I.size(); ++i) {
      Polynomial g = expression(I[i], cot, "ideal[" + std::to_string(i) + "]");
      if (g.is_zero()) fail("ideal[" + std::to_string(i) + "]", "zero generator");
      ideal->push_back(std::move(g));
    }
  }

  std::vector<std::vector<Rational>> pts;
  if (j.contains("points")) pts = points(j.at("points"), n, "points");

  std::vector<std::pair<std::string, Polynomial>> cands;
  if (j.contains("candidates")) {
    const Json& c = j.at("candidates");
    if (!c.is_object()) fail("candidates", "expected an object of name: expression");
    for (const auto& [key, value] : c.items()) cands.emplace_back(key, expression(value, cot, "candidates." + key));
  }

  std::optional<SubmersionSpec> sub;
  std::optional<SubmersionSpec> outer;
  if (j.contains("submersion")) {
    sub = submersion_of(j.at("submersion"), chart, metric.cometric(), "submersion");
    if (j.contains("outer_submersion")) {
      const auto& mid = sub->data;
      outer = submersion_of(j.at("outer_submersion"), mid.target(), mid.target_metric().cometric(), "outer_submersion");
    }
  } else if (j.contains("outer_submersion")) {
    fail("outer_submersion", "requires 'submersion'");
  }

  std::vector<Polynomial> probes;
  if (j.contains("probes")) {
    const Json& p = j.at("probes");
    if (!p.is_array()) fail("probes", "expected a list of expressions");
    VariableSet pv = sub ? sub->data.target().with_fiber() : cot;
    for (std::size_t i = 0; i < p.size(); ++i) probes.push_back(expression(p[i], pv, "probes[" + std::to_string(i) + "]"));
  }

  std::optional<std::pair<SubmersionSpec, SubmersionSpec>> morita;
  if (j.contains("morita")) {
    const Json& m = j.at("morita");
    morita.emplace(submersion_of(require(m, "left", "morita"), chart, metric.cometric(), "morita.left"),
                   submersion_of(require(m, "right", "morita"), chart, metric.cometric(), "morita.right"));
  }

  std::optional<FlowSpec> flow;
  if (j.contains("flow")) {
    const Json& f = j.at("flow");
    const Json& start = require(f, "start", "flow");
    FlowSpec spec;
    for (const char* key : {"q", "p"}) {
      const Json& v = require(start, key, "flow.start");
      if (!v.is_array() || v.size() != n) fail("flow.start", std::string("'") + key + "' needs one entry per coordinate");
      auto& dst = key[0] == 'q' ? spec.start.q : spec.start.p;
      for (const auto& x : v) dst.push_back(real(x, "flow.start"));
    }
    if (f.contains("t_end")) spec.t_end = real(f.at("t_end"), "flow.t_end");
    if (f.contains("dt")) spec.dt = real(f.at("dt"), "flow.dt");
    if (f.contains("hamiltonian")) spec.hamiltonian = expression(f.at("hamiltonian"), cot, "flow.hamiltonian");
    if (f.contains("tolerance")) spec.tolerance = real(f.at("tolerance"), "flow.tolerance");
    flow = std::move(spec);
  }

  std::vector<std::string> notes;
  if (j.contains("notes")) {
    const Json& nj = j.at("notes");
    if (nj.is_string()) {
      notes.push_back(nj.get<std::string>());
    } else if (nj.is_array()) {
      for (const auto& x : nj) {
        if (!x.is_string()) fail("notes", "notes are strings");
        notes.push_back(x.get<std::string>());
      }
    } else {
      fail("notes", "expected a string or a list of strings");
    }
  }
  std::vector<std::optional<std::size_t>> refs;
  if (j.contains("reference_fiber_dims")) {
    const Json& r = j.at("reference_fiber_dims");
    if (!r.is_array() || r.size() != pts.size()) fail("reference_fiber_dims", "one entry (or null) per point");
    for (const auto& x : r) {
      if (x.is_null())
        refs.emplace_back();
      else if (x.is_number_unsigned())
        refs.emplace_back(x.get<std::size_t>());
      else
        fail("reference_fiber_dims", "entries are nonnegative integers or null");
    }
  }

  return Scene{std::move(name), chart,       cot,         std::move(metric), std::move(fol),   std::move(other),
               std::move(ideal), std::move(pts), std::move(cands), std::move(probes), std::move(sub), std::move(outer),
               std::move(morita), std::move(flow), std::move(notes), std::move(refs)};
}

Scene load_scene(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SceneError("cannot open scene file '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scene(ss.str());
}

FoliationModule Scene::foliation_module(OrderKind order) const { return FoliationModule(chart, foliation, order); }

IdealPresentation Scene::ideal_presentation(OrderKind order) const {
  if (ideal) return IdealPresentation(cotangent, *ideal, order);
  std::vector<Polynomial> lifts;
  for (const auto& X : foliation)
    if (!X.is_zero()) lifts.push_back(cotangent_lift(X));
  return IdealPresentation(cotangent, std::move(lifts), order);
}

const Polynomial& Scene::candidate(const std::string& key) const {
  for (const auto& [k, p] : candidates)
    if (k == key) return p;
  throw SceneError("unknown candidate '" + key + "'");
}

}  // namespace foliatk
