#include "foliatk/commands.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <map>

#include "foliatk/ipoisson.hpp"

namespace foliatk {

using nlohmann::json;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

// --- serialization ---------------------------------------------------------

json poly(const Polynomial& p) { return p.to_string(); }

json polys(const std::vector<Polynomial>& ps) {
  json a = json::array();
  for (const auto& p : ps) a.push_back(poly(p));
  return a;
}

json field(const VectorField& X) { return polys(X.components()); }

json fields(const std::vector<VectorField>& Xs) {
  json a = json::array();
  for (const auto& X : Xs) a.push_back(field(X));
  return a;
}

json rationals(const std::vector<Rational>& v) {
  json a = json::array();
  for (const auto& r : v) a.push_back(to_string(r));
  return a;
}

json doubles(const std::vector<double>& v) {
  json a = json::array();
  for (double d : v) a.push_back(format_double(d));
  return a;
}

json cert(const Certificate& c) {
  return {{"cofactors", polys(c.cofactors)}, {"remainder", poly(c.remainder)}, {"holds", c.claim_holds()}};
}

json cert(const ModuleCertificate& c) {
  return {{"cofactors", polys(c.cofactors)}, {"remainder", polys(c.remainder.components())}, {"holds", c.claim_holds()}};
}

json rational_function(const RationalFunction& f) {
  return {{"numerator", poly(f.numerator())}, {"denominator", poly(f.denominator())}};
}

json bracket_membership(const BracketMembership& m, bool pair) {
  json j{{"bracket", poly(m.bracket)}, {"certificate", cert(m.certificate)}};
  if (pair) {
    j["i"] = m.i;
    j["j"] = m.j;
  } else {
    j["generator"] = m.i;
  }
  if (m.obstruction_point) j["obstruction_point"] = rationals(*m.obstruction_point);
  if (!m.certificate.claim_holds()) j["refutation"] = m.obstruction_point ? "smooth" : "polynomial";
  return j;
}

json normalizer(const NormalizerResult& r) {
  json b = json::array();
  for (const auto& m : r.brackets) b.push_back(bracket_membership(m, false));
  json j{{"candidate", poly(r.candidate)}, {"passed", r.passed}, {"brackets", b}};
  if (r.witness) j["witness"] = *r.witness;
  return j;
}

json module_comparison(const ModuleEqualResult& r) {
  json f = json::array();
  json b = json::array();
  for (const auto& c : r.forward) f.push_back(cert(c));
  for (const auto& c : r.backward) b.push_back(cert(c));
  json j{{"forward", f}, {"backward", b}, {"passed", r.passed}};
  if (r.witness)
    j["witness"] = {{"side", r.witness->side == 0 ? "first_in_second" : "second_in_first"},
                    {"generator", r.witness->generator},
                    {"certificate", cert(r.witness->certificate)}};
  return j;
}

json monitor(const MonitorReport& r) {
  json s = json::array();
  for (const auto& m : r.samples)
    s.push_back({{"t", format_double(m.t)}, {"energy", format_double(m.energy)}, {"generators", doubles(m.generator_values)}});
  return {{"samples", s},
          {"max_abs_generator", format_double(r.max_abs_generator)},
          {"energy_drift", format_double(r.energy_drift)},
          {"steps", r.steps},
          {"final_state", {{"q", doubles(r.final_state.q)}, {"p", doubles(r.final_state.p)}, {"t", format_double(r.final_state.t)}}}};
}

// --- command plumbing ------------------------------------------------------

struct Outcome {
  bool passed = true;
  json result = json::object();
};

struct Context {
  const Scene& scene;
  const CommandOptions& opt;
  json tolerances = json::object();

  OrderKind module_order() const { return opt.order.value_or(OrderKind::grevlex); }
  OrderKind ideal_order() const { return opt.order.value_or(OrderKind::block); }
  FoliationModule foliation() const { return scene.foliation_module(module_order()); }
  IdealPresentation ideal() const { return scene.ideal_presentation(ideal_order()); }

  const SubmersionSpec& submersion() const {
    if (!scene.submersion) throw PreconditionError("scene has no 'submersion' block");
    return *scene.submersion;
  }

  std::vector<std::pair<std::string, Polynomial>> chosen_candidates() const {
    if (opt.candidates.empty()) return scene.candidates;
    std::vector<std::pair<std::string, Polynomial>> out;
    for (const auto& name : opt.candidates) out.emplace_back(name, scene.candidate(name));
    return out;
  }

  std::vector<std::vector<Rational>> chosen_points() const {
    if (opt.point) {
      if (opt.point->size() != scene.chart.dimension()) throw PreconditionError("--point has wrong dimension");
      return {*opt.point};
    }
    if (scene.points.empty()) throw PreconditionError("no points: pass --point or add 'points' to the scene");
    return scene.points;
  }
};

using Handler = std::function<Outcome(Context&)>;

Outcome cmd_check_involutive(Context& c) {
  FoliationModule F = c.foliation();
  auto r = involutivity_check(F);
  json br = json::array();
  for (const auto& b : r.brackets)
    br.push_back({{"a", b.a}, {"b", b.b}, {"bracket", field(b.bracket)}, {"certificate", cert(b.certificate)}});
  Outcome o{r.passed, {{"generators", fields(F.generators())}, {"brackets", br}}};
  if (r.witness) o.result["witness"] = *r.witness;
  if (r.obstruction_point) o.result["obstruction_point"] = rationals(*r.obstruction_point);
  if (!r.passed) o.result["refutation"] = r.obstruction_point ? "smooth" : "polynomial";
  return o;
}

Outcome cmd_check_srf(Context& c) {
  FoliationModule F = c.foliation();
  auto r = srf_check(F, c.scene.metric);
  json br = json::array();
  for (const auto& m : r.brackets) br.push_back(bracket_membership(m, false));
  Outcome o{r.passed, {{"hamiltonian", poly(r.hamiltonian)}, {"brackets", br}, {"ideal", polys(lift_ideal(F).generators())}}};
  if (r.witness) o.result["witness"] = *r.witness;
  if (r.certificate) {
    json lam = json::array();
    for (const auto& row : r.certificate->lambda) lam.push_back(polys(row));
    o.result["lambda"] = lam;
  }
  return o;
}

Outcome cmd_killing_connection(Context& c) {
  FoliationModule F = c.foliation();
  auto cert = killing_connection(F, c.scene.metric);
  json lam = json::array();
  for (const auto& row : cert.lambda) lam.push_back(polys(row));
  json om = json::array();
  for (const auto& row : *cert.omega) {
    json r = json::array();
    for (const auto& w : row) {
      json comps = json::array();
      for (const auto& f : w.components()) comps.push_back(rational_function(f));
      r.push_back(comps);
    }
    om.push_back(r);
  }
  return {cert.verified_identity, {{"lambda", lam}, {"omega", om}, {"verified_identity", cert.verified_identity}}};
}

Outcome cmd_lift_ideal(Context& c) {
  IdealPresentation I = c.ideal();
  return {true, {{"generators", polys(I.generators())}, {"groebner_basis", polys(I.gb().basis())}, {"fiber_linear", I.fiber_linear()}}};
}

Outcome cmd_closure_check(Context& c) {
  IdealPresentation I = c.ideal();
  auto r = poisson_closure_check(I);
  json pairs = json::array();
  for (const auto& m : r.pairs) pairs.push_back(bracket_membership(m, true));
  Outcome o{r.passed, {{"generators", polys(I.generators())}, {"pairs", pairs}}};
  if (r.witness) o.result["witness"] = *r.witness;
  return o;
}

Outcome cmd_normalizer_check(Context& c) {
  IdealPresentation I = c.ideal();
  auto cands = c.chosen_candidates();
  if (cands.empty()) throw PreconditionError("no candidates: pass --candidate or add 'candidates' to the scene");
  Outcome o;
  json list = json::object();
  for (const auto& [name, f] : cands) {
    auto r = normalizer_check(I, f);
    o.passed = o.passed && r.passed;
    list[name] = normalizer(r);
  }
  o.result = {{"generators", polys(I.generators())}, {"candidates", list}};
  return o;
}

Outcome cmd_reduced_bracket(Context& c) {
  IdealPresentation I = c.ideal();
  auto cands = c.chosen_candidates();
  if (cands.size() < 2) throw PreconditionError("reduced-bracket needs two candidates");
  const auto& [nf, f] = cands[0];
  const auto& [ng, g] = cands[1];
  Polynomial r = reduced_bracket(I, f, g);
  return {true, {{"f", {{"name", nf}, {"expression", poly(f)}}},
                 {"g", {{"name", ng}, {"expression", poly(g)}}},
                 {"bracket", poly(canonical_poisson(f, g))},
                 {"reduced", poly(r)}}};
}

Outcome cmd_point_report(Context& c) {
  FoliationModule F = c.foliation();
  json reps = json::array();
  const auto pts = c.chosen_points();
  for (std::size_t n = 0; n < pts.size(); ++n) {
    const auto& q = pts[n];
    auto r = isotropy_algebra(F, q);
    json basis = json::array();
    for (const auto& v : r.isotropy_basis) basis.push_back(rationals(v));
    json sc = json::array();
    for (const auto& k : r.structure_constants) {
      json m = json::array();
      for (const auto& row : k) m.push_back(rationals(row));
      sc.push_back(m);
    }
    reps.push_back({{"point", rationals(r.point)},
                    {"tangent_dim", r.tangent_dim},
                    {"fiber_dim", r.fiber_dim},
                    {"isotropy_dim", r.isotropy_dim},
                    {"isotropy_basis", basis},
                    {"structure_constants", sc}});
    if (!c.opt.point && n < c.scene.reference_fiber_dims.size() && c.scene.reference_fiber_dims[n]) {
      std::size_t ref = *c.scene.reference_fiber_dims[n];
      reps.back()["reference_fiber_dim"] = ref;
      reps.back()["matches_reference"] = ref == r.fiber_dim;
    }
  }
  return {true, {{"generators", fields(F.generators())}, {"syzygies", json(F.syzygies().size())}, {"points", reps}}};
}

Outcome cmd_module_equal(Context& c) {
  if (!c.scene.foliation_other) throw PreconditionError("scene has no 'foliation_other'");
  FoliationModule F1 = c.foliation();
  FoliationModule F2(c.scene.chart, *c.scene.foliation_other, c.module_order());
  auto r = module_equal(F1, F2);
  return {r.passed, {{"first", fields(F1.generators())}, {"second", fields(F2.generators())}, {"comparison", module_comparison(r)}}};
}

Outcome cmd_check_riemannian(Context& c) {
  auto r = check_riemannian(c.submersion().data);
  json d = json::array();
  for (const auto& e : r.defects) d.push_back({{"i", e.i}, {"j", e.j}, {"defect", poly(e.defect)}});
  return {r.passed, {{"defects", d}}};
}

json probe_pullbacks(const SubmersionData& s, const std::vector<Polynomial>& probes) {
  json out = json::array();
  for (const auto& f : probes) out.push_back({{"probe", poly(f)}, {"pullback", poly(pullback_function(s, f))}});
  return out;
}

Outcome cmd_phi_pi(Context& c) {
  const auto& s = c.submersion().data;
  CotangentMap phi = phi_pi(s);
  return {true, {{"base_components", polys(phi.base_components())},
                 {"fiber_components", polys(phi.fiber_components())},
                 {"probes", probe_pullbacks(s, c.scene.probes)}}};
}

Outcome cmd_pullback(Context& c) {
  const auto& sub = c.submersion();
  FoliationModule target(sub.data.target(), sub.target_foliation, c.module_order());
  FoliationModule pulled = pullback_foliation(sub.data, target);
  auto inv = involutivity_check(pulled);
  Outcome o{inv.passed, {{"generators", fields(pulled.generators())},
                          {"involutive", inv.passed},
                          {"probes", probe_pullbacks(sub.data, c.scene.probes)}}};
  if (c.scene.outer) {
    const auto& outer = *c.scene.outer;
    SubmersionData composed = sub.data.then(outer.data);
    bool functor = phi_pi(composed) == phi_pi(outer.data).after(phi_pi(sub.data));
    FoliationModule Fo(outer.data.target(), outer.target_foliation, c.module_order());
    FoliationModule direct = pullback_foliation(composed, Fo);
    FoliationModule stepwise = pullback_foliation(sub.data, pullback_foliation(outer.data, Fo));
    auto cmp = module_equal(direct, stepwise);
    o.passed = o.passed && functor && cmp.passed;
    o.result["composition"] = {{"phi_functorial", functor},
                               {"direct", fields(direct.generators())},
                               {"stepwise", fields(stepwise.generators())},
                               {"comparison", module_comparison(cmp)}};
  }
  return o;
}

Outcome cmd_poisson_defect(Context& c) {
  const auto& s = c.submersion().data;
  const auto& probes = c.scene.probes;
  if (probes.size() < 2) throw PreconditionError("poisson-defect needs at least two probes");
  Outcome o;
  json pairs = json::array();
  for (std::size_t i = 0; i < probes.size(); ++i) {
    for (std::size_t j = i + 1; j < probes.size(); ++j) {
      auto d = poisson_defect(s, probes[i], probes[j]);
      o.passed = o.passed && d.certificate.claim_holds();
      pairs.push_back({{"f", poly(probes[i])}, {"g", poly(probes[j])}, {"defect", poly(d.defect)}, {"certificate", cert(d.certificate)}});
    }
  }
  o.result = {{"pairs", pairs}, {"vertical_ideal", polys(vertical_ideal(s).generators())}};
  return o;
}

Outcome cmd_metric_defect(Context& c) {
  const auto& s = c.submersion().data;
  auto d = metric_defect(s);
  return {d.certificate.claim_holds(),
          {{"defect", poly(d.defect)}, {"certificate", cert(d.certificate)}, {"vertical_ideal", polys(vertical_ideal(s).generators())}}};
}

Outcome cmd_integrability(Context& c) {
  auto r = integrability_check(c.submersion().data);
  json w = json::array();
  for (const auto& x : r.witnesses) w.push_back({{"i", x.i}, {"j", x.j}, {"defect", field(x.defect)}});
  return {r.passed, {{"witnesses", w}}};
}

Outcome cmd_morita_span(Context& c) {
  if (!c.scene.morita) throw PreconditionError("scene has no 'morita' block");
  const auto& [l, r] = *c.scene.morita;
  FoliationModule F1(l.data.target(), l.target_foliation, c.module_order());
  FoliationModule F2(r.data.target(), r.target_foliation, c.module_order());
  auto m = morita_span_check(l.data, r.data, F1, F2);
  return {m.passed, {{"left", fields(m.left.generators())},
                     {"right", fields(m.right.generators())},
                     {"comparison", module_comparison(m.comparison)},
                     {"structural", "surjectivity and connected fibers hold for coordinate projections; not checked"}}};
}

struct FlowSetup {
  FlowState start;
  double t_end;
  double dt;
  double tol;
};

FlowSetup flow_setup(Context& c) {
  if (!c.scene.flow) throw PreconditionError("scene has no 'flow' block");
  const auto& f = *c.scene.flow;
  FlowSetup s{f.start, c.opt.t_end.value_or(f.t_end), c.opt.dt.value_or(f.dt), c.opt.tol.value_or(f.tolerance.value_or(1e-9))};
  c.tolerances["monitor"] = format_double(s.tol);
  c.tolerances["start"] = format_double(MonitorOptions{}.start_tolerance);
  c.tolerances["dt"] = format_double(s.dt);
  c.tolerances["t_end"] = format_double(s.t_end);
  return s;
}

Outcome cmd_flow_monitor(Context& c) {
  FlowSetup s = flow_setup(c);
  IdealPresentation I = c.ideal();
  Polynomial H = c.scene.metric.hamiltonian();
  if (!c.opt.candidates.empty())
    H = c.scene.candidate(c.opt.candidates.front());
  else if (c.scene.flow->hamiltonian)
    H = *c.scene.flow->hamiltonian;
  auto rep = monitor_ideal_preservation(I, H, s.start, s.t_end, s.dt);
  bool normal = normalizer_check(I, H).passed;
  return {rep.max_abs_generator <= s.tol,
          {{"hamiltonian", poly(H)}, {"generators", polys(I.generators())}, {"in_normalizer", normal}, {"monitor", monitor(rep)}}};
}

Outcome cmd_geodesic_check(Context& c) {
  FlowSetup s = flow_setup(c);
  FoliationModule F = c.foliation();
  auto rep = geodesic_orthogonality_check(F, c.scene.metric, s.start, s.t_end, s.dt);
  bool module_srf = srf_check(F, c.scene.metric).passed;
  return {rep.max_abs_generator <= s.tol,
          {{"hamiltonian", poly(c.scene.metric.hamiltonian())}, {"module_srf", module_srf}, {"monitor", monitor(rep)}}};
}

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> table{
      {"check-involutive", cmd_check_involutive},
      {"check-srf", cmd_check_srf},
      {"killing-connection", cmd_killing_connection},
      {"lift-ideal", cmd_lift_ideal},
      {"closure-check", cmd_closure_check},
      {"normalizer-check", cmd_normalizer_check},
      {"reduced-bracket", cmd_reduced_bracket},
      {"point-report", cmd_point_report},
      {"module-equal", cmd_module_equal},
      {"check-riemannian", cmd_check_riemannian},
      {"phi-pi", cmd_phi_pi},
      {"pullback", cmd_pullback},
      {"poisson-defect", cmd_poisson_defect},
      {"metric-defect", cmd_metric_defect},
      {"integrability", cmd_integrability},
      {"morita-span", cmd_morita_span},
      {"flow-monitor", cmd_flow_monitor},
      {"geodesic-check", cmd_geodesic_check},
  };
  return table;
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::error: return "error";
  }
  return "error";
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [k, v] : handlers()) out.push_back(k);
    return out;
  }();
  return names;
}

bool is_command(const std::string& name) { return handlers().count(name) != 0; }

CommandResult run_command(const std::string& command, const Scene& scene, const CommandOptions& options) {
  auto it = handlers().find(command);
  if (it == handlers().end()) throw Error("unknown command '" + command + "'");
  Context ctx{scene, options};
  CommandResult res;
  json body;
  try {
    Outcome o = it->second(ctx);
    res.verdict = o.passed ? Verdict::pass : Verdict::fail;
    body = std::move(o.result);
  } catch (const InternalError& e) {
    res.verdict = Verdict::error;
    body = {{"error", std::string("internal error: ") + e.what()}};
  } catch (const Error& e) {
    res.verdict = Verdict::error;
    body = {{"error", e.what()}};
  }
  json prov{{"tool", "foliatk"},
            {"version", FOLIATK_VERSION},
            {"module_order", to_string(ctx.module_order())},
            {"ideal_order", to_string(ctx.ideal_order())},
            {"tolerances", ctx.tolerances},
            {"arithmetic", "exact rationals (GMP); monitors in IEEE doubles"}};
  res.report = {{"command", command}, {"scene", scene.name}, {"verdict", verdict_name(res.verdict)},
                {"result", std::move(body)}, {"provenance", std::move(prov)}};
  if (!scene.notes.empty()) res.report["notes"] = scene.notes;
  return res;
}

}  // namespace foliatk
