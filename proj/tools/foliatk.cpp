#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "foliatk/commands.hpp"
#include "foliatk/scene.hpp"

int main(int argc, char** argv) {
  using namespace foliatk;
  CLI::App app{"Exact checks for polynomial singular Riemannian foliations"};
  app.set_version_flag("--version", std::string(FOLIATK_VERSION));

  std::string command;
  std::string scene_path;
  std::string point;
  std::vector<std::string> candidates;
  std::optional<double> tol;
  std::optional<double> dt;
  std::optional<double> t_end;
  std::string order;
  std::string json_out;

  std::string names;
  for (const auto& n : command_names()) names += (names.empty() ? "" : ", ") + n;
  app.add_option("command", command, "One of: " + names)->required();
  app.add_option("--scene", scene_path, "Scene JSON file")->required();
  app.add_option("--point", point, "Comma separated rational coordinates, e.g. \"1,0,0\"");
  app.add_option("--candidate", candidates, "Candidate name from the scene (repeatable)");
  app.add_option("--tol", tol, "Monitor threshold");
  app.add_option("--dt", dt, "Time step");
  app.add_option("--t-end", t_end, "Integration time");
  app.add_option("--order", order, "Monomial order")->check(CLI::IsMember({"grevlex", "lex", "block"}));
  app.add_option("--json-out", json_out, "Write the report here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (!is_command(command)) {
    std::cerr << "foliatk: unknown command '" << command << "' (expected one of: " << names << ")\n";
    return 2;
  }

  CommandOptions opt;
  opt.candidates = candidates;
  opt.tol = tol;
  opt.dt = dt;
  opt.t_end = t_end;
  try {
    if (!point.empty()) opt.point = parse_point(point);
    if (!order.empty()) opt.order = parse_order(order);
  } catch (const Error& e) {
    std::cerr << "foliatk: " << e.what() << "\n";
    return 2;
  }

  try {
    Scene scene = load_scene(scene_path);
    CommandResult res = run_command(command, scene, opt);
    std::string text = res.report.dump(2) + "\n";
    if (json_out.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(json_out);
      if (!out) {
        std::cerr << "foliatk: cannot write '" << json_out << "'\n";
        return 2;
      }
      out << text;
      std::cout << command << ": " << res.report["verdict"].get<std::string>() << "\n";
    }
    if (res.verdict == Verdict::error) std::cerr << "foliatk: " << res.report["result"]["error"].get<std::string>() << "\n";
    return res.exit_code();
  } catch (const Error& e) {
    std::cerr << "foliatk: " << e.what() << "\n";
    return 2;
  }
}
