#pragma once

#include <optional>
#include <string>
#include <vector>

#include "foliatk/scene.hpp"
#include "json.hpp"

namespace foliatk {

struct CommandOptions {
  std::optional<std::vector<Rational>> point;
  std::vector<std::string> candidates;
  std::optional<double> tol;
  std::optional<double> dt;
  std::optional<double> t_end;
  std::optional<OrderKind> order;
};

enum class Verdict { pass, fail, error };

struct CommandResult {
  Verdict verdict = Verdict::error;
  nlohmann::json report;  // std::map backed, so keys come out sorted
  int exit_code() const { return verdict == Verdict::pass ? 0 : verdict == Verdict::fail ? 1 : 2; }
};

const std::vector<std::string>& command_names();
bool is_command(const std::string& name);

/// Runs one command on a parsed scene. Scene-level precondition failures
/// come back as Verdict::error with the message in the report; an unknown
/// command throws Error.
CommandResult run_command(const std::string& command, const Scene& scene, const CommandOptions& options = {});

/// Fixed 17-significant-digit rendering used for every double in a report.
std::string format_double(double v);

}  // namespace foliatk
