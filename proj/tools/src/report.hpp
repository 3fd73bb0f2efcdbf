#pragma once

#include "config.hpp"

#include "json.hpp"

#include <string>
#include <vector>

namespace hypsym::cli {

struct CommandResult {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  nlohmann::ordered_json summary = nlohmann::ordered_json::object();
  bool property_checked = false;
  bool property_passed = true;
  std::string property_message;
};

std::string format_real(double x);
std::string csv_field(const std::string& s);

// CSV with the resolved config as leading "# key = value" lines.
std::string render_csv(const RunConfig& cfg, const CommandResult& result);
// {"command", "config", "summary", "property_check"}
std::string render_json(const RunConfig& cfg, const CommandResult& result);

// Writes the files selected by "format"; returns their paths.
std::vector<std::string> write_outputs(const RunConfig& cfg, const CommandResult& result);

}  // namespace hypsym::cli
