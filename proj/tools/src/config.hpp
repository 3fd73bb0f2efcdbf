#pragma once

// Run configuration for the hypsym tool: "key = value" files, command-line
// flags with the same names, and per-command defaults and validation.

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace hypsym::cli {

struct KeySpec {
  std::string name;
  std::string default_value;  // empty: no default
  std::string help;
};

const std::vector<std::string>& command_names();
// Keys read by a command, in display order. Throws ConfigError for unknown commands.
const std::vector<KeySpec>& command_keys(const std::string& command);
bool is_known_key(const std::string& key);

struct Setting {
  std::string value;
  std::string origin;  // "default", "env", "flag", or "<file>:<line>"
};

// Raw entries of a config file; keys may repeat only if the value is identical.
std::map<std::string, Setting> parse_config_file(const std::string& path);
std::map<std::string, Setting> parse_config_text(const std::string& text, const std::string& source);

class RunConfig {
 public:
  // Layers: defaults < HYPSYM_OUTPUT_DIR < file < flags. The command may come from
  // the file ("command" key) when not given explicitly. Validates the result.
  static RunConfig resolve(std::string command, const std::map<std::string, Setting>& file,
                           const std::map<std::string, Setting>& flags, const std::string& config_dir = "");

  const std::string& command() const { return command_; }
  // Resolved values of the command's keys, in key order.
  const std::map<std::string, Setting>& settings() const { return settings_; }
  std::vector<std::string> warnings() const { return warnings_; }

  bool has(const std::string& key) const;
  const std::string& str(const std::string& key) const;
  std::int64_t integer(const std::string& key) const;
  double real(const std::string& key) const;
  std::complex<double> complex_value(const std::string& key) const;
  std::vector<std::int64_t> int_list(const std::string& key) const;
  std::vector<double> real_list(const std::string& key) const;
  std::vector<std::string> str_list(const std::string& key) const;
  // Newform references with relative paths resolved against the config file.
  std::vector<std::string> newform_refs() const;

  // Throws ConfigError naming the key and where it was set.
  [[noreturn]] void fail(const std::string& key, const std::string& message) const;

 private:
  void validate();

  std::string command_;
  std::string config_dir_;
  std::map<std::string, Setting> settings_;
  std::vector<std::string> warnings_;
};

}  // namespace hypsym::cli
