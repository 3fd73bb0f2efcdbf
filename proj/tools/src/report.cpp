#include "report.hpp"

#include "hypsym/errors.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace hypsym::cli {

namespace {

constexpr const char* kVersion = "0.1.0";

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw ConfigError("write failed for '" + path.string() + "'");
}

}  // namespace

std::string format_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17e", x);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string render_csv(const RunConfig& cfg, const CommandResult& result) {
  std::ostringstream out;
  out << "# hypsym " << kVersion << "\n";
  out << "# command = " << cfg.command() << "\n";
  for (const auto& [k, s] : cfg.settings()) out << "# " << k << " = " << s.value << "\n";
  for (std::size_t i = 0; i < result.columns.size(); ++i) out << (i ? "," : "") << csv_field(result.columns[i]);
  out << "\r\n";
  for (const auto& row : result.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_field(row[i]);
    out << "\r\n";
  }
  return out.str();
}

std::string render_json(const RunConfig& cfg, const CommandResult& result) {
  nlohmann::ordered_json doc;
  doc["tool"] = std::string("hypsym ") + kVersion;
  doc["command"] = cfg.command();
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  for (const auto& [k, s] : cfg.settings()) config[k] = s.value;
  doc["config"] = config;
  doc["summary"] = result.summary;
  if (result.property_checked)
    doc["property_check"] = {{"passed", result.property_passed}, {"message", result.property_message}};
  return doc.dump(2) + "\n";
}

std::vector<std::string> write_outputs(const RunConfig& cfg, const CommandResult& result) {
  const std::filesystem::path dir = cfg.str("output_dir");
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory '" + dir.string() + "': " + ec.message());
  const std::string base = cfg.str("output");
  const std::string format = cfg.str("format");
  std::vector<std::string> written;
  if (format == "csv" || format == "both") {
    const auto path = dir / (base + ".csv");
    write_file(path, render_csv(cfg, result));
    written.push_back(path.string());
  }
  if (format == "json" || format == "both") {
    const auto path = dir / (base + ".json");
    write_file(path, render_json(cfg, result));
    written.push_back(path.string());
  }
  return written;
}

}  // namespace hypsym::cli
