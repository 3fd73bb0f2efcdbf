#include "config.hpp"

#include "hypsym/errors.hpp"
#include "hypsym/quadratic.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace hypsym::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(trim(item));
  if (!s.empty() && s.back() == sep) out.push_back("");
  return out;
}

KeySpec key(std::string name, std::string def, std::string help) {
  return {std::move(name), std::move(def), std::move(help)};
}

std::vector<KeySpec> output_keys() {
  return {key("output_dir", ".", "directory for output files (default from HYPSYM_OUTPUT_DIR)"),
          key("output", "", "base name of output files (default: the command name)"),
          key("format", "both", "csv, json or both"),
          key("workers", "1", "worker threads (0 = hardware concurrency)")};
}

std::vector<KeySpec> group_keys() {
  return {key("group", "gamma0", "gamma0, gamma1 or imagquad"),
          key("N", "11", "level over Z"),
          key("D", "-4", "discriminant for imagquad: -3, -4, -7, -8, -11"),
          key("level_gen", "1,0", "level generator x,y (x + y omega) for imagquad"),
          key("sign", "positive", "positive (c > 0) or both (c of either sign) over Z")};
}

std::vector<KeySpec> character_keys() {
  return {key("character", "trivial", "trivial or dirichlet (sigma_chi on Gamma0(N), N prime)"),
          key("chi_order", "5", "order of the Dirichlet character")};
}

std::vector<KeySpec> period_keys() {
  return {key("q0", "110", "sample bound for period detection"),
          key("denom_bound", "10000", "denominator bound for rational reconstruction"),
          key("eps", "1e-12", "target accuracy of each symbol")};
}

std::vector<KeySpec> concat(std::initializer_list<std::vector<KeySpec>> parts) {
  std::vector<KeySpec> out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

const std::map<std::string, std::vector<KeySpec>>& command_table() {
  static const std::map<std::string, std::vector<KeySpec>> table = {
      {"enumerate", concat({group_keys(),
                            {key("X", "100", "cutoff on |c|"),
                             key("volume", "0", "covolume of the group (0: no prediction)")},
                            output_keys()})},
      {"kloosterman", concat({group_keys(), character_keys(),
                              {key("X", "110", "largest |c|"), key("mu", "0", "dual-lattice coordinates of mu"),
                               key("nu", "0", "dual-lattice coordinates of nu")},
                              output_keys()})},
      {"lseries", concat({group_keys(), character_keys(),
                          {key("s", "2", "exponent s as re or re,im"), key("mu", "0", "dual-lattice coordinates"),
                           key("X", "1000", "cutoff on |c|")},
                          output_keys()})},
      {"eisenstein", concat({group_keys(), character_keys(),
                             {key("x", "0", "boundary coordinates of P"), key("y", "2", "height of P"),
                              key("s", "2", "exponent s as re or re,im"), key("X", "2000", "cutoff on |c|"),
                              key("lattice_cut", "50", "cutoff on |lambda| in the direct sum"),
                              key("mu_cut", "10", "cutoff on |mu| in the Fourier sum"),
                              key("tol", "1e-3", "agreement required between the two truncations")},
                             output_keys()})},
      {"modsym", concat({{key("newform", "", "newform file or builtin:eta11"), key("Q", "110", "largest q"),
                          key("eps", "1e-12", "target accuracy of each symbol")},
                         output_keys()})},
      {"periods", concat({{key("newform", "", "newform file or builtin:eta11"), key("p", "5", "prime")},
                          period_keys(), output_keys()})},
      {"hecke-check", concat({{key("N", "11", "prime level"), key("chi_order", "5", "order of chi"),
                               key("hecke_primes", "2,3,5,7,13", "Hecke primes l (l != N)"),
                               key("samples", "100", "random elements of Gamma0(N) per prime"),
                               key("seed", "1", "seed of the sample")},
                              output_keys()})},
      {"equidist-modp", concat({{key("newform", "", "up to three newform references, comma separated"),
                                 key("p", "3", "prime"), key("Q", "2000", "largest q"),
                                 key("lo", "0", "interval start in [0, 1)"), key("hi", "1", "interval end"),
                                 key("tv_max", "0", "fail when TV exceeds this (0: no check)"),
                                 key("seed", "1", "seed of the general-position sample")},
                                period_keys(), output_keys()})},
      {"equidist-mod1", concat({{key("newform", "", "newform file or builtin:eta11"), key("Q", "2000", "largest q"),
                                 key("bins", "4", "boxes per axis"), key("eps", "1e-12", "target accuracy")},
                                output_keys()})},
      {"equidist-cusp", concat({group_keys(), {key("X", "60", "cutoff on |c|"), key("bins", "2", "boxes per axis")},
                                output_keys()})},
      {"weyl", concat({{key("newform", "", "newform file or builtin:eta11"), key("p", "3", "prime"),
                        key("x_values", "200,2000", "cutoffs X"), key("mu_list", "-1,0,1", "twists mu"),
                        key("decay_factor", "0", "require ratio(last X) < factor * ratio(first X) (0: no check)")},
                       period_keys(), output_keys()})},
  };
  return table;
}

bool parse_int(const std::string& s, std::int64_t& out) {
  const auto t = trim(s);
  if (t.empty()) return false;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), out);
  return ec == std::errc() && ptr == t.data() + t.size();
}

bool parse_real(const std::string& s, double& out) {
  const auto t = trim(s);
  if (t.empty()) return false;
  char* end = nullptr;
  out = std::strtod(t.c_str(), &end);
  return end == t.c_str() + t.size() && std::isfinite(out);
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"enumerate",     "kloosterman",   "lseries",       "eisenstein",
                                                 "modsym",        "periods",       "hecke-check",   "equidist-modp",
                                                 "equidist-mod1", "equidist-cusp", "weyl"};
  return names;
}

const std::vector<KeySpec>& command_keys(const std::string& command) {
  const auto& t = command_table();
  auto it = t.find(command);
  if (it == t.end()) throw ConfigError("unknown command '" + command + "'");
  return it->second;
}

bool is_known_key(const std::string& k) {
  if (k == "command") return true;
  for (const auto& [cmd, keys] : command_table())
    for (const auto& ks : keys)
      if (ks.name == k) return true;
  return false;
}

std::map<std::string, Setting> parse_config_text(const std::string& text, const std::string& source) {
  std::map<std::string, Setting> out;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string where = source + ":" + std::to_string(number);
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(where + ": expected 'key = value'");
    const std::string k = trim(line.substr(0, eq));
    const std::string v = trim(line.substr(eq + 1));
    if (k.empty()) throw ConfigError(where + ": empty key");
    if (!is_known_key(k)) throw ConfigError(where + ": unknown key '" + k + "'");
    if (auto it = out.find(k); it != out.end() && it->second.value != v)
      throw ConfigError(where + ": key '" + k + "' already set at " + it->second.origin);
    out[k] = {v, where};
  }
  return out;
}

std::map<std::string, Setting> parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config_text(text.str(), path);
}

RunConfig RunConfig::resolve(std::string command, const std::map<std::string, Setting>& file,
                             const std::map<std::string, Setting>& flags, const std::string& config_dir) {
  RunConfig cfg;
  if (command.empty()) {
    auto it = file.find("command");
    if (it == file.end()) throw ConfigError("no command given (use a subcommand or 'command = ...')");
    command = it->second.value;
  } else if (auto it = file.find("command"); it != file.end() && it->second.value != command) {
    cfg.warnings_.push_back(it->second.origin + ": config names command '" + it->second.value +
                            "', running '" + command + "'");
  }
  const auto& keys = command_keys(command);
  cfg.command_ = command;
  cfg.config_dir_ = config_dir;
  for (const auto& ks : keys) cfg.settings_[ks.name] = {ks.default_value, "default"};
  if (const char* env = std::getenv("HYPSYM_OUTPUT_DIR"); env != nullptr && *env != '\0')
    cfg.settings_["output_dir"] = {env, "env"};
  auto apply = [&](const std::map<std::string, Setting>& layer) {
    for (const auto& [k, s] : layer) {
      if (k == "command") continue;
      if (!cfg.settings_.count(k)) {
        cfg.warnings_.push_back(s.origin + ": key '" + k + "' is not used by '" + command + "'");
        continue;
      }
      cfg.settings_[k] = s;
    }
  };
  apply(file);
  apply(flags);
  if (cfg.settings_["output"].value.empty()) cfg.settings_["output"] = {command, "default"};
  cfg.validate();
  return cfg;
}

bool RunConfig::has(const std::string& k) const { return settings_.count(k) != 0; }

const std::string& RunConfig::str(const std::string& k) const {
  auto it = settings_.find(k);
  if (it == settings_.end()) throw ConfigError("key '" + k + "' is not defined for '" + command_ + "'");
  return it->second.value;
}

void RunConfig::fail(const std::string& k, const std::string& message) const {
  auto it = settings_.find(k);
  const std::string where = it == settings_.end() ? std::string("config") : it->second.origin;
  throw ConfigError(where + ": key '" + k + "': " + message);
}

std::int64_t RunConfig::integer(const std::string& k) const {
  std::int64_t v = 0;
  if (!parse_int(str(k), v)) fail(k, "expected an integer, got '" + str(k) + "'");
  return v;
}

double RunConfig::real(const std::string& k) const {
  double v = 0;
  if (!parse_real(str(k), v)) fail(k, "expected a number, got '" + str(k) + "'");
  return v;
}

std::complex<double> RunConfig::complex_value(const std::string& k) const {
  const auto parts = split(str(k), ',');
  double re = 0, im = 0;
  if (parts.empty() || parts.size() > 2 || !parse_real(parts[0], re) ||
      (parts.size() == 2 && !parse_real(parts[1], im)))
    fail(k, "expected 're' or 're,im', got '" + str(k) + "'");
  return {re, im};
}

std::vector<std::int64_t> RunConfig::int_list(const std::string& k) const {
  std::vector<std::int64_t> out;
  for (const auto& part : split(str(k), ',')) {
    std::int64_t v = 0;
    if (!parse_int(part, v)) fail(k, "expected comma-separated integers, got '" + str(k) + "'");
    out.push_back(v);
  }
  if (out.empty()) fail(k, "empty list");
  return out;
}

std::vector<double> RunConfig::real_list(const std::string& k) const {
  std::vector<double> out;
  for (const auto& part : split(str(k), ',')) {
    double v = 0;
    if (!parse_real(part, v)) fail(k, "expected comma-separated numbers, got '" + str(k) + "'");
    out.push_back(v);
  }
  if (out.empty()) fail(k, "empty list");
  return out;
}

std::vector<std::string> RunConfig::str_list(const std::string& k) const {
  std::vector<std::string> out;
  for (const auto& part : split(str(k), ','))
    if (!part.empty()) out.push_back(part);
  return out;
}

std::vector<std::string> RunConfig::newform_refs() const {
  std::vector<std::string> out;
  const auto& origin = settings_.at("newform").origin;
  const bool from_file = origin != "flag" && origin != "default" && origin != "env";
  for (auto ref : str_list("newform")) {
    if (ref.rfind("builtin:", 0) != 0 && from_file && !config_dir_.empty() &&
        std::filesystem::path(ref).is_relative())
      ref = (std::filesystem::path(config_dir_) / ref).lexically_normal().string();
    out.push_back(ref);
  }
  return out;
}

void RunConfig::validate() {
  auto require = [&](bool ok, const std::string& k, const std::string& msg) {
    if (!ok) fail(k, msg);
  };
  auto one_of = [&](const std::string& k, std::set<std::string> allowed) {
    if (!has(k)) return;
    if (!allowed.count(str(k))) {
      std::string list;
      for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
      fail(k, "must be one of " + list + ", got '" + str(k) + "'");
    }
  };
  one_of("format", {"csv", "json", "both"});
  one_of("group", {"gamma0", "gamma1", "imagquad"});
  one_of("sign", {"positive", "both"});
  one_of("character", {"trivial", "dirichlet"});
  if (has("workers")) require(integer("workers") >= 0, "workers", "must be >= 0");
  if (has("output")) {
    const auto& out = str("output");
    require(out.find('/') == std::string::npos && out != "." && out != "..", "output", "must be a plain file name");
  }
  if (has("N")) require(integer("N") >= 1, "N", "must be >= 1");
  if (has("D")) {
    const auto d = integer("D");
    require(d == -3 || d == -4 || d == -7 || d == -8 || d == -11, "D", "must be one of -3, -4, -7, -8, -11");
  }
  if (has("level_gen")) {
    const auto g = int_list("level_gen");
    require(g.size() == 2 && (g[0] != 0 || g[1] != 0), "level_gen", "must be two integers, not both zero");
  }
  if (has("X")) require(real("X") >= 1.0, "X", "must be >= 1");
  if (has("Q")) require(integer("Q") >= 1, "Q", "must be >= 1");
  if (has("p")) require(is_prime(integer("p")), "p", "must be prime, got " + str("p"));
  if (has("s")) complex_value("s");
  if (has("mu")) int_list("mu");
  if (has("nu")) int_list("nu");
  if (has("x")) real_list("x");
  if (has("y")) require(real("y") > 0, "y", "must be positive");
  if (has("lattice_cut")) require(real("lattice_cut") >= 0, "lattice_cut", "must be >= 0");
  if (has("mu_cut")) require(real("mu_cut") >= 0, "mu_cut", "must be >= 0");
  if (has("tol")) require(real("tol") > 0, "tol", "must be positive");
  if (has("volume")) require(real("volume") >= 0, "volume", "must be >= 0");
  if (has("eps")) require(real("eps") > 0 && real("eps") < 1e-3, "eps", "must be in (0, 1e-3)");
  if (has("q0")) require(integer("q0") >= 1, "q0", "must be >= 1");
  if (has("denom_bound")) require(integer("denom_bound") >= 2, "denom_bound", "must be >= 2");
  if (has("bins")) require(integer("bins") >= 1 && integer("bins") <= 64, "bins", "must be in 1..64");
  if (has("lo") && has("hi")) {
    require(real("lo") >= 0 && real("lo") < 1, "lo", "must be in [0, 1)");
    require(real("hi") > real("lo") && real("hi") <= 1, "hi", "must be in (lo, 1]");
  }
  if (has("tv_max")) require(real("tv_max") >= 0, "tv_max", "must be >= 0");
  if (has("decay_factor")) require(real("decay_factor") >= 0, "decay_factor", "must be >= 0");
  if (has("samples")) require(integer("samples") >= 1, "samples", "must be >= 1");
  if (has("seed")) integer("seed");
  if (has("x_values"))
    for (double x : real_list("x_values")) require(x >= 1, "x_values", "cutoffs must be >= 1");
  if (has("mu_list")) int_list("mu_list");

  if (has("newform")) {
    const auto refs = str_list("newform");
    require(!refs.empty(), "newform", "is required by '" + command_ + "' (a file path or builtin:eta11)");
    const std::size_t max_forms = command_ == "equidist-modp" ? 3 : 1;
    require(refs.size() <= max_forms, "newform",
            "at most " + std::to_string(max_forms) + " form(s) for '" + command_ + "'");
  }
  if (has("chi_order")) require(integer("chi_order") >= 1, "chi_order", "must be >= 1");
  const bool dirichlet = has("character") && str("character") == "dirichlet";
  if (dirichlet || command_ == "hecke-check") {
    if (has("group")) require(str("group") == "gamma0", "character", "dirichlet characters need group = gamma0");
    require(is_prime(integer("N")), "N", "must be prime for a Dirichlet character");
    require((integer("N") - 1) % integer("chi_order") == 0, "chi_order", "must divide N - 1");
  }
  if (command_ == "hecke-check")
    for (auto l : int_list("hecke_primes")) {
      require(is_prime(l), "hecke_primes", std::to_string(l) + " is not prime");
      require(l != integer("N"), "hecke_primes", "l must differ from N");
    }
}

}  // namespace hypsym::cli
