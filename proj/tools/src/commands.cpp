#include "commands.hpp"

#include "hypsym/analytic.hpp"
#include "hypsym/characters.hpp"
#include "hypsym/equidist.hpp"
#include "hypsym/groups.hpp"
#include "hypsym/modsym.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <memory>
#include <numeric>

namespace hypsym::cli {

namespace {

using json = nlohmann::ordered_json;

std::string num(std::int64_t v) { return std::to_string(v); }
std::string real(double v) { return format_real(v); }

std::string join(const std::vector<std::int64_t>& v, const char* sep = ",") {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + std::to_string(v[i]);
  return out;
}

unsigned workers(const RunConfig& cfg) { return static_cast<unsigned>(cfg.integer("workers")); }

GroupDescriptor make_group(const RunConfig& cfg) {
  const auto& g = cfg.str("group");
  const auto sign = cfg.str("sign") == "both" ? SignConvention::BothSigns : SignConvention::PositiveC;
  if (g == "gamma0") return GroupDescriptor::gamma0(cfg.integer("N"), sign);
  if (g == "gamma1") return GroupDescriptor::gamma1(cfg.integer("N"), sign);
  const auto gen = cfg.int_list("level_gen");
  return GroupDescriptor::imag_quad_gamma0(static_cast<int>(cfg.integer("D")), {gen[0], gen[1]});
}

Cocycle make_character(const RunConfig& cfg) {
  if (cfg.str("character") == "trivial") return Cocycle::trivial();
  return Cocycle::dirichlet_entry(DirichletCharacter(cfg.integer("N"), cfg.integer("chi_order")));
}

std::vector<std::int64_t> dual_coords(const RunConfig& cfg, const std::string& k, const GroupDescriptor& g) {
  auto v = cfg.int_list(k);
  if (static_cast<int>(v.size()) != g.boundary_dim())
    cfg.fail(k, "needs " + std::to_string(g.boundary_dim()) + " coordinate(s) for this group");
  return v;
}

json complex_json(std::complex<double> z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

Newform load_form(const std::string& ref, std::int64_t q_max, double eps) {
  if (ref == "builtin:eta11") {
    const double height = 1.0 / static_cast<double>(std::max<std::int64_t>(q_max, 1));
    return eta_product_coefficients(required_terms(height, eps) + 1);
  }
  if (ref.rfind("builtin:", 0) == 0) throw ConfigError("unknown builtin newform '" + ref + "'");
  return load_newform(ref);
}

struct FormData {
  std::string ref;
  std::shared_ptr<ModularSymbolOracle> oracle;
};

std::vector<FormData> load_forms(const RunConfig& cfg, std::int64_t q_max) {
  std::vector<FormData> out;
  const double eps = cfg.real("eps");
  for (const auto& ref : cfg.newform_refs()) {
    auto oracle = std::make_shared<ModularSymbolOracle>(load_form(ref, q_max, eps), eps);
    oracle->precompute(q_max, workers(cfg));
    out.push_back({ref, std::move(oracle)});
  }
  return out;
}

json lattice_json(const PeriodLattice& l) {
  return json{{"p", l.p},         {"q0", l.q0},           {"omega_plus", l.omega_plus}, {"omega_minus", l.omega_minus},
              {"v_plus", l.v_plus}, {"v_minus", l.v_minus}, {"denom_bound", l.denom_bound}};
}

void add_report_rows(CommandResult& r, const StatisticsReport& rep) {
  r.columns = {"cell", "count", "expected", "deviation"};
  for (std::size_t i = 0; i < rep.counts.size(); ++i) {
    const double c = static_cast<double>(rep.counts[i]);
    r.rows.push_back({rep.labels[i], num(static_cast<std::int64_t>(rep.counts[i])), real(rep.expected[i]),
                      real(c - rep.expected[i])});
  }
  r.summary["total"] = rep.total;
  r.summary["cells"] = rep.counts.size();
  r.summary["tv"] = rep.tv;
  r.summary["chi2"] = rep.chi2;
}

CommandResult cmd_enumerate(const RunConfig& cfg) {
  CommandResult r;
  const auto g = make_group(cfg);
  const auto& R = g.ring();
  const double x = cfg.real("X");
  r.columns = {"c", "a", "b", "d", "cusp"};
  std::size_t count = 0;
  for_each_double_coset(g, x, [&](const DoubleCosetRep& rep) {
    const CuspPoint p = cusp_point(g, rep);
    std::string cusp;
    for (std::size_t i = 0; i < p.num.size(); ++i) cusp += (i ? ";" : "") + num(p.num[i]) + "/" + num(p.den);
    r.rows.push_back({R.to_string(rep.c), R.to_string(rep.a), R.to_string(rep.b), R.to_string(rep.d), cusp});
    ++count;
    return true;
  });
  r.summary["group"] = g.describe();
  r.summary["X"] = x;
  r.summary["count"] = count;
  r.summary["index_inf"] = g.index_inf();
  if (const double vol = cfg.real("volume"); vol > 0) {
    const double predicted = predicted_count(g, vol, x);
    r.summary["predicted_count"] = predicted;
    r.summary["count_over_predicted"] = static_cast<double>(count) / predicted;
  }
  return r;
}

CommandResult cmd_kloosterman(const RunConfig& cfg) {
  CommandResult r;
  const auto g = make_group(cfg);
  const auto chi = make_character(cfg);
  const auto mu = dual_coords(cfg, "mu", g), nu = dual_coords(cfg, "nu", g);
  r.columns = {"c", "norm_c", "reps", "value_re", "value_im"};
  for (const auto& c : lower_left_entries(g, cfg.real("X"))) {
    const auto z = kloosterman_sum(g, c, mu, nu, chi);
    r.rows.push_back({g.ring().to_string(c), num(g.ring().norm(c)),
                      num(static_cast<std::int64_t>(reps_for_c(g, c).size())), real(z.real()), real(z.imag())});
  }
  r.summary["group"] = g.describe();
  r.summary["character"] = chi.describe();
  r.summary["mu"] = mu;
  r.summary["nu"] = nu;
  r.summary["moduli"] = r.rows.size();
  return r;
}

CommandResult cmd_lseries(const RunConfig& cfg) {
  CommandResult r;
  const auto g = make_group(cfg);
  const auto chi = make_character(cfg);
  const auto mu = dual_coords(cfg, "mu", g);
  const auto part = lseries_partial(g, cfg.complex_value("s"), mu, chi, cfg.real("X"), workers(cfg));
  r.columns = {"s_re", "s_im", "mu", "X", "value_re", "value_im", "tail", "terms"};
  r.rows.push_back({real(part.s.real()), real(part.s.imag()), join(mu), real(part.x_max), real(part.value.real()),
                    real(part.value.imag()), real(part.tail), num(static_cast<std::int64_t>(part.terms))});
  r.summary["group"] = g.describe();
  r.summary["character"] = chi.describe();
  r.summary["s"] = complex_json(part.s);
  r.summary["mu"] = mu;
  r.summary["X"] = part.x_max;
  r.summary["value_re"] = part.value.real();
  r.summary["value_im"] = part.value.imag();
  r.summary["tail"] = part.tail;
  r.summary["terms"] = part.terms;
  return r;
}

CommandResult cmd_eisenstein(const RunConfig& cfg) {
  CommandResult r;
  const auto g = make_group(cfg);
  const auto chi = make_character(cfg);
  EisensteinInput in;
  in.x = cfg.real_list("x");
  if (static_cast<int>(in.x.size()) != g.boundary_dim())
    cfg.fail("x", "needs " + std::to_string(g.boundary_dim()) + " coordinate(s) for this group");
  in.y = cfg.real("y");
  in.s = cfg.complex_value("s");
  in.x_max = cfg.real("X");
  in.lattice_cut = cfg.real("lattice_cut");
  in.mu_cut = cfg.real("mu_cut");
  in.workers = workers(cfg);
  const auto direct = eisenstein_direct(g, chi, in);
  const auto fourier = eisenstein_fourier(g, chi, in);
  const double diff = std::abs(direct - fourier);
  r.columns = {"method", "value_re", "value_im"};
  r.rows.push_back({"direct", real(direct.real()), real(direct.imag())});
  r.rows.push_back({"fourier", real(fourier.real()), real(fourier.imag())});
  r.summary["group"] = g.describe();
  r.summary["character"] = chi.describe();
  r.summary["direct"] = complex_json(direct);
  r.summary["fourier"] = complex_json(fourier);
  r.summary["abs_difference"] = diff;
  r.property_checked = true;
  r.property_passed = diff <= cfg.real("tol");
  r.property_message = "|direct - fourier| = " + real(diff) + (r.property_passed ? " <= " : " > ") + cfg.str("tol");
  return r;
}

CommandResult cmd_modsym(const RunConfig& cfg) {
  CommandResult r;
  const auto q_max = cfg.integer("Q");
  auto forms = load_forms(cfg, q_max);
  const auto& o = *forms[0].oracle;
  r.columns = {"a", "q", "symbol_re", "symbol_im", "s_plus", "s_minus_im"};
  for (const auto& [a, q] : outcome_space_rationals(o.level(), q_max)) {
    const auto z = o.symbol(a, q);
    const auto s = o.symmetrized(a, q);
    r.rows.push_back({num(a), num(q), real(z.real()), real(z.imag()), real(s.plus), real(s.minus)});
  }
  r.summary["newform"] = forms[0].ref;
  r.summary["level"] = o.level();
  r.summary["coefficients"] = o.form().n_max();
  r.summary["symbols"] = r.rows.size();
  return r;
}

CommandResult cmd_periods(const RunConfig& cfg) {
  CommandResult r;
  const auto q0 = cfg.integer("q0");
  auto forms = load_forms(cfg, 2 * q0);
  const auto& o = *forms[0].oracle;
  const auto p = cfg.integer("p"), bound = cfg.integer("denom_bound");
  const auto base = detect_periods(o, p, q0, bound);
  const auto twice = detect_periods(o, p, 2 * q0, bound);
  r.columns = {"q0", "omega_plus", "omega_minus", "v_plus", "v_minus"};
  for (const auto& l : {base, twice})
    r.rows.push_back({num(l.q0), real(l.omega_plus), real(l.omega_minus), num(l.v_plus), num(l.v_minus)});
  auto close = [](double x, double y) { return std::abs(x - y) <= 1e-8 * std::max(std::abs(x), std::abs(y)); };
  const bool stable = close(base.omega_plus, twice.omega_plus) && close(base.omega_minus, twice.omega_minus) &&
                      base.v_plus == twice.v_plus && base.v_minus == twice.v_minus;
  r.summary["newform"] = forms[0].ref;
  r.summary["lattice"] = lattice_json(base);
  r.summary["lattice_at_2q0"] = lattice_json(twice);
  r.summary["stable"] = stable;
  r.property_checked = true;
  r.property_passed = stable;
  r.property_message = stable ? "periods agree at q0 and 2 q0" : "periods change between q0 and 2 q0";
  return r;
}

CommandResult cmd_hecke(const RunConfig& cfg) {
  CommandResult r;
  const auto N = cfg.integer("N");
  const DirichletCharacter chi(N, cfg.integer("chi_order"));
  const auto sigma = Cocycle::dirichlet_entry(chi);
  auto sample = sample_gamma0(N, static_cast<std::size_t>(cfg.integer("samples")),
                              static_cast<std::uint64_t>(cfg.integer("seed")));
  r.columns = {"identity", "l", "checked", "failures"};
  std::uint64_t total_failures = 0;
  std::uint64_t fail_u = 0;
  for (const auto& g : sample)
    if (atkin_lehner_apply(sigma, g, N).exact != negate(sigma.evaluate(g)).exact) ++fail_u;
  r.rows.push_back({"U sigma = -sigma", "", num(static_cast<std::int64_t>(sample.size())),
                    num(static_cast<std::int64_t>(fail_u))});
  total_failures += fail_u;
  for (auto l : cfg.int_list("hecke_primes")) {
    std::uint64_t fail_t = 0, fail_c = 0;
    for (const auto& g : sample) {
      const auto base = sigma.evaluate(g);
      if (hecke_Tl_apply(sigma, l, g, N).exact != scale(base, l + 1).exact) ++fail_t;
      const auto u_of_t = hecke_Tl_apply(sigma, l, atkin_lehner_conjugate(g, N), N);
      CocycleValue t_of_u{0.0, 0, chi.order()};
      for (const auto& term : hecke_decompose(g, l, N)) t_of_u = add(t_of_u, atkin_lehner_apply(sigma, term.gamma_r, N));
      if (u_of_t.exact != t_of_u.exact) ++fail_c;
    }
    r.rows.push_back({"T_l sigma = (l+1) sigma", num(l), num(static_cast<std::int64_t>(sample.size())),
                      num(static_cast<std::int64_t>(fail_t))});
    r.rows.push_back({"U T_l = T_l U", num(l), num(static_cast<std::int64_t>(sample.size())),
                      num(static_cast<std::int64_t>(fail_c))});
    total_failures += fail_t + fail_c;
  }
  r.summary["character"] = sigma.describe();
  r.summary["samples"] = sample.size();
  r.summary["failures"] = total_failures;
  r.property_checked = true;
  r.property_passed = total_failures == 0;
  r.property_message = r.property_passed ? "all identities hold" : std::to_string(total_failures) + " failures";
  return r;
}

CommandResult cmd_modp(const RunConfig& cfg) {
  CommandResult r;
  const auto q_max = cfg.integer("Q"), p = cfg.integer("p");
  auto forms = load_forms(cfg, std::max(q_max, cfg.integer("q0")));
  std::vector<ModpForm> modp;
  json lattices = json::array();
  std::vector<Cocycle> cocycles;
  for (const auto& f : forms) {
    const auto lat = detect_periods(*f.oracle, p, cfg.integer("q0"), cfg.integer("denom_bound"));
    modp.push_back({f.oracle.get(), lat});
    lattices.push_back(lattice_json(lat));
    cocycles.push_back(Cocycle::modular_symbol_mod_p(f.oracle, lat, SymbolSign::Plus));
    cocycles.push_back(Cocycle::modular_symbol_mod_p(f.oracle, lat, SymbolSign::Minus));
  }
  const auto rep = run_modp_experiment(modp, p, q_max, cfg.real("lo"), cfg.real("hi"), workers(cfg));
  add_report_rows(r, rep);
  r.summary["lattices"] = lattices;

  const auto level = forms[0].oracle->level();
  const auto sample = sample_gamma0(level, 60, static_cast<std::uint64_t>(cfg.integer("seed")));
  const auto gp = check_general_position(cocycles, sample);
  json gpj{{"in_general_position", gp.in_general_position}, {"violations", gp.violations.size()}};
  if (!gp.note.empty()) gpj["note"] = gp.note;
  r.summary["general_position"] = gpj;

  // Exact character match when an order-p character mod N exists.
  if (is_prime(level) && (level - 1) % p == 0) {
    json matches = json::array();
    const DirichletCharacter chi(level, p);
    for (const auto& f : modp) {
      const auto cong = check_character_congruence(f, chi, q_max, workers(cfg));
      matches.push_back({{"m", cong.m},
                         {"checked", cong.checked},
                         {"violations", cong.violations},
                         {"exact_chi_match", cong.violations == 0}});
    }
    r.summary["character_congruence"] = matches;
  }
  if (const double tv_max = cfg.real("tv_max"); tv_max > 0) {
    r.property_checked = true;
    r.property_passed = rep.tv <= tv_max;
    r.property_message = "TV = " + real(rep.tv) + (r.property_passed ? " <= " : " > ") + cfg.str("tv_max");
  }
  return r;
}

CommandResult cmd_mod1(const RunConfig& cfg) {
  CommandResult r;
  const auto q_max = cfg.integer("Q");
  auto forms = load_forms(cfg, q_max);
  const auto rep = run_mod1_experiment(*forms[0].oracle, q_max, static_cast<int>(cfg.integer("bins")), workers(cfg));
  add_report_rows(r, rep.grid);
  r.summary["discrepancy_re"] = rep.discrepancy_re;
  r.summary["discrepancy_im"] = rep.discrepancy_im;
  r.summary["discrepancy_rational"] = rep.discrepancy_rational;
  r.summary["lower_half_fraction"] = rep.lower_half_fraction;
  return r;
}

CommandResult cmd_cusp(const RunConfig& cfg) {
  CommandResult r;
  const auto g = make_group(cfg);
  const auto rep = run_cusp_experiment(g, cfg.real("X"), static_cast<int>(cfg.integer("bins")), workers(cfg));
  add_report_rows(r, rep.boxes);
  r.summary["group"] = g.describe();
  if (rep.has_quadrants) {
    r.summary["quadrants"] = rep.quadrants;
    r.summary["rotation_fixed_points"] = rep.fixed_points;
    const bool equal = std::all_of(rep.quadrants.begin(), rep.quadrants.end(),
                                   [&](std::uint64_t q) { return q == rep.quadrants[0]; });
    r.property_checked = true;
    r.property_passed = equal;
    r.property_message = equal ? "quadrant counts are equal" : "quadrant counts differ";
  }
  return r;
}

CommandResult cmd_weyl(const RunConfig& cfg) {
  CommandResult r;
  const auto p = cfg.integer("p");
  const auto xs = cfg.real_list("x_values");
  const auto q_top = static_cast<std::int64_t>(*std::max_element(xs.begin(), xs.end()));
  auto forms = load_forms(cfg, std::max(q_top, cfg.integer("q0")));
  const auto& f = forms[0];
  const auto lat = detect_periods(*f.oracle, p, cfg.integer("q0"), cfg.integer("denom_bound"));
  const auto g = GroupDescriptor::gamma0(f.oracle->level());
  const std::vector<Cocycle> cocycles{Cocycle::modular_symbol_mod_p(f.oracle, lat, SymbolSign::Plus),
                                      Cocycle::modular_symbol_mod_p(f.oracle, lat, SymbolSign::Minus)};
  std::vector<WeylQuery> queries;
  for (std::int64_t l1 = 0; l1 < p; ++l1)
    for (std::int64_t l2 = 0; l2 < p; ++l2)
      for (auto mu : cfg.int_list("mu_list")) {
        if (l1 == 0 && l2 == 0 && mu == 0) continue;
        queries.push_back({{l1, l2}, {mu}});
      }
  r.columns = {"l", "mu", "X", "value_re", "value_im", "count", "ratio"};
  std::vector<std::vector<WeylRow>> tables;
  for (double x : xs) {
    tables.push_back(weyl_table(g, cocycles, queries, x, workers(cfg)));
    for (const auto& row : tables.back())
      r.rows.push_back({join(row.query.l), join(row.query.mu), real(x), real(row.value.real()),
                        real(row.value.imag()), num(static_cast<std::int64_t>(row.count)), real(row.ratio)});
  }
  r.summary["group"] = g.describe();
  r.summary["cocycles"] = {cocycles[0].describe(), cocycles[1].describe()};
  r.summary["lattice"] = lattice_json(lat);
  r.summary["queries"] = queries.size();
  if (const double factor = cfg.real("decay_factor"); factor > 0 && tables.size() >= 2) {
    json failing = json::array();
    for (std::size_t i = 0; i < queries.size(); ++i) {
      const double first = tables.front()[i].ratio, last = tables.back()[i].ratio;
      if (!(last < factor * first))
        failing.push_back({{"l", queries[i].l}, {"mu", queries[i].mu}, {"first", first}, {"last", last}});
    }
    r.summary["decay_failures"] = failing;
    r.property_checked = true;
    r.property_passed = failing.empty();
    r.property_message = std::to_string(failing.size()) + " of " + std::to_string(queries.size()) +
                         " frequencies miss the decay factor " + cfg.str("decay_factor");
  }
  return r;
}

}  // namespace

CommandResult run_command(const RunConfig& cfg) {
  const auto& c = cfg.command();
  if (c == "enumerate") return cmd_enumerate(cfg);
  if (c == "kloosterman") return cmd_kloosterman(cfg);
  if (c == "lseries") return cmd_lseries(cfg);
  if (c == "eisenstein") return cmd_eisenstein(cfg);
  if (c == "modsym") return cmd_modsym(cfg);
  if (c == "periods") return cmd_periods(cfg);
  if (c == "hecke-check") return cmd_hecke(cfg);
  if (c == "equidist-modp") return cmd_modp(cfg);
  if (c == "equidist-mod1") return cmd_mod1(cfg);
  if (c == "equidist-cusp") return cmd_cusp(cfg);
  if (c == "weyl") return cmd_weyl(cfg);
  throw ConfigError("unknown command '" + c + "'");
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"hypsym: modular symbols, Kloosterman sums and equidistribution experiments"};
  app.fallthrough();
  app.require_subcommand(0, 1);
  std::string config_path;
  app.add_option("--config", config_path, "config file of 'key = value' lines");

  std::map<std::string, std::string> flag_values;
  std::map<std::string, CLI::App*> subs;
  for (const auto& name : command_names()) {
    auto* sub = app.add_subcommand(name);
    for (const auto& ks : command_keys(name)) {
      std::string help = ks.help;
      if (!ks.default_value.empty()) help += " [" + ks.default_value + "]";
      sub->add_option("--" + ks.name, flag_values[ks.name], help);
    }
    subs[name] = sub;
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err) == 0 ? 0 : 1;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 1;
  }

  try {
    std::string command;
    std::map<std::string, Setting> flags;
    for (const auto& [name, sub] : subs) {
      if (!sub->parsed()) continue;
      command = name;
      for (const auto& ks : command_keys(name))
        if (sub->count("--" + ks.name) > 0) flags[ks.name] = {flag_values[ks.name], "flag"};
    }
    std::map<std::string, Setting> file;
    std::string config_dir;
    if (!config_path.empty()) {
      file = parse_config_file(config_path);
      config_dir = std::filesystem::path(config_path).parent_path().string();
    }
    const RunConfig cfg = RunConfig::resolve(command, file, flags, config_dir);
    for (const auto& w : cfg.warnings()) err << "warning: " << w << "\n";

    const CommandResult result = run_command(cfg);
    const auto written = write_outputs(cfg, result);
    out << "command: " << cfg.command() << "\n";
    out << result.summary.dump(2) << "\n";
    for (const auto& path : written) out << "wrote " << path << "\n";
    if (result.property_checked) {
      out << "property check: " << (result.property_passed ? "PASS" : "FAIL") << " (" << result.property_message
          << ")\n";
      if (!result.property_passed) return 2;
    }
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace hypsym::cli
