#include "cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "corrbell/bellgen.hpp"
#include "corrbell/errors.hpp"
#include "corrbell/infocrit.hpp"
#include "corrbell/json_io.hpp"
#include "corrbell/lhv.hpp"
#include "corrbell/qstate.hpp"
#include "corrbell/wernerlab.hpp"

namespace corrbell::cli {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string format_of(const RunConfig& cfg) {
  if (!cfg.format.empty()) return cfg.format;
  return cfg.command == Command::kWernerScan ? "csv" : "json";
}

void require_json(const RunConfig& cfg, const char* command) {
  if (format_of(cfg) != "json") throw InputError(std::string(command) + " reports are JSON only");
}

DensityMatrix load_state(const RunConfig& cfg) {
  const bool has_input = !cfg.input_path.empty(), has_preset = !cfg.preset.empty();
  if (has_input == has_preset) throw InputError("give exactly one of --input or --preset");
  if (has_input) {
    if (cfg.n_qubits || cfg.visibility) throw InputError("--n and --visibility only apply to --preset");
    return parse_state_file(read_file(cfg.input_path));
  }
  const PresetKind kind = preset_kind_from_string(cfg.preset);
  const bool two_qubit_only = kind == PresetKind::kBellPhiMinus || kind == PresetKind::kProductPlusXMinusX;
  if (!cfg.n_qubits && !two_qubit_only) throw InputError("preset '" + cfg.preset + "' needs --n");
  return build_preset({kind, cfg.n_qubits.value_or(2), cfg.visibility});
}

OptimizerOptions info_options(const RunConfig& cfg) {
  OptimizerOptions opts;
  opts.seed = cfg.seed;
  if (cfg.restarts) opts.restarts = *cfg.restarts;
  return opts;
}

OptimizerOptions bell_options(const RunConfig& cfg) {
  OptimizerOptions opts = default_bell_options();
  opts.seed = cfg.seed;
  if (cfg.restarts) opts.restarts = *cfg.restarts;
  return opts;
}

SettingsPair load_settings(const RunConfig& cfg, int n_qubits) {
  if (cfg.settings_path.empty()) throw InputError("this command needs --settings");
  SettingsPair s = parse_settings_file(read_file(cfg.settings_path));
  if (s.n_qubits() != n_qubits) {
    throw DimensionError("settings file has " + std::to_string(s.n_qubits()) + " pairs, state has " +
                         std::to_string(n_qubits) + " qubits");
  }
  return s;
}

Json optimizer_json(const OptimizerReport& r) {
  return {{"starts", r.starts},         {"restarts", r.restarts},     {"evaluations", r.evaluations},
          {"converged", r.converged},   {"best_start", r.best_start}};
}

Json lhv_report(const CorrelationTable& table) {
  const LhvModel model = construct_lhv(table);
  Json j = lhv_to_json(model);
  j["max_abs_error"] = verify_lhv(model, table);
  return j;
}

std::string tensor_csv(const CorrelationTensor& t) {
  static constexpr char kLabels[] = {'0', 'x', 'y', 'z'};
  std::string out = "index,value\n";
  char value[32];
  for (std::size_t flat = 0; flat < t.entries().size(); ++flat) {
    std::string label(static_cast<std::size_t>(t.n_qubits()), '0');
    std::size_t rest = flat;
    for (int j = t.n_qubits() - 1; j >= 0; --j, rest /= 4) label[static_cast<std::size_t>(j)] = kLabels[rest % 4];
    std::snprintf(value, sizeof value, "%.17g", t.entries()[flat]);
    out += label + "," + value + "\n";
  }
  return out;
}

std::string cmd_tensor(const RunConfig& cfg) {
  const CorrelationTensor t = correlation_tensor(load_state(cfg));
  return format_of(cfg) == "csv" ? tensor_csv(t) : dump(tensor_to_json(t));
}

std::string cmd_info(const RunConfig& cfg) {
  require_json(cfg, "info");
  return dump(verdict_to_json(maximize_corr_info(correlation_tensor(load_state(cfg)), info_options(cfg))));
}

std::string cmd_bell(const RunConfig& cfg) {
  require_json(cfg, "bell");
  const CorrelationTensor t = correlation_tensor(load_state(cfg));
  if (!cfg.settings_path.empty()) {
    const SettingsPair s = load_settings(cfg, t.n_qubits());
    return dump(bell_to_json(general_bell_lhs(correlation_table(t, s)), s));
  }
  const BellSearchResult r = maximize_general_bell(t, bell_options(cfg));
  Json j = bell_to_json(r.evaluation, r.settings);
  j["optimizer"] = optimizer_json(r.optimizer);
  return dump(j);
}

std::string cmd_lhv(const RunConfig& cfg) {
  require_json(cfg, "lhv");
  const CorrelationTensor t = correlation_tensor(load_state(cfg));
  return dump(lhv_report(correlation_table(t, load_settings(cfg, t.n_qubits()))));
}

std::string cmd_werner_scan(const RunConfig& cfg) {
  if (!cfg.n_qubits) throw InputError("werner-scan needs --n");
  const int n = *cfg.n_qubits;
  if (n < 2) throw DomainError("werner-scan needs at least two qubits");
  ScanOptions opts;
  opts.grid = cfg.grid;
  opts.info.seed = opts.bell.seed = cfg.seed;
  if (cfg.restarts) opts.info.restarts = opts.bell.restarts = *cfg.restarts;
  const std::vector<ScanRow> rows = visibility_scan(n, opts);
  if (format_of(cfg) == "csv") return scan_to_csv(rows);

  Json table = Json::array();
  for (const auto& r : rows) {
    table.push_back({{"V", r.visibility},
                     {"info_sum", r.info_sum},
                     {"bell_lhs", r.bell_lhs},
                     {"bell_ratio", r.bell_ratio},
                     {"info_entangled", r.info_entangled},
                     {"bell_violated", r.bell_violated}});
  }
  const double crossing = info_crossing(rows);
  Json j;
  j["n_qubits"] = n;
  j["threshold"] = visibility_threshold(n);
  j["info_crossing"] = crossing <= 1.0 ? Json(crossing) : Json(nullptr);
  j["rows"] = std::move(table);
  return dump(j);
}

// Normals n1 x n2 of a settings pair; empty when some pair is parallel.
std::vector<double> frame_angles_from_settings(const SettingsPair& s) {
  std::vector<Vec3> normals;
  for (int q = 0; q < s.n_qubits(); ++q) {
    const Vec3 n = s.n1(q).cross(s.n2(q));
    if (n.norm() < 1e-6) return {};
    normals.push_back(n.normalized());
  }
  return frame_angles(LocalFrame::from_normals(normals));
}

std::string cmd_analyze(const RunConfig& cfg) {
  require_json(cfg, "analyze");
  const DensityMatrix rho = load_state(cfg);
  const CorrelationTensor t = correlation_tensor(rho);
  const int n = t.n_qubits();

  CriterionVerdict info = maximize_corr_info(t, info_options(cfg));
  const BellSearchResult bell = maximize_general_bell(t, bell_options(cfg));
  if (bell.evaluation.violated && !info.entangled) {
    // The violating settings span planes whose information exceeds one bit;
    // search again from there.
    const std::vector<double> start = frame_angles_from_settings(bell.settings);
    if (!start.empty()) {
      const CriterionVerdict again = maximize_corr_info(t, info_options(cfg), {start});
      if (again.max_total > info.max_total) info = again;
    }
  }

  Json j;
  j["n_qubits"] = n;
  j["purity"] = rho.purity();
  j["tensor"] = tensor_to_json(t);
  j["info"] = verdict_to_json(info);
  j["sufficient_condition"] = {{"max_sum", info.max_total}, {"holds", !exceeds_one_bit(info.max_total)}};
  if (n == 2) j["two_qubit"] = verdict_to_json(two_qubit_info_criterion(t));
  Json bell_json = bell_to_json(bell.evaluation, bell.settings);
  bell_json["optimizer"] = optimizer_json(bell.optimizer);
  j["bell"] = std::move(bell_json);
  j["lhv"] = bell.evaluation.violated ? Json(nullptr) : lhv_report(correlation_table(t, bell.settings));
  if (cfg.preset == "werner_ghz" && n >= 2) {
    const WernerAnalysis w = analyze_werner(n, *cfg.visibility);
    j["werner"] = {{"visibility", w.visibility},
                   {"threshold", w.threshold},
                   {"nonzero_inplane_count", w.nonzero_inplane_count},
                   {"info_sum", w.info_sum},
                   {"lr_describable", w.lr_describable}};
  }
  return dump(j);
}

void add_state_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("-i,--input", cfg.input_path, "State file (JSON)");
  sub->add_option("--preset", cfg.preset,
                  "ghz, bell_phi_minus, product_plus_x_minus_x, werner_ghz, maximally_mixed, product_all_plus_x");
  sub->add_option("--n", cfg.n_qubits, "Qubit count for --preset");
  sub->add_option("--visibility", cfg.visibility, "Visibility for werner_ghz");
}

void add_output_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--out", cfg.out_path, "Write the report here instead of stdout");
}

void add_search_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--seed", cfg.seed, "Seed for the optimizer's start points");
  sub->add_option("--restarts", cfg.restarts, "Low-discrepancy restarts")->check(CLI::NonNegativeNumber);
}

}  // namespace

std::string execute(const RunConfig& cfg) {
  switch (cfg.command) {
    case Command::kTensor:
      return cmd_tensor(cfg);
    case Command::kInfo:
      return cmd_info(cfg);
    case Command::kBell:
      return cmd_bell(cfg);
    case Command::kLhv:
      return cmd_lhv(cfg);
    case Command::kWernerScan:
      return cmd_werner_scan(cfg);
    case Command::kAnalyze:
      return cmd_analyze(cfg);
  }
  throw std::logic_error("unknown command");
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Correlation-tensor entanglement and Bell-inequality analysis", "corrbell"};
  app.require_subcommand(1);

  auto* tensor = app.add_subcommand("tensor", "Full correlation tensor of a state");
  add_state_options(tensor, cfg);
  add_output_options(tensor, cfg);

  auto* info = app.add_subcommand("info", "Maximized in-plane correlation information");
  add_state_options(info, cfg);
  add_search_options(info, cfg);
  add_output_options(info, cfg);

  auto* bell = app.add_subcommand("bell", "General Bell inequality, optimized or at fixed --settings");
  add_state_options(bell, cfg);
  add_search_options(bell, cfg);
  add_output_options(bell, cfg);
  bell->add_option("--settings", cfg.settings_path, "Settings file (JSON)");

  auto* lhv = app.add_subcommand("lhv", "Local hidden-variable model for the table at --settings");
  add_state_options(lhv, cfg);
  add_output_options(lhv, cfg);
  lhv->add_option("--settings", cfg.settings_path, "Settings file (JSON)")->required();

  auto* scan = app.add_subcommand("werner-scan", "Both criteria over a visibility grid for GHZ-Werner states");
  scan->add_option("--n", cfg.n_qubits, "Qubit count")->required();
  scan->add_option("--grid", cfg.grid, "Grid points over [0,1]")->check(CLI::Range(2, 1000000));
  add_search_options(scan, cfg);
  add_output_options(scan, cfg);

  auto* analyze = app.add_subcommand("analyze", "Every analysis in one report");
  add_state_options(analyze, cfg);
  add_search_options(analyze, cfg);
  add_output_options(analyze, cfg);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  const std::pair<CLI::App*, Command> commands[] = {{tensor, Command::kTensor}, {info, Command::kInfo},
                                                    {bell, Command::kBell},     {lhv, Command::kLhv},
                                                    {scan, Command::kWernerScan}, {analyze, Command::kAnalyze}};
  for (const auto& [sub, command] : commands)
    if (sub->parsed()) cfg.command = command;

  return emit([&] { return execute(cfg); }, cfg.out_path, out, err);
}

int emit(const std::function<std::string()>& produce, const std::string& out_path, std::ostream& out,
         std::ostream& err) {
  try {
    const std::string report = produce();
    if (out_path.empty()) {
      out << report;
    } else {
      std::ofstream file(out_path, std::ios::binary);
      if (!file || !(file << report)) throw InputError("cannot write '" + out_path + "'");
    }
    return kExitOk;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace corrbell::cli
