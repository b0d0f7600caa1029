#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace corrbell::cli {

enum class Command { kTensor, kInfo, kBell, kLhv, kWernerScan, kAnalyze };

struct RunConfig {
  Command command = Command::kTensor;
  std::string input_path;
  std::string preset;
  std::optional<int> n_qubits;
  std::optional<double> visibility;
  std::uint64_t seed = 0;
  std::optional<int> restarts;
  std::string format;  // empty: csv for werner-scan, json otherwise
  std::string out_path;
  std::string settings_path;
  int grid = 101;
};

/// Exit codes: 0 success, 2 input error, 1 internal error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitInput = 2;

/// Runs one command. `args` excludes the program name. Reports go to `out`
/// (or the --out file), diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Runs `produce` and writes its text to `out_path` (or `out` when empty),
/// mapping InputError to kExitInput and any other exception to
/// kExitInternal with a message on `err`.
int emit(const std::function<std::string()>& produce, const std::string& out_path, std::ostream& out,
         std::ostream& err);

/// Executes an already parsed configuration and returns the report text.
/// Throws InputError for bad input.
std::string execute(const RunConfig& cfg);

}  // namespace corrbell::cli
