#include "corrbell/wernerlab.hpp"

#include <bit>
#include <cmath>
#include <cstdio>

#include "corrbell/bellgen.hpp"
#include "corrbell/infocrit.hpp"

namespace corrbell {

namespace {

void check_visibility(double v) {
  if (!(v >= 0.0 && v <= 1.0)) throw DomainError("visibility must lie in [0,1]");
}

long long binomial(int n, int k) {
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

PlaneTensor werner_inplane_tensor(int n_qubits, double visibility) {
  check_qubit_count(n_qubits);
  check_visibility(visibility);
  std::vector<double> entries(dimension_of(n_qubits));
  for (std::size_t mask = 0; mask < entries.size(); ++mask) {
    // V cos(m_y pi/2), evaluated exactly: 0 for odd m_y, +-V for even.
    switch (std::popcount(mask) % 4) {
      case 0: entries[mask] = visibility; break;
      case 2: entries[mask] = -visibility; break;
      default: entries[mask] = 0.0; break;
    }
  }
  return PlaneTensor(n_qubits, std::move(entries));
}

long long count_nonzero_inplane(int n_qubits) {
  if (n_qubits < 1 || n_qubits > 62) throw DomainError("n_qubits out of range");
  // T_xx..x plus every entry with an even, non-zero number of y's.
  long long count = 1;
  for (int k = 1; 2 * k <= n_qubits; ++k) count += binomial(n_qubits, 2 * k);
  return count;
}

double visibility_threshold(int n_qubits) {
  if (n_qubits < 2) throw DomainError("visibility threshold needs at least two qubits");
  // 2^(-(N-1)/2) rounds correctly where repeated 1/sqrt2 factors do not.
  return std::pow(2.0, -0.5 * (n_qubits - 1));
}

WernerAnalysis analyze_werner(int n_qubits, double visibility) {
  check_qubit_count(n_qubits);
  check_visibility(visibility);
  const long long count = count_nonzero_inplane(n_qubits);
  const double threshold = visibility_threshold(n_qubits);
  return {n_qubits,
          visibility,
          count,
          static_cast<double>(count) * visibility * visibility,
          threshold,
          visibility <= threshold + 1e-9};
}

std::vector<ScanRow> visibility_scan(int n_qubits, const ScanOptions& opts) {
  check_qubit_count(n_qubits);
  if (opts.grid < 2) throw DomainError("scan grid needs at least two points");
  std::vector<ScanRow> rows;
  rows.reserve(static_cast<std::size_t>(opts.grid));
  std::vector<std::vector<double>> info_prev, bell_prev;
  for (int i = 0; i < opts.grid; ++i) {
    const double v = static_cast<double>(i) / static_cast<double>(opts.grid - 1);
    const CorrelationTensor t =
        correlation_tensor(build_preset({PresetKind::kWernerGhz, n_qubits, v}));
    const CriterionVerdict info = maximize_corr_info(t, opts.info, info_prev);
    std::vector<std::vector<double>> bell_starts = bell_warm_starts(info.argmax_frame);
    bell_starts.insert(bell_starts.end(), bell_prev.begin(), bell_prev.end());
    const BellSearchResult bell = search_general_bell(t, opts.bell, bell_starts);
    rows.push_back({v, info.max_total, bell.evaluation.lhs, bell.evaluation.ratio, info.entangled,
                    bell.evaluation.violated});
    info_prev = {frame_angles(info.argmax_frame)};
    bell_prev = {bell.settings.angles()};
  }
  return rows;
}

double info_crossing(const std::vector<ScanRow>& rows) {
  for (const auto& r : rows)
    if (r.info_entangled) return r.visibility;
  return 2.0;
}

std::string scan_to_csv(const std::vector<ScanRow>& rows) {
  std::string out = "V,info_sum,bell_lhs,bell_ratio,info_entangled,bell_violated\n";
  char line[256];
  for (const auto& r : rows) {
    std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g,%s,%s\n", r.visibility, r.info_sum, r.bell_lhs,
                  r.bell_ratio, r.info_entangled ? "true" : "false", r.bell_violated ? "true" : "false");
    out += line;
  }
  return out;
}

}  // namespace corrbell
