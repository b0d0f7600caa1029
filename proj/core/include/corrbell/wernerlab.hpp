#pragma once

// GHZ-Werner states rho = V |GHZ><GHZ| + (1 - V) I / 2^N: closed-form
// in-plane correlations, visibility thresholds and visibility scans.

#include <string>
#include <vector>

#include "corrbell/optimize.hpp"
#include "corrbell/pauli_tensor.hpp"

namespace corrbell {

/// T_{x1..xN} = V cos(m_y pi/2), m_y = number of local y indices.
PlaneTensor werner_inplane_tensor(int n_qubits, double visibility);

/// 2^(N-1).
long long count_nonzero_inplane(int n_qubits);

/// (1/sqrt2)^(N-1). Throws DomainError for N < 2.
double visibility_threshold(int n_qubits);

struct WernerAnalysis {
  int n_qubits;
  double visibility;
  long long nonzero_inplane_count;
  double info_sum;
  double threshold;
  bool lr_describable;
};

WernerAnalysis analyze_werner(int n_qubits, double visibility);

struct ScanOptions {
  int grid = 101;
  OptimizerOptions info{.restarts = 4};
  OptimizerOptions bell{.restarts = 2};
};

struct ScanRow {
  double visibility;
  double info_sum;   // maximized in-plane information
  double bell_lhs;   // maximized general-inequality left side
  double bell_ratio; // bell_lhs / 2^N
  bool info_entangled;
  bool bell_violated;
};

/// Uniform grid over [0,1]. Each grid point runs both optimizers on the
/// numerically built Werner state. The Bell search warm-starts from that
/// point's information argmax frame and, after the first point, from the
/// previous point's settings.
std::vector<ScanRow> visibility_scan(int n_qubits, const ScanOptions& opts = {});

/// First grid visibility whose info column flags entanglement, or a value
/// > 1 if none does.
double info_crossing(const std::vector<ScanRow>& rows);

/// CSV with header V,info_sum,bell_lhs,bell_ratio,info_entangled,bell_violated.
std::string scan_to_csv(const std::vector<ScanRow>& rows);

}  // namespace corrbell
