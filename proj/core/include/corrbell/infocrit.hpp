#pragma once

// Information in correlations: I = (p+ - p-)^2 per joint proposition, its sum
// over the in-plane {x,y}^N set, and the maximum of that sum over local
// measurement planes. A maximum above one bit flags entanglement.

#include <vector>

#include "corrbell/optimize.hpp"
#include "corrbell/pauli_tensor.hpp"

namespace corrbell {

inline constexpr double kDecisionTol = 1e-7;
inline constexpr double kProbabilitySumTol = 1e-9;

/// Knowledge about a binary outcome, in [0,1].
struct InfoMeasure {
  double value;
};

/// Throws DomainError on negative probabilities or a sum off by > 1e-9.
InfoMeasure info_from_probabilities(double p_plus, double p_minus);

struct CorrInfoResult {
  LocalFrame frame;
  std::vector<double> per_index;  // PlaneTensor layout
  double total;
};

CorrInfoResult corr_info(const CorrelationTensor& t, const LocalFrame& frame);

struct CriterionVerdict {
  double max_total;
  LocalFrame argmax_frame;
  bool entangled;
  OptimizerReport optimizer;
};

/// Maximizes the in-plane information sum over plane normals (2 angles per
/// qubit). Warm starts: canonical x-y planes, then `extra_starts` (angle
/// vectors as from frame_angles). Deterministic for a fixed seed.
CriterionVerdict maximize_corr_info(const CorrelationTensor& t, const OptimizerOptions& opts = {},
                                    const std::vector<std::vector<double>>& extra_starts = {});

/// Per qubit (theta, phi) of the plane normal.
std::vector<double> frame_angles(const LocalFrame& frame);
LocalFrame frame_from_angles(std::span<const double> angles);

/// Closed form for two qubits: sum of the two largest eigenvalues of M^T M,
/// M the 3x3 Cartesian block. The returned frame diagonalizes the in-plane
/// block. Throws DomainError if N != 2.
CriterionVerdict two_qubit_info_criterion(const CorrelationTensor& t);

inline bool exceeds_one_bit(double total) { return total > 1.0 + kDecisionTol; }

}  // namespace corrbell
