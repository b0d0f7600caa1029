#pragma once

// Correlation-function Bell inequalities for two dichotomic settings per
// qubit: the single general inequality
//   sum_s | sum_k s1^k1 ... sN^kN E(k) | <= 2^N,        s^1 = s, s^2 = 1,
// its sign-function family, and the local-realism condition in tensor form.

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "corrbell/optimize.hpp"
#include "corrbell/pauli_tensor.hpp"

namespace corrbell {

inline constexpr double kViolationTol = 1e-7;

/// Settings searches default to 64 restarts.
inline OptimizerOptions default_bell_options() { return OptimizerOptions{.restarts = 64}; }

/// Two measurement directions per qubit. Need not be orthogonal.
class SettingsPair {
 public:
  /// Throws DomainError unless every vector has unit norm within 1e-10.
  explicit SettingsPair(std::vector<std::pair<Vec3, Vec3>> directions);

  /// Spherical parametrization: per qubit (theta1, phi1, theta2, phi2).
  static SettingsPair from_angles(std::span<const double> angles);
  std::vector<double> angles() const;
  /// Settings in the local x-y planes of `frame` at the given azimuths,
  /// azimuths[2j + k] for setting k of qubit j.
  static SettingsPair in_plane(const LocalFrame& frame, std::span<const double> azimuths);

  int n_qubits() const noexcept { return static_cast<int>(dirs_.size()); }
  const Vec3& n1(int qubit) const { return dirs_.at(qubit).first; }
  const Vec3& n2(int qubit) const { return dirs_.at(qubit).second; }
  /// setting is 0 for n1, 1 for n2.
  const Vec3& setting(int qubit, int setting) const { return setting == 0 ? n1(qubit) : n2(qubit); }

 private:
  std::vector<std::pair<Vec3, Vec3>> dirs_;
};

/// E(k1..kN) with k in {1,2}^N stored as bits: bit (N-1-j) set <=> k_j = 2.
class CorrelationTable {
 public:
  CorrelationTable(int n_qubits, std::vector<double> values);

  int n_qubits() const noexcept { return n_qubits_; }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t mask) const { return values_[mask]; }

 private:
  int n_qubits_;
  std::vector<double> values_;
};

/// Sign tuple s in {-1,1}^N stored as bits: bit (N-1-j) set <=> s_j = -1.
class SignFunction {
 public:
  /// Throws DomainError if any value is not exactly +1 or -1.
  SignFunction(int n_qubits, std::vector<int> table);

  static SignFunction constant(int n_qubits, int value);
  /// S(s) = sqrt2 cos(-pi/4 + (s1 + ... + sN + N) pi/4). Yields CHSH for
  /// N = 2 and |E122 + E212 + E221 - E111| for N = 3 (up to overall sign).
  static SignFunction belinskii_klyshko(int n_qubits);

  int n_qubits() const noexcept { return n_qubits_; }
  int operator[](std::size_t s_mask) const { return table_[s_mask]; }

 private:
  int n_qubits_;
  std::vector<int> table_;
};

struct BellEvaluation {
  int n_qubits;
  double lhs;
  std::vector<double> per_s_moduli;  // indexed by s mask
  double bound;
  bool violated;
  double ratio;
};

double quantum_correlation(const CorrelationTensor& t, std::span<const Vec3> directions);

CorrelationTable correlation_table(const CorrelationTensor& t, const SettingsPair& settings);

/// D(s) = sum_k prod_j s_j^{k_j} E(k), for every s (indexed by s mask).
std::vector<double> signed_sums(const CorrelationTable& table);

BellEvaluation general_bell_lhs(const CorrelationTable& table);

/// | sum_s S(s) D(s) |. Always <= general_bell_lhs(table).lhs.
double sign_function_inequality(const CorrelationTable& table, const SignFunction& sgn);

/// Rescales a Belinskii-Klyshko value to the familiar form whose local
/// bound is 2 (CHSH, Mermin): raw / 2^(N-1).
double bk_normalized(double raw, int n_qubits);

struct BellSearchResult {
  BellEvaluation evaluation;
  SettingsPair settings;
  OptimizerReport optimizer;
};

/// Maximizes the general inequality's left side over all settings (4 angles
/// per qubit). Warm starts: bell_warm_starts for the information-criterion
/// argmax frame (found with max(4, restarts / 8) restarts), then
/// `extra_starts` (angle vectors as from SettingsPair::angles).
BellSearchResult maximize_general_bell(const CorrelationTensor& t,
                                       const OptimizerOptions& opts = default_bell_options(),
                                       const std::vector<std::vector<double>>& extra_starts = {});

/// Belinskii-Klyshko in-plane azimuths in the canonical planes, then the
/// settings_from_frame(info_frame, pi/4 ...) settings.
std::vector<std::vector<double>> bell_warm_starts(const LocalFrame& info_frame);

/// The settings search from exactly `warm_starts` plus opts.restarts
/// low-discrepancy starts.
BellSearchResult search_general_bell(const CorrelationTensor& t, const OptimizerOptions& opts,
                                     const std::vector<std::vector<double>>& warm_starts);

struct SignFunctionSearchResult {
  double value;  // raw |sum_s S(s) D(s)|
  SettingsPair settings;
  OptimizerReport optimizer;
};

/// Same search, for one fixed member of the sign-function family.
SignFunctionSearchResult maximize_sign_function(const CorrelationTensor& t, const SignFunction& sgn,
                                                const OptimizerOptions& opts = default_bell_options());

/// sum_{x in {1,2}^N} | prod_j c_{x_j} T_x |, c_x = cos(alpha_j + x pi/2).
/// Equals general_bell_lhs / 2^N for the settings
/// n1 = -a1 sin(alpha) + a2 cos(alpha), n2 = -a1 sin(alpha) - a2 cos(alpha).
double necsuf_lhs(const PlaneTensor& plane, std::span<const double> alphas);

/// Settings generated by (frame, alphas) as in necsuf_lhs.
SettingsPair settings_from_frame(const LocalFrame& frame, std::span<const double> alphas);

struct SufficientCondition {
  double max_sum;
  bool holds;  // max_sum <= 1 + 1e-7: no Bell violation possible
};

SufficientCondition sufficient_lr_condition(const CorrelationTensor& t, const OptimizerOptions& opts = {});

}  // namespace corrbell
