#pragma once

// N-qubit states: state vectors, density matrices and named presets.
//
// Basis ordering: computational (z) basis, index bit (N-1-j) holds qubit j
// (qubit 0 is the most significant bit). |0> = |+z>, |1> = |-z>.

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "corrbell/errors.hpp"

namespace corrbell {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr int kDefaultMaxQubits = 12;

inline constexpr double kHermiticityTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kPsdTol = 1e-9;
inline constexpr double kNormalizationTol = 1e-8;

constexpr std::size_t dimension_of(int n_qubits) { return std::size_t{1} << n_qubits; }

/// Throws DomainError unless 1 <= n <= max_qubits.
void check_qubit_count(int n_qubits, int max_qubits = kDefaultMaxQubits);

class StateVector {
 public:
  /// Throws DimensionError on a length mismatch, DomainError on non-finite
  /// amplitudes or a norm further than 1e-8 from one.
  StateVector(int n_qubits, ComplexVector amplitudes);

  int n_qubits() const noexcept { return n_qubits_; }
  const ComplexVector& amplitudes() const noexcept { return amplitudes_; }

 private:
  int n_qubits_;
  ComplexVector amplitudes_;
};

struct Violation {
  enum class Kind { kNonFinite, kHermiticity, kTrace, kPositivity };
  Kind kind;
  double residual;
  std::string describe() const;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const noexcept { return violations.empty(); }
  std::string describe() const;
};

class ValidationError : public InputError {
 public:
  explicit ValidationError(ValidationReport report)
      : InputError("invalid density matrix: " + report.describe()),
        report_(std::move(report)) {}
  const ValidationReport& report() const noexcept { return report_; }

 private:
  ValidationReport report_;
};

/// Checks Hermiticity, unit trace and positive semidefiniteness at the
/// library tolerances. Throws DimensionError if the matrix is not
/// 2^n x 2^n.
ValidationReport validate_density_matrix(int n_qubits, const ComplexMatrix& m);

/// A validated N-qubit density matrix. Immutable.
class DensityMatrix {
 public:
  /// Validates; throws ValidationError with the full report on failure.
  DensityMatrix(int n_qubits, ComplexMatrix entries, int max_qubits = kDefaultMaxQubits);

  int n_qubits() const noexcept { return n_qubits_; }
  std::size_t dim() const noexcept { return dimension_of(n_qubits_); }
  const ComplexMatrix& matrix() const noexcept { return entries_; }
  Complex operator()(std::size_t row, std::size_t col) const { return entries_(row, col); }

  double purity() const;

 private:
  int n_qubits_;
  ComplexMatrix entries_;
};

DensityMatrix from_state_vector(const StateVector& v);

/// Convex combination; weights must be non-negative and sum to one.
DensityMatrix mix(const std::vector<DensityMatrix>& states, const std::vector<double>& weights);

enum class PresetKind {
  kGhz,
  kBellPhiMinus,
  kProductPlusXMinusX,
  kWernerGhz,
  kMaximallyMixed,
  kProductAllPlusX,
};

std::string_view to_string(PresetKind kind);
/// Throws SchemaError on an unknown name.
PresetKind preset_kind_from_string(std::string_view name);

struct StatePreset {
  PresetKind kind;
  int n_qubits;
  std::optional<double> visibility;  // required for, and only for, kWernerGhz
};

/// |GHZ_N> = (|0...0> + |1...1>)/sqrt2.
StateVector ghz_vector(int n_qubits);

/// Throws DomainError on unsupported (kind, n) combinations or a visibility
/// outside [0,1] / attached to the wrong kind.
DensityMatrix build_preset(const StatePreset& preset);

/// Parses the JSON state-file format (exactly one of "matrix", "vector",
/// "preset"). Throws ParseError, SchemaError, DimensionError,
/// DomainError or ValidationError.
DensityMatrix parse_state_file(std::string_view text, int max_qubits = kDefaultMaxQubits);

/// Serializes as a "matrix" state file.
std::string serialize_state(const DensityMatrix& rho);

}  // namespace corrbell
