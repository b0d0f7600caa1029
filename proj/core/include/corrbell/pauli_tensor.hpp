#pragma once

// Pauli correlation tensor T_{x1..xN} = Tr[rho (s_x1 (x) ... (x) s_xN)],
// x in {0,1,2,3} = {I, X, Y, Z}. Flat storage with the last qubit's index
// varying fastest.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "corrbell/qstate.hpp"

namespace corrbell {

using Vec3 = Eigen::Vector3d;

inline constexpr double kFrameTol = 1e-10;
inline constexpr double kUnitTol = 1e-10;
inline constexpr double kRealResidueTol = 1e-10;

enum class Pauli : std::uint8_t { kI = 0, kX = 1, kY = 2, kZ = 3 };

/// 2x2 matrix of a single Pauli operator.
Eigen::Matrix2cd pauli_matrix(Pauli p);

constexpr std::size_t pow_size(std::size_t base, int exponent) {
  std::size_t r = 1;
  for (int i = 0; i < exponent; ++i) r *= base;
  return r;
}

class CorrelationTensor {
 public:
  CorrelationTensor(int n_qubits, std::vector<double> entries);

  int n_qubits() const noexcept { return n_qubits_; }
  std::span<const double> entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }

  double at(std::span<const int> index) const;
  double operator[](std::size_t flat) const { return entries_[flat]; }

  /// Cartesian part: indices restricted to {1,2,3}, re-based to {0,1,2}, in
  /// the same last-fastest order (3^N entries).
  std::vector<double> cartesian() const;

 private:
  int n_qubits_;
  std::vector<double> entries_;
};

/// Flat offset of a {0..base-1}^N multi-index, last index fastest.
std::size_t flat_index(std::span<const int> index, std::size_t base);

/// Per-qubit orthonormal in-plane axes (a1 = local x, a2 = local y).
class LocalFrame {
 public:
  /// Throws DomainError unless every pair is orthonormal within 1e-10.
  explicit LocalFrame(std::vector<std::pair<Vec3, Vec3>> axes);

  /// a1 = x^, a2 = y^ on every qubit.
  static LocalFrame canonical(int n_qubits);

  /// Frame whose plane has the given unit normal; the in-plane axes follow a
  /// fixed rule (Gram-Schmidt of a reference axis, z^ unless the normal is
  /// within ~25 degrees of it, then x^). canonical() == from_normals({z^...}).
  static LocalFrame from_normals(std::span<const Vec3> normals);

  int n_qubits() const noexcept { return static_cast<int>(axes_.size()); }
  const Vec3& a1(int qubit) const { return axes_.at(qubit).first; }
  const Vec3& a2(int qubit) const { return axes_.at(qubit).second; }
  Vec3 normal(int qubit) const { return a1(qubit).cross(a2(qubit)); }

 private:
  std::vector<std::pair<Vec3, Vec3>> axes_;
};

/// In-plane sub-tensor, indices in {1,2}^N stored as {0,1} (0 = local x),
/// last index fastest.
class PlaneTensor {
 public:
  PlaneTensor(int n_qubits, std::vector<double> entries);

  int n_qubits() const noexcept { return n_qubits_; }
  std::span<const double> entries() const noexcept { return entries_; }
  double operator[](std::size_t flat) const { return entries_[flat]; }
  /// Bit (N-1-j) of `mask` set means qubit j takes local y.
  double at_mask(std::size_t mask) const { return entries_[mask]; }
  double squared_sum() const;

 private:
  int n_qubits_;
  std::vector<double> entries_;
};

enum class TensorMethod { kAuto, kDirectTrace, kContraction };

/// kAuto uses direct traces against Pauli strings for N <= 6 and the
/// qubit-by-qubit contraction above that. Throws std::logic_error if a trace
/// has an imaginary residue above 1e-10.
CorrelationTensor correlation_tensor(const DensityMatrix& rho,
                                     TensorMethod method = TensorMethod::kAuto);

/// rho = 2^-N sum_x T_x s_x1 (x) ... (x) s_xN, as a raw matrix (no validation).
ComplexMatrix density_from_tensor(const CorrelationTensor& t);

/// Contracts the Cartesian part with one vector per qubit:
/// sum_{x} T_x (v_1)_{x1} ... (v_N)_{xN}.
double contract(const CorrelationTensor& t, std::span<const Vec3> vectors);
double contract(std::span<const double> cartesian, int n_qubits, std::span<const Vec3> vectors);

/// Contracts every qubit's Cartesian mode with two vectors (first, second),
/// giving 2^N values, bit (N-1-j) of the index selecting qubit j's second.
std::vector<double> contract_pairs(std::span<const double> cartesian, int n_qubits,
                                   std::span<const std::pair<Vec3, Vec3>> pairs);

PlaneTensor plane_subtensor(const CorrelationTensor& t, const LocalFrame& frame);

/// Rotates each (a1, a2) by angle_j about a1 x a2:
/// a1' = cos a1 + sin a2, a2' = -sin a1 + cos a2.
LocalFrame rotate_frame_in_plane(const LocalFrame& frame, std::span<const double> angles);

struct CanonicalTwoQubit {
  LocalFrame frame;
  PlaneTensor plane;
  std::array<double, 2> angles;  // in-plane rotations applied to the input frame
};

/// Rotates both local planes so that T'_xy = T'_yx = 0 (closed-form 2x2 SVD).
/// Signs of the diagonal are left as they fall. Throws DomainError if N != 2.
CanonicalTwoQubit canonical_two_qubit_frame(const CorrelationTensor& t, const LocalFrame& frame);

/// Sum over {1,2}^N of squared plane entries in `frame`, computed through
/// per-qubit projectors (I - n n^T) on the Cartesian part. Equals
/// plane_subtensor(t, frame).squared_sum() but never forms the sub-tensor.
double plane_squared_sum(std::span<const double> cartesian, int n_qubits,
                         std::span<const Vec3> normals);

}  // namespace corrbell
