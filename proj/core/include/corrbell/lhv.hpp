#pragma once

// Explicit local-hidden-variable models for correlation tables that satisfy
// the general Bell inequality.

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "corrbell/bellgen.hpp"
#include "corrbell/errors.hpp"

namespace corrbell {

inline constexpr double kLhvTol = 1e-10;

/// Predetermined outcomes A_j(n1), A_j(n2) in {-1,+1} for every qubit.
/// Bit (N-1-j) of a mask set means A = -1 for qubit j.
struct DeterministicStrategy {
  std::uint32_t a1_mask = 0;
  std::uint32_t a2_mask = 0;

  int a1(int qubit, int n_qubits) const { return (a1_mask >> (n_qubits - 1 - qubit)) & 1u ? -1 : 1; }
  int a2(int qubit, int n_qubits) const { return (a2_mask >> (n_qubits - 1 - qubit)) & 1u ? -1 : 1; }
  /// prod_j A_j(n_{k_j}) for the setting mask k (bit set <=> n2).
  int product(std::uint32_t k_mask) const;

  friend bool operator==(const DeterministicStrategy&, const DeterministicStrategy&) = default;
};

struct LhvAtom {
  DeterministicStrategy strategy;
  double probability;
};

/// Atoms plus a weight of uniform noise over all 4^N strategies.
struct LhvModel {
  int n_qubits = 0;
  std::vector<LhvAtom> atoms;
  double noise_weight = 0.0;
};

class BellViolationError : public InputError {
 public:
  explicit BellViolationError(double lhs, double bound);
  double lhs() const noexcept { return lhs_; }
  double bound() const noexcept { return bound_; }

 private:
  double lhs_;
  double bound_;
};

/// For every s, mass p(s) = 2^-N |D(s)| is spread evenly over the 2^(N-1)
/// strategies with A_j(n1) = s_j A_j(n2) and sign(prod_j A_j(n2)) =
/// sign(D(s)). Classes with D(s) == 0 get nothing. The remainder becomes
/// uniform noise. Throws BellViolationError if the table violates the
/// general inequality.
LhvModel construct_lhv(const CorrelationTable& table);

/// E_LV(k) for every setting mask k. Noise contributes nothing; for N <= 6
/// this is checked by enumerating all 4^N strategies.
std::vector<double> lhv_correlations(const LhvModel& model);

/// max_k |E_LV(k) - E(k)|. Throws DimensionError on a qubit-count mismatch.
double verify_lhv(const LhvModel& model, const CorrelationTable& table);

/// Exact correlation contribution of uniform noise (sum over all 4^N
/// strategies, divided by 4^N). Zero for every k.
std::vector<double> uniform_noise_correlations(int n_qubits);

/// Draws strategies from a model: an atom with its probability, otherwise a
/// uniformly random strategy with the noise weight.
class StrategySampler {
 public:
  explicit StrategySampler(const LhvModel& model);

  template <class Rng>
  DeterministicStrategy operator()(Rng& rng) const {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    return pick(unit(rng), [&] { return noise_bits_(rng); });
  }

 private:
  template <class NoiseFn>
  DeterministicStrategy pick(double u, NoiseFn&& noise) const {
    if (!cumulative_.empty() && u < cumulative_.back()) {
      const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
      return atoms_[static_cast<std::size_t>(it - cumulative_.begin())];
    }
    const std::uint64_t bits = noise();
    const std::uint32_t mask = (std::uint32_t{1} << n_qubits_) - 1;
    return {static_cast<std::uint32_t>(bits) & mask, static_cast<std::uint32_t>(bits >> n_qubits_) & mask};
  }

  int n_qubits_;
  std::vector<DeterministicStrategy> atoms_;
  std::vector<double> cumulative_;  // prefix sums of atom probabilities
  mutable std::uniform_int_distribution<std::uint64_t> noise_bits_;
};

/// One draw from a fresh generator seeded with `seed`.
DeterministicStrategy sample_strategy(const LhvModel& model, std::uint64_t seed);

}  // namespace corrbell
