#include "corrbell/lhv.hpp"

#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace corrbell {

namespace {

constexpr int kNoiseEnumerationMaxQubits = 6;
constexpr int kMaxLhvQubits = 16;  // strategy masks are 32-bit pairs

std::string violation_message(double lhs, double bound) {
  std::ostringstream os;
  os.precision(17);
  os << "correlation table violates the general Bell inequality (lhs " << lhs << " > " << bound
     << "); no local hidden-variable model exists";
  return os.str();
}

}  // namespace

BellViolationError::BellViolationError(double lhs, double bound)
    : InputError(violation_message(lhs, bound)), lhs_(lhs), bound_(bound) {}

int DeterministicStrategy::product(std::uint32_t k_mask) const {
  const std::uint32_t minus = (a1_mask & ~k_mask) | (a2_mask & k_mask);
  return std::popcount(minus) % 2 == 0 ? 1 : -1;
}

LhvModel construct_lhv(const CorrelationTable& table) {
  const int n = table.n_qubits();
  if (n > kMaxLhvQubits) throw DomainError("LHV construction supports at most 16 qubits");
  const BellEvaluation eval = general_bell_lhs(table);
  if (eval.violated) throw BellViolationError(eval.lhs, eval.bound);

  const std::vector<double> d = signed_sums(table);
  const auto size = static_cast<std::uint32_t>(dimension_of(n));
  const double class_scale = 1.0 / static_cast<double>(size);       // 2^-N
  const double per_strategy = 2.0 / static_cast<double>(size);      // 1 / 2^(N-1)

  LhvModel model;
  model.n_qubits = n;
  double mass = 0.0;
  for (std::uint32_t s_mask = 0; s_mask < size; ++s_mask) {
    const double inside = d[s_mask];
    if (inside == 0.0) continue;
    const double p_class = class_scale * std::abs(inside);
    const int want_parity = inside > 0.0 ? 0 : 1;  // prod_j A_j(n2) = sign(inside)
    // A_j(n2) from the bits of b, A_j(n1) = s_j A_j(n2) flips where s_j = -1.
    for (std::uint32_t b = 0; b < size; ++b) {
      if (std::popcount(b) % 2 != want_parity) continue;
      model.atoms.push_back({{b ^ s_mask, b}, p_class * per_strategy});
    }
    mass += p_class;
  }
  // Within the violation tolerance band the mass may exceed one by < 1e-7 / 2^N.
  model.noise_weight = std::max(0.0, 1.0 - mass);
  return model;
}

std::vector<double> uniform_noise_correlations(int n_qubits) {
  if (n_qubits < 1 || n_qubits > 10) throw DomainError("noise enumeration supports 1..10 qubits");
  const auto size = static_cast<std::uint32_t>(dimension_of(n_qubits));
  std::vector<double> out(size);
  for (std::uint32_t k = 0; k < size; ++k) {
    long long sum = 0;
    for (std::uint32_t a1 = 0; a1 < size; ++a1)
      for (std::uint32_t a2 = 0; a2 < size; ++a2) sum += DeterministicStrategy{a1, a2}.product(k);
    out[k] = static_cast<double>(sum) / (static_cast<double>(size) * static_cast<double>(size));
  }
  return out;
}

std::vector<double> lhv_correlations(const LhvModel& model) {
  const auto size = static_cast<std::uint32_t>(dimension_of(model.n_qubits));
  std::vector<double> e(size, 0.0);
  for (const auto& atom : model.atoms)
    for (std::uint32_t k = 0; k < size; ++k) e[k] += atom.probability * atom.strategy.product(k);

  if (model.noise_weight > 0.0 && model.n_qubits <= kNoiseEnumerationMaxQubits) {
    const std::vector<double> noise = uniform_noise_correlations(model.n_qubits);
    for (std::uint32_t k = 0; k < size; ++k) {
      if (noise[k] != 0.0) throw std::logic_error("uniform strategy noise has a non-zero correlation");
      e[k] += model.noise_weight * noise[k];
    }
  }
  return e;
}

double verify_lhv(const LhvModel& model, const CorrelationTable& table) {
  if (model.n_qubits != table.n_qubits()) throw DimensionError("model and table have different qubit counts");
  const std::vector<double> e = lhv_correlations(model);
  double worst = 0.0;
  for (std::size_t k = 0; k < e.size(); ++k) worst = std::max(worst, std::abs(e[k] - table[k]));
  return worst;
}

StrategySampler::StrategySampler(const LhvModel& model)
    : n_qubits_(model.n_qubits), noise_bits_(0, (std::uint64_t{1} << (2 * model.n_qubits)) - 1) {
  if (n_qubits_ < 1 || n_qubits_ > kMaxLhvQubits) throw DomainError("sampler supports 1..16 qubits");
  double acc = 0.0;
  for (const auto& atom : model.atoms) {
    if (atom.probability <= 0.0) continue;
    acc += atom.probability;
    atoms_.push_back(atom.strategy);
    cumulative_.push_back(acc);
  }
}

DeterministicStrategy sample_strategy(const LhvModel& model, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return StrategySampler(model)(rng);
}

}  // namespace corrbell
