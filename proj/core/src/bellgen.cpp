#include "corrbell/bellgen.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include "corrbell/infocrit.hpp"

namespace corrbell {

namespace {

Vec3 spherical(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

std::vector<std::pair<Vec3, Vec3>> pairs_from_angles(std::span<const double> angles) {
  std::vector<std::pair<Vec3, Vec3>> pairs(angles.size() / 4);
  for (std::size_t j = 0; j < pairs.size(); ++j) {
    pairs[j] = {spherical(angles[4 * j], angles[4 * j + 1]), spherical(angles[4 * j + 2], angles[4 * j + 3])};
  }
  return pairs;
}

void append_angles(std::vector<double>& out, const Vec3& v) {
  out.push_back(std::acos(std::clamp(v.z(), -1.0, 1.0)));
  out.push_back(std::atan2(v.y(), v.x()));
}

// Butterfly over every qubit: (E(k=1), E(k=2)) -> (E1 + E2, -E1 + E2), the
// second slot being s_j = -1.
std::vector<double> signed_sums_of(std::vector<double> v, int n) {
  const std::size_t size = v.size();
  for (int j = 0; j < n; ++j) {
    const std::size_t bit = std::size_t{1} << j;
    for (std::size_t i = 0; i < size; ++i) {
      if (i & bit) continue;
      const double e1 = v[i], e2 = v[i | bit];
      v[i] = e1 + e2;
      v[i | bit] = e2 - e1;
    }
  }
  return v;
}

double lhs_of(const std::vector<double>& table, int n) {
  double lhs = 0.0;
  for (const double d : signed_sums_of(table, n)) lhs += std::abs(d);
  return lhs;
}

std::vector<double> periods_for(int n) {
  std::vector<double> periods;
  for (int j = 0; j < 2 * n; ++j) {
    periods.push_back(M_PI);
    periods.push_back(2.0 * M_PI);
  }
  return periods;
}

// In-plane (canonical x-y) settings at phi1 = offset, phi2 = offset + pi/2,
// the Belinskii-Klyshko optimum for GHZ-type correlations V cos(sum phi).
std::vector<std::vector<double>> bk_warm_starts(int n) {
  std::vector<std::vector<double>> starts;
  for (const double offset : {0.0, -M_PI / (4.0 * n)}) {
    std::vector<double> angles;
    for (int j = 0; j < n; ++j) {
      angles.insert(angles.end(), {M_PI_2, offset, M_PI_2, offset + M_PI_2});
    }
    starts.push_back(std::move(angles));
  }
  return starts;
}

}  // namespace

SettingsPair::SettingsPair(std::vector<std::pair<Vec3, Vec3>> directions) : dirs_(std::move(directions)) {
  if (dirs_.empty()) throw DomainError("settings need at least one qubit");
  for (const auto& [n1, n2] : dirs_) {
    if (!n1.allFinite() || !n2.allFinite() || std::abs(n1.norm() - 1.0) > kUnitTol ||
        std::abs(n2.norm() - 1.0) > kUnitTol) {
      throw DomainError("measurement settings must be unit vectors");
    }
  }
}

SettingsPair SettingsPair::from_angles(std::span<const double> angles) {
  if (angles.empty() || angles.size() % 4 != 0) throw DimensionError("settings angles come in groups of four");
  return SettingsPair(pairs_from_angles(angles));
}

std::vector<double> SettingsPair::angles() const {
  std::vector<double> out;
  for (const auto& [n1, n2] : dirs_) {
    append_angles(out, n1);
    append_angles(out, n2);
  }
  return out;
}

SettingsPair SettingsPair::in_plane(const LocalFrame& frame, std::span<const double> azimuths) {
  if (static_cast<int>(azimuths.size()) != 2 * frame.n_qubits()) throw DimensionError("need two azimuths per qubit");
  std::vector<std::pair<Vec3, Vec3>> dirs;
  for (int j = 0; j < frame.n_qubits(); ++j) {
    const double p1 = azimuths[2 * static_cast<std::size_t>(j)], p2 = azimuths[2 * static_cast<std::size_t>(j) + 1];
    dirs.emplace_back(std::cos(p1) * frame.a1(j) + std::sin(p1) * frame.a2(j),
                      std::cos(p2) * frame.a1(j) + std::sin(p2) * frame.a2(j));
  }
  return SettingsPair(std::move(dirs));
}

CorrelationTable::CorrelationTable(int n_qubits, std::vector<double> values)
    : n_qubits_(n_qubits), values_(std::move(values)) {
  if (n_qubits_ < 1 || values_.size() != dimension_of(n_qubits_)) {
    throw DimensionError("correlation table for " + std::to_string(n_qubits_) + " qubits needs 2^N values");
  }
  for (const double v : values_) {
    if (!std::isfinite(v) || std::abs(v) > 1.0 + 1e-9) throw DomainError("correlation values must lie in [-1, 1]");
  }
}

SignFunction::SignFunction(int n_qubits, std::vector<int> table) : n_qubits_(n_qubits), table_(std::move(table)) {
  if (n_qubits_ < 1 || table_.size() != dimension_of(n_qubits_)) throw DimensionError("sign function needs 2^N values");
  for (const int v : table_) {
    if (v != 1 && v != -1) throw DomainError("sign function values must be +1 or -1");
  }
}

SignFunction SignFunction::constant(int n_qubits, int value) {
  return SignFunction(n_qubits, std::vector<int>(dimension_of(n_qubits), value));
}

SignFunction SignFunction::belinskii_klyshko(int n_qubits) {
  std::vector<int> table(dimension_of(n_qubits));
  for (std::size_t mask = 0; mask < table.size(); ++mask) {
    const int minus = std::popcount(mask);
    const int sum_s = n_qubits - 2 * minus;
    const double value = M_SQRT2 * std::cos(-M_PI_4 + (sum_s + n_qubits) * M_PI_4);
    const double rounded = std::round(value);
    if (std::abs(value - rounded) > 1e-12 || std::abs(rounded) != 1.0) {
      throw std::logic_error("Belinskii-Klyshko sign function is not +-1 at s mask " + std::to_string(mask));
    }
    table[mask] = static_cast<int>(rounded);
  }
  return SignFunction(n_qubits, std::move(table));
}

double quantum_correlation(const CorrelationTensor& t, std::span<const Vec3> directions) {
  for (const Vec3& v : directions) {
    if (!v.allFinite() || std::abs(v.norm() - 1.0) > kUnitTol) throw DomainError("directions must be unit vectors");
  }
  return contract(t, directions);
}

CorrelationTable correlation_table(const CorrelationTensor& t, const SettingsPair& settings) {
  if (settings.n_qubits() != t.n_qubits()) throw DimensionError("settings and tensor have different qubit counts");
  std::vector<std::pair<Vec3, Vec3>> pairs;
  for (int j = 0; j < settings.n_qubits(); ++j) pairs.emplace_back(settings.n1(j), settings.n2(j));
  std::vector<double> values = contract_pairs(t.cartesian(), t.n_qubits(), pairs);
  // Tensor entries may exceed 1 by rounding only.
  for (double& v : values) v = std::clamp(v, -1.0, 1.0);
  return CorrelationTable(t.n_qubits(), std::move(values));
}

std::vector<double> signed_sums(const CorrelationTable& table) {
  return signed_sums_of({table.values().begin(), table.values().end()}, table.n_qubits());
}

BellEvaluation general_bell_lhs(const CorrelationTable& table) {
  BellEvaluation e;
  e.n_qubits = table.n_qubits();
  e.per_s_moduli = signed_sums(table);
  e.lhs = 0.0;
  for (double& d : e.per_s_moduli) {
    d = std::abs(d);
    e.lhs += d;
  }
  e.bound = static_cast<double>(dimension_of(e.n_qubits));
  e.violated = e.lhs > e.bound + kViolationTol;
  e.ratio = e.lhs / e.bound;
  return e;
}

double sign_function_inequality(const CorrelationTable& table, const SignFunction& sgn) {
  if (sgn.n_qubits() != table.n_qubits()) throw DimensionError("sign function and table have different qubit counts");
  const std::vector<double> d = signed_sums(table);
  double acc = 0.0;
  for (std::size_t s = 0; s < d.size(); ++s) acc += sgn[s] * d[s];
  return std::abs(acc);
}

double bk_normalized(double raw, int n_qubits) { return raw / static_cast<double>(dimension_of(n_qubits - 1)); }

double necsuf_lhs(const PlaneTensor& plane, std::span<const double> alphas) {
  const int n = plane.n_qubits();
  if (static_cast<int>(alphas.size()) != n) throw DimensionError("need one alpha per qubit");
  double sum = 0.0;
  for (std::size_t mask = 0; mask < dimension_of(n); ++mask) {
    double w = plane.at_mask(mask);
    for (int j = 0; j < n; ++j) {
      const double a = alphas[static_cast<std::size_t>(j)];
      // x = 1 (local x): cos(a + pi/2) = -sin a;  x = 2 (local y): cos(a + pi) = -cos a
      w *= (mask >> (n - 1 - j)) & 1u ? -std::cos(a) : -std::sin(a);
    }
    sum += std::abs(w);
  }
  return sum;
}

SettingsPair settings_from_frame(const LocalFrame& frame, std::span<const double> alphas) {
  if (static_cast<int>(alphas.size()) != frame.n_qubits()) throw DimensionError("need one alpha per qubit");
  std::vector<std::pair<Vec3, Vec3>> dirs;
  for (int j = 0; j < frame.n_qubits(); ++j) {
    const double a = alphas[static_cast<std::size_t>(j)];
    const Vec3 along = -std::sin(a) * frame.a1(j);
    const Vec3 across = std::cos(a) * frame.a2(j);
    dirs.emplace_back((along + across).normalized(), (along - across).normalized());
  }
  return SettingsPair(std::move(dirs));
}

std::vector<std::vector<double>> bell_warm_starts(const LocalFrame& info_frame) {
  const int n = info_frame.n_qubits();
  std::vector<std::vector<double>> starts = bk_warm_starts(n);
  // Planes that carry the most in-plane correlation, with settings at
  // alpha = pi/4 (n1, n2 at +-45 degrees from -a1).
  const std::vector<double> quarter(static_cast<std::size_t>(n), M_PI_4);
  starts.push_back(settings_from_frame(info_frame, quarter).angles());
  return starts;
}

BellSearchResult search_general_bell(const CorrelationTensor& t, const OptimizerOptions& opts,
                                     const std::vector<std::vector<double>>& warm_starts) {
  const int n = t.n_qubits();
  const std::vector<double> cart = t.cartesian();
  const Objective objective = [&](std::span<const double> angles) {
    return lhs_of(contract_pairs(cart, n, pairs_from_angles(angles)), n);
  };
  const OptimizerResult best = multistart_maximize(objective, periods_for(n), warm_starts, opts);
  SettingsPair settings = SettingsPair::from_angles(best.argmax);
  BellEvaluation evaluation = general_bell_lhs(correlation_table(t, settings));
  return {std::move(evaluation), std::move(settings), best.report};
}

BellSearchResult maximize_general_bell(const CorrelationTensor& t, const OptimizerOptions& opts,
                                       const std::vector<std::vector<double>>& extra_starts) {
  OptimizerOptions info_opts = opts;
  info_opts.restarts = std::max(4, opts.restarts / 8);
  std::vector<std::vector<double>> starts = bell_warm_starts(maximize_corr_info(t, info_opts).argmax_frame);
  starts.insert(starts.end(), extra_starts.begin(), extra_starts.end());
  return search_general_bell(t, opts, starts);
}

SignFunctionSearchResult maximize_sign_function(const CorrelationTensor& t, const SignFunction& sgn,
                                                const OptimizerOptions& opts) {
  const int n = t.n_qubits();
  if (sgn.n_qubits() != n) throw DimensionError("sign function and tensor have different qubit counts");
  const std::vector<double> cart = t.cartesian();
  const Objective objective = [&](std::span<const double> angles) {
    const std::vector<double> d = signed_sums_of(contract_pairs(cart, n, pairs_from_angles(angles)), n);
    double acc = 0.0;
    for (std::size_t s = 0; s < d.size(); ++s) acc += sgn[s] * d[s];
    return std::abs(acc);
  };
  const OptimizerResult best = multistart_maximize(objective, periods_for(n), bk_warm_starts(n), opts);
  SettingsPair settings = SettingsPair::from_angles(best.argmax);
  const double value = sign_function_inequality(correlation_table(t, settings), sgn);
  return {value, std::move(settings), best.report};
}

SufficientCondition sufficient_lr_condition(const CorrelationTensor& t, const OptimizerOptions& opts) {
  const CriterionVerdict v = maximize_corr_info(t, opts);
  return {v.max_total, !exceeds_one_bit(v.max_total)};
}

}  // namespace corrbell
