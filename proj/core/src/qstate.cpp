#include "corrbell/qstate.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "corrbell/json_io.hpp"

namespace corrbell {

void check_qubit_count(int n_qubits, int max_qubits) {
  if (n_qubits < 1 || n_qubits > max_qubits) {
    throw DomainError("n_qubits must be in [1, " + std::to_string(max_qubits) + "], got " +
                      std::to_string(n_qubits));
  }
}

StateVector::StateVector(int n_qubits, ComplexVector amplitudes)
    : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {
  check_qubit_count(n_qubits_);
  if (static_cast<std::size_t>(amplitudes_.size()) != dimension_of(n_qubits_)) {
    throw DimensionError("state vector for " + std::to_string(n_qubits_) + " qubits needs " +
                         std::to_string(dimension_of(n_qubits_)) + " amplitudes, got " +
                         std::to_string(amplitudes_.size()));
  }
  if (!amplitudes_.allFinite()) throw DomainError("state vector has non-finite amplitudes");
  const double norm = amplitudes_.norm();
  if (std::abs(norm - 1.0) > kNormalizationTol) {
    std::ostringstream os;
    os << "state vector is not normalized (norm " << norm << ")";
    throw DomainError(os.str());
  }
}

std::string Violation::describe() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::kNonFinite: os << "non-finite entries"; break;
    case Kind::kHermiticity: os << "not Hermitian (max |rho_ij - conj rho_ji| = " << residual << ")"; break;
    case Kind::kTrace: os << "trace differs from 1 by " << residual; break;
    case Kind::kPositivity: os << "not positive semidefinite (min eigenvalue " << -residual << ")"; break;
  }
  return os.str();
}

std::string ValidationReport::describe() const {
  if (violations.empty()) return "ok";
  std::string out;
  for (const auto& v : violations) {
    if (!out.empty()) out += "; ";
    out += v.describe();
  }
  return out;
}

ValidationReport validate_density_matrix(int n_qubits, const ComplexMatrix& m) {
  const auto dim = static_cast<Eigen::Index>(dimension_of(n_qubits));
  if (m.rows() != dim || m.cols() != dim) {
    throw DimensionError("density matrix for " + std::to_string(n_qubits) + " qubits must be " +
                         std::to_string(dim) + "x" + std::to_string(dim) + ", got " +
                         std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
  ValidationReport report;
  if (!m.allFinite()) {
    report.violations.push_back({Violation::Kind::kNonFinite, 0.0});
    return report;
  }
  const double herm = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (herm > kHermiticityTol) report.violations.push_back({Violation::Kind::kHermiticity, herm});

  const double trace_residual = std::abs(m.trace() - Complex{1.0, 0.0});
  if (trace_residual > kTraceTol) report.violations.push_back({Violation::Kind::kTrace, trace_residual});

  // Eigenvalues of the Hermitian part; for a non-Hermitian input that is the
  // closest Hermitian matrix, so the positivity residual stays meaningful.
  const ComplexMatrix hermitian_part = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part, Eigen::EigenvaluesOnly);
  const double min_eig = solver.eigenvalues().minCoeff();
  if (min_eig < -kPsdTol) report.violations.push_back({Violation::Kind::kPositivity, -min_eig});
  return report;
}

DensityMatrix::DensityMatrix(int n_qubits, ComplexMatrix entries, int max_qubits)
    : n_qubits_(n_qubits), entries_(std::move(entries)) {
  check_qubit_count(n_qubits_, max_qubits);
  auto report = validate_density_matrix(n_qubits_, entries_);
  if (!report.ok()) throw ValidationError(std::move(report));
}

double DensityMatrix::purity() const { return (entries_ * entries_).trace().real(); }

DensityMatrix from_state_vector(const StateVector& v) {
  const ComplexVector& psi = v.amplitudes();
  return DensityMatrix(v.n_qubits(), psi * psi.adjoint());
}

DensityMatrix mix(const std::vector<DensityMatrix>& states, const std::vector<double>& weights) {
  if (states.empty() || states.size() != weights.size()) {
    throw DomainError("mix needs one weight per state and at least one state");
  }
  const int n = states.front().n_qubits();
  ComplexMatrix acc = ComplexMatrix::Zero(states.front().matrix().rows(), states.front().matrix().cols());
  double total = 0.0;
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (states[i].n_qubits() != n) throw DimensionError("mix of states with different qubit counts");
    if (weights[i] < 0.0) throw DomainError("mix weights must be non-negative");
    acc += weights[i] * states[i].matrix();
    total += weights[i];
  }
  if (std::abs(total - 1.0) > 1e-12) throw DomainError("mix weights must sum to 1");
  return DensityMatrix(n, std::move(acc));
}

namespace {

struct PresetName {
  PresetKind kind;
  std::string_view name;
};

constexpr PresetName kPresetNames[] = {
    {PresetKind::kGhz, "ghz"},
    {PresetKind::kBellPhiMinus, "bell_phi_minus"},
    {PresetKind::kProductPlusXMinusX, "product_plus_x_minus_x"},
    {PresetKind::kWernerGhz, "werner_ghz"},
    {PresetKind::kMaximallyMixed, "maximally_mixed"},
    {PresetKind::kProductAllPlusX, "product_all_plus_x"},
};

}  // namespace

std::string_view to_string(PresetKind kind) {
  for (const auto& p : kPresetNames)
    if (p.kind == kind) return p.name;
  return "unknown";
}

PresetKind preset_kind_from_string(std::string_view name) {
  for (const auto& p : kPresetNames)
    if (p.name == name) return p.kind;
  throw SchemaError("unknown preset kind '" + std::string(name) + "'");
}

StateVector ghz_vector(int n_qubits) {
  check_qubit_count(n_qubits);
  ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(dimension_of(n_qubits)));
  v(0) = M_SQRT1_2;
  v(v.size() - 1) = M_SQRT1_2;
  return StateVector(n_qubits, std::move(v));
}

DensityMatrix build_preset(const StatePreset& preset) {
  const int n = preset.n_qubits;
  check_qubit_count(n);
  const bool is_werner = preset.kind == PresetKind::kWernerGhz;
  if (is_werner != preset.visibility.has_value()) {
    throw DomainError(is_werner ? "werner_ghz preset requires a visibility"
                                : "visibility is only valid for the werner_ghz preset");
  }
  // Every preset projector has entries that are exact in binary (+-1/2,
  // +-1/4, 2^-N), so they are written entrywise rather than as rounded outer
  // products of 1/sqrt2 amplitudes.
  const auto dim = static_cast<Eigen::Index>(dimension_of(n));
  const auto ghz_projector = [dim] {
    ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
    m(0, 0) = m(0, dim - 1) = m(dim - 1, 0) = m(dim - 1, dim - 1) = 0.5;
    return m;
  };
  switch (preset.kind) {
    case PresetKind::kGhz:
      return DensityMatrix(n, ghz_projector());
    case PresetKind::kBellPhiMinus: {
      if (n != 2) throw DomainError("bell_phi_minus is a two-qubit preset");
      // (|+x>|-x> + |-x>|+x>)/sqrt2 = (|00> - |11>)/sqrt2
      ComplexMatrix m = ComplexMatrix::Zero(4, 4);
      m(0, 0) = m(3, 3) = 0.5;
      m(0, 3) = m(3, 0) = -0.5;
      return DensityMatrix(2, std::move(m));
    }
    case PresetKind::kProductPlusXMinusX: {
      if (n != 2) throw DomainError("product_plus_x_minus_x is a two-qubit preset");
      // |+x><+x| (x) |-x><-x|: 1/4, negated where the second qubit's bits differ.
      ComplexMatrix m(4, 4);
      for (Eigen::Index r = 0; r < 4; ++r)
        for (Eigen::Index c = 0; c < 4; ++c) m(r, c) = ((r ^ c) & 1) ? -0.25 : 0.25;
      return DensityMatrix(2, std::move(m));
    }
    case PresetKind::kWernerGhz: {
      const double vis = *preset.visibility;
      if (!(vis >= 0.0 && vis <= 1.0)) throw DomainError("visibility must lie in [0,1]");
      ComplexMatrix m = vis * ghz_projector();
      m.diagonal().array() += (1.0 - vis) / static_cast<double>(dim);
      return DensityMatrix(n, std::move(m));
    }
    case PresetKind::kMaximallyMixed:
      return DensityMatrix(n, ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim));
    case PresetKind::kProductAllPlusX:
      return DensityMatrix(n, ComplexMatrix::Constant(dim, dim, 1.0 / static_cast<double>(dim)));
  }
  throw DomainError("unsupported preset");
}

namespace {

const Json& require(const Json& obj, const char* key, const char* where) {
  if (!obj.is_object()) throw SchemaError(std::string("'") + where + "' must be an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(std::string("missing field '") + key + "' in '" + where + "'");
  return *it;
}

int require_int(const Json& obj, const char* key, const char* where) {
  const Json& v = require(obj, key, where);
  if (!v.is_number_integer()) throw SchemaError(std::string("field '") + key + "' must be an integer");
  return v.get<int>();
}

Complex complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw SchemaError("complex numbers must be [re, im] pairs");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

DensityMatrix parse_state_file(std::string_view text, int max_qubits) {
  const Json doc = parse_json_text(text);
  if (!doc.is_object()) throw SchemaError("state file must be a JSON object");
  int present = 0;
  for (const char* key : {"matrix", "vector", "preset"}) present += doc.contains(key) ? 1 : 0;
  if (present != 1) throw SchemaError("state file needs exactly one of 'matrix', 'vector', 'preset'");

  if (doc.contains("preset")) {
    const Json& p = doc["preset"];
    const Json& kind = require(p, "kind", "preset");
    if (!kind.is_string()) throw SchemaError("field 'kind' must be a string");
    StatePreset preset{preset_kind_from_string(kind.get<std::string>()), require_int(p, "n_qubits", "preset"),
                       std::nullopt};
    if (p.contains("visibility") && !p["visibility"].is_null()) {
      if (!p["visibility"].is_number()) throw SchemaError("field 'visibility' must be a number");
      preset.visibility = p["visibility"].get<double>();
    }
    check_qubit_count(preset.n_qubits, max_qubits);
    return build_preset(preset);
  }

  if (doc.contains("vector")) {
    const Json& v = doc["vector"];
    const int n = require_int(v, "n_qubits", "vector");
    check_qubit_count(n, max_qubits);
    const Json& amps = require(v, "amplitudes", "vector");
    if (!amps.is_array()) throw SchemaError("field 'amplitudes' must be an array");
    ComplexVector psi(static_cast<Eigen::Index>(amps.size()));
    for (std::size_t i = 0; i < amps.size(); ++i) psi(static_cast<Eigen::Index>(i)) = complex_from_json(amps[i]);
    return from_state_vector(StateVector(n, std::move(psi)));
  }

  const Json& m = doc["matrix"];
  const int n = require_int(m, "n_qubits", "matrix");
  check_qubit_count(n, max_qubits);
  const Json& rows = require(m, "entries", "matrix");
  if (!rows.is_array()) throw SchemaError("field 'entries' must be an array of rows");
  const auto n_rows = static_cast<Eigen::Index>(rows.size());
  for (const auto& row : rows) {
    if (!row.is_array()) throw SchemaError("each matrix row must be an array");
    if (static_cast<Eigen::Index>(row.size()) != n_rows) throw DimensionError("matrix entries are not square");
  }
  const Eigen::Index n_cols = n_rows;
  ComplexMatrix entries(n_rows, n_cols);
  for (Eigen::Index r = 0; r < n_rows; ++r)
    for (Eigen::Index c = 0; c < n_cols; ++c) entries(r, c) = complex_from_json(rows[r][c]);
  return DensityMatrix(n, std::move(entries), max_qubits);
}

std::string serialize_state(const DensityMatrix& rho) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < rho.dim(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < rho.dim(); ++c) row.push_back({rho(r, c).real(), rho(r, c).imag()});
    rows.push_back(std::move(row));
  }
  Json doc;
  doc["matrix"] = {{"n_qubits", rho.n_qubits()}, {"entries", std::move(rows)}};
  return doc.dump(2);
}

}  // namespace corrbell
