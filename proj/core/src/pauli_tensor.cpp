#include "corrbell/pauli_tensor.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "corrbell/errors.hpp"

namespace corrbell {

namespace {

constexpr Complex kI{0.0, 1.0};

// Multiplies mode `mode` (of extent dims[mode]) by w (out x in), row-major
// layout with the last mode fastest. dims is updated in place.
template <class Scalar, class Matrix>
std::vector<Scalar> mode_product(const std::vector<Scalar>& data, std::vector<std::size_t>& dims, int mode,
                                 const Matrix& w) {
  std::size_t prefix = 1;
  for (int i = 0; i < mode; ++i) prefix *= dims[static_cast<std::size_t>(i)];
  std::size_t suffix = 1;
  for (std::size_t i = static_cast<std::size_t>(mode) + 1; i < dims.size(); ++i) suffix *= dims[i];
  const auto in_dim = static_cast<std::size_t>(w.cols());
  const auto out_dim = static_cast<std::size_t>(w.rows());

  std::vector<Scalar> out(prefix * out_dim * suffix, Scalar{});
  for (std::size_t p = 0; p < prefix; ++p) {
    const Scalar* src = data.data() + p * in_dim * suffix;
    Scalar* dst = out.data() + p * out_dim * suffix;
    for (std::size_t o = 0; o < out_dim; ++o) {
      for (std::size_t i = 0; i < in_dim; ++i) {
        const auto coeff = w(static_cast<Eigen::Index>(o), static_cast<Eigen::Index>(i));
        if (coeff == decltype(coeff){}) continue;
        for (std::size_t s = 0; s < suffix; ++s) dst[o * suffix + s] += coeff * src[i * suffix + s];
      }
    }
  }
  dims[static_cast<std::size_t>(mode)] = out_dim;
  return out;
}

// Pair index p = 2 r + c of one qubit's (row bit, column bit).
std::vector<Complex> to_pair_layout(const ComplexMatrix& m, int n) {
  const std::size_t dim = dimension_of(n);
  std::vector<Complex> out(dim * dim);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      std::size_t idx = 0;
      for (int j = 0; j < n; ++j) {
        const int shift = n - 1 - j;
        idx = idx * 4 + 2 * ((r >> shift) & 1u) + ((c >> shift) & 1u);
      }
      out[idx] = m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    }
  }
  return out;
}

CorrelationTensor tensor_by_contraction(const DensityMatrix& rho) {
  const int n = rho.n_qubits();
  // W[x][2r + c] = sigma_x[c][r], so that sum_p W[x][p] rho_p = Tr_j(rho sigma_x).
  Eigen::Matrix4cd w;
  for (int x = 0; x < 4; ++x) {
    const Eigen::Matrix2cd s = pauli_matrix(static_cast<Pauli>(x));
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) w(x, 2 * r + c) = s(c, r);
  }
  std::vector<Complex> data = to_pair_layout(rho.matrix(), n);
  std::vector<std::size_t> dims(static_cast<std::size_t>(n), 4);
  for (int j = n - 1; j >= 0; --j) data = mode_product(data, dims, j, w);

  std::vector<double> entries(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (std::abs(data[i].imag()) > kRealResidueTol) {
      throw std::logic_error("correlation tensor entry has imaginary residue " + std::to_string(data[i].imag()));
    }
    entries[i] = data[i].real();
  }
  return CorrelationTensor(n, std::move(entries));
}

// Tr[rho P] for P = sigma_x1 (x) ... (x) sigma_xN. Column i of P has its one
// non-zero in row i ^ flip with a phase that factorizes over qubits.
CorrelationTensor tensor_by_direct_trace(const DensityMatrix& rho) {
  const int n = rho.n_qubits();
  const std::size_t dim = dimension_of(n);
  const std::size_t count = pow_size(4, n);
  const ComplexMatrix& m = rho.matrix();
  std::vector<double> entries(count);
  std::vector<int> index(static_cast<std::size_t>(n));
  for (std::size_t flat = 0; flat < count; ++flat) {
    std::size_t rest = flat;
    std::size_t flip = 0;
    for (int j = n - 1; j >= 0; --j) {
      index[static_cast<std::size_t>(j)] = static_cast<int>(rest % 4);
      rest /= 4;
      const int x = index[static_cast<std::size_t>(j)];
      if (x == 1 || x == 2) flip |= std::size_t{1} << (n - 1 - j);
    }
    Complex acc{0.0, 0.0};
    for (std::size_t i = 0; i < dim; ++i) {
      Complex phase{1.0, 0.0};
      for (int j = 0; j < n; ++j) {
        const bool bit = (i >> (n - 1 - j)) & 1u;
        switch (index[static_cast<std::size_t>(j)]) {
          case 2: phase *= bit ? -kI : kI; break;
          case 3: if (bit) phase = -phase; break;
          default: break;
        }
      }
      acc += m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i ^ flip)) * phase;
    }
    if (std::abs(acc.imag()) > kRealResidueTol) {
      throw std::logic_error("correlation tensor entry has imaginary residue " + std::to_string(acc.imag()));
    }
    entries[flat] = acc.real();
  }
  return CorrelationTensor(n, std::move(entries));
}

}  // namespace

Eigen::Matrix2cd pauli_matrix(Pauli p) {
  Eigen::Matrix2cd m;
  switch (p) {
    case Pauli::kI: m << 1.0, 0.0, 0.0, 1.0; break;
    case Pauli::kX: m << 0.0, 1.0, 1.0, 0.0; break;
    case Pauli::kY: m << 0.0, -kI, kI, 0.0; break;
    case Pauli::kZ: m << 1.0, 0.0, 0.0, -1.0; break;
  }
  return m;
}

std::size_t flat_index(std::span<const int> index, std::size_t base) {
  std::size_t flat = 0;
  for (const int x : index) {
    if (x < 0 || static_cast<std::size_t>(x) >= base) throw DomainError("multi-index component out of range");
    flat = flat * base + static_cast<std::size_t>(x);
  }
  return flat;
}

CorrelationTensor::CorrelationTensor(int n_qubits, std::vector<double> entries)
    : n_qubits_(n_qubits), entries_(std::move(entries)) {
  if (n_qubits_ < 1 || entries_.size() != pow_size(4, n_qubits_)) {
    throw DimensionError("correlation tensor for " + std::to_string(n_qubits_) + " qubits needs 4^N entries");
  }
}

double CorrelationTensor::at(std::span<const int> index) const {
  if (static_cast<int>(index.size()) != n_qubits_) throw DimensionError("multi-index length must equal n_qubits");
  return entries_[flat_index(index, 4)];
}

std::vector<double> CorrelationTensor::cartesian() const {
  const std::size_t count = pow_size(3, n_qubits_);
  std::vector<double> out(count);
  for (std::size_t c = 0; c < count; ++c) {
    std::size_t rest = c;
    std::size_t flat = 0;
    std::size_t weight = 1;
    for (int j = n_qubits_ - 1; j >= 0; --j) {
      flat += (rest % 3 + 1) * weight;
      rest /= 3;
      weight *= 4;
    }
    out[c] = entries_[flat];
  }
  return out;
}

LocalFrame::LocalFrame(std::vector<std::pair<Vec3, Vec3>> axes) : axes_(std::move(axes)) {
  if (axes_.empty()) throw DomainError("a local frame needs at least one qubit");
  for (const auto& [a1, a2] : axes_) {
    if (!a1.allFinite() || !a2.allFinite() || std::abs(a1.norm() - 1.0) > kFrameTol ||
        std::abs(a2.norm() - 1.0) > kFrameTol || std::abs(a1.dot(a2)) > kFrameTol) {
      throw DomainError("local frame axes must be orthonormal");
    }
  }
}

LocalFrame LocalFrame::canonical(int n_qubits) {
  return LocalFrame(std::vector<std::pair<Vec3, Vec3>>(static_cast<std::size_t>(n_qubits), {Vec3::UnitX(), Vec3::UnitY()}));
}

LocalFrame LocalFrame::from_normals(std::span<const Vec3> normals) {
  constexpr double kPoleCos = 0.9;
  std::vector<std::pair<Vec3, Vec3>> axes;
  axes.reserve(normals.size());
  for (const Vec3& raw : normals) {
    const Vec3 n = raw.normalized();
    const Vec3 ref = std::abs(n.z()) > kPoleCos ? Vec3::UnitX() : Vec3::UnitZ();
    const Vec3 a1 = (ref - ref.dot(n) * n).normalized();
    axes.emplace_back(a1, n.cross(a1));
  }
  return LocalFrame(std::move(axes));
}

PlaneTensor::PlaneTensor(int n_qubits, std::vector<double> entries)
    : n_qubits_(n_qubits), entries_(std::move(entries)) {
  if (n_qubits_ < 1 || entries_.size() != dimension_of(n_qubits_)) {
    throw DimensionError("plane tensor for " + std::to_string(n_qubits_) + " qubits needs 2^N entries");
  }
}

double PlaneTensor::squared_sum() const {
  double s = 0.0;
  for (const double e : entries_) s += e * e;
  return s;
}

CorrelationTensor correlation_tensor(const DensityMatrix& rho, TensorMethod method) {
  constexpr int kDirectTraceMaxQubits = 6;
  if (method == TensorMethod::kAuto) {
    method = rho.n_qubits() <= kDirectTraceMaxQubits ? TensorMethod::kDirectTrace : TensorMethod::kContraction;
  }
  return method == TensorMethod::kDirectTrace ? tensor_by_direct_trace(rho) : tensor_by_contraction(rho);
}

ComplexMatrix density_from_tensor(const CorrelationTensor& t) {
  const int n = t.n_qubits();
  // W[2r + c][x] = sigma_x[r][c] / 2
  Eigen::Matrix4cd w;
  for (int x = 0; x < 4; ++x) {
    const Eigen::Matrix2cd s = pauli_matrix(static_cast<Pauli>(x));
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) w(2 * r + c, x) = 0.5 * s(r, c);
  }
  std::vector<Complex> data(t.entries().begin(), t.entries().end());
  std::vector<std::size_t> dims(static_cast<std::size_t>(n), 4);
  for (int j = n - 1; j >= 0; --j) data = mode_product(data, dims, j, w);

  const std::size_t dim = dimension_of(n);
  ComplexMatrix m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      std::size_t idx = 0;
      for (int j = 0; j < n; ++j) {
        const int shift = n - 1 - j;
        idx = idx * 4 + 2 * ((r >> shift) & 1u) + ((c >> shift) & 1u);
      }
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = data[idx];
    }
  }
  return m;
}

double contract(std::span<const double> cartesian, int n_qubits, std::span<const Vec3> vectors) {
  if (static_cast<int>(vectors.size()) != n_qubits) throw DimensionError("need one vector per qubit");
  if (cartesian.size() != pow_size(3, n_qubits)) throw DimensionError("cartesian tensor has wrong size");
  // Reduce the fastest (last) mode first; the buffer shrinks by 3 each step.
  std::vector<double> buf(cartesian.begin(), cartesian.end());
  std::size_t len = buf.size();
  for (int j = n_qubits - 1; j >= 0; --j) {
    const Vec3& v = vectors[static_cast<std::size_t>(j)];
    len /= 3;
    for (std::size_t i = 0; i < len; ++i) buf[i] = buf[3 * i] * v.x() + buf[3 * i + 1] * v.y() + buf[3 * i + 2] * v.z();
  }
  return buf[0];
}

double contract(const CorrelationTensor& t, std::span<const Vec3> vectors) {
  return contract(t.cartesian(), t.n_qubits(), vectors);
}

std::vector<double> contract_pairs(std::span<const double> cartesian, int n_qubits,
                                   std::span<const std::pair<Vec3, Vec3>> pairs) {
  if (static_cast<int>(pairs.size()) != n_qubits) throw DimensionError("need one vector pair per qubit");
  if (cartesian.size() != pow_size(3, n_qubits)) throw DimensionError("cartesian tensor has wrong size");
  // Modes are reduced last to first: before step j the layout is
  // [3^j prefix][3 in][2^(N-1-j) suffix], after it [3^j][2 out][suffix].
  std::vector<double> in(cartesian.begin(), cartesian.end());
  std::vector<double> out(in.size());
  std::size_t prefix = in.size(), suffix = 1;
  for (int j = n_qubits - 1; j >= 0; --j) {
    const auto& [first, second] = pairs[static_cast<std::size_t>(j)];
    prefix /= 3;
    for (std::size_t p = 0; p < prefix; ++p) {
      const double* src = in.data() + p * 3 * suffix;
      double* dst = out.data() + p * 2 * suffix;
      for (std::size_t s = 0; s < suffix; ++s) {
        const double x = src[s], y = src[suffix + s], z = src[2 * suffix + s];
        dst[s] = first.x() * x + first.y() * y + first.z() * z;
        dst[suffix + s] = second.x() * x + second.y() * y + second.z() * z;
      }
    }
    suffix *= 2;
    std::swap(in, out);
  }
  in.resize(suffix);
  return in;
}

PlaneTensor plane_subtensor(const CorrelationTensor& t, const LocalFrame& frame) {
  const int n = t.n_qubits();
  if (frame.n_qubits() != n) throw DimensionError("frame and tensor have different qubit counts");
  std::vector<std::pair<Vec3, Vec3>> pairs;
  for (int j = 0; j < n; ++j) pairs.emplace_back(frame.a1(j), frame.a2(j));
  return PlaneTensor(n, contract_pairs(t.cartesian(), n, pairs));
}

LocalFrame rotate_frame_in_plane(const LocalFrame& frame, std::span<const double> angles) {
  if (static_cast<int>(angles.size()) != frame.n_qubits()) throw DimensionError("need one angle per qubit");
  std::vector<std::pair<Vec3, Vec3>> axes;
  axes.reserve(angles.size());
  for (int j = 0; j < frame.n_qubits(); ++j) {
    const double c = std::cos(angles[static_cast<std::size_t>(j)]);
    const double s = std::sin(angles[static_cast<std::size_t>(j)]);
    Vec3 a1 = c * frame.a1(j) + s * frame.a2(j);
    Vec3 a2 = -s * frame.a1(j) + c * frame.a2(j);
    // Re-orthonormalize so repeated rotations do not drift past kFrameTol.
    a1.normalize();
    a2 = (a2 - a2.dot(a1) * a1).normalized();
    axes.emplace_back(a1, a2);
  }
  return LocalFrame(std::move(axes));
}

CanonicalTwoQubit canonical_two_qubit_frame(const CorrelationTensor& t, const LocalFrame& frame) {
  if (t.n_qubits() != 2) throw DomainError("canonical two-qubit frame needs a two-qubit tensor");
  const PlaneTensor block = plane_subtensor(t, frame);
  // block = Rot(phi) diag(sx, sy) Rot(theta), Rot counter-clockwise.
  const double a = block[0], b = block[1], c = block[2], d = block[3];
  const double e = 0.5 * (a + d), f = 0.5 * (a - d), g = 0.5 * (c + b), h = 0.5 * (c - b);
  const double angle_f = std::atan2(g, f);
  const double angle_e = std::atan2(h, e);
  const double theta = 0.5 * (angle_e - angle_f);
  const double phi = 0.5 * (angle_e + angle_f);
  // Rotating qubit j's frame by psi maps the block to R(psi1) B R(psi2)^T with
  // R(psi) = Rot(-psi), so psi1 = phi, psi2 = -theta.
  const std::array<double, 2> angles{phi, -theta};
  LocalFrame rotated = rotate_frame_in_plane(frame, angles);
  PlaneTensor plane = plane_subtensor(t, rotated);
  return {std::move(rotated), std::move(plane), angles};
}

double plane_squared_sum(std::span<const double> cartesian, int n_qubits, std::span<const Vec3> normals) {
  if (static_cast<int>(normals.size()) != n_qubits) throw DimensionError("need one normal per qubit");
  std::vector<double> data(cartesian.begin(), cartesian.end());
  std::vector<std::size_t> dims(static_cast<std::size_t>(n_qubits), 3);
  for (int j = n_qubits - 1; j >= 0; --j) {
    const Vec3 n = normals[static_cast<std::size_t>(j)].normalized();
    const Eigen::Matrix3d projector = Eigen::Matrix3d::Identity() - n * n.transpose();
    data = mode_product(data, dims, j, projector);
  }
  double s = 0.0;
  for (const double v : data) s += v * v;
  return s;
}

}  // namespace corrbell
