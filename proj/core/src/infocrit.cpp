#include "corrbell/infocrit.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace corrbell {

InfoMeasure info_from_probabilities(double p_plus, double p_minus) {
  if (!(p_plus >= 0.0) || !(p_minus >= 0.0)) throw DomainError("probabilities must be non-negative");
  if (std::abs(p_plus + p_minus - 1.0) > kProbabilitySumTol) throw DomainError("probabilities must sum to 1");
  const double d = p_plus - p_minus;
  return {d * d};
}

CorrInfoResult corr_info(const CorrelationTensor& t, const LocalFrame& frame) {
  const PlaneTensor plane = plane_subtensor(t, frame);
  std::vector<double> per_index(plane.entries().size());
  double total = 0.0;
  for (std::size_t i = 0; i < per_index.size(); ++i) {
    per_index[i] = plane[i] * plane[i];
    total += per_index[i];
  }
  return {frame, std::move(per_index), total};
}

std::vector<double> frame_angles(const LocalFrame& frame) {
  std::vector<double> angles;
  angles.reserve(2 * static_cast<std::size_t>(frame.n_qubits()));
  for (int j = 0; j < frame.n_qubits(); ++j) {
    const Vec3 n = frame.normal(j);
    angles.push_back(std::acos(std::clamp(n.z(), -1.0, 1.0)));
    angles.push_back(std::atan2(n.y(), n.x()));
  }
  return angles;
}

namespace {

std::vector<Vec3> normals_from_angles(std::span<const double> angles) {
  std::vector<Vec3> normals(angles.size() / 2);
  for (std::size_t j = 0; j < normals.size(); ++j) {
    const double theta = angles[2 * j], phi = angles[2 * j + 1];
    normals[j] = Vec3(std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta));
  }
  return normals;
}

std::vector<double> uniform_normal_start(int n, double theta, double phi) {
  std::vector<double> start;
  for (int j = 0; j < n; ++j) {
    start.push_back(theta);
    start.push_back(phi);
  }
  return start;
}

}  // namespace

LocalFrame frame_from_angles(std::span<const double> angles) {
  if (angles.size() % 2 != 0 || angles.empty()) throw DimensionError("frame angles come in (theta, phi) pairs");
  const std::vector<Vec3> normals = normals_from_angles(angles);
  return LocalFrame::from_normals(normals);
}

CriterionVerdict maximize_corr_info(const CorrelationTensor& t, const OptimizerOptions& opts,
                                    const std::vector<std::vector<double>>& extra_starts) {
  const int n = t.n_qubits();
  const std::vector<double> cart = t.cartesian();
  const Objective objective = [&](std::span<const double> angles) {
    const std::vector<Vec3> normals = normals_from_angles(angles);
    return plane_squared_sum(cart, n, normals);
  };

  std::vector<double> periods;
  for (int j = 0; j < n; ++j) {
    periods.push_back(M_PI);
    periods.push_back(2.0 * M_PI);
  }
  // Canonical x-y planes first, then the other two coordinate planes.
  std::vector<std::vector<double>> starts{uniform_normal_start(n, 0.0, 0.0), uniform_normal_start(n, M_PI_2, 0.0),
                                          uniform_normal_start(n, M_PI_2, M_PI_2)};
  starts.insert(starts.end(), extra_starts.begin(), extra_starts.end());

  OptimizerResult best = multistart_maximize(objective, periods, starts, opts);
  LocalFrame frame = frame_from_angles(best.argmax);
  const double total = best.value;
  return {total, std::move(frame), exceeds_one_bit(total), best.report};
}

CriterionVerdict two_qubit_info_criterion(const CorrelationTensor& t) {
  if (t.n_qubits() != 2) throw DomainError("two-qubit criterion needs a two-qubit tensor");
  const std::vector<double> cart = t.cartesian();
  Eigen::Matrix3d m;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) m(a, b) = cart[static_cast<std::size_t>(3 * a + b)];

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(m.transpose() * m, Eigen::EigenvaluesOnly);
  const Eigen::Vector3d ev = eig.eigenvalues();  // ascending
  const double max_total = ev(1) + ev(2);

  // Planes spanned by the two leading singular vectors diagonalize the block.
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::Matrix3d& u = svd.matrixU();
  const Eigen::Matrix3d& v = svd.matrixV();
  LocalFrame frame({{u.col(0), u.col(1)}, {v.col(0), v.col(1)}});

  OptimizerReport report;
  report.converged = true;
  return {max_total, std::move(frame), exceeds_one_bit(max_total), report};
}

}  // namespace corrbell
