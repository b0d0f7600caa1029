#include "doctest.h"

#include <cmath>

#include <Eigen/SVD>

#include "corrbell/infocrit.hpp"
#include "test_support.hpp"

using namespace corrbell;
using corrbell::testing::Rng;

namespace {

CorrelationTensor preset_tensor(PresetKind k, int n, std::optional<double> v = std::nullopt) {
  return correlation_tensor(build_preset({k, n, v}));
}

// Oracle: sigma_1^2 + sigma_2^2 of the 3x3 Cartesian block, from an SVD of
// the block itself (the implementation uses eigenvalues of M^T M).
double svd_oracle(const CorrelationTensor& t) {
  const std::vector<double> cart = t.cartesian();
  Eigen::Matrix3d m;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) m(a, b) = cart[static_cast<std::size_t>(3 * a + b)];
  const Eigen::Vector3d s = Eigen::JacobiSVD<Eigen::Matrix3d>(m).singularValues();
  return s(0) * s(0) + s(1) * s(1);
}

}  // namespace

TEST_CASE("info_from_probabilities") {
  CHECK(info_from_probabilities(1.0, 0.0).value == 1.0);
  CHECK(info_from_probabilities(0.5, 0.5).value == 0.0);
  CHECK(info_from_probabilities(0.9, 0.1).value == doctest::Approx(0.64).epsilon(1e-14));
  CHECK_THROWS_AS(info_from_probabilities(0.6, 0.6), DomainError);
  CHECK_THROWS_AS(info_from_probabilities(-0.1, 1.1), DomainError);
}

TEST_CASE("corr_info in the canonical frame") {
  SUBCASE("product |+x>|-x> carries one bit") {
    const CorrInfoResult r = corr_info(preset_tensor(PresetKind::kProductPlusXMinusX, 2), LocalFrame::canonical(2));
    CHECK(r.total == doctest::Approx(1.0));
    CHECK(r.per_index[0] == doctest::Approx(1.0));
  }
  SUBCASE("Bell state carries two") {
    const CorrInfoResult r = corr_info(preset_tensor(PresetKind::kBellPhiMinus, 2), LocalFrame::canonical(2));
    CHECK(r.total == doctest::Approx(2.0));
    CHECK(r.per_index[0] == doctest::Approx(1.0));  // I_xx
    CHECK(r.per_index[3] == doctest::Approx(1.0));  // I_yy
    CHECK(std::abs(r.per_index[1]) < 1e-15);
    CHECK(std::abs(r.per_index[2]) < 1e-15);
  }
  SUBCASE("GHZ-3 sums to four") {
    const CorrInfoResult r = corr_info(preset_tensor(PresetKind::kGhz, 3), LocalFrame::canonical(3));
    CHECK(r.total == doctest::Approx(4.0));
    for (std::size_t mask : {0b000u, 0b011u, 0b101u, 0b110u}) CHECK(r.per_index[mask] == doctest::Approx(1.0));
    double sum = 0.0;
    for (const double v : r.per_index) sum += v;
    CHECK(std::abs(sum - r.total) <= 1e-12);
  }
}

TEST_CASE("corr_info total is invariant under in-plane rotations") {
  Rng rng(101);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + trial % 2;
    const CorrelationTensor t = correlation_tensor(corrbell::testing::random_mixed_state(n, 2, rng));
    std::vector<Vec3> normals;
    for (int j = 0; j < n; ++j) normals.push_back(corrbell::testing::random_unit(rng));
    const LocalFrame f = LocalFrame::from_normals(normals);
    std::uniform_real_distribution<double> u(0.0, 2 * M_PI);
    std::vector<double> angles(static_cast<std::size_t>(n));
    for (double& a : angles) a = u(rng);
    const CorrInfoResult a = corr_info(t, f), b = corr_info(t, rotate_frame_in_plane(f, angles));
    CHECK(std::abs(a.total - b.total) <= 1e-9);
  }
}

TEST_CASE("maximize_corr_info on reference states") {
  for (int n = 1; n <= 3; ++n) {
    const CriterionVerdict v = maximize_corr_info(preset_tensor(PresetKind::kMaximallyMixed, n));
    CHECK(std::abs(v.max_total) < 1e-15);
    CHECK_FALSE(v.entangled);
  }
  const CriterionVerdict bell = maximize_corr_info(preset_tensor(PresetKind::kBellPhiMinus, 2));
  CHECK(bell.max_total == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(bell.entangled);
  CHECK(corr_info(preset_tensor(PresetKind::kBellPhiMinus, 2), bell.argmax_frame).total ==
        doctest::Approx(bell.max_total).epsilon(1e-12));
}

TEST_CASE("optimizer agrees with the closed form on random two-qubit states") {
  Rng rng(103);
  for (int trial = 0; trial < 100; ++trial) {
    const DensityMatrix rho = trial % 2 == 0 ? corrbell::testing::random_pure_state(2, rng)
                                             : corrbell::testing::random_mixed_state(2, 1 + trial % 4, rng);
    const CorrelationTensor t = correlation_tensor(rho);
    const double oracle = svd_oracle(t);
    const CriterionVerdict closed = two_qubit_info_criterion(t);
    CHECK(std::abs(closed.max_total - oracle) < 1e-12);
    const CriterionVerdict numeric = maximize_corr_info(t);
    CHECK(std::abs(numeric.max_total - closed.max_total) < 1e-6);
  }
}

TEST_CASE("two_qubit_info_criterion") {
  const CriterionVerdict bell = two_qubit_info_criterion(preset_tensor(PresetKind::kBellPhiMinus, 2));
  CHECK(bell.max_total == doctest::Approx(2.0));
  CHECK(bell.entangled);

  const CriterionVerdict boundary = two_qubit_info_criterion(preset_tensor(PresetKind::kWernerGhz, 2, M_SQRT1_2));
  CHECK(boundary.max_total == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_FALSE(boundary.entangled);

  // Its frame diagonalizes the in-plane block.
  Rng rng(107);
  const CorrelationTensor t = correlation_tensor(corrbell::testing::random_mixed_state(2, 2, rng));
  const CriterionVerdict v = two_qubit_info_criterion(t);
  const PlaneTensor p = plane_subtensor(t, v.argmax_frame);
  CHECK(std::abs(p[1]) < 1e-12);
  CHECK(std::abs(p[2]) < 1e-12);
  CHECK(p.squared_sum() == doctest::Approx(v.max_total).epsilon(1e-12));

  CHECK_THROWS_AS(two_qubit_info_criterion(preset_tensor(PresetKind::kGhz, 3)), DomainError);
}

TEST_CASE("product states carry exactly one bit") {
  Rng rng(109);
  for (int trial = 0; trial < 50; ++trial) {
    const CorrelationTensor t = correlation_tensor(corrbell::testing::random_product_state(2, rng));
    const CriterionVerdict closed = two_qubit_info_criterion(t);
    CHECK(closed.max_total == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(std::abs(maximize_corr_info(t).max_total - closed.max_total) < 1e-6);
  }
}

TEST_CASE("classically composed states stay within one bit") {
  Rng rng(113);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 3;
    const CorrelationTensor prod = correlation_tensor(corrbell::testing::random_product_state(n, rng));
    CHECK(maximize_corr_info(prod).max_total <= 1.0 + 1e-6);
    const CorrelationTensor sep = correlation_tensor(corrbell::testing::random_separable_state(n, 8, rng));
    const CriterionVerdict v = maximize_corr_info(sep);
    CHECK(v.max_total <= 1.0 + 1e-6);
    CHECK_FALSE(v.entangled);
  }
}

TEST_CASE("Werner GHZ information is monotone in visibility") {
  double previous = -1.0;
  for (int i = 0; i <= 20; ++i) {
    const double v = i / 20.0;
    const double total = maximize_corr_info(preset_tensor(PresetKind::kWernerGhz, 3, v)).max_total;
    CHECK(total >= previous - 1e-12);
    CHECK(total == doctest::Approx(4.0 * v * v).epsilon(1e-9));
    previous = total;
  }
}

TEST_CASE("maximize_corr_info is deterministic per seed") {
  Rng rng(127);
  const CorrelationTensor t = correlation_tensor(corrbell::testing::random_mixed_state(3, 2, rng));
  OptimizerOptions opts;
  opts.seed = 9;
  const CriterionVerdict a = maximize_corr_info(t, opts), b = maximize_corr_info(t, opts);
  CHECK(a.max_total == b.max_total);
  CHECK(a.optimizer.best_start == b.optimizer.best_start);
  CHECK(a.argmax_frame.a1(0) == b.argmax_frame.a1(0));
}

TEST_CASE("frame angles round-trip through the normal parametrization") {
  Rng rng(131);
  std::vector<Vec3> normals;
  for (int j = 0; j < 4; ++j) normals.push_back(corrbell::testing::random_unit(rng));
  const LocalFrame f = LocalFrame::from_normals(normals);
  const LocalFrame g = frame_from_angles(frame_angles(f));
  for (int j = 0; j < 4; ++j) CHECK((f.normal(j) - g.normal(j)).norm() < 1e-12);
}
