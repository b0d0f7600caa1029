#include "doctest.h"

#include <cmath>

#include "corrbell/qstate.hpp"
#include "test_support.hpp"

using namespace corrbell;
using corrbell::testing::Rng;

namespace {

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

ComplexMatrix outer(const ComplexVector& v) { return v * v.adjoint(); }

}  // namespace

TEST_CASE("validate_density_matrix accepts the maximally mixed qubit") {
  const ComplexMatrix m = ComplexMatrix::Identity(2, 2) / 2.0;
  CHECK(validate_density_matrix(1, m).ok());
}

TEST_CASE("validate_density_matrix reports a trace residual") {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = 0.5;
  const auto report = validate_density_matrix(1, m);
  REQUIRE(report.violations.size() == 1);
  CHECK(report.violations[0].kind == Violation::Kind::kTrace);
  CHECK(report.violations[0].residual == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("validate_density_matrix flags non-Hermitian and negative matrices") {
  ComplexMatrix m = ComplexMatrix::Identity(2, 2) / 2.0;
  m(0, 1) = Complex{0.1, 0.0};
  auto report = validate_density_matrix(1, m);
  REQUIRE_FALSE(report.ok());
  CHECK(report.violations[0].kind == Violation::Kind::kHermiticity);

  ComplexMatrix neg = ComplexMatrix::Zero(2, 2);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  report = validate_density_matrix(1, neg);
  REQUIRE(report.violations.size() == 1);
  CHECK(report.violations[0].kind == Violation::Kind::kPositivity);
  CHECK(report.violations[0].residual == doctest::Approx(0.5));
}

TEST_CASE("validate_density_matrix rejects wrong dimensions") {
  CHECK_THROWS_AS(validate_density_matrix(2, ComplexMatrix::Identity(2, 2)), DimensionError);
  CHECK_THROWS_AS(DensityMatrix(1, ComplexMatrix::Identity(3, 3) / 3.0), DimensionError);
}

TEST_CASE("from_state_vector builds projectors") {
  ComplexVector up(2);
  up << 1.0, 0.0;
  const DensityMatrix z = from_state_vector(StateVector(1, up));
  CHECK(z(0, 0).real() == 1.0);
  CHECK(std::abs(z(1, 1)) == 0.0);

  ComplexVector plus(2);
  plus << M_SQRT1_2, M_SQRT1_2;
  const DensityMatrix x = from_state_vector(StateVector(1, plus));
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) CHECK(std::abs(x(r, c) - 0.5) < 1e-15);

  const DensityMatrix ghz = from_state_vector(ghz_vector(3));
  for (std::size_t r = 0; r < 8; ++r) {
    for (std::size_t c = 0; c < 8; ++c) {
      const bool corner = (r == 0 || r == 7) && (c == 0 || c == 7);
      CHECK(std::abs(ghz(r, c) - (corner ? 0.5 : 0.0)) < 1e-15);
    }
  }
}

TEST_CASE("from_state_vector rejects unnormalized vectors") {
  ComplexVector v(2);
  v << 1.0, 1.0;
  CHECK_THROWS_AS(StateVector(1, v), DomainError);
  CHECK_THROWS_AS(StateVector(2, v), DimensionError);
}

TEST_CASE("pure states have unit purity") {
  Rng rng(7);
  for (int n = 1; n <= 4; ++n) {
    const DensityMatrix rho = corrbell::testing::random_pure_state(n, rng);
    CHECK(std::abs(rho.purity() - 1.0) < 1e-10);
    CHECK(validate_density_matrix(n, rho.matrix()).ok());
  }
}

TEST_CASE("Werner presets interpolate between noise and GHZ") {
  const DensityMatrix noise = build_preset({PresetKind::kWernerGhz, 2, 0.0});
  CHECK(max_abs_diff(noise.matrix(), ComplexMatrix::Identity(4, 4) / 4.0) < 1e-15);

  const DensityMatrix pure = build_preset({PresetKind::kWernerGhz, 2, 1.0});
  ComplexVector g = ComplexVector::Zero(4);
  g(0) = g(3) = M_SQRT1_2;
  CHECK(max_abs_diff(pure.matrix(), outer(g)) < 1e-15);

  // Every visibility gives a valid state.
  for (int n = 1; n <= 5; ++n)
    for (int i = 0; i <= 20; ++i) CHECK_NOTHROW(build_preset({PresetKind::kWernerGhz, n, i / 20.0}));
}

TEST_CASE("bell_phi_minus has both expansions") {
  const DensityMatrix rho = build_preset({PresetKind::kBellPhiMinus, 2, std::nullopt});
  ComplexVector px(2), mx(2), py(2), my(2);
  px << M_SQRT1_2, M_SQRT1_2;
  mx << M_SQRT1_2, -M_SQRT1_2;
  py << M_SQRT1_2, Complex(0, M_SQRT1_2);
  my << M_SQRT1_2, Complex(0, -M_SQRT1_2);
  using corrbell::testing::kron;
  const ComplexVector x_form = (kron(px, mx) + kron(mx, px)) * M_SQRT1_2;
  const ComplexVector y_form = (kron(py, py) + kron(my, my)) * M_SQRT1_2;
  CHECK(max_abs_diff(rho.matrix(), outer(x_form)) < 1e-15);
  CHECK(max_abs_diff(rho.matrix(), outer(y_form)) < 1e-15);
}

TEST_CASE("every preset validates") {
  const StatePreset presets[] = {
      {PresetKind::kGhz, 3, std::nullopt},
      {PresetKind::kBellPhiMinus, 2, std::nullopt},
      {PresetKind::kProductPlusXMinusX, 2, std::nullopt},
      {PresetKind::kWernerGhz, 4, 0.4},
      {PresetKind::kMaximallyMixed, 3, std::nullopt},
      {PresetKind::kProductAllPlusX, 4, std::nullopt},
  };
  for (const auto& p : presets) {
    const DensityMatrix rho = build_preset(p);
    CHECK(validate_density_matrix(rho.n_qubits(), rho.matrix()).ok());
  }
}

TEST_CASE("unsupported preset combinations are refused") {
  CHECK_THROWS_AS(build_preset({PresetKind::kBellPhiMinus, 3, std::nullopt}), DomainError);
  CHECK_THROWS_AS(build_preset({PresetKind::kProductPlusXMinusX, 1, std::nullopt}), DomainError);
  CHECK_THROWS_AS(build_preset({PresetKind::kWernerGhz, 2, std::nullopt}), DomainError);
  CHECK_THROWS_AS(build_preset({PresetKind::kGhz, 2, 0.5}), DomainError);
  CHECK_THROWS_AS(build_preset({PresetKind::kWernerGhz, 2, 1.5}), DomainError);
  CHECK_THROWS_AS(build_preset({PresetKind::kMaximallyMixed, 13, std::nullopt}), DomainError);
}

TEST_CASE("parse_state_file handles all three forms") {
  const DensityMatrix mixed = parse_state_file(R"({"preset":{"kind":"maximally_mixed","n_qubits":1}})");
  CHECK(max_abs_diff(mixed.matrix(), ComplexMatrix::Identity(2, 2) / 2.0) < 1e-15);

  const DensityMatrix up = parse_state_file(R"({"matrix":{"n_qubits":1,"entries":[[[1,0],[0,0]],[[0,0],[0,0]]]}})");
  CHECK(up(0, 0).real() == 1.0);

  const DensityMatrix ghz = parse_state_file(
      R"({"vector":{"n_qubits":2,"amplitudes":[[0.7071067811865476,0],[0,0],[0,0],[0.7071067811865476,0]]}})");
  CHECK(max_abs_diff(ghz.matrix(), from_state_vector(ghz_vector(2)).matrix()) < 1e-15);

  const DensityMatrix w = parse_state_file(R"({"preset":{"kind":"werner_ghz","n_qubits":3,"visibility":0.25}})");
  CHECK(max_abs_diff(w.matrix(), build_preset({PresetKind::kWernerGhz, 3, 0.25}).matrix()) < 1e-15);
}

TEST_CASE("parse_state_file error reporting") {
  SUBCASE("syntax errors carry a position") {
    try {
      parse_state_file("{\n  \"preset\": {\"kind\": }\n}");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
      CHECK(e.column() > 1);
    }
  }
  SUBCASE("missing fields are named") {
    try {
      parse_state_file(R"({"preset":{"kind":"ghz"}})");
      FAIL("expected SchemaError");
    } catch (const SchemaError& e) {
      CHECK(std::string(e.what()).find("n_qubits") != std::string::npos);
    }
  }
  SUBCASE("exactly one top-level form") {
    CHECK_THROWS_AS(parse_state_file(R"({})"), SchemaError);
    CHECK_THROWS_AS(parse_state_file(R"({"preset":{"kind":"ghz","n_qubits":2},"vector":{}})"), SchemaError);
  }
  SUBCASE("invalid matrices forward the report") {
    try {
      parse_state_file(R"({"matrix":{"n_qubits":1,"entries":[[[1,0],[0,0]],[[0,0],[0.5,0]]]}})");
      FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
      REQUIRE(e.report().violations.size() == 1);
      CHECK(e.report().violations[0].kind == Violation::Kind::kTrace);
    }
  }
  SUBCASE("ragged or mis-sized matrices") {
    CHECK_THROWS_AS(parse_state_file(R"({"matrix":{"n_qubits":1,"entries":[[[1,0]],[[0,0],[0,0]]]}})"),
                    DimensionError);
    CHECK_THROWS_AS(parse_state_file(R"({"matrix":{"n_qubits":2,"entries":[[[1,0],[0,0]],[[0,0],[0,0]]]}})"),
                    DimensionError);
  }
  SUBCASE("unknown preset") {
    CHECK_THROWS_AS(parse_state_file(R"({"preset":{"kind":"cat","n_qubits":2}})"), SchemaError);
  }
}

TEST_CASE("serialize then parse reproduces every entry") {
  Rng rng(11);
  for (int n = 1; n <= 4; ++n) {
    const DensityMatrix rho = corrbell::testing::random_mixed_state(n, 3, rng);
    const DensityMatrix back = parse_state_file(serialize_state(rho));
    CHECK(max_abs_diff(rho.matrix(), back.matrix()) <= 1e-12);
  }
}
