#include "doctest.h"

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "corrbell/bellgen.hpp"
#include "corrbell/wernerlab.hpp"

using namespace corrbell;

namespace {

long long binomial(int n, int k) {
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST_CASE("closed-form in-plane tensor matches the numerical one") {
  for (int n = 2; n <= 6; ++n) {
    for (const double v : {0.0, 0.3, 0.7, 1.0}) {
      const PlaneTensor closed = werner_inplane_tensor(n, v);
      const PlaneTensor numeric = plane_subtensor(
          correlation_tensor(build_preset({PresetKind::kWernerGhz, n, v})), LocalFrame::canonical(n));
      for (std::size_t m = 0; m < closed.entries().size(); ++m) CHECK(std::abs(closed[m] - numeric[m]) <= 1e-10);
    }
  }
}

TEST_CASE("werner_inplane_tensor examples") {
  const PlaneTensor two = werner_inplane_tensor(2, 1.0);
  CHECK(two.at_mask(0b00) == 1.0);
  CHECK(two.at_mask(0b11) == -1.0);
  CHECK(two.at_mask(0b01) == 0.0);
  CHECK(two.at_mask(0b10) == 0.0);

  const PlaneTensor three = werner_inplane_tensor(3, 0.5);
  CHECK(three.at_mask(0b000) == 0.5);
  for (std::size_t m : {0b011u, 0b101u, 0b110u}) CHECK(three.at_mask(m) == -0.5);
  for (std::size_t m : {0b001u, 0b010u, 0b100u, 0b111u}) CHECK(three.at_mask(m) == 0.0);

  for (int n = 1; n <= 8; ++n)
    for (std::size_t m = 0; m < (std::size_t{1} << n); ++m) CHECK(werner_inplane_tensor(n, 0.0).at_mask(m) == 0.0);

  CHECK_THROWS_AS(werner_inplane_tensor(2, 1.5), DomainError);
  CHECK_THROWS_AS(werner_inplane_tensor(0, 0.5), DomainError);
}

TEST_CASE("count_nonzero_inplane") {
  CHECK(count_nonzero_inplane(2) == 2);
  CHECK(count_nonzero_inplane(3) == 4);
  CHECK(count_nonzero_inplane(5) == 16);
  for (int n = 1; n <= 10; ++n) {
    const PlaneTensor t = werner_inplane_tensor(n, 1.0);
    long long direct = 0;
    for (std::size_t m = 0; m < t.entries().size(); ++m) direct += t[m] != 0.0;
    long long binomial_sum = 0;
    for (int k = 0; 2 * k <= n; ++k) binomial_sum += binomial(n, 2 * k);
    CHECK(count_nonzero_inplane(n) == direct);
    CHECK(count_nonzero_inplane(n) == binomial_sum);
  }
}

TEST_CASE("visibility_threshold") {
  CHECK(visibility_threshold(2) == 0.7071067811865476);
  CHECK(visibility_threshold(3) == 0.5);
  // 2^-1.5 correctly rounded; the literal below is one ulp under it.
  CHECK(visibility_threshold(4) == std::sqrt(0.125));
  CHECK(std::abs(visibility_threshold(4) - 0.35355339059327373) <= std::nextafter(0.35355339059327373, 1.0) - 0.35355339059327373);
  for (int n = 2; n <= 12; ++n) CHECK(visibility_threshold(n) == std::ldexp(n % 2 == 1 ? 1.0 : M_SQRT1_2, -(n - 1) / 2));
  CHECK_THROWS_AS(visibility_threshold(1), DomainError);
}

TEST_CASE("analyze_werner") {
  for (int n = 2; n <= 10; ++n) {
    const WernerAnalysis full = analyze_werner(n, 1.0);
    CHECK(full.info_sum == std::ldexp(1.0, n - 1));
    CHECK(full.nonzero_inplane_count == count_nonzero_inplane(n));
    CHECK_FALSE(full.lr_describable);
    const WernerAnalysis at = analyze_werner(n, visibility_threshold(n));
    CHECK(at.lr_describable);
    CHECK(std::abs(at.info_sum - 1.0) <= 1e-10);
    const WernerAnalysis mid = analyze_werner(n, 0.3);
    CHECK(std::abs(mid.info_sum - std::ldexp(0.09, n - 1)) <= 1e-10);
  }
}

TEST_CASE("visibility scans locate the threshold") {
  for (int n = 2; n <= 3; ++n) {
    const std::vector<ScanRow> rows = visibility_scan(n);
    if (n == 2) CHECK(info_crossing(rows) == doctest::Approx(0.71));
    if (n == 3) CHECK(info_crossing(rows) == doctest::Approx(0.51));  // V = 0.5 sits exactly on the bound
    REQUIRE(rows.size() == 101);
    CHECK(rows.front().visibility == 0.0);
    CHECK(rows.back().visibility == 1.0);
    CHECK(rows.back().info_sum == doctest::Approx(std::ldexp(1.0, n - 1)).epsilon(1e-9));
    const double crossing = info_crossing(rows);
    CHECK(crossing > visibility_threshold(n));
    CHECK(crossing - visibility_threshold(n) <= 0.01 + 1e-12);
    for (std::size_t i = 1; i < rows.size(); ++i) {
      CHECK(rows[i].info_sum >= rows[i - 1].info_sum - 1e-9);
      CHECK(rows[i].bell_ratio >= rows[i - 1].bell_ratio - 1e-6);
      // For Werner states the two criteria coincide.
      CHECK(rows[i].bell_violated == rows[i].info_entangled);
    }
  }
  CHECK_THROWS_AS(visibility_scan(2, ScanOptions{.grid = 1}), DomainError);
}

TEST_CASE("Bell violation brackets the threshold") {
  for (int n = 2; n <= 3; ++n) {
    const double vt = visibility_threshold(n);
    const auto ratio = [n](double v) {
      return maximize_general_bell(correlation_tensor(build_preset({PresetKind::kWernerGhz, n, v})));
    };
    CHECK(ratio(vt * 1.02).evaluation.violated);
    CHECK_FALSE(ratio(vt * 0.98).evaluation.violated);
  }
}

TEST_CASE("scan CSV") {
  const std::vector<ScanRow> rows = visibility_scan(2, ScanOptions{.grid = 3});
  const std::string csv = scan_to_csv(rows);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "V,info_sum,bell_lhs,bell_ratio,info_entangled,bell_violated");
  int count = 0;
  while (std::getline(in, line)) {
    ++count;
    const std::size_t comma = line.find(',');
    const std::size_t second = line.find(',', comma + 1);
    const double info = std::strtod(line.substr(comma + 1, second - comma - 1).c_str(), nullptr);
    CHECK(info == rows[static_cast<std::size_t>(count - 1)].info_sum);  // 17 digits round-trip
  }
  CHECK(count == 3);
  CHECK(csv.find("0.5,") != std::string::npos);
  CHECK(csv.rfind("true,true\n") == csv.size() - 10);
}
