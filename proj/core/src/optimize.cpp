#include "corrbell/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

namespace corrbell {

namespace {

std::vector<int> first_primes(int count) {
  std::vector<int> primes;
  for (int c = 2; static_cast<int>(primes.size()) < count; ++c) {
    bool prime = true;
    for (const int p : primes) {
      if (p * p > c) break;
      if (c % p == 0) {
        prime = false;
        break;
      }
    }
    if (prime) primes.push_back(c);
  }
  return primes;
}

double radical_inverse(std::uint64_t i, int base) {
  double inv = 1.0 / base, f = inv, r = 0.0;
  while (i > 0) {
    r += f * static_cast<double>(i % static_cast<std::uint64_t>(base));
    i /= static_cast<std::uint64_t>(base);
    f *= inv;
  }
  return r;
}

struct Simplex {
  std::vector<std::vector<double>> vertices;
  std::vector<double> values;  // objective to maximize
};

double diameter(const Simplex& s, std::size_t best) {
  double d = 0.0;
  for (std::size_t v = 0; v < s.vertices.size(); ++v) {
    if (v == best) continue;
    double sq = 0.0;
    for (std::size_t k = 0; k < s.vertices[v].size(); ++k) {
      const double diff = s.vertices[v][k] - s.vertices[best][k];
      sq += diff * diff;
    }
    d = std::max(d, std::sqrt(sq));
  }
  return d;
}

}  // namespace

std::vector<std::vector<double>> halton_points(int dim, int count, std::uint64_t seed) {
  const std::vector<int> primes = first_primes(dim);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> shift(static_cast<std::size_t>(dim));
  for (double& s : shift) s = unit(rng);

  std::vector<std::vector<double>> points(static_cast<std::size_t>(count), std::vector<double>(static_cast<std::size_t>(dim)));
  for (int i = 0; i < count; ++i) {
    for (int d = 0; d < dim; ++d) {
      const double u = radical_inverse(static_cast<std::uint64_t>(i) + 1, primes[static_cast<std::size_t>(d)]) +
                       shift[static_cast<std::size_t>(d)];
      points[static_cast<std::size_t>(i)][static_cast<std::size_t>(d)] = u - std::floor(u);
    }
  }
  return points;
}

LocalRun nelder_mead_maximize(const Objective& f, std::span<const double> start, const OptimizerOptions& opts) {
  const std::size_t n = start.size();
  if (n == 0) throw std::invalid_argument("nelder_mead_maximize needs at least one parameter");
  // Adaptive coefficients (Gao & Han) keep the method effective in 8-48 dims.
  const double dn = static_cast<double>(n);
  const double reflect = 1.0;
  const double expand = 1.0 + 2.0 / dn;
  const double contract = 0.75 - 1.0 / (2.0 * dn);
  const double shrink = 1.0 - 1.0 / dn;
  constexpr int kMaxRebuilds = 3;

  int evaluations = 0;
  auto eval = [&](const std::vector<double>& x) {
    ++evaluations;
    const double v = f(x);
    return std::isfinite(v) ? v : -std::numeric_limits<double>::infinity();
  };

  Simplex s;
  auto build = [&](const std::vector<double>& centre, double step) {
    s.vertices.assign(n + 1, centre);
    for (std::size_t k = 0; k < n; ++k) s.vertices[k + 1][k] += step;
    s.values.resize(n + 1);
    for (std::size_t v = 0; v <= n; ++v) s.values[v] = eval(s.vertices[v]);
  };

  std::vector<double> x0(start.begin(), start.end());
  build(x0, opts.initial_step);

  std::vector<std::size_t> order(n + 1);
  std::vector<double> centroid(n), trial(n), trial2(n);
  int iterations = 0;
  int rebuilds = 0;
  double value_at_rebuild = 0.0;
  bool converged = false;
  double diam = 0.0;

  while (true) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return s.values[a] > s.values[b]; });
    const std::size_t best = order.front(), worst = order.back(), second_worst = order[n - 1];
    diam = diameter(s, best);

    if (diam < opts.diameter_tol) {
      // Converged once a rebuilt simplex collapses without improving.
      const double current = s.values[best];
      if (rebuilds == kMaxRebuilds || (rebuilds > 0 && current <= value_at_rebuild + 1e-15)) {
        converged = true;
        break;
      }
      value_at_rebuild = current;
      ++rebuilds;
      const std::vector<double> centre = s.vertices[best];
      build(centre, opts.initial_step * 0.05);
      continue;
    }
    if (evaluations >= opts.max_evaluations) break;
    ++iterations;

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t v = 0; v <= n; ++v) {
      if (v == worst) continue;
      for (std::size_t k = 0; k < n; ++k) centroid[k] += s.vertices[v][k];
    }
    for (double& c : centroid) c /= dn;

    for (std::size_t k = 0; k < n; ++k) trial[k] = centroid[k] + reflect * (centroid[k] - s.vertices[worst][k]);
    const double fr = eval(trial);

    if (fr > s.values[best]) {
      for (std::size_t k = 0; k < n; ++k) trial2[k] = centroid[k] + expand * (trial[k] - centroid[k]);
      const double fe = eval(trial2);
      if (fe > fr) {
        s.vertices[worst] = trial2;
        s.values[worst] = fe;
      } else {
        s.vertices[worst] = trial;
        s.values[worst] = fr;
      }
      continue;
    }
    if (fr > s.values[second_worst]) {
      s.vertices[worst] = trial;
      s.values[worst] = fr;
      continue;
    }
    const bool outside = fr > s.values[worst];
    for (std::size_t k = 0; k < n; ++k) {
      trial2[k] = outside ? centroid[k] + contract * (trial[k] - centroid[k])
                          : centroid[k] + contract * (s.vertices[worst][k] - centroid[k]);
    }
    const double fc = eval(trial2);
    if (fc > (outside ? fr : s.values[worst])) {
      s.vertices[worst] = trial2;
      s.values[worst] = fc;
      continue;
    }
    for (std::size_t v = 0; v <= n; ++v) {
      if (v == best) continue;
      for (std::size_t k = 0; k < n; ++k)
        s.vertices[v][k] = s.vertices[best][k] + shrink * (s.vertices[v][k] - s.vertices[best][k]);
      s.values[v] = eval(s.vertices[v]);
    }
  }

  const auto best_it = std::max_element(s.values.begin(), s.values.end());
  const auto best = static_cast<std::size_t>(best_it - s.values.begin());
  return {s.vertices[best], s.values[best], iterations, evaluations, converged, diam};
}

OptimizerResult multistart_maximize(const Objective& f, std::span<const double> periods,
                                    const std::vector<std::vector<double>>& warm_starts,
                                    const OptimizerOptions& opts) {
  const int dim = static_cast<int>(periods.size());
  std::vector<std::vector<double>> starts = warm_starts;
  for (const auto& s : starts) {
    if (static_cast<int>(s.size()) != dim) throw std::invalid_argument("warm start has the wrong dimension");
  }
  if (opts.restarts > 0) {
    for (auto p : halton_points(dim, opts.restarts, opts.seed)) {
      for (int d = 0; d < dim; ++d) p[static_cast<std::size_t>(d)] *= periods[static_cast<std::size_t>(d)];
      starts.push_back(std::move(p));
    }
  }
  if (starts.empty()) throw std::invalid_argument("multistart_maximize needs at least one start");

  OptimizerResult result;
  result.value = -std::numeric_limits<double>::infinity();
  result.report.restarts = std::max(opts.restarts, 0);
  for (std::size_t i = 0; i < starts.size(); ++i) {
    LocalRun run = nelder_mead_maximize(f, starts[i], opts);
    result.report.evaluations += run.evaluations;
    ++result.report.starts;
    if (run.value > result.value) {
      result.value = run.value;
      result.argmax = std::move(run.x);
      result.report.iterations = run.iterations;
      result.report.converged = run.converged;
      result.report.residual = run.diameter;
      result.report.best_start = static_cast<int>(i);
    }
  }
  return result;
}

}  // namespace corrbell
