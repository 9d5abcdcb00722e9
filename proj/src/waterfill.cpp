#include "ofdmim/waterfill.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ofdmim {

namespace {

constexpr double kTwoLn2 = 2.0 * std::numbers::ln2;

// d/dP of (1/2) log2(1 + P g / n_0).
double marginal_rate(double gain, double power, double n_0) {
  return gain / (kTwoLn2 * (n_0 + gain * power));
}

}  // namespace

AllocationProblem::AllocationProblem(std::vector<double> gains_in, double n_0, double budget)
    : gains(std::move(gains_in)), n_0(n_0), budget(budget) {
  if (gains.empty()) throw std::invalid_argument("gains must be nonempty");
  for (double g : gains) {
    if (!(g >= 0.0) || !std::isfinite(g)) {
      throw std::invalid_argument("gains must be nonnegative and finite");
    }
  }
  if (!(n_0 > 0.0) || !std::isfinite(n_0)) {
    throw std::invalid_argument("n_0 must be positive and finite");
  }
  if (!(budget >= 0.0) || !std::isfinite(budget)) {
    throw std::invalid_argument("budget must be nonnegative and finite");
  }
}

PowerAllocation waterfill(const AllocationProblem& problem) {
  const std::size_t n = problem.gains.size();

  // Thresholds of the positive-gain positions, sorted ascending.
  std::vector<std::pair<double, std::size_t>> thresholds;
  thresholds.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (problem.gains[i] > 0.0) {
      thresholds.emplace_back(problem.n_0 / problem.gains[i], i);
    }
  }

  PowerAllocation alloc;
  alloc.powers.assign(n, 0.0);

  if (thresholds.empty()) {
    if (problem.budget > 0.0) {
      throw std::invalid_argument(
          "degenerate problem: all gains zero with positive budget");
    }
    alloc.water_level = 0.0;
    return alloc;
  }

  std::sort(thresholds.begin(), thresholds.end());

  if (problem.budget == 0.0) {
    alloc.water_level = thresholds.front().first;
    return alloc;
  }

  // Largest m with nu_m = (budget + sum_{j<m} t_j)/m > t_{m-1}; the set of
  // valid m is a prefix, so a single scan suffices.
  std::size_t best_m = 1;
  double best_nu = problem.budget + thresholds[0].first;
  double prefix = thresholds[0].first;
  for (std::size_t m = 2; m <= thresholds.size(); ++m) {
    prefix += thresholds[m - 1].first;
    const double nu = (problem.budget + prefix) / static_cast<double>(m);
    if (nu > thresholds[m - 1].first) {
      best_m = m;
      best_nu = nu;
    }
  }

  alloc.water_level = best_nu;
  alloc.support.reserve(best_m);
  for (std::size_t j = 0; j < best_m; ++j) {
    const auto& [threshold, index] = thresholds[j];
    alloc.powers[index] = best_nu - threshold;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (alloc.powers[i] > 0.0) alloc.support.push_back(i);
  }
  return alloc;
}

PowerAllocation uniform_allocation(std::size_t n_active, double budget) {
  if (n_active == 0) throw std::invalid_argument("n_active must be positive");
  if (!(budget >= 0.0) || !std::isfinite(budget)) {
    throw std::invalid_argument("budget must be nonnegative and finite");
  }

  PowerAllocation alloc;
  alloc.powers.assign(n_active, budget / static_cast<double>(n_active));
  if (budget > 0.0) {
    alloc.support.resize(n_active);
    for (std::size_t i = 0; i < n_active; ++i) alloc.support[i] = i;
  }
  return alloc;
}

std::optional<PowerAllocation> interior_allocation(const AllocationProblem& problem) {
  const std::size_t n = problem.gains.size();

  std::vector<double> thresholds(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (problem.gains[i] <= 0.0) {
      throw std::invalid_argument("interior allocation requires strictly positive gains");
    }
    thresholds[i] = problem.n_0 / problem.gains[i];
  }

  // Accumulate in ascending order, matching the waterfill scan, so the two
  // routes agree bitwise whenever the interior point is feasible.
  std::vector<double> sorted = thresholds;
  std::sort(sorted.begin(), sorted.end());
  double sum = 0.0;
  for (double t : sorted) sum += t;

  const double nu = (problem.budget + sum) / static_cast<double>(n);

  PowerAllocation alloc;
  alloc.powers.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double p = nu - thresholds[i];
    if (p < 0.0) return std::nullopt;
    alloc.powers[i] = p;
  }
  alloc.water_level = nu;
  for (std::size_t i = 0; i < n; ++i) {
    if (alloc.powers[i] > 0.0) alloc.support.push_back(i);
  }
  return alloc;
}

KktReport verify_kkt(const AllocationProblem& problem, const PowerAllocation& allocation,
                     double tol) {
  const std::size_t n = problem.gains.size();
  if (allocation.powers.size() != n) {
    throw std::invalid_argument("allocation dimension does not match problem");
  }
  if (n == 0) throw std::invalid_argument("empty allocation");
  for (double p : allocation.powers) {
    if (!(p >= 0.0)) throw std::invalid_argument("powers must be nonnegative");
  }

  KktReport report;
  report.epsilon_n.assign(n, 0.0);

  // Budget multiplier from the first active position; with no active
  // position (zero budget) the binding rate is the best idle marginal.
  bool have_epsilon = false;
  for (std::size_t i = 0; i < n && !have_epsilon; ++i) {
    if (allocation.powers[i] > 0.0) {
      report.epsilon = marginal_rate(problem.gains[i], allocation.powers[i], problem.n_0);
      have_epsilon = true;
    }
  }
  if (!have_epsilon) {
    for (std::size_t i = 0; i < n; ++i) {
      report.epsilon =
          std::max(report.epsilon, marginal_rate(problem.gains[i], 0.0, problem.n_0));
    }
  }

  double sum_power = 0.0;
  double min_epsilon_n = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double p = allocation.powers[i];
    sum_power += p;
    const double marginal = marginal_rate(problem.gains[i], p, problem.n_0);
    if (p > 0.0) {
      report.stationarity_residual =
          std::max(report.stationarity_residual, std::abs(marginal - report.epsilon));
    } else {
      report.epsilon_n[i] = report.epsilon - marginal;
      min_epsilon_n = std::min(min_epsilon_n, report.epsilon_n[i]);
    }
    report.complementarity_residual =
        std::max(report.complementarity_residual, std::abs(report.epsilon_n[i] * p));
  }
  report.budget_residual = std::abs(sum_power - problem.budget);
  report.dual_violation = std::max(0.0, -min_epsilon_n);

  report.passed = report.stationarity_residual <= tol &&
                  report.complementarity_residual <= tol &&
                  report.budget_residual <= tol && report.dual_violation <= tol;
  return report;
}

double sum_capacity(std::span<const double> gains, std::span<const double> powers,
                    double n_0) {
  if (gains.size() != powers.size()) {
    throw std::invalid_argument("gains and powers must have equal length");
  }
  double capacity = 0.0;
  for (std::size_t i = 0; i < gains.size(); ++i) {
    capacity += 0.5 * std::log2(1.0 + powers[i] * gains[i] / n_0);
  }
  return capacity;
}

}  // namespace ofdmim
