#ifndef OFDMIM_WATERFILL_HPP
#define OFDMIM_WATERFILL_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace ofdmim {

// One per-pattern power-allocation instance: effective gains of the active
// positions (hop gains in decentralized mode, link gains in centralized
// mode), noise power and the per-hop power budget.
struct AllocationProblem {
  std::vector<double> gains;
  double n_0;
  double budget;

  // Throws std::invalid_argument on empty gains, negative entries,
  // n_0 <= 0 or budget < 0.
  AllocationProblem(std::vector<double> gains, double n_0, double budget);
};

struct PowerAllocation {
  std::vector<double> powers;
  // Water level nu: active positions satisfy P_n + n_0/g_n = nu. Unset for
  // uniform allocations, where no such level exists.
  std::optional<double> water_level;
  std::vector<std::size_t> support;  // positions with strictly positive power, ascending
};

// First-order optimality certificate. Multipliers are reconstructed from the
// allocation itself: epsilon from a strictly positive position, epsilon_n
// chosen to zero the stationarity rows of inactive positions, so the
// informative signals are the stationarity residual across active positions,
// dual feasibility of the inactive ones and the budget residual.
struct KktReport {
  double epsilon = 0.0;
  std::vector<double> epsilon_n;
  double stationarity_residual = 0.0;
  double complementarity_residual = 0.0;
  double budget_residual = 0.0;
  double dual_violation = 0.0;
  bool passed = false;
};

// Unique maximizer of sum_n (1/2) log2(1 + P_n g_n / n_0) subject to
// sum P_n <= budget, P_n >= 0, by the exact sort-and-cumulate water-level
// algorithm: sort thresholds t_n = n_0/g_n ascending, take the largest m
// with (budget + sum_{j<=m} t_j)/m > t_m, then P_n = max(0, nu - t_n).
// Spends the budget fully whenever budget > 0 and some gain is positive.
// Zero-gain positions always get zero power; all gains zero with a positive
// budget is a degenerate problem and throws std::invalid_argument.
PowerAllocation waterfill(const AllocationProblem& problem);

// budget / n_active on every position. Throws on n_active = 0.
PowerAllocation uniform_allocation(std::size_t n_active, double budget);

// Closed-form interior point (budget + sum_m n_0/g_m)/n - n_0/g_n, the
// common high-budget limit of the waterfilling solution. Returns nullopt
// when some entry is negative (water level below a threshold). Throws on a
// zero gain.
std::optional<PowerAllocation> interior_allocation(const AllocationProblem& problem);

// Evaluates the stationarity / complementary-slackness / dual-feasibility /
// budget residuals for an arbitrary allocation. passed requires every
// residual within tol. Throws std::invalid_argument on dimension mismatch,
// empty or negative powers.
KktReport verify_kkt(const AllocationProblem& problem, const PowerAllocation& allocation,
                     double tol);

// Single-hop sum capacity sum_n (1/2) log2(1 + P_n g_n / n_0) in bit/s/Hz;
// the objective the dynamic strategy maximizes per hop.
double sum_capacity(std::span<const double> gains, std::span<const double> powers,
                    double n_0);

}  // namespace ofdmim

#endif
