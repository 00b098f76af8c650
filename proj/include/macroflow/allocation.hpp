#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "macroflow/rng.hpp"

namespace macroflow {

struct AllocationConfig {
  double grid_step{0.05};
  std::size_t n_draws{10000};
  // Common random numbers: every grid point reuses the same return draws.
  bool use_common_random_numbers{true};

  void validate() const;
};

struct AllocationResult {
  double x_star{0.0};
  double expected_utility{0.0};
  std::vector<std::pair<double, double>> utility_curve;  // (x, estimated E[U])
};

/// Isoelastic utility (w^(1-g) - 1) / (1 - g), with the log limit for
/// |g - 1| < 1e-9. Throws std::domain_error for w <= 0.
double crra_utility(double wealth, double gamma);

/// Candidate risky weights: multiples of `step` strictly below `max_risk`,
/// followed by `max_risk` itself.
std::vector<double> allocation_grid(double grid_step, double max_risk);

/// Monte Carlo estimate of E[U(Pi(x, R))] for each candidate weight, where
/// Pi(x, R) = (1 - x)(1 + rf) + x(1 + R) and `risky_draws` are samples of
/// R (already floored). Initial wealth is factored out.
std::vector<double> estimate_expected_utilities(std::span<const double> grid, double gamma,
                                                double rf, std::span<const double> risky_draws);

/// Grid-search maximizer of expected CRRA utility of the gross portfolio
/// return. Draws R ~ N(risky_mean, risky_std^2) floored at kReturnFloor from
/// `stream`: n_draws in total with common random numbers, n_draws per grid
/// point (in grid order) without. Ties go to the smallest weight.
AllocationResult optimal_allocation(double gamma, double max_risk, double rf, double risky_mean,
                                    double risky_std, const AllocationConfig& cfg,
                                    RandomStream& stream);

}  // namespace macroflow
