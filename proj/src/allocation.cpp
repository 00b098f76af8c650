#include "macroflow/allocation.hpp"

#include <cmath>
#include <stdexcept>

#include "macroflow/errors.hpp"
#include "macroflow/market.hpp"

namespace macroflow {
namespace {

constexpr double kLogBranchTolerance = 1e-9;
constexpr double kGridTolerance = 1e-9;

// Sum of Pi^p over all draws for a fixed exponent kernel. Four independent
// accumulators keep the loop throughput-bound and the result independent of
// any compiler reassociation.
template <typename Kernel>
double power_sum(double base, double x, std::span<const double> excess, Kernel kernel) {
  double acc[4] = {0.0, 0.0, 0.0, 0.0};
  const std::size_t n = excess.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc[0] += kernel(base + x * excess[i]);
    acc[1] += kernel(base + x * excess[i + 1]);
    acc[2] += kernel(base + x * excess[i + 2]);
    acc[3] += kernel(base + x * excess[i + 3]);
  }
  for (; i < n; ++i) {
    acc[i % 4] += kernel(base + x * excess[i]);
  }
  return (acc[0] + acc[1]) + (acc[2] + acc[3]);
}

// Sum of log(Pi), taking one log per block of 8 products. Blocks whose
// product leaves the normal range fall back to per-draw logs.
double log_sum(double base, double x, std::span<const double> excess) {
  constexpr std::size_t kBlock = 8;
  const std::size_t n = excess.size();
  double acc = 0.0;
  std::size_t i = 0;
  for (; i + kBlock <= n; i += kBlock) {
    double prod = 1.0;
    for (std::size_t j = 0; j < kBlock; ++j) {
      prod *= base + x * excess[i + j];
    }
    if (std::isnormal(prod)) {
      acc += std::log(prod);
    } else {
      for (std::size_t j = 0; j < kBlock; ++j) {
        acc += std::log(base + x * excess[i + j]);
      }
    }
  }
  for (; i < n; ++i) {
    acc += std::log(base + x * excess[i]);
  }
  return acc;
}

// Mean of (Pi^(1-g) - 1) / (1 - g) across the draws.
double mean_crra(double base, double x, double gamma, std::span<const double> excess) {
  const double n = static_cast<double>(excess.size());
  if (std::abs(gamma - 1.0) < kLogBranchTolerance) {
    return log_sum(base, x, excess) / n;
  }
  const double p = 1.0 - gamma;
  double sum = 0.0;
  if (p == -1.0) {
    sum = power_sum(base, x, excess, [](double v) { return 1.0 / v; });
  } else if (p == -2.0) {
    sum = power_sum(base, x, excess, [](double v) { return 1.0 / (v * v); });
  } else if (p == -0.5) {
    sum = power_sum(base, x, excess, [](double v) { return 1.0 / std::sqrt(v); });
  } else if (p == 0.5) {
    sum = power_sum(base, x, excess, [](double v) { return std::sqrt(v); });
  } else {
    sum = power_sum(base, x, excess, [p](double v) { return std::pow(v, p); });
  }
  return (sum / n - 1.0) / p;
}

void fill_excess_returns(std::span<double> out, double risky_mean, double risky_std, double rf,
                         RandomStream& stream) {
  for (double& v : out) {
    v = clamp_return(risky_mean + risky_std * stream.draw_normal()) - rf;
  }
}

}  // namespace

void AllocationConfig::validate() const {
  if (!(grid_step > 0.0 && grid_step <= 1.0)) {
    throw ConfigError("allocation.grid_step", "must lie in (0, 1]");
  }
  if (n_draws == 0) {
    throw ConfigError("allocation.n_draws", "must be >= 1");
  }
}

double crra_utility(double wealth, double gamma) {
  if (!(wealth > 0.0)) {
    throw std::domain_error("CRRA utility needs positive wealth");
  }
  if (std::abs(gamma - 1.0) < kLogBranchTolerance) {
    return std::log(wealth);
  }
  const double p = 1.0 - gamma;
  return (std::pow(wealth, p) - 1.0) / p;
}

std::vector<double> allocation_grid(double grid_step, double max_risk) {
  if (!(grid_step > 0.0)) {
    throw std::invalid_argument("grid step must be positive");
  }
  if (!(max_risk >= 0.0)) {
    throw std::invalid_argument("max_risk must be >= 0");
  }
  std::vector<double> grid;
  for (std::size_t k = 0;; ++k) {
    const double x = static_cast<double>(k) * grid_step;
    if (x >= max_risk - kGridTolerance) {
      break;
    }
    grid.push_back(x);
  }
  grid.push_back(max_risk);
  return grid;
}

std::vector<double> estimate_expected_utilities(std::span<const double> grid, double gamma,
                                                double rf, std::span<const double> risky_draws) {
  std::vector<double> excess(risky_draws.size());
  for (std::size_t i = 0; i < risky_draws.size(); ++i) {
    excess[i] = risky_draws[i] - rf;
  }
  std::vector<double> out;
  out.reserve(grid.size());
  for (double x : grid) {
    out.push_back(mean_crra(1.0 + rf, x, gamma, excess));
  }
  return out;
}

AllocationResult optimal_allocation(double gamma, double max_risk, double rf, double risky_mean,
                                    double risky_std, const AllocationConfig& cfg,
                                    RandomStream& stream) {
  cfg.validate();
  if (!(gamma > 0.0) || !(risky_std >= 0.0) || !(rf > -1.0) || !(max_risk >= 0.0 && max_risk <= 1.0)) {
    throw std::invalid_argument("optimal_allocation: parameters out of range");
  }
  const std::vector<double> grid = allocation_grid(cfg.grid_step, max_risk);
  const double base = 1.0 + rf;

  AllocationResult result;
  result.utility_curve.reserve(grid.size());
  std::vector<double> excess(cfg.n_draws);
  if (cfg.use_common_random_numbers) {
    fill_excess_returns(excess, risky_mean, risky_std, rf, stream);
  }
  for (double x : grid) {
    if (!cfg.use_common_random_numbers) {
      fill_excess_returns(excess, risky_mean, risky_std, rf, stream);
    }
    result.utility_curve.emplace_back(x, mean_crra(base, x, gamma, excess));
  }

  result.x_star = result.utility_curve.front().first;
  result.expected_utility = result.utility_curve.front().second;
  for (const auto& [x, eu] : result.utility_curve) {
    if (eu > result.expected_utility) {
      result.x_star = x;
      result.expected_utility = eu;
    }
  }
  return result;
}

}  // namespace macroflow
