#pragma once

#include <cstddef>
#include <vector>

#include "macroflow/rng.hpp"

namespace macroflow {

/// Parameters of the CPI surprise and liquidity processes. Surprises are in
/// percentage points; liquidity is a dimensionless level.
struct ShockConfig {
  double temp_scale{0.1};
  double perm_scale{0.05};
  // AR(1) coefficient on the temporary component; 0 gives i.i.d. shocks.
  double temp_ar{0.0};
  double liq_mean{0.5};
  double liq_scale{0.1};
  double liquidity_floor{0.0};
  std::size_t horizon{36};

  /// Throws ConfigError naming the offending `shock.*` key.
  void validate() const;
};

struct SurprisePath {
  std::vector<double> temp;
  std::vector<double> perm;
  std::vector<double> total;  // temp + perm

  std::size_t size() const { return total.size(); }
};

struct LiquiditySeries {
  std::vector<double> values;
  std::vector<bool> clamped;  // true where the raw draw fell below the floor

  std::size_t size() const { return values.size(); }
};

/// Draws exactly 2T normals, interleaved per event: z_t for the temporary
/// component, then w_t for the permanent increment. The permanent path is
/// the running sum of increments starting at t = 0, so perm[0] already
/// contains the first increment.
SurprisePath generate_surprises(const ShockConfig& cfg, RandomStream& stream);

/// Draws exactly T normals; each value is max(floor, liq_mean + liq_scale*z).
LiquiditySeries generate_liquidity(const ShockConfig& cfg, RandomStream& stream);

}  // namespace macroflow
