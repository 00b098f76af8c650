#include "macroflow/shocks.hpp"

#include <algorithm>
#include <cmath>

#include "macroflow/errors.hpp"

namespace macroflow {

void ShockConfig::validate() const {
  auto non_negative = [](double v, const char* key) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw ConfigError(key, "must be a finite value >= 0");
    }
  };
  non_negative(temp_scale, "shock.temp_scale");
  non_negative(perm_scale, "shock.perm_scale");
  non_negative(liq_scale, "shock.liq_scale");
  if (!std::isfinite(liq_mean)) {
    throw ConfigError("shock.liq_mean", "must be finite");
  }
  if (std::isnan(liquidity_floor) || liquidity_floor == HUGE_VAL) {
    throw ConfigError("shock.liquidity_floor", "must be a number below +inf");
  }
  if (!(std::abs(temp_ar) < 1.0)) {
    throw ConfigError("shock.temp_ar", "must lie in (-1, 1)");
  }
  if (horizon == 0) {
    throw ConfigError("engine.n_events", "must be >= 1");
  }
}

SurprisePath generate_surprises(const ShockConfig& cfg, RandomStream& stream) {
  cfg.validate();
  const std::size_t n = cfg.horizon;
  SurprisePath path;
  path.temp.resize(n);
  path.perm.resize(n);
  path.total.resize(n);

  double temp_prev = 0.0;
  double perm_level = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    const double z = stream.draw_normal();
    const double w = stream.draw_normal();
    const double temp = cfg.temp_ar * temp_prev + cfg.temp_scale * z;
    perm_level += cfg.perm_scale * w;
    path.temp[t] = temp;
    path.perm[t] = perm_level;
    path.total[t] = temp + perm_level;
    temp_prev = temp;
  }
  return path;
}

LiquiditySeries generate_liquidity(const ShockConfig& cfg, RandomStream& stream) {
  cfg.validate();
  LiquiditySeries series;
  series.values.resize(cfg.horizon);
  series.clamped.resize(cfg.horizon);
  for (std::size_t t = 0; t < cfg.horizon; ++t) {
    const double raw = cfg.liq_mean + cfg.liq_scale * stream.draw_normal();
    series.clamped[t] = raw < cfg.liquidity_floor;
    series.values[t] = std::max(cfg.liquidity_floor, raw);
  }
  return series;
}

}  // namespace macroflow
