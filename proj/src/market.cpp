#include "macroflow/market.hpp"

#include <cmath>
#include <stdexcept>

#include "macroflow/errors.hpp"

namespace macroflow {

void ReturnModel::validate() const {
  if (!(rf > -1.0) || !std::isfinite(rf)) {
    throw ConfigError("market.rf", "must be finite and > -1");
  }
  if (!std::isfinite(risky_mean)) {
    throw ConfigError("market.risky_mean", "must be finite");
  }
  if (!(risky_std_base >= 0.0) || !std::isfinite(risky_std_base)) {
    throw ConfigError("market.risky_std", "must be finite and >= 0");
  }
  if (!(noise_mult >= 0.0) || !std::isfinite(noise_mult)) {
    throw ConfigError("market.noise_mult", "must be finite and >= 0");
  }
  if (!(market_std >= 0.0) || !std::isfinite(market_std)) {
    throw ConfigError("market.market_std", "must be finite and >= 0");
  }
  if (!std::isfinite(market_mean)) {
    throw ConfigError("market.market_mean", "must be finite");
  }
  if (!(capm.eps_std >= 0.0) || !std::isfinite(capm.eps_std)) {
    throw ConfigError("market.eps_std", "must be finite and >= 0");
  }
  if (!std::isfinite(capm.alpha)) throw ConfigError("market.alpha", "must be finite");
  if (!std::isfinite(capm.beta)) throw ConfigError("market.beta", "must be finite");
  if (!std::isfinite(capm.gamma_s)) throw ConfigError("market.gamma_s", "must be finite");
  if (!std::isfinite(capm.delta_p)) throw ConfigError("market.delta_p", "must be finite");
}

double capm_return(const CapmParams& p, double rf, double surprise_total,
                   double surprise_perm, double eps) {
  return rf + p.alpha + p.beta * p.market_premium + p.gamma_s * surprise_total +
         p.delta_p * surprise_perm + eps;
}

double effective_risky_std(double base_std, double info_level, double noise_mult) {
  if (!(info_level >= 0.0 && info_level <= 1.0)) {
    throw std::invalid_argument("info_level must lie in [0, 1]");
  }
  if (!(base_std >= 0.0) || !(noise_mult >= 0.0)) {
    throw std::invalid_argument("base_std and noise_mult must be >= 0");
  }
  return base_std * (1.0 + noise_mult * (1.0 - info_level));
}

double sample_perceived_return(const ReturnModel& model, double trader_std,
                               RandomStream& stream) {
  return clamp_return(model.risky_mean + trader_std * stream.draw_normal());
}

}  // namespace macroflow
