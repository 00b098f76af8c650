#pragma once

#include "macroflow/rng.hpp"

namespace macroflow {

/// Lower bound applied to every simulated return. Keeps the gross return
/// factor positive for any risky weight in [0, 1], which CRRA utility needs.
inline constexpr double kReturnFloor = -0.99;

/// Loadings of the surprise-augmented CAPM. All rates are per event.
struct CapmParams {
  double alpha{0.0};
  double beta{1.0};
  double gamma_s{-0.5};   // loading on the total surprise
  double delta_p{-0.3};   // loading on the permanent surprise
  double eps_std{0.02};   // idiosyncratic noise std
  double market_premium{0.0};  // R_m - R_f for the current event
};

/// Two-asset market. `risky_mean` / `risky_std_base` parametrize the normal
/// belief distribution traders sample from; `market_mean` / `market_std`
/// parametrize the per-event market return R_m behind the realized channel.
struct ReturnModel {
  double rf{0.04};
  double risky_mean{0.10};
  double risky_std_base{0.20};
  double noise_mult{1.0};
  double market_mean{0.05};
  double market_std{0.05};
  CapmParams capm{};

  void validate() const;
};

/// rf + alpha + beta*premium + gamma_s*S + delta_p*S^P + eps. Not clamped.
double capm_return(const CapmParams& p, double rf, double surprise_total,
                   double surprise_perm, double eps);

/// Perceived return std for a trader: base * (1 + noise_mult * (1 - info)).
double effective_risky_std(double base_std, double info_level, double noise_mult);

/// risky_mean + trader_std * z, floored at kReturnFloor.
double sample_perceived_return(const ReturnModel& model, double trader_std,
                               RandomStream& stream);

inline double clamp_return(double r) { return r < kReturnFloor ? kReturnFloor : r; }

}  // namespace macroflow
