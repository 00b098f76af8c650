#include "macroflow/choice.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "macroflow/errors.hpp"

namespace macroflow {

std::string_view to_string(OrderSize size) {
  switch (size) {
    case OrderSize::small: return "small";
    case OrderSize::medium: return "medium";
    case OrderSize::large: return "large";
  }
  return "unknown";
}

OrderSize parse_order_size(std::string_view text) {
  for (OrderSize s : kAllOrderSizes) {
    if (text == to_string(s)) {
      return s;
    }
  }
  throw std::invalid_argument("unknown order size '" + std::string(text) + "'");
}

void ChoiceCoefficients::validate() const {
  for (std::size_t i = 0; i < kOrderSizeCount; ++i) {
    const std::string prefix = "choice." + std::string(to_string(kAllOrderSizes[i])) + ".";
    if (!std::isfinite(c0[i])) throw ConfigError(prefix + "c0", "must be finite");
    if (!std::isfinite(c_ra[i])) throw ConfigError(prefix + "c_ra", "must be finite");
    if (!std::isfinite(c_sur[i])) throw ConfigError(prefix + "c_sur", "must be finite");
    if (!std::isfinite(c_liq[i])) throw ConfigError(prefix + "c_liq", "must be finite");
    if (!(notional_multiplier[i] > 0.0) || !std::isfinite(notional_multiplier[i])) {
      throw ConfigError(prefix + "notional", "must be finite and > 0");
    }
    if (i > 0 && !(notional_multiplier[i] > notional_multiplier[i - 1])) {
      throw ConfigError(prefix + "notional", "multipliers must increase small < medium < large");
    }
  }
}

SizeVector order_utilities(const ChoiceCoefficients& coeffs, double risk_aversion,
                           double abs_surprise, double liquidity) {
  SizeVector u{};
  for (std::size_t i = 0; i < kOrderSizeCount; ++i) {
    u[i] = coeffs.c0[i] + coeffs.c_ra[i] * risk_aversion + coeffs.c_sur[i] * abs_surprise +
           coeffs.c_liq[i] * liquidity;
  }
  return u;
}

SizeVector softmax(const SizeVector& utilities) {
  const double top = *std::max_element(utilities.begin(), utilities.end());
  SizeVector p{};
  double total = 0.0;
  for (std::size_t i = 0; i < kOrderSizeCount; ++i) {
    p[i] = std::exp(utilities[i] - top);
    total += p[i];
  }
  for (double& v : p) {
    v /= total;
  }
  return p;
}

OrderSize sample_order(const SizeVector& probabilities, double uniform) {
  double cdf = 0.0;
  for (std::size_t i = 0; i + 1 < kOrderSizeCount; ++i) {
    cdf += probabilities[i];
    if (uniform < cdf) {
      return kAllOrderSizes[i];
    }
  }
  return OrderSize::large;
}

OrderSize sample_order(const SizeVector& probabilities, RandomStream& stream) {
  return sample_order(probabilities, stream.draw_uniform());
}

OrderDecision decide_order(const ChoiceCoefficients& coeffs, double risk_aversion,
                           double abs_surprise, double liquidity, RandomStream& stream) {
  OrderDecision d;
  d.utilities = order_utilities(coeffs, risk_aversion, abs_surprise, liquidity);
  d.probabilities = softmax(d.utilities);
  d.chosen = sample_order(d.probabilities, stream);
  return d;
}

std::size_t modal_index(const SizeVector& values) {
  return static_cast<std::size_t>(std::max_element(values.begin(), values.end()) - values.begin());
}

}  // namespace macroflow
