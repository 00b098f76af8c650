#include "macroflow/agents.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "macroflow/errors.hpp"

namespace macroflow {

std::string_view to_string(TraderType type) {
  switch (type) {
    case TraderType::retail: return "Retail";
    case TraderType::pension: return "Pension";
    case TraderType::institutional: return "Institutional";
    case TraderType::hedge_fund: return "HedgeFund";
  }
  return "Unknown";
}

std::string_view config_name(TraderType type) {
  switch (type) {
    case TraderType::retail: return "retail";
    case TraderType::pension: return "pension";
    case TraderType::institutional: return "institutional";
    case TraderType::hedge_fund: return "hedge_fund";
  }
  return "unknown";
}

TraderType parse_trader_type(std::string_view text) {
  for (TraderType t : kAllTraderTypes) {
    if (text == to_string(t) || text == config_name(t)) {
      return t;
    }
  }
  throw std::invalid_argument("unknown trader type '" + std::string(text) + "'");
}

void TraderArchetype::validate() const {
  const std::string prefix = "agents." + std::string(config_name(type)) + ".";
  if (!(risk_aversion > 0.0) || !std::isfinite(risk_aversion)) {
    throw ConfigError(prefix + "risk_aversion", "must be finite and > 0");
  }
  if (!(info_level >= 0.0 && info_level <= 1.0)) {
    throw ConfigError(prefix + "info_level", "must lie in [0, 1]");
  }
  if (!(max_risk >= 0.0 && max_risk <= 1.0)) {
    throw ConfigError(prefix + "max_risk", "must lie in [0, 1]");
  }
  if (!(base_txn_cost >= 0.0) || !std::isfinite(base_txn_cost)) {
    throw ConfigError(prefix + "txn_cost", "must be finite and >= 0");
  }
}

ArchetypeTable archetype_registry() {
  return {{
      {TraderType::retail, 3.0, 0.0, 0.25, 0.1},
      {TraderType::pension, 2.0, 0.7, 0.4, 0.005},
      {TraderType::institutional, 1.5, 0.8, 0.8, 0.005},
      {TraderType::hedge_fund, 1.0, 1.0, 1.0, 0.002},
  }};
}

TraderState step_wealth(const TraderState& state, double x, double rf, double realized_risky) {
  if (!(x >= 0.0 && x <= state.archetype.max_risk)) {
    throw std::invalid_argument("allocation " + std::to_string(x) + " outside [0, " +
                                std::to_string(state.archetype.max_risk) + "]");
  }
  const double gross = (1.0 - x) * (1.0 + rf) + x * (1.0 + realized_risky);
  const double after_return = state.wealth * gross;
  const double turnover_cost =
      state.wealth * state.archetype.base_txn_cost * std::abs(x - state.prev_allocation);
  const double cost = std::min(turnover_cost, kMaxCostFraction * after_return);

  TraderState next = state;
  next.wealth = after_return - cost;
  next.prev_allocation = x;
  if (!(next.wealth > 0.0) || !std::isfinite(next.wealth)) {
    throw std::runtime_error("wealth of trader " + std::to_string(state.trader_index) +
                             " became non-positive (" + std::to_string(next.wealth) + ")");
  }
  return next;
}

}  // namespace macroflow
