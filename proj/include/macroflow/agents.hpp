#pragma once

#include <array>
#include <cstddef>
#include <string_view>

namespace macroflow {

enum class TraderType : std::uint8_t { retail = 0, pension = 1, institutional = 2, hedge_fund = 3 };

inline constexpr std::size_t kTraderTypeCount = 4;
inline constexpr std::array<TraderType, kTraderTypeCount> kAllTraderTypes{
    TraderType::retail, TraderType::pension, TraderType::institutional,
    TraderType::hedge_fund};

/// Display name used in CSV output ("Retail", "HedgeFund", ...).
std::string_view to_string(TraderType type);
/// Lower-case config key segment ("retail", "hedge_fund", ...).
std::string_view config_name(TraderType type);
/// Parses either spelling; throws std::invalid_argument otherwise.
TraderType parse_trader_type(std::string_view text);

struct TraderArchetype {
  TraderType type{TraderType::retail};
  double risk_aversion{1.0};
  double info_level{0.0};
  double max_risk{1.0};       // cap on the risky weight
  double base_txn_cost{0.0};  // proportional cost per unit of turnover

  void validate() const;
};

using ArchetypeTable = std::array<TraderArchetype, kTraderTypeCount>;

/// The four calibrated archetypes in fixed order Retail, Pension,
/// Institutional, HedgeFund.
ArchetypeTable archetype_registry();

struct TraderState {
  TraderArchetype archetype{};
  std::size_t trader_index{0};
  double wealth{100.0};
  double prev_allocation{0.0};
};

/// Cap on the turnover cost as a fraction of post-return wealth.
inline constexpr double kMaxCostFraction = 0.5;

/// One period of the two-asset portfolio: gross return on the (x, 1 - x)
/// split, less base_txn_cost * |x - prev_allocation| of starting wealth
/// (capped at half the post-return wealth). Throws std::invalid_argument
/// if x is outside [0, max_risk] and std::runtime_error if wealth would
/// not stay positive.
TraderState step_wealth(const TraderState& state, double x, double rf, double realized_risky);

}  // namespace macroflow
