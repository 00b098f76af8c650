#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "macroflow/agents.hpp"
#include "macroflow/allocation.hpp"
#include "macroflow/choice.hpp"
#include "macroflow/market.hpp"
#include "macroflow/shocks.hpp"

namespace macroflow {

/// Everything a run depends on. A run is a pure function of this struct;
/// the worker count only changes scheduling.
struct SimConfig {
  std::size_t n_traders_per_type{500};
  std::size_t n_events{36};
  std::uint64_t seed{42};
  std::size_t replications{1};
  // Traders shift their perceived mean by info_level * gamma_s * S.
  bool surprise_in_beliefs{false};
  double initial_wealth{100.0};

  ShockConfig shock{};
  ReturnModel market{};
  AllocationConfig allocation{};
  ChoiceCoefficients choice{};
  ArchetypeTable agents{archetype_registry()};

  std::size_t liq_bins{5};
  std::size_t wealth_bins{30};

  /// ShockConfig with its horizon tied to n_events.
  ShockConfig shock_config() const;

  /// Throws ConfigError naming the first offending key.
  void validate() const;
};

struct PanelRow {
  std::uint32_t replication{0};
  TraderType trader_type{TraderType::retail};
  std::uint32_t trader_index{0};  // within its type
  std::uint32_t event{0};
  double surprise{0.0};
  double liquidity{0.0};
  double x_star{0.0};
  OrderSize order_size{OrderSize::small};
  SizeVector order_probs{};
  double realized_return{0.0};
  double wealth{0.0};  // after the event
  double notional{0.0};  // multiplier * |x - prev| * wealth before the event
};

struct EventRecord {
  std::uint32_t replication{0};
  std::uint32_t event{0};
  double temp_shock{0.0};
  double perm_shock{0.0};
  double surprise{0.0};
  double liquidity{0.0};
  bool liquidity_clamped{false};
  double market_premium{0.0};
};

/// Rows are in canonical order: replication, event, trader type, trader.
struct TraderPanel {
  std::uint64_t seed{0};
  std::size_t n_traders_per_type{0};
  std::size_t n_events{0};
  std::size_t replications{0};
  std::vector<PanelRow> rows;
  std::vector<EventRecord> events;
};

/// Runs every replication. `workers` = 0 uses the machine's hardware
/// concurrency. Output is identical for every worker count.
TraderPanel run_simulation(const SimConfig& cfg, std::size_t workers = 0);

/// Worker count after resolving 0 to the hardware concurrency.
std::size_t resolve_workers(std::size_t requested);

}  // namespace macroflow
