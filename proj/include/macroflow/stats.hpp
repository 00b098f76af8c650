#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "macroflow/engine.hpp"

namespace macroflow {

struct StatsOptions {
  std::size_t liq_bins{5};
  std::size_t wealth_bins{30};
};

struct GroupMean {
  TraderType type{TraderType::retail};
  std::uint32_t event{0};
  double mean{0.0};
  double std_err{0.0};
  std::size_t count{0};
};

struct WealthBin {
  TraderType type{TraderType::retail};
  std::size_t bin{0};
  double lo{0.0};
  double hi{0.0};
  std::size_t count{0};
};

struct LiquidityShare {
  std::size_t bin{0};
  double liq_lo{0.0};  // smallest liquidity observed in the bin
  double liq_hi{0.0};  // largest liquidity observed in the bin
  TraderType type{TraderType::retail};
  std::size_t count{0};
  std::array<double, kOrderSizeCount> shares{};      // of sampled orders
  std::array<double, kOrderSizeCount> mean_probs{};  // mean softmax probabilities
};

struct TypeSummary {
  TraderType type{TraderType::retail};
  std::size_t n_traders{0};  // trader paths across all replications
  double mean_x_star{0.0};
  double mean_final_wealth{0.0};
  double std_final_wealth{0.0};
};

struct SummaryTables {
  std::uint64_t seed{0};
  std::size_t replications{0};
  std::size_t n_traders_per_type{0};
  std::size_t n_events{0};
  std::vector<GroupMean> alloc_by_period;      // per (type, event) mean x_star
  std::vector<WealthBin> final_wealth_hist;    // per (type, bin)
  std::vector<GroupMean> mean_wealth_path;     // per (type, event) mean wealth
  std::vector<LiquidityShare> order_by_liquidity;  // per (non-empty bin, type)
  std::array<TypeSummary, kTraderTypeCount> by_type{};
};

/// Reduces a panel to the four summary tables. Rows are put into canonical
/// order before any floating-point accumulation, so the result does not
/// depend on the order of `panel.rows`. Liquidity bins use interior edges at
/// the row-level quantiles k/B; a value equal to an edge falls in the upper
/// bin, and bins left empty by ties are omitted. Wealth bins are equal-width
/// over the pooled min..max of final wealth.
/// Throws std::invalid_argument on an empty panel or zero bin counts.
SummaryTables summarize(const TraderPanel& panel, const StatsOptions& opts);

/// True if the large-order share never decreases across the liquidity bins
/// of `type`.
bool large_share_non_decreasing(const SummaryTables& tables, TraderType type);

void write_alloc_by_period_csv(std::ostream& out, const SummaryTables& t);
void write_final_wealth_hist_csv(std::ostream& out, const SummaryTables& t);
void write_mean_wealth_path_csv(std::ostream& out, const SummaryTables& t);
void write_order_by_liquidity_csv(std::ostream& out, const SummaryTables& t);
/// Type-level table plus pass/fail marks for the qualitative orderings.
void write_text_summary(std::ostream& out, const SummaryTables& t);

/// Writes the four CSV tables and summary.txt into `dir`.
void write_summary_files(const std::filesystem::path& dir, const SummaryTables& t);

}  // namespace macroflow
