#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "macroflow/engine.hpp"

namespace macroflow {

inline constexpr const char* kPanelHeader =
    "replication,trader_type,trader_index,event,surprise,liquidity,x_star,order_size,"
    "p_small,p_medium,p_large,realized_return,wealth";

inline constexpr const char* kEventsHeader =
    "replication,event,temp_shock,perm_shock,surprise,liquidity,liquidity_clamped,market_premium";

/// `# macroflow seed=<seed> ...` line that opens every output file.
std::string provenance_line(const TraderPanel& panel);

/// Panel CSV: provenance comment, fixed header, one row per trader-event.
/// Reals are written in shortest round-trip form, so reading the file back
/// reproduces every value bit for bit.
void write_panel_csv(std::ostream& out, const TraderPanel& panel);
void write_events_csv(std::ostream& out, const TraderPanel& panel);
/// One JSON object per panel row, including the order notional.
void write_panel_jsonl(std::ostream& out, const TraderPanel& panel);

/// Parses a panel CSV. `events` stays empty; seed and shape come from the
/// provenance line when present and are inferred from the rows otherwise.
/// Throws std::runtime_error with a line number on malformed input.
TraderPanel read_panel_csv(std::istream& in, const std::string& source = "panel.csv");
TraderPanel read_panel_csv(const std::filesystem::path& path);

}  // namespace macroflow
