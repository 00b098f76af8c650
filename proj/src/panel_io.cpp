#include "macroflow/panel_io.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "macroflow/text.hpp"

namespace macroflow {

std::string provenance_line(const TraderPanel& panel) {
  return "# macroflow seed=" + std::to_string(panel.seed) +
         " replications=" + std::to_string(panel.replications) +
         " traders_per_type=" + std::to_string(panel.n_traders_per_type) +
         " events=" + std::to_string(panel.n_events);
}

void write_panel_csv(std::ostream& out, const TraderPanel& panel) {
  using text::format_double;
  out << provenance_line(panel) << '\n' << kPanelHeader << '\n';
  std::string line;
  for (const PanelRow& r : panel.rows) {
    line.clear();
    line += std::to_string(r.replication);
    line += ',';
    line += to_string(r.trader_type);
    line += ',';
    line += std::to_string(r.trader_index);
    line += ',';
    line += std::to_string(r.event);
    for (double v : {r.surprise, r.liquidity, r.x_star}) {
      line += ',';
      line += format_double(v);
    }
    line += ',';
    line += to_string(r.order_size);
    for (double v : {r.order_probs[0], r.order_probs[1], r.order_probs[2], r.realized_return,
                     r.wealth}) {
      line += ',';
      line += format_double(v);
    }
    line += '\n';
    out << line;
  }
}

void write_events_csv(std::ostream& out, const TraderPanel& panel) {
  using text::format_double;
  out << provenance_line(panel) << '\n' << kEventsHeader << '\n';
  for (const EventRecord& e : panel.events) {
    out << e.replication << ',' << e.event << ',' << format_double(e.temp_shock) << ','
        << format_double(e.perm_shock) << ',' << format_double(e.surprise) << ','
        << format_double(e.liquidity) << ',' << (e.liquidity_clamped ? 1 : 0) << ','
        << format_double(e.market_premium) << '\n';
  }
}

void write_panel_jsonl(std::ostream& out, const TraderPanel& panel) {
  for (const PanelRow& r : panel.rows) {
    nlohmann::ordered_json j;
    j["seed"] = panel.seed;
    j["replication"] = r.replication;
    j["trader_type"] = to_string(r.trader_type);
    j["trader_index"] = r.trader_index;
    j["event"] = r.event;
    j["surprise"] = r.surprise;
    j["liquidity"] = r.liquidity;
    j["x_star"] = r.x_star;
    j["order_size"] = to_string(r.order_size);
    j["order_probs"] = {r.order_probs[0], r.order_probs[1], r.order_probs[2]};
    j["notional"] = r.notional;
    j["realized_return"] = r.realized_return;
    j["wealth"] = r.wealth;
    out << j.dump() << '\n';
  }
}

namespace {

[[noreturn]] void bad_line(const std::string& source, std::size_t line_no, const std::string& what) {
  throw std::runtime_error(source + ":" + std::to_string(line_no) + ": " + what);
}

void parse_provenance(std::string_view line, TraderPanel& panel) {
  for (std::string_view token : text::split(line, ' ')) {
    const auto eq = token.find('=');
    if (eq == std::string_view::npos) {
      continue;
    }
    const auto key = token.substr(0, eq);
    const auto value = text::parse_u64(token.substr(eq + 1));
    if (!value) {
      continue;
    }
    if (key == "seed") panel.seed = *value;
    else if (key == "replications") panel.replications = *value;
    else if (key == "traders_per_type") panel.n_traders_per_type = *value;
    else if (key == "events") panel.n_events = *value;
  }
}

}  // namespace

TraderPanel read_panel_csv(std::istream& in, const std::string& source) {
  TraderPanel panel;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (line.empty()) {
      continue;
    }
    if (line.front() == '#') {
      parse_provenance(std::string_view(line).substr(1), panel);
      continue;
    }
    if (!header_seen) {
      if (line != kPanelHeader) {
        bad_line(source, line_no, "unexpected header '" + line + "'");
      }
      header_seen = true;
      continue;
    }
    const auto cells = text::split(line, ',');
    if (cells.size() != 13) {
      bad_line(source, line_no, "expected 13 columns, got " + std::to_string(cells.size()));
    }
    auto u32 = [&](std::size_t i) {
      const auto v = text::parse_u64(cells[i]);
      if (!v || *v > 0xffffffffULL) bad_line(source, line_no, "bad integer in column " + std::to_string(i + 1));
      return static_cast<std::uint32_t>(*v);
    };
    auto real = [&](std::size_t i) {
      const auto v = text::parse_double(cells[i]);
      if (!v) bad_line(source, line_no, "bad number in column " + std::to_string(i + 1));
      return *v;
    };
    PanelRow r;
    try {
      r.trader_type = parse_trader_type(cells[1]);
      r.order_size = parse_order_size(cells[7]);
    } catch (const std::invalid_argument& e) {
      bad_line(source, line_no, e.what());
    }
    r.replication = u32(0);
    r.trader_index = u32(2);
    r.event = u32(3);
    r.surprise = real(4);
    r.liquidity = real(5);
    r.x_star = real(6);
    r.order_probs = {real(8), real(9), real(10)};
    r.realized_return = real(11);
    r.wealth = real(12);
    panel.rows.push_back(r);
  }
  if (!header_seen) {
    throw std::runtime_error(source + ": missing panel header");
  }
  if (panel.n_events == 0 || panel.n_traders_per_type == 0 || panel.replications == 0) {
    std::uint32_t max_event = 0, max_trader = 0, max_rep = 0;
    for (const PanelRow& r : panel.rows) {
      max_event = std::max(max_event, r.event);
      max_trader = std::max(max_trader, r.trader_index);
      max_rep = std::max(max_rep, r.replication);
    }
    if (!panel.rows.empty()) {
      panel.n_events = max_event + 1;
      panel.n_traders_per_type = max_trader + 1;
      panel.replications = max_rep + 1;
    }
  }
  return panel;
}

TraderPanel read_panel_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open panel '" + path.string() + "'");
  }
  return read_panel_csv(in, path.string());
}

}  // namespace macroflow
