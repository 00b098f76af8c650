#include "macroflow/stats.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <tuple>

#include "macroflow/text.hpp"

namespace macroflow {
namespace {

std::string provenance(const SummaryTables& t) {
  return "# macroflow seed=" + std::to_string(t.seed) +
         " replications=" + std::to_string(t.replications) +
         " traders_per_type=" + std::to_string(t.n_traders_per_type) +
         " events=" + std::to_string(t.n_events);
}

struct Moments {
  double sum{0.0};
  double sum_sq{0.0};
  std::size_t n{0};

  void add(double v) {
    sum += v;
    sum_sq += v * v;
    ++n;
  }
  double mean() const { return n == 0 ? 0.0 : sum / static_cast<double>(n); }
  // Sample standard deviation (n - 1 denominator).
  double stddev() const {
    if (n < 2) return 0.0;
    const double m = mean();
    const double var = (sum_sq - static_cast<double>(n) * m * m) / static_cast<double>(n - 1);
    return var > 0.0 ? std::sqrt(var) : 0.0;
  }
  double std_err() const { return n < 2 ? 0.0 : stddev() / std::sqrt(static_cast<double>(n)); }
};

std::size_t type_index(TraderType t) { return static_cast<std::size_t>(t); }

}  // namespace

SummaryTables summarize(const TraderPanel& panel, const StatsOptions& opts) {
  if (panel.rows.empty()) {
    throw std::invalid_argument("cannot summarize an empty panel");
  }
  if (opts.liq_bins == 0 || opts.wealth_bins == 0) {
    throw std::invalid_argument("bin counts must be >= 1");
  }

  std::vector<const PanelRow*> rows;
  rows.reserve(panel.rows.size());
  for (const PanelRow& r : panel.rows) {
    rows.push_back(&r);
  }
  std::stable_sort(rows.begin(), rows.end(), [](const PanelRow* a, const PanelRow* b) {
    return std::tuple(a->replication, a->event, a->trader_type, a->trader_index) <
           std::tuple(b->replication, b->event, b->trader_type, b->trader_index);
  });

  SummaryTables out;
  out.seed = panel.seed;
  out.replications = panel.replications;
  out.n_traders_per_type = panel.n_traders_per_type;
  out.n_events = panel.n_events;

  // Per (type, event) allocation and wealth.
  std::map<std::pair<std::size_t, std::uint32_t>, std::pair<Moments, Moments>> by_period;
  std::array<Moments, kTraderTypeCount> alloc_all{};
  // Last event seen per (replication, type, trader): the final wealth.
  std::map<std::tuple<std::uint32_t, std::size_t, std::uint32_t>, std::pair<std::uint32_t, double>>
      final_wealth;
  for (const PanelRow* r : rows) {
    const std::size_t ti = type_index(r->trader_type);
    auto& [x, w] = by_period[{ti, r->event}];
    x.add(r->x_star);
    w.add(r->wealth);
    alloc_all[ti].add(r->x_star);
    auto [it, inserted] = final_wealth.try_emplace(
        std::tuple(r->replication, ti, r->trader_index), r->event, r->wealth);
    if (!inserted && r->event >= it->second.first) {
      it->second = {r->event, r->wealth};
    }
  }
  for (const auto& [key, m] : by_period) {
    const TraderType type = kAllTraderTypes[key.first];
    out.alloc_by_period.push_back({type, key.second, m.first.mean(), m.first.std_err(), m.first.n});
    out.mean_wealth_path.push_back({type, key.second, m.second.mean(), m.second.std_err(), m.second.n});
  }

  // Final wealth: per-type moments and a pooled-range histogram.
  std::array<Moments, kTraderTypeCount> final_all{};
  double w_min = HUGE_VAL, w_max = -HUGE_VAL;
  for (const auto& [key, v] : final_wealth) {
    final_all[std::get<1>(key)].add(v.second);
    w_min = std::min(w_min, v.second);
    w_max = std::max(w_max, v.second);
  }
  const std::size_t nb = opts.wealth_bins;
  const double width = (w_max - w_min) / static_cast<double>(nb);
  std::vector<std::array<std::size_t, kTraderTypeCount>> hist(nb);
  for (const auto& [key, v] : final_wealth) {
    std::size_t b = 0;
    if (width > 0.0) {
      b = static_cast<std::size_t>((v.second - w_min) / width);
      b = std::min(b, nb - 1);
    }
    ++hist[b][std::get<1>(key)];
  }
  for (std::size_t ti = 0; ti < kTraderTypeCount; ++ti) {
    for (std::size_t b = 0; b < nb; ++b) {
      const double lo = w_min + width * static_cast<double>(b);
      const double hi = b + 1 == nb ? w_max : w_min + width * static_cast<double>(b + 1);
      out.final_wealth_hist.push_back({kAllTraderTypes[ti], b, lo, hi, hist[b][ti]});
    }
  }

  for (std::size_t ti = 0; ti < kTraderTypeCount; ++ti) {
    out.by_type[ti] = TypeSummary{kAllTraderTypes[ti], final_all[ti].n, alloc_all[ti].mean(),
                                  final_all[ti].mean(), final_all[ti].stddev()};
  }

  // Order-size shares by liquidity quantile bin.
  std::vector<double> liq(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    liq[i] = rows[i]->liquidity;
  }
  std::vector<double> sorted = liq;
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> edges;
  for (std::size_t k = 1; k < opts.liq_bins; ++k) {
    edges.push_back(sorted[k * sorted.size() / opts.liq_bins]);
  }
  struct BinAcc {
    double lo{HUGE_VAL};
    double hi{-HUGE_VAL};
    std::array<std::array<std::size_t, kOrderSizeCount>, kTraderTypeCount> counts{};
    std::array<std::array<double, kOrderSizeCount>, kTraderTypeCount> prob_sums{};
  };
  std::vector<BinAcc> bins(opts.liq_bins);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::size_t b =
        static_cast<std::size_t>(std::upper_bound(edges.begin(), edges.end(), liq[i]) - edges.begin());
    BinAcc& acc = bins[b];
    acc.lo = std::min(acc.lo, liq[i]);
    acc.hi = std::max(acc.hi, liq[i]);
    const std::size_t ti = type_index(rows[i]->trader_type);
    ++acc.counts[ti][static_cast<std::size_t>(rows[i]->order_size)];
    for (std::size_t k = 0; k < kOrderSizeCount; ++k) {
      acc.prob_sums[ti][k] += rows[i]->order_probs[k];
    }
  }
  std::size_t out_bin = 0;
  for (const BinAcc& acc : bins) {
    if (acc.lo > acc.hi) {
      continue;  // empty
    }
    for (std::size_t ti = 0; ti < kTraderTypeCount; ++ti) {
      const auto& c = acc.counts[ti];
      const std::size_t total = c[0] + c[1] + c[2];
      if (total == 0) {
        continue;
      }
      LiquidityShare s{out_bin, acc.lo, acc.hi, kAllTraderTypes[ti], total, {}, {}};
      for (std::size_t k = 0; k < kOrderSizeCount; ++k) {
        s.shares[k] = static_cast<double>(c[k]) / static_cast<double>(total);
        s.mean_probs[k] = acc.prob_sums[ti][k] / static_cast<double>(total);
      }
      out.order_by_liquidity.push_back(s);
    }
    ++out_bin;
  }
  return out;
}

bool large_share_non_decreasing(const SummaryTables& tables, TraderType type) {
  double prev = -1.0;
  for (const LiquidityShare& s : tables.order_by_liquidity) {
    if (s.type != type) continue;
    const double large = s.shares[static_cast<std::size_t>(OrderSize::large)];
    if (large < prev) {
      return false;
    }
    prev = large;
  }
  return true;
}

void write_alloc_by_period_csv(std::ostream& out, const SummaryTables& t) {
  out << provenance(t) << "\ntrader_type,event,mean_x_star,se_x_star,count\n";
  for (const GroupMean& g : t.alloc_by_period) {
    out << to_string(g.type) << ',' << g.event << ',' << text::format_double(g.mean) << ','
        << text::format_double(g.std_err) << ',' << g.count << '\n';
  }
}

void write_mean_wealth_path_csv(std::ostream& out, const SummaryTables& t) {
  out << provenance(t) << "\ntrader_type,event,mean_wealth,se_wealth,count\n";
  for (const GroupMean& g : t.mean_wealth_path) {
    out << to_string(g.type) << ',' << g.event << ',' << text::format_double(g.mean) << ','
        << text::format_double(g.std_err) << ',' << g.count << '\n';
  }
}

void write_final_wealth_hist_csv(std::ostream& out, const SummaryTables& t) {
  out << provenance(t) << "\ntrader_type,bin,bin_lo,bin_hi,count\n";
  for (const WealthBin& b : t.final_wealth_hist) {
    out << to_string(b.type) << ',' << b.bin << ',' << text::format_double(b.lo) << ','
        << text::format_double(b.hi) << ',' << b.count << '\n';
  }
}

void write_order_by_liquidity_csv(std::ostream& out, const SummaryTables& t) {
  out << provenance(t)
      << "\nliq_bin,liq_lo,liq_hi,trader_type,count,share_small,share_medium,share_large,"
         "mean_p_small,mean_p_medium,mean_p_large\n";
  for (const LiquidityShare& s : t.order_by_liquidity) {
    out << s.bin << ',' << text::format_double(s.liq_lo) << ',' << text::format_double(s.liq_hi)
        << ',' << to_string(s.type) << ',' << s.count << ',' << text::format_double(s.shares[0])
        << ',' << text::format_double(s.shares[1]) << ',' << text::format_double(s.shares[2])
        << ',' << text::format_double(s.mean_probs[0]) << ','
        << text::format_double(s.mean_probs[1]) << ',' << text::format_double(s.mean_probs[2])
        << '\n';
  }
}

void write_text_summary(std::ostream& out, const SummaryTables& t) {
  using text::format_fixed;
  out << provenance(t) << "\n\n";
  out << "trader_type     paths  mean_x_star  mean_final_wealth  std_final_wealth\n";
  for (const TypeSummary& s : t.by_type) {
    std::string name(to_string(s.type));
    name.resize(14, ' ');
    std::string paths = std::to_string(s.n_traders);
    paths.insert(0, paths.size() < 7 ? 7 - paths.size() : 0, ' ');
    out << name << paths << "  " << format_fixed(s.mean_x_star, 6) << "  "
        << format_fixed(s.mean_final_wealth, 6) << "  " << format_fixed(s.std_final_wealth, 6)
        << '\n';
  }

  const auto& b = t.by_type;
  auto mark = [&out](bool ok, const std::string& what) {
    out << (ok ? "[PASS] " : "[FAIL] ") << what << '\n';
  };
  auto idx = [](TraderType type) { return static_cast<std::size_t>(type); };
  const std::size_t r = idx(TraderType::retail), p = idx(TraderType::pension),
                    i = idx(TraderType::institutional), h = idx(TraderType::hedge_fund);
  out << "\nchecks\n";
  mark(b[h].mean_x_star > b[i].mean_x_star && b[i].mean_x_star > b[p].mean_x_star &&
           b[p].mean_x_star > b[r].mean_x_star,
       "mean risky allocation: HedgeFund > Institutional > Pension > Retail");
  mark(b[h].mean_final_wealth > b[i].mean_final_wealth &&
           b[i].mean_final_wealth > b[p].mean_final_wealth &&
           b[p].mean_final_wealth > b[r].mean_final_wealth,
       "mean final wealth: HedgeFund > Institutional > Pension > Retail");
  mark(b[h].std_final_wealth > b[r].std_final_wealth,
       "final wealth dispersion: HedgeFund > Retail");
  for (TraderType type : kAllTraderTypes) {
    mark(large_share_non_decreasing(t, type),
         "large-order share non-decreasing across liquidity bins: " + std::string(to_string(type)));
  }
}

void write_summary_files(const std::filesystem::path& dir, const SummaryTables& t) {
  auto write = [&dir](const char* name, auto&& fn) {
    const auto path = dir / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) {
      throw std::runtime_error("cannot write '" + path.string() + "'");
    }
    fn(out);
    if (!out) {
      throw std::runtime_error("error writing '" + path.string() + "'");
    }
  };
  write("alloc_by_period.csv", [&](std::ostream& o) { write_alloc_by_period_csv(o, t); });
  write("final_wealth_hist.csv", [&](std::ostream& o) { write_final_wealth_hist_csv(o, t); });
  write("mean_wealth_path.csv", [&](std::ostream& o) { write_mean_wealth_path_csv(o, t); });
  write("order_by_liquidity.csv", [&](std::ostream& o) { write_order_by_liquidity_csv(o, t); });
  write("summary.txt", [&](std::ostream& o) { write_text_summary(o, t); });
}

}  // namespace macroflow
