#include "macroflow/engine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>

#include "macroflow/errors.hpp"
#include "macroflow/parallel.hpp"

namespace macroflow {

ShockConfig SimConfig::shock_config() const {
  ShockConfig s = shock;
  s.horizon = n_events;
  return s;
}

void SimConfig::validate() const {
  if (n_traders_per_type == 0) {
    throw ConfigError("engine.n_traders_per_type", "must be >= 1");
  }
  if (n_events == 0) {
    throw ConfigError("engine.n_events", "must be >= 1");
  }
  if (replications == 0) {
    throw ConfigError("engine.replications", "must be >= 1");
  }
  if (!(initial_wealth > 0.0) || !std::isfinite(initial_wealth)) {
    throw ConfigError("agents.initial_wealth", "must be finite and > 0");
  }
  if (liq_bins == 0) {
    throw ConfigError("stats.liq_bins", "must be >= 1");
  }
  if (wealth_bins == 0) {
    throw ConfigError("stats.wealth_bins", "must be >= 1");
  }
  shock_config().validate();
  market.validate();
  allocation.validate();
  choice.validate();
  for (const TraderArchetype& a : agents) {
    a.validate();
  }
}

std::size_t resolve_workers(std::size_t requested) {
  if (requested > 0) {
    return requested;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

namespace {

void run_replication(const SimConfig& cfg, std::uint32_t replication, std::size_t workers,
                     TraderPanel& panel) {
  const std::uint64_t seed = replication_seed(cfg.seed, replication);
  const std::size_t n_events = cfg.n_events;
  const std::size_t per_type = cfg.n_traders_per_type;
  const std::size_t n_traders = per_type * kTraderTypeCount;

  // One macro environment shared by every trader in the replication.
  RandomStream shock_stream(StreamKey{seed, StreamPurpose::shocks, 0, 0});
  RandomStream liq_stream(StreamKey{seed, StreamPurpose::liquidity, 0, 0});
  RandomStream market_stream(StreamKey{seed, StreamPurpose::market, 0, 0});
  const ShockConfig shock_cfg = cfg.shock_config();
  const SurprisePath surprises = generate_surprises(shock_cfg, shock_stream);
  const LiquiditySeries liquidity = generate_liquidity(shock_cfg, liq_stream);
  std::vector<double> premium(n_events);
  for (double& p : premium) {
    p = cfg.market.market_mean + cfg.market.market_std * market_stream.draw_normal() -
        cfg.market.rf;
  }

  for (std::size_t t = 0; t < n_events; ++t) {
    panel.events.push_back(EventRecord{replication, static_cast<std::uint32_t>(t),
                                       surprises.temp[t], surprises.perm[t], surprises.total[t],
                                       liquidity.values[t], liquidity.clamped[t], premium[t]});
  }

  std::vector<TraderState> states(n_traders);
  std::vector<double> perceived_std(n_traders);
  for (std::size_t g = 0; g < n_traders; ++g) {
    const TraderArchetype& a = cfg.agents[g / per_type];
    states[g] = TraderState{a, g, cfg.initial_wealth, 0.0};
    perceived_std[g] =
        effective_risky_std(cfg.market.risky_std_base, a.info_level, cfg.market.noise_mult);
  }

  const std::size_t base_row = panel.rows.size();
  panel.rows.resize(base_row + n_events * n_traders);

  for (std::size_t t = 0; t < n_events; ++t) {
    const double s_total = surprises.total[t];
    const double s_perm = surprises.perm[t];
    const double liq = liquidity.values[t];
    CapmParams capm = cfg.market.capm;
    capm.market_premium = premium[t];

    parallel_for(n_traders, workers, [&](std::size_t g) {
      TraderState& state = states[g];
      const TraderArchetype& a = state.archetype;
      RandomStream returns_stream(StreamKey{seed, StreamPurpose::trader_returns, g, t});
      RandomStream choice_stream(StreamKey{seed, StreamPurpose::trader_choice, g, t});

      // Idiosyncratic noise first, then the allocator's draws.
      const double eps = capm.eps_std * returns_stream.draw_normal();
      double perceived_mean = cfg.market.risky_mean;
      if (cfg.surprise_in_beliefs) {
        perceived_mean += a.info_level * capm.gamma_s * s_total;
      }
      const AllocationResult alloc =
          optimal_allocation(a.risk_aversion, a.max_risk, cfg.market.rf, perceived_mean,
                             perceived_std[g], cfg.allocation, returns_stream);

      const double realized = clamp_return(capm_return(capm, cfg.market.rf, s_total, s_perm, eps));
      const OrderDecision order =
          decide_order(cfg.choice, a.risk_aversion, std::abs(s_total), liq, choice_stream);

      const double wealth_before = state.wealth;
      const double turnover = std::abs(alloc.x_star - state.prev_allocation);
      state = step_wealth(state, alloc.x_star, cfg.market.rf, realized);

      PanelRow& row = panel.rows[base_row + t * n_traders + g];
      row.replication = replication;
      row.trader_type = a.type;
      row.trader_index = static_cast<std::uint32_t>(g % per_type);
      row.event = static_cast<std::uint32_t>(t);
      row.surprise = s_total;
      row.liquidity = liq;
      row.x_star = alloc.x_star;
      row.order_size = order.chosen;
      row.order_probs = order.probabilities;
      row.realized_return = realized;
      row.wealth = state.wealth;
      row.notional = cfg.choice.notional_multiplier[static_cast<std::size_t>(order.chosen)] *
                     turnover * wealth_before;
    });
  }
}

}  // namespace

TraderPanel run_simulation(const SimConfig& cfg, std::size_t workers) {
  cfg.validate();
  for (std::size_t i = 0; i < kTraderTypeCount; ++i) {
    if (cfg.agents[i].type != kAllTraderTypes[i]) {
      throw ConfigError("agents", "archetype table must list Retail, Pension, Institutional, HedgeFund in order");
    }
  }
  TraderPanel panel;
  panel.seed = cfg.seed;
  panel.n_traders_per_type = cfg.n_traders_per_type;
  panel.n_events = cfg.n_events;
  panel.replications = cfg.replications;
  panel.rows.reserve(cfg.replications * cfg.n_events * cfg.n_traders_per_type * kTraderTypeCount);
  const std::size_t w = resolve_workers(workers);
  for (std::size_t r = 0; r < cfg.replications; ++r) {
    run_replication(cfg, static_cast<std::uint32_t>(r), w, panel);
  }
  return panel;
}

}  // namespace macroflow
