#include "macroflow/config.hpp"

#include <fstream>
#include <functional>
#include <sstream>

#include "macroflow/errors.hpp"
#include "macroflow/text.hpp"

namespace macroflow {
namespace {

struct Field {
  std::string key;
  std::string help;
  std::function<void(SimConfig&, std::string_view)> set;
  std::function<std::string(const SimConfig&)> get;
};

template <typename Access>
Field real_field(std::string key, std::string help, Access access) {
  Field f{key, std::move(help), {}, {}};
  f.set = [key, access](SimConfig& c, std::string_view v) {
    const auto parsed = text::parse_double(v);
    if (!parsed) {
      throw ConfigError(key, "expected a real number, got '" + std::string(v) + "'");
    }
    access(c) = *parsed;
  };
  f.get = [access](const SimConfig& c) { return text::format_double(access(c)); };
  return f;
}

template <typename Access>
Field count_field(std::string key, std::string help, Access access) {
  Field f{key, std::move(help), {}, {}};
  f.set = [key, access](SimConfig& c, std::string_view v) {
    const auto parsed = text::parse_u64(v);
    if (!parsed) {
      throw ConfigError(key, "expected a non-negative integer, got '" + std::string(v) + "'");
    }
    using Target = std::remove_reference_t<decltype(access(c))>;
    access(c) = static_cast<Target>(*parsed);
  };
  f.get = [access](const SimConfig& c) { return std::to_string(access(c)); };
  return f;
}

template <typename Access>
Field bool_field(std::string key, std::string help, Access access) {
  Field f{key, std::move(help), {}, {}};
  f.set = [key, access](SimConfig& c, std::string_view v) {
    const auto parsed = text::parse_bool(v);
    if (!parsed) {
      throw ConfigError(key, "expected true or false, got '" + std::string(v) + "'");
    }
    access(c) = *parsed;
  };
  f.get = [access](const SimConfig& c) { return std::string(access(c) ? "true" : "false"); };
  return f;
}

std::vector<Field> build_fields() {
  std::vector<Field> f;
  f.push_back(count_field("engine.n_traders_per_type", "traders simulated per archetype",
                          [](auto& c) -> auto& { return c.n_traders_per_type; }));
  f.push_back(count_field("engine.n_events", "scheduled announcements per replication",
                          [](auto& c) -> auto& { return c.n_events; }));
  f.push_back(count_field("engine.seed", "experiment seed (also --seed)",
                          [](auto& c) -> auto& { return c.seed; }));
  f.push_back(count_field("engine.replications", "independent replications (also --replications)",
                          [](auto& c) -> auto& { return c.replications; }));
  f.push_back(bool_field("engine.surprise_in_beliefs",
                         "add info_level * gamma_s * surprise to the perceived mean",
                         [](auto& c) -> auto& { return c.surprise_in_beliefs; }));
  f.push_back(real_field("agents.initial_wealth", "starting wealth of every trader",
                         [](auto& c) -> auto& { return c.initial_wealth; }));

  f.push_back(real_field("shock.temp_scale", "std of the temporary surprise component",
                         [](auto& c) -> auto& { return c.shock.temp_scale; }));
  f.push_back(real_field("shock.temp_ar", "AR(1) coefficient of the temporary component (0 = iid)",
                         [](auto& c) -> auto& { return c.shock.temp_ar; }));
  f.push_back(real_field("shock.perm_scale", "std of each permanent random-walk increment",
                         [](auto& c) -> auto& { return c.shock.perm_scale; }));
  f.push_back(real_field("shock.liq_mean", "mean liquidity level",
                         [](auto& c) -> auto& { return c.shock.liq_mean; }));
  f.push_back(real_field("shock.liq_scale", "std of liquidity",
                         [](auto& c) -> auto& { return c.shock.liq_scale; }));
  f.push_back(real_field("shock.liquidity_floor", "lower clamp on liquidity",
                         [](auto& c) -> auto& { return c.shock.liquidity_floor; }));

  f.push_back(real_field("market.rf", "risk-free return per event",
                         [](auto& c) -> auto& { return c.market.rf; }));
  f.push_back(real_field("market.risky_mean", "mean of the perceived risky return",
                         [](auto& c) -> auto& { return c.market.risky_mean; }));
  f.push_back(real_field("market.risky_std", "perceived risky std for a fully informed trader",
                         [](auto& c) -> auto& { return c.market.risky_std_base; }));
  f.push_back(real_field("market.noise_mult",
                         "std inflation for uninformed traders: std * (1 + m * (1 - info))",
                         [](auto& c) -> auto& { return c.market.noise_mult; }));
  f.push_back(real_field("market.market_mean", "mean market return R_m per event",
                         [](auto& c) -> auto& { return c.market.market_mean; }));
  f.push_back(real_field("market.market_std", "std of the market return R_m",
                         [](auto& c) -> auto& { return c.market.market_std; }));
  f.push_back(real_field("market.alpha", "asset-specific intercept",
                         [](auto& c) -> auto& { return c.market.capm.alpha; }));
  f.push_back(real_field("market.beta", "loading on the market premium R_m - rf",
                         [](auto& c) -> auto& { return c.market.capm.beta; }));
  f.push_back(real_field("market.gamma_s", "loading on the total surprise",
                         [](auto& c) -> auto& { return c.market.capm.gamma_s; }));
  f.push_back(real_field("market.delta_p", "loading on the permanent surprise",
                         [](auto& c) -> auto& { return c.market.capm.delta_p; }));
  f.push_back(real_field("market.eps_std", "std of the idiosyncratic return noise",
                         [](auto& c) -> auto& { return c.market.capm.eps_std; }));

  f.push_back(real_field("allocation.grid_step", "spacing of candidate risky weights",
                         [](auto& c) -> auto& { return c.allocation.grid_step; }));
  f.push_back(count_field("allocation.n_draws", "return draws per expected-utility estimate",
                          [](auto& c) -> auto& { return c.allocation.n_draws; }));
  f.push_back(bool_field("allocation.crn", "share return draws across grid points",
                         [](auto& c) -> auto& { return c.allocation.use_common_random_numbers; }));

  for (std::size_t i = 0; i < kOrderSizeCount; ++i) {
    const std::string p = "choice." + std::string(to_string(kAllOrderSizes[i])) + ".";
    f.push_back(real_field(p + "c0", "baseline utility",
                           [i](auto& c) -> auto& { return c.choice.c0[i]; }));
    f.push_back(real_field(p + "c_ra", "loading on risk aversion",
                           [i](auto& c) -> auto& { return c.choice.c_ra[i]; }));
    f.push_back(real_field(p + "c_sur", "loading on |surprise|",
                           [i](auto& c) -> auto& { return c.choice.c_sur[i]; }));
    f.push_back(real_field(p + "c_liq", "loading on liquidity",
                           [i](auto& c) -> auto& { return c.choice.c_liq[i]; }));
    f.push_back(real_field(p + "notional", "notional multiplier on the allocation change",
                           [i](auto& c) -> auto& { return c.choice.notional_multiplier[i]; }));
  }

  for (std::size_t i = 0; i < kTraderTypeCount; ++i) {
    const std::string p = "agents." + std::string(config_name(kAllTraderTypes[i])) + ".";
    f.push_back(real_field(p + "risk_aversion", "relative risk aversion (gamma)",
                           [i](auto& c) -> auto& { return c.agents[i].risk_aversion; }));
    f.push_back(real_field(p + "info_level", "information quality in [0, 1]",
                           [i](auto& c) -> auto& { return c.agents[i].info_level; }));
    f.push_back(real_field(p + "max_risk", "cap on the risky weight",
                           [i](auto& c) -> auto& { return c.agents[i].max_risk; }));
    f.push_back(real_field(p + "txn_cost", "proportional cost per unit of turnover",
                           [i](auto& c) -> auto& { return c.agents[i].base_txn_cost; }));
  }

  f.push_back(count_field("stats.liq_bins", "liquidity quantile bins in order_by_liquidity.csv",
                          [](auto& c) -> auto& { return c.liq_bins; }));
  f.push_back(count_field("stats.wealth_bins", "equal-width bins in final_wealth_hist.csv",
                          [](auto& c) -> auto& { return c.wealth_bins; }));
  return f;
}

const std::vector<Field>& fields() {
  static const std::vector<Field> table = build_fields();
  return table;
}

std::string_view section_of(std::string_view key) {
  return key.substr(0, key.find('.'));
}

}  // namespace

void apply_setting(SimConfig& cfg, std::string_view key, std::string_view value) {
  for (const Field& f : fields()) {
    if (f.key == key) {
      f.set(cfg, text::trim(value));
      return;
    }
  }
  throw ConfigError(std::string(key), "unknown config key");
}

void apply_override(SimConfig& cfg, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    throw ConfigError("", "override '" + std::string(assignment) + "' is not of the form key=value");
  }
  apply_setting(cfg, text::trim(assignment.substr(0, eq)), assignment.substr(eq + 1));
}

void apply_config_text(SimConfig& cfg, std::string_view text_doc, std::string_view source) {
  std::size_t line_no = 0;
  for (std::string_view line : text::split(text_doc, '\n')) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = text::trim(line);
    if (line.empty()) {
      continue;
    }
    const auto eq = line.find('=');
    const std::string where = std::string(source) + ":" + std::to_string(line_no) + ": ";
    if (eq == std::string_view::npos) {
      throw ConfigError("", where + "expected 'key = value', got '" + std::string(line) + "'");
    }
    const auto key = text::trim(line.substr(0, eq));
    try {
      apply_setting(cfg, key, line.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError(e.key(), where + e.what());
    }
  }
}

void apply_config_file(SimConfig& cfg, const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ConfigError("", "cannot read config file '" + path.string() + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  apply_config_text(cfg, buf.str(), path.string());
}

std::string render_config(const SimConfig& cfg, bool with_comments) {
  std::string out;
  if (with_comments) {
    out += "# macroflow configuration\n";
    out += "# One `key = value` per line; `#` starts a comment. Rates are per event.\n";
  }
  std::string_view section;
  for (const Field& f : fields()) {
    const auto s = section_of(f.key);
    if (s != section) {
      section = s;
      out += "\n# [" + std::string(section) + "]\n";
    }
    std::string line = f.key + " = " + f.get(cfg);
    if (with_comments) {
      line.resize(std::max<std::size_t>(line.size(), 44), ' ');
      line += "# " + f.help;
    }
    out += line + "\n";
  }
  return out;
}

std::vector<std::string> config_keys() {
  std::vector<std::string> keys;
  for (const Field& f : fields()) {
    keys.push_back(f.key);
  }
  return keys;
}

}  // namespace macroflow
