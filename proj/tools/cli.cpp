#include "cli.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "macroflow/config.hpp"
#include "macroflow/engine.hpp"
#include "macroflow/errors.hpp"
#include "macroflow/panel_io.hpp"
#include "macroflow/parallel.hpp"
#include "macroflow/stats.hpp"
#include "macroflow/text.hpp"

namespace macroflow::cli {
namespace fs = std::filesystem;

namespace {

struct ConfigOptions {
  std::string config_path;
  std::vector<std::string> overrides;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> replications;
};

void add_config_options(CLI::App* cmd, ConfigOptions& o) {
  cmd->add_option("--config", o.config_path, "Config file (key = value lines)");
  cmd->add_option("--set", o.overrides, "Override one key, e.g. --set market.rf=0.03")
      ->allow_extra_args(false);
  cmd->add_option("--seed", o.seed, "Experiment seed");
  cmd->add_option("--replications", o.replications, "Independent replications");
}

// Defaults < config file < --set overrides < dedicated flags.
SimConfig resolve_config(const ConfigOptions& o) {
  SimConfig cfg;
  if (!o.config_path.empty()) {
    apply_config_file(cfg, o.config_path);
  }
  for (const std::string& kv : o.overrides) {
    apply_override(cfg, kv);
  }
  if (o.seed) cfg.seed = *o.seed;
  if (o.replications) cfg.replications = *o.replications;
  cfg.validate();
  return cfg;
}

fs::path resolve_out_dir(const std::string& flag) {
  if (!flag.empty()) {
    return flag;
  }
  if (const char* env = std::getenv("MACROFLOW_OUT"); env != nullptr && *env != '\0') {
    return env;
  }
  return "macroflow-out";
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw std::runtime_error("cannot create output directory '" + dir.string() + "'");
  }
}

template <typename Fn>
void write_file(const fs::path& path, Fn&& fn) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write '" + path.string() + "'");
  }
  fn(out);
  out.flush();
  if (!out) {
    throw std::runtime_error("error writing '" + path.string() + "'");
  }
}

int cmd_run(const ConfigOptions& co, const std::string& out_flag, std::size_t workers,
            bool jsonl, std::optional<std::size_t> liq_bins,
            std::optional<std::size_t> wealth_bins, std::ostream& out) {
  SimConfig cfg = resolve_config(co);
  if (liq_bins) cfg.liq_bins = *liq_bins;
  if (wealth_bins) cfg.wealth_bins = *wealth_bins;
  cfg.validate();

  const fs::path dir = resolve_out_dir(out_flag);
  ensure_dir(dir);

  const auto start = std::chrono::steady_clock::now();
  const TraderPanel panel = run_simulation(cfg, workers);
  const SummaryTables tables = summarize(panel, StatsOptions{cfg.liq_bins, cfg.wealth_bins});
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  write_file(dir / "config.txt", [&](std::ostream& o) {
    o << provenance_line(panel) << '\n' << render_config(cfg, false);
  });
  write_file(dir / "panel.csv", [&](std::ostream& o) { write_panel_csv(o, panel); });
  write_file(dir / "events.csv", [&](std::ostream& o) { write_events_csv(o, panel); });
  if (jsonl) {
    write_file(dir / "panel.jsonl", [&](std::ostream& o) { write_panel_jsonl(o, panel); });
  }
  write_summary_files(dir, tables);

  write_text_summary(out, tables);
  out << "\n" << panel.rows.size() << " rows in " << text::format_fixed(secs, 2) << " s with "
      << resolve_workers(workers) << " worker(s); output in " << dir.string() << "\n";
  return kExitOk;
}

int cmd_summarize(const std::string& panel_path, const std::string& out_flag,
                  const std::string& config_path, std::optional<std::size_t> liq_bins,
                  std::optional<std::size_t> wealth_bins, std::ostream& out) {
  const fs::path panel_file(panel_path);
  SimConfig cfg;
  // The run's config echo carries its bin counts.
  fs::path sidecar = config_path.empty() ? panel_file.parent_path() / "config.txt" : fs::path(config_path);
  if (!config_path.empty() || fs::exists(sidecar)) {
    apply_config_file(cfg, sidecar);
  }
  if (liq_bins) cfg.liq_bins = *liq_bins;
  if (wealth_bins) cfg.wealth_bins = *wealth_bins;
  if (cfg.liq_bins == 0) throw ConfigError("stats.liq_bins", "must be >= 1");
  if (cfg.wealth_bins == 0) throw ConfigError("stats.wealth_bins", "must be >= 1");

  const TraderPanel panel = read_panel_csv(panel_file);
  const SummaryTables tables = summarize(panel, StatsOptions{cfg.liq_bins, cfg.wealth_bins});
  const fs::path dir = out_flag.empty() ? panel_file.parent_path() : fs::path(out_flag);
  ensure_dir(dir.empty() ? fs::path(".") : dir);
  write_summary_files(dir.empty() ? fs::path(".") : dir, tables);
  write_text_summary(out, tables);
  return kExitOk;
}

int cmd_bench(const ConfigOptions& co, std::size_t workers, std::size_t tasks, std::ostream& out) {
  const SimConfig cfg = resolve_config(co);
  const std::size_t n_workers = resolve_workers(workers);

  auto time_with = [&](std::size_t w) {
    std::vector<double> sink(tasks);
    const auto start = std::chrono::steady_clock::now();
    parallel_for(tasks, w, [&](std::size_t i) {
      const TraderArchetype& a = cfg.agents[i % kTraderTypeCount];
      RandomStream stream(StreamKey{cfg.seed, StreamPurpose::trader_returns, i, 0});
      const double sd =
          effective_risky_std(cfg.market.risky_std_base, a.info_level, cfg.market.noise_mult);
      sink[i] = optimal_allocation(a.risk_aversion, a.max_risk, cfg.market.rf,
                                   cfg.market.risky_mean, sd, cfg.allocation, stream)
                    .x_star;
    });
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };

  const double draws = static_cast<double>(tasks) * static_cast<double>(cfg.allocation.n_draws);
  const double t1 = time_with(1);
  out << "allocator: " << tasks << " solves x " << cfg.allocation.n_draws << " draws\n";
  out << "  1 worker : " << text::format_fixed(t1, 3) << " s, "
      << text::format_fixed(draws / t1 / 1e6, 2) << " M draws/s\n";
  if (n_workers > 1) {
    const double tn = time_with(n_workers);
    out << "  " << n_workers << " workers: " << text::format_fixed(tn, 3) << " s, "
        << text::format_fixed(draws / tn / 1e6, 2) << " M draws/s, speedup "
        << text::format_fixed(t1 / tn, 2) << "x\n";
  } else {
    out << "  (single worker available; no parallel speedup measured)\n";
  }
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"macroflow: heterogeneous trader flow around CPI announcements"};
  app.require_subcommand(1);

  ConfigOptions run_opts;
  std::string run_out;
  std::size_t run_workers = 0;
  bool run_jsonl = false;
  std::optional<std::size_t> run_liq_bins, run_wealth_bins;
  auto* run = app.add_subcommand("run", "Simulate, then write the panel and summary tables");
  add_config_options(run, run_opts);
  run->add_option("--out", run_out, "Output directory (default: $MACROFLOW_OUT or ./macroflow-out)");
  run->add_option("--workers", run_workers, "Worker threads (0 = hardware concurrency)");
  run->add_flag("--jsonl", run_jsonl, "Also write panel.jsonl");
  run->add_option("--liq-bins", run_liq_bins, "Liquidity quantile bins");
  run->add_option("--wealth-bins", run_wealth_bins, "Final wealth histogram bins");

  std::string sum_panel, sum_out, sum_config;
  std::optional<std::size_t> sum_liq_bins, sum_wealth_bins;
  auto* summarize_cmd = app.add_subcommand("summarize", "Recompute summary tables from a panel CSV");
  summarize_cmd->add_option("panel", sum_panel, "panel.csv from a previous run")->required();
  summarize_cmd->add_option("--out", sum_out, "Output directory (default: the panel's directory)");
  summarize_cmd->add_option("--config", sum_config, "Config for bin counts (default: sidecar config.txt)");
  summarize_cmd->add_option("--liq-bins", sum_liq_bins, "Liquidity quantile bins");
  summarize_cmd->add_option("--wealth-bins", sum_wealth_bins, "Final wealth histogram bins");

  ConfigOptions bench_opts;
  std::size_t bench_workers = 0;
  std::size_t bench_tasks = 256;
  auto* bench = app.add_subcommand("bench", "Time the allocator and report parallel speedup");
  add_config_options(bench, bench_opts);
  bench->add_option("--workers", bench_workers, "Worker threads (0 = hardware concurrency)");
  bench->add_option("--tasks", bench_tasks, "Allocation solves per timing")->check(CLI::PositiveNumber);

  ConfigOptions validate_opts;
  auto* validate = app.add_subcommand("validate-config", "Check a config and print the effective values");
  add_config_options(validate, validate_opts);

  app.add_subcommand("print-defaults", "Print the full commented default config");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, e2;
    const int code = app.exit(e, o, e2);
    out << o.str();
    err << e2.str();
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (run->parsed()) {
      return cmd_run(run_opts, run_out, run_workers, run_jsonl, run_liq_bins, run_wealth_bins, out);
    }
    if (summarize_cmd->parsed()) {
      return cmd_summarize(sum_panel, sum_out, sum_config, sum_liq_bins, sum_wealth_bins, out);
    }
    if (bench->parsed()) {
      return cmd_bench(bench_opts, bench_workers, bench_tasks, out);
    }
    if (validate->parsed()) {
      const SimConfig cfg = resolve_config(validate_opts);
      out << render_config(cfg, false);
      return kExitOk;
    }
    out << render_config(SimConfig{}, true);
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}

}  // namespace macroflow::cli
