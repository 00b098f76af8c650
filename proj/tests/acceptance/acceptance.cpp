// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "macroflow/allocation.hpp"
#include "macroflow/choice.hpp"
#include "macroflow/engine.hpp"
#include "macroflow/market.hpp"
#include "macroflow/panel_io.hpp"
#include "macroflow/rng.hpp"
#include "macroflow/shocks.hpp"
#include "macroflow/stats.hpp"
#include "macroflow/text.hpp"

namespace fs = std::filesystem;
using namespace macroflow;
using text::format_double;
using text::format_fixed;

namespace {

int failures = 0;

void report(int id, const std::string& name, bool ok, const std::string& detail) {
  std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << id << "  " << name << "  " << detail
            << std::endl;
  if (!ok) ++failures;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

double run_cli(const std::string& args, const fs::path& out) {
  const std::string cmd = std::string("\"") + MACROFLOW_CLI_PATH + "\" run --seed 42 " + args +
                          " --out \"" + out.string() + "\" > \"" + out.string() + ".log\" 2>&1";
  const auto start = std::chrono::steady_clock::now();
  const int rc = std::system(cmd.c_str());
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (rc != 0) throw std::runtime_error("command failed: " + cmd);
  return secs;
}

// --- 1: default run ------------------------------------------------

std::optional<SummaryTables> default_run(const fs::path& dir) {
  double secs = 0.0;
  SummaryTables t;
  try {
    secs = run_cli("--workers 1", dir);
    t = summarize(read_panel_csv(dir / "panel.csv"), StatsOptions{});
  } catch (const std::exception& e) {
    report(1, "allocation ordering", false, e.what());
    return std::nullopt;
  }
  const auto x = [&](TraderType type) { return t.by_type[static_cast<std::size_t>(type)].mean_x_star; };
  const double hf = x(TraderType::hedge_fund), inst = x(TraderType::institutional),
               pen = x(TraderType::pension), ret = x(TraderType::retail);
  const bool ordered = hf > inst && inst > pen && pen > ret;
  const bool ok = ordered && hf == 1.0 && ret <= 0.25 && secs < 60.0;
  report(1, "allocation ordering", ok,
         "HF=" + format_fixed(hf, 6) + " Inst=" + format_fixed(inst, 6) + " Pension=" +
             format_fixed(pen, 6) + " Retail=" + format_fixed(ret, 6) + " runtime=" +
             format_fixed(secs, 1) + "s (single worker)");
  return t;
}

void liquidity_pattern(const std::optional<SummaryTables>& tables) {
  if (!tables) {
    report(3, "large share vs liquidity", false, "default run failed");
    return;
  }
  const SummaryTables& t = *tables;
  bool all = true;
  std::string detail;
  for (TraderType type : kAllTraderTypes) {
    const bool mono = large_share_non_decreasing(t, type);
    all = all && mono;
    detail += std::string(to_string(type)) + "[";
    bool first = true;
    for (const LiquidityShare& l : t.order_by_liquidity) {
      if (l.type != type) continue;
      detail += (first ? "" : " ") + format_fixed(l.shares[2], 4);
      first = false;
    }
    detail += mono ? "] " : "]* ";
  }
  report(3, "large share vs liquidity", all, detail);
}

// --- 2: wealth ordering across replications -------------------------------

void wealth_ordering() {
  SimConfig cfg;
  cfg.replications = 10;
  const TraderPanel p = run_simulation(cfg);
  // final wealth per (replication, type)
  std::vector<std::array<std::vector<double>, kTraderTypeCount>> finals(cfg.replications);
  for (const PanelRow& r : p.rows) {
    if (r.event + 1 == cfg.n_events) {
      finals[r.replication][static_cast<std::size_t>(r.trader_type)].push_back(r.wealth);
    }
  }
  auto mean = [](const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  };
  auto sd = [&](const std::vector<double>& v) {
    const double m = mean(v);
    double s = 0.0;
    for (double w : v) s += (w - m) * (w - m);
    return std::sqrt(s / static_cast<double>(v.size() - 1));
  };
  int good = 0;
  std::string marks;
  for (const auto& f : finals) {
    const double hf = mean(f[3]), inst = mean(f[2]), pen = mean(f[1]), ret = mean(f[0]);
    const bool ok = hf > inst && inst > pen && pen > ret && sd(f[3]) > sd(f[0]);
    good += ok ? 1 : 0;
    marks += ok ? '+' : '-';
  }
  report(2, "final wealth ordering", good >= 8,
         std::to_string(good) + "/10 replications [" + marks + "], need >= 8");
}

// --- 4: allocator vs brute-force oracle ----------------------------------

void allocator_oracle() {
  struct Case {
    const char* name;
    double gamma, sd, cap, oracle;
  };
  // Frozen from tests/oracles/allocation_oracle.py (1e7 draws, step 0.01).
  const Case cases[] = {
      {"retail", 3.0, 0.40, 0.25, 0.13},      {"pension", 2.0, 0.26, 0.40, 0.40},
      {"institutional", 1.5, 0.24, 0.80, 0.70}, {"hedge_fund", 1.0, 0.20, 1.00, 1.00},
      {"gamma3", 3.0, 0.20, 1.00, 0.51},
  };
  AllocationConfig cfg;
  cfg.n_draws = 1'000'000;
  bool ok = true;
  std::string detail;
  std::uint64_t k = 0;
  for (const Case& c : cases) {
    RandomStream s(StreamKey{42, StreamPurpose::trader_returns, k++, 0});
    const double x = optimal_allocation(c.gamma, c.cap, 0.04, 0.10, c.sd, cfg, s).x_star;
    bool pass = std::abs(x - c.oracle) <= 0.05 + 1e-12;
    if (std::string(c.name) == "gamma3") pass = pass && std::abs(x - 0.5) <= 0.05 + 1e-12;
    ok = ok && pass;
    detail += std::string(c.name) + "=" + format_fixed(x, 2) + "/" + format_fixed(c.oracle, 2) + " ";
  }
  report(4, "allocator vs oracle", ok, detail);
}

// --- 5: softmax ------------------------------------------------------------

void softmax_suite() {
  bool ok = true;
  std::string fails;
  auto expect = [&](bool c, const char* what) {
    if (!c) {
      ok = false;
      fails += std::string(what) + " ";
    }
  };
  // dyadic utilities and shifts: both the shifted and unshifted max
  // subtraction are exact, so the outputs must agree bit for bit
  RandomStream rng(StreamKey{5, StreamPurpose::trader_choice, 0, 0});
  bool shift_exact = true;
  for (int i = 0; i < 10000; ++i) {
    SizeVector u;
    for (double& v : u) v = std::floor((rng.draw_uniform() - 0.5) * 64.0) / 8.0;
    const double c = std::floor((rng.draw_uniform() - 0.5) * 2048.0) / 4.0;
    const SizeVector a = softmax(u), b = softmax({u[0] + c, u[1] + c, u[2] + c});
    shift_exact = shift_exact && a == b;
  }
  expect(shift_exact, "shift");
  const SizeVector flat = softmax({0.0, 0.0, 0.0});
  expect(flat[0] == 1.0 / 3 && flat[1] == 1.0 / 3 && flat[2] == 1.0 / 3, "uniform");
  const SizeVector p = softmax({0.0, std::log(2.0), std::log(4.0)});
  expect(std::abs(p[0] - 1.0 / 7) < 1e-12 && std::abs(p[1] - 2.0 / 7) < 1e-12 &&
             std::abs(p[2] - 4.0 / 7) < 1e-12,
         "1:2:4");
  const SizeVector e = softmax({1000.0, 0.0, -1000.0});
  expect(std::isfinite(e[0]) && std::isfinite(e[1]) && std::isfinite(e[2]) &&
             std::abs(e[0] - 1.0) < 1e-12 && std::abs(e[1]) < 1e-12 && std::abs(e[2]) < 1e-12,
         "extreme");
  report(5, "softmax", ok, ok ? "shift exact, uniform, 1:2:4, extreme inputs" : "failed: " + fails);
}

// --- 6: CRRA ---------------------------------------------------------------

void crra_suite() {
  bool ok = true;
  std::string fails;
  for (double g : {1.0, 1.5, 2.0, 3.0}) {
    if (crra_utility(1.0, g) != 0.0) {
      ok = false;
      fails += "U(1," + format_double(g) + ") ";
    }
  }
  double worst = 0.0;
  for (double w : {0.5, 1.0, 2.0, 10.0}) {
    for (double g : {1.0 - 1e-6, 1.0 + 1e-6}) {
      worst = std::max(worst, std::abs(crra_utility(w, g) - std::log(w)));
    }
  }
  if (!(worst < 1e-5)) {
    ok = false;
    fails += "continuity ";
  }
  const double h = 1e-3;
  for (double g : {0.5, 1.0, 1.5, 2.0, 3.0, 5.0}) {
    for (double w = 0.1; w <= 10.0; w += 0.05) {
      const double lo = crra_utility(w - h, g), mid = crra_utility(w, g), hi = crra_utility(w + h, g);
      if (!(hi > mid && mid > lo) || !(hi - 2 * mid + lo < 0.0)) {
        ok = false;
        fails += "shape(g=" + format_double(g) + ",w=" + format_fixed(w, 2) + ") ";
        break;
      }
    }
  }
  report(6, "CRRA utility", ok,
         ok ? "U(1)=0, log-limit gap " + format_double(worst) + ", increasing and concave"
            : "failed: " + fails);
}

// --- 7: shock moments --------------------------------------------------------

void shock_moments() {
  const ShockConfig cfg;
  const std::size_t paths = 100'000;
  double t_sum = 0, t_sq = 0, d_sum = 0, d_sq = 0, end_sum = 0, end_sq = 0;
  std::size_t n = 0;
  for (std::size_t k = 0; k < paths; ++k) {
    RandomStream s(StreamKey{42, StreamPurpose::shocks, 0, k});
    const SurprisePath p = generate_surprises(cfg, s);
    double prev = 0.0;
    for (std::size_t t = 0; t < p.size(); ++t) {
      t_sum += p.temp[t];
      t_sq += p.temp[t] * p.temp[t];
      const double d = p.perm[t] - prev;
      prev = p.perm[t];
      d_sum += d;
      d_sq += d * d;
      ++n;
    }
    end_sum += p.perm.back();
    end_sq += p.perm.back() * p.perm.back();
  }
  const double dn = static_cast<double>(n), dp = static_cast<double>(paths);
  const double sd_temp = std::sqrt((t_sq - t_sum * t_sum / dn) / (dn - 1));
  const double sd_inc = std::sqrt((d_sq - d_sum * d_sum / dn) / (dn - 1));
  const double end_mean = end_sum / dp;
  const double end_se = std::sqrt((end_sq - end_sum * end_sum / dp) / (dp - 1) / dp);
  const bool ok = std::abs(sd_temp / cfg.temp_scale - 1) < 0.02 &&
                  std::abs(sd_inc / cfg.perm_scale - 1) < 0.02 && std::abs(end_mean) < 3 * end_se;
  report(7, "shock moments", ok,
         "sd(temp)=" + format_fixed(sd_temp, 5) + " sd(dperm)=" + format_fixed(sd_inc, 5) +
             " mean(perm[T-1])=" + format_fixed(end_mean, 5) + " (se " + format_fixed(end_se, 5) + ")");
}

// --- 8: byte-identical outputs ----------------------------------------------

void determinism(const fs::path& first, const fs::path& root) {
  try {
    const fs::path again = root / "repeat", wide = root / "workers8";
    run_cli("--workers 1", again);
    run_cli("--workers 8", wide);
    std::vector<std::string> names;
    for (const auto& e : fs::directory_iterator(first)) names.push_back(e.path().filename().string());
    std::sort(names.begin(), names.end());
    bool ok = !names.empty();
    std::string diff;
    for (const std::string& f : names) {
      const std::string a = slurp(first / f);
      if (a != slurp(again / f) || a != slurp(wide / f)) {
        ok = false;
        diff += f + " ";
      }
    }
    for (const fs::path& d : {again, wide}) {
      std::size_t count = 0;
      for ([[maybe_unused]] const auto& e : fs::directory_iterator(d)) ++count;
      ok = ok && count == names.size();
    }
    report(8, "determinism", ok,
           ok ? std::to_string(names.size()) + " files identical across 3 runs (workers 1, 1, 8)"
              : "differs: " + diff);
  } catch (const std::exception& e) {
    report(8, "determinism", false, e.what());
  }
}

// --- 9: estimator convergence -----------------------------------------------

void convergence() {
  const double gamma = 3.0, rf = 0.04, mu = 0.10, sd = 0.20;
  const std::array<double, 1> grid{0.5};
  auto draws = [&](std::size_t n, std::uint64_t key) {
    RandomStream s(StreamKey{9, StreamPurpose::trader_returns, key, 0});
    std::vector<double> r(n);
    s.fill_normal(r);
    for (double& v : r) v = clamp_return(mu + sd * v);
    return r;
  };
  const double reference = estimate_expected_utilities(grid, gamma, rf, draws(10'000'000, 1'000'000))[0];
  const std::size_t sizes[] = {1'000, 3'000, 10'000, 30'000, 100'000, 300'000, 1'000'000};
  const std::size_t reps = 16;
  std::vector<double> lx, ly;
  std::string detail;
  for (std::size_t n : sizes) {
    double sq = 0.0;
    for (std::size_t k = 0; k < reps; ++k) {
      const double e = estimate_expected_utilities(grid, gamma, rf, draws(n, n * 100 + k))[0] - reference;
      sq += e * e;
    }
    const double rmse = std::sqrt(sq / reps);
    lx.push_back(std::log(static_cast<double>(n)));
    ly.push_back(std::log(rmse));
  }
  const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / lx.size();
  const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / ly.size();
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  const double slope = sxy / sxx;
  report(9, "estimator convergence", slope >= -0.65 && slope <= -0.35,
         "log-log slope of RMSE over " + std::to_string(reps) + " streams, n=1e3..1e6: " +
             format_fixed(slope, 3));
}

}  // namespace

int main() {
  const fs::path root = fs::temp_directory_path() / "macroflow_acceptance";
  fs::remove_all(root);
  fs::create_directories(root);
  const fs::path first = root / "seed42";

  const auto tables = default_run(first);
  wealth_ordering();
  liquidity_pattern(tables);
  allocator_oracle();
  softmax_suite();
  crra_suite();
  shock_moments();
  determinism(first, root);
  convergence();

  fs::remove_all(root);
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criterion(s) failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
