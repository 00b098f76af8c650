#include "macroflow/rng.hpp"

#include <bit>
#include <cmath>


namespace macroflow {
namespace {

constexpr std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  std::uint64_t s = h ^ v;
  return splitmix64(s);
}

// 128-layer ziggurat for the standard normal (Doornik's ZIGNOR layout).
// layer_x[0] is the virtual width of the base strip, layer_x[1] the tail
// start R, and layer_x[128] = 0; layer_ratio[i] = layer_x[i+1] / layer_x[i].
struct ZigguratTables {
  static constexpr int kLayers = 128;
  static constexpr double kTailStart = 3.442619855899;
  static constexpr double kLayerArea = 9.91256303526217e-3;

  std::array<double, kLayers + 1> layer_x{};
  std::array<double, kLayers> layer_ratio{};

  ZigguratTables() {
    double f = std::exp(-0.5 * kTailStart * kTailStart);
    layer_x[0] = kLayerArea / f;
    layer_x[1] = kTailStart;
    layer_x[kLayers] = 0.0;
    for (int i = 2; i < kLayers; ++i) {
      layer_x[i] = std::sqrt(-2.0 * std::log(kLayerArea / layer_x[i - 1] + f));
      f = std::exp(-0.5 * layer_x[i] * layer_x[i]);
    }
    for (int i = 0; i < kLayers; ++i) {
      layer_ratio[i] = layer_x[i + 1] / layer_x[i];
    }
  }
};

const ZigguratTables& ziggurat() {
  static const ZigguratTables tables;
  return tables;
}

}  // namespace

std::string_view to_string(StreamPurpose purpose) {
  switch (purpose) {
    case StreamPurpose::shocks: return "shocks";
    case StreamPurpose::liquidity: return "liquidity";
    case StreamPurpose::trader_returns: return "trader-returns";
    case StreamPurpose::trader_choice: return "trader-choice";
    case StreamPurpose::market: return "market";
  }
  return "unknown";
}

RandomStream::RandomStream(const StreamKey& key) {
  // Each field passes through a full avalanche round, so keys that differ in
  // a single field land on unrelated states.
  std::uint64_t h = mix(0x6d6163726f666c6fULL, key.experiment_seed);
  h = mix(h, static_cast<std::uint64_t>(key.purpose) + 1);
  h = mix(h, key.trader_index);
  h = mix(h, key.event_index);
  for (auto& word : state_) {
    word = splitmix64(h);
  }
  // xoshiro forbids the all-zero state; SplitMix64 output makes it
  // astronomically unlikely, but keep the invariant explicit.
  if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) {
    state_[0] = 1;
  }
}

std::uint64_t RandomStream::next_u64() {
  const std::uint64_t result = std::rotl(state_[1] * 5, 7) * 9;
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = std::rotl(state_[3], 45);
  return result;
}

double RandomStream::draw_uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RandomStream::draw_normal() {
  const ZigguratTables& z = ziggurat();
  for (;;) {
    // Low 7 bits pick the layer; the top 53 bits give a uniform sign-and-offset.
    const std::uint64_t bits = next_u64();
    const auto layer = static_cast<std::size_t>(bits & 0x7f);
    const double u = 2.0 * (static_cast<double>(bits >> 11) * 0x1.0p-53) - 1.0;
    if (std::abs(u) < z.layer_ratio[layer]) {
      return u * z.layer_x[layer];
    }
    if (layer == 0) {
      // Tail beyond R, by Marsaglia's exponential rejection.
      double x = 0.0;
      double y = 0.0;
      do {
        x = std::log(1.0 - draw_uniform()) / ZigguratTables::kTailStart;
        y = std::log(1.0 - draw_uniform());
      } while (-2.0 * y < x * x);
      return u < 0.0 ? x - ZigguratTables::kTailStart : ZigguratTables::kTailStart - x;
    }
    // Wedge between layer edges.
    const double x = u * z.layer_x[layer];
    const double f0 = std::exp(-0.5 * (z.layer_x[layer] * z.layer_x[layer] - x * x));
    const double f1 = std::exp(-0.5 * (z.layer_x[layer + 1] * z.layer_x[layer + 1] - x * x));
    if (f1 + draw_uniform() * (f0 - f1) < 1.0) {
      return x;
    }
  }
}

void RandomStream::fill_normal(std::span<double> out) {
  for (double& v : out) {
    v = draw_normal();
  }
}

RandomStream stream_for(const StreamKey& key) { return RandomStream(key); }

std::uint64_t replication_seed(std::uint64_t experiment_seed, std::uint64_t replication) {
  if (replication == 0) {
    return experiment_seed;
  }
  return mix(mix(experiment_seed, 0x7265706cULL), replication);
}

}  // namespace macroflow
