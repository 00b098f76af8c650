#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>

namespace macroflow {

/// What a random stream is used for. Each purpose gets its own family of
/// streams so that, e.g., reseeding liquidity never perturbs the surprises.
enum class StreamPurpose : std::uint8_t {
  shocks = 0,
  liquidity = 1,
  trader_returns = 2,
  trader_choice = 3,
  market = 4,  // per-event market premium draws
};

std::string_view to_string(StreamPurpose purpose);

struct StreamKey {
  std::uint64_t experiment_seed{0};
  StreamPurpose purpose{StreamPurpose::shocks};
  std::uint64_t trader_index{0};  // 0 when the purpose is not trader-scoped
  std::uint64_t event_index{0};

  friend bool operator==(const StreamKey&, const StreamKey&) = default;
};

/// Deterministic generator whose entire state is a hash of its StreamKey.
///
/// The key is folded through SplitMix64 into a xoshiro256** state, so no
/// stream ever depends on another stream having been advanced first.
/// Normal variates use a 128-layer ziggurat: one 64-bit word per accepted
/// draw in the common case, with rejection in the wedges and Marsaglia's
/// method in the tail. Output is bit-identical for a given key on a given
/// platform; the ziggurat tables and the rare wedge/tail paths go through
/// libm, so other platforms may differ in the last bits.
class RandomStream {
public:
  explicit RandomStream(const StreamKey& key);

  std::uint64_t next_u64();

  /// Uniform on [0, 1) with 53 bits of resolution.
  double draw_uniform();

  /// Standard normal.
  double draw_normal();

  void fill_normal(std::span<double> out);

private:
  std::array<std::uint64_t, 4> state_{};
};

RandomStream stream_for(const StreamKey& key);

/// Seed for replication `r` of an experiment. Replication 0 keeps the
/// experiment seed unchanged.
std::uint64_t replication_seed(std::uint64_t experiment_seed, std::uint64_t replication);

}  // namespace macroflow
