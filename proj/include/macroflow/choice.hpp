#pragma once

#include <array>
#include <cstdint>
#include <string_view>

#include "macroflow/rng.hpp"

namespace macroflow {

enum class OrderSize : std::uint8_t { small = 0, medium = 1, large = 2 };

inline constexpr std::size_t kOrderSizeCount = 3;
inline constexpr std::array<OrderSize, kOrderSizeCount> kAllOrderSizes{
    OrderSize::small, OrderSize::medium, OrderSize::large};

std::string_view to_string(OrderSize size);
OrderSize parse_order_size(std::string_view text);

using SizeVector = std::array<double, kOrderSizeCount>;

/// Per-size coefficients of the order-size utility, indexed Small, Medium,
/// Large. The defaults make large orders increasingly attractive as
/// liquidity and surprise magnitude rise and less attractive with risk
/// aversion.
struct ChoiceCoefficients {
  SizeVector c0{0.5, 0.0, -0.5};
  SizeVector c_ra{0.4, 0.0, -0.4};
  SizeVector c_sur{0.0, 0.5, 1.0};
  SizeVector c_liq{0.0, 0.5, 1.5};
  SizeVector notional_multiplier{0.5, 1.0, 2.0};

  void validate() const;
};

struct OrderDecision {
  OrderSize chosen{OrderSize::small};
  SizeVector probabilities{};
  SizeVector utilities{};
};

SizeVector order_utilities(const ChoiceCoefficients& coeffs, double risk_aversion,
                           double abs_surprise, double liquidity);

/// Max-shifted softmax; finite for any finite input.
SizeVector softmax(const SizeVector& utilities);

/// Inverse-CDF sampling with a single uniform draw over the bins
/// [0, p_small), [p_small, p_small + p_medium), [.., 1).
OrderSize sample_order(const SizeVector& probabilities, double uniform);
OrderSize sample_order(const SizeVector& probabilities, RandomStream& stream);

OrderDecision decide_order(const ChoiceCoefficients& coeffs, double risk_aversion,
                           double abs_surprise, double liquidity, RandomStream& stream);

/// Index of the largest entry; the first one wins an exact tie.
std::size_t modal_index(const SizeVector& values);

}  // namespace macroflow
