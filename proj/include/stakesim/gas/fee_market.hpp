// stakesim: Proof-of-Stake consensus and cryptoeconomics simulator
// Copyright 2026 The stakesim Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stakesim/units.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace stakesim::gas
{
using PlatformId = std::uint32_t;

/// The incumbent platform. Competitors use ids >= 1.
inline constexpr PlatformId ethereum = 0;

/// Smallest base fee, 1 wei expressed in Gwei/gas.
inline constexpr double min_base_fee = 1e-9;

struct GasParams
{
    std::uint64_t block_gas_limit = 30'000'000;
    double max_change_rate = 0.125;
    double initial_base_fee = 1.0;  ///< Gwei/gas

    std::uint64_t target() const noexcept { return block_gas_limit / 2; }

    /// Throws std::invalid_argument on G == 0 or a rate outside (0, 1).
    void validate() const;
};

struct Transaction
{
    std::uint64_t id = 0;
    std::uint64_t user = 0;
    std::uint64_t gas = 0;
    double utility_ethereum_usd = 0.0;
    double max_priority_fee = 0.0;  ///< Gwei/gas
};

struct PlatformQuote
{
    PlatformId id = 1;
    double gas_price = 0.0;       ///< native token per gas
    double token_rate_usd = 0.0;  ///< USD per native token
    double lock_in_usd = 0.0;     ///< EC, may be negative
    double utility_usd = 0.0;     ///< the user's utility on this platform
};

/// Next base fee: linear in the deviation from the half-full target,
/// bounded by +/- max_change_rate, floored at 1 wei.
double base_fee_next(double prev_fee, std::uint64_t prev_gas_used, const GasParams& params);

/// (base_fee + priority) * gas Gwei converted to USD at theta.
double fee_usd(double base_fee, double priority_fee, std::uint64_t gas, double theta) noexcept;

/// Utility minus the fee is non-negative.
bool tx_rational(const Transaction& tx, double base_fee, double theta) noexcept;

/// Net utility on Ethereum versus each competitor (utility minus fee minus
/// lock-in). The incumbent wins ties, then the lower platform id. Returns
/// nullopt if the best platform fails the rationality test on its own fee.
std::optional<PlatformId> choose_platform(const Transaction& tx, double base_fee, double theta,
    std::span<const PlatformQuote> quotes, PlatformId incumbent = ethereum) noexcept;

struct BuiltBlock
{
    std::vector<std::uint64_t> included;  ///< transaction ids, in inclusion order
    std::uint64_t gas_used = 0;
    double priority_total = 0.0;  ///< Gwei
    double burned = 0.0;          ///< Gwei
};

/// Greedy by descending priority fee (ties by id) over rational transactions;
/// a transaction that does not fit is skipped and smaller ones may follow.
BuiltBlock build_block(
    std::span<const Transaction> mempool, double base_fee, double theta, const GasParams& params);
}  // namespace stakesim::gas
