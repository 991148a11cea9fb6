// stakesim: Proof-of-Stake consensus and cryptoeconomics simulator
// Copyright 2026 The stakesim Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

namespace stakesim
{
/// Ledger amounts. Signed so that deltas and penalties share the type.
using Gwei = std::int64_t;

using Epoch = std::uint64_t;
using Slot = std::uint64_t;
using ValidatorIndex = std::uint32_t;

inline constexpr Gwei gwei_per_eth = 1'000'000'000;
inline constexpr double gwei_per_eth_f = 1e9;

inline constexpr std::uint64_t slots_per_epoch = 32;
inline constexpr std::uint64_t seconds_per_slot = 12;
inline constexpr std::uint64_t seconds_per_epoch = slots_per_epoch * seconds_per_slot;

inline constexpr std::int64_t max_effective_balance_eth = 32;
inline constexpr Gwei max_effective_balance = max_effective_balance_eth * gwei_per_eth;
inline constexpr Gwei ejection_balance = 16 * gwei_per_eth;

/// 36 days of epochs.
inline constexpr Epoch slashing_grace_epochs = 36 * 24 * 3600 / seconds_per_epoch;
static_assert(slashing_grace_epochs == 8100);

inline constexpr std::uint64_t epochs_per_year = 365 * 24 * 3600 / seconds_per_epoch;
static_assert(epochs_per_year == 82125);

/// Consecutive non-final epochs before the inactivity leak engages.
inline constexpr std::uint64_t inactivity_leak_delay = 5;

inline constexpr std::uint32_t sync_committee_max_size = 512;
inline constexpr Epoch sync_committee_period = 256;

/// Split of the per-slot opportunity reward between the block proposer and
/// the sync committee.
inline constexpr double proposer_share = 0.8;
inline constexpr double sync_share = 0.2;

inline constexpr std::uint32_t default_churn_limit = 4;

inline constexpr Epoch epoch_of(Slot slot) noexcept
{
    return slot / slots_per_epoch;
}

inline constexpr Slot first_slot_of(Epoch epoch) noexcept
{
    return epoch * slots_per_epoch;
}

inline constexpr double gwei_to_eth(double gwei) noexcept
{
    return gwei / gwei_per_eth_f;
}
}  // namespace stakesim
