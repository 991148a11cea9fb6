// stakesim: Proof-of-Stake consensus and cryptoeconomics simulator
// Copyright 2026 The stakesim Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stakesim/units.hpp>

#include <optional>
#include <string_view>
#include <vector>

namespace stakesim::consensus
{
enum class ValidatorStatus
{
    pending,
    active,
    exit_queued,
    exited,
    slashed,
};

enum class ExitCause
{
    none,
    voluntary,
    ejected,
    slashed,
};

std::string_view to_string(ValidatorStatus status) noexcept;
std::string_view to_string(ExitCause cause) noexcept;

/// Half-open epoch interval [begin, end).
struct EpochWindow
{
    Epoch begin = 0;
    Epoch end = 0;

    bool contains(Epoch e) const noexcept { return e >= begin && e < end; }
};

/// Multiplies the reward coefficients by `factor` inside `window`.
struct RewardHaircut
{
    EpochWindow window;
    double factor = 1.0;
};

/// How a validator behaves and what it earns per unit of stake.
struct BehaviorPolicy
{
    /// Per-epoch reward coefficient that depends only on the validator's own
    /// duties (attestations).
    double r_coeff = 0.0;

    /// Per-slot opportunity coefficient (proposals, sync committee).
    double w_coeff = 0.0;

    bool attests_honestly = true;

    /// Epoch windows during which the validator is offline.
    std::vector<EpochWindow> offline;

    std::vector<RewardHaircut> haircuts;

    bool online_at(Epoch e) const noexcept;
    double reward_factor_at(Epoch e) const noexcept;
    double r_at(Epoch e) const noexcept { return r_coeff * reward_factor_at(e); }
    double w_at(Epoch e) const noexcept { return w_coeff * reward_factor_at(e); }
};

struct ValidatorRecord
{
    ValidatorIndex id = 0;
    Gwei deposit = 0;
    std::int64_t effective_balance = 0;  ///< whole ETH
    ValidatorStatus status = ValidatorStatus::pending;
    BehaviorPolicy policy;
    std::uint64_t seed = 0;  ///< per-validator RANDAO reveal seed
    std::optional<Epoch> activation_epoch;
    std::optional<Epoch> slashed_at_epoch;
    std::optional<Epoch> exit_epoch;
    ExitCause exit_cause = ExitCause::none;

    /// Active validators carry duties and weight. A validator waiting in the
    /// exit queue keeps its duties until the churn limit lets it leave.
    bool is_active() const noexcept
    {
        return status == ValidatorStatus::active || status == ValidatorStatus::exit_queued;
    }
};

/// min(floor(deposit / 1 ETH), 32).
std::int64_t compute_effective_balance(Gwei deposit);

/// Moves an active validator whose deposit fell strictly below 16 ETH into
/// the exit queue. Returns true if the status changed.
bool eject_if_underfunded(ValidatorRecord& record);
}  // namespace stakesim::consensus
