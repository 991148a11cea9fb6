// stakesim: Proof-of-Stake consensus and cryptoeconomics simulator
// Copyright 2026 The stakesim Authors.
// SPDX-License-Identifier: Apache-2.0

#include <stakesim/consensus/validator.hpp>

#include <algorithm>
#include <stdexcept>

namespace stakesim::consensus
{
std::string_view to_string(ValidatorStatus status) noexcept
{
    switch (status)
    {
    case ValidatorStatus::pending:
        return "pending";
    case ValidatorStatus::active:
        return "active";
    case ValidatorStatus::exit_queued:
        return "exit_queued";
    case ValidatorStatus::exited:
        return "exited";
    case ValidatorStatus::slashed:
        return "slashed";
    }
    return "unknown";
}

std::string_view to_string(ExitCause cause) noexcept
{
    switch (cause)
    {
    case ExitCause::none:
        return "none";
    case ExitCause::voluntary:
        return "voluntary";
    case ExitCause::ejected:
        return "ejected";
    case ExitCause::slashed:
        return "slashed";
    }
    return "unknown";
}

bool BehaviorPolicy::online_at(Epoch e) const noexcept
{
    return std::none_of(offline.begin(), offline.end(),
        [e](const EpochWindow& w) { return w.contains(e); });
}

double BehaviorPolicy::reward_factor_at(Epoch e) const noexcept
{
    double factor = 1.0;
    for (const auto& h : haircuts)
    {
        if (h.window.contains(e))
            factor *= h.factor;
    }
    return factor;
}

std::int64_t compute_effective_balance(Gwei deposit)
{
    if (deposit < 0)
        throw std::invalid_argument{"negative deposit"};
    return std::min(deposit / gwei_per_eth, max_effective_balance_eth);
}

bool eject_if_underfunded(ValidatorRecord& record)
{
    if (record.status != ValidatorStatus::active || record.deposit >= ejection_balance)
        return false;
    record.status = ValidatorStatus::exit_queued;
    record.exit_cause = ExitCause::ejected;
    return true;
}
}  // namespace stakesim::consensus
