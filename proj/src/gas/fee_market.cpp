// stakesim: Proof-of-Stake consensus and cryptoeconomics simulator
// Copyright 2026 The stakesim Authors.
// SPDX-License-Identifier: Apache-2.0

#include <stakesim/gas/fee_market.hpp>

#include <algorithm>
#include <stdexcept>

namespace stakesim::gas
{
void GasParams::validate() const
{
    if (block_gas_limit == 0)
        throw std::invalid_argument{"block_gas_limit must be positive"};
    if (!(max_change_rate > 0.0 && max_change_rate < 1.0))
        throw std::invalid_argument{"max_change_rate must lie in (0, 1)"};
    if (!(initial_base_fee > 0.0))
        throw std::invalid_argument{"initial_base_fee must be positive"};
}

double base_fee_next(double prev_fee, std::uint64_t prev_gas_used, const GasParams& params)
{
    if (prev_gas_used > params.block_gas_limit)
        throw std::invalid_argument{"gas used exceeds the block gas limit"};
    const auto target = static_cast<double>(params.block_gas_limit) / 2.0;
    const double deviation = (static_cast<double>(prev_gas_used) - target) / target;
    return std::max(prev_fee * (1.0 + params.max_change_rate * deviation), min_base_fee);
}

double fee_usd(double base_fee, double priority_fee, std::uint64_t gas, double theta) noexcept
{
    return (base_fee + priority_fee) * static_cast<double>(gas) * theta / gwei_per_eth_f;
}

bool tx_rational(const Transaction& tx, double base_fee, double theta) noexcept
{
    return tx.utility_ethereum_usd - fee_usd(base_fee, tx.max_priority_fee, tx.gas, theta) >= 0.0;
}

std::optional<PlatformId> choose_platform(const Transaction& tx, double base_fee, double theta,
    std::span<const PlatformQuote> quotes, PlatformId incumbent) noexcept
{
    const double eth_fee = fee_usd(base_fee, tx.max_priority_fee, tx.gas, theta);
    PlatformId best_id = ethereum;
    double best_score = tx.utility_ethereum_usd - eth_fee;
    double best_own = best_score;
    const auto prefer = [&](PlatformId id, double score) {
        if (score != best_score)
            return score > best_score;
        if (id == incumbent || best_id == incumbent)
            return id == incumbent;
        return id < best_id;
    };
    for (const auto& q : quotes)
    {
        const double own = q.utility_usd - q.gas_price * static_cast<double>(tx.gas) * q.token_rate_usd / gwei_per_eth_f;
        const double score = own - q.lock_in_usd;
        if (prefer(q.id, score))
        {
            best_id = q.id;
            best_score = score;
            best_own = own;
        }
    }
    return best_own >= 0.0 ? std::optional<PlatformId>{best_id} : std::nullopt;
}

BuiltBlock build_block(
    std::span<const Transaction> mempool, double base_fee, double theta, const GasParams& params)
{
    std::vector<const Transaction*> candidates;
    candidates.reserve(mempool.size());
    for (const auto& tx : mempool)
    {
        if (tx.gas > 0 && tx_rational(tx, base_fee, theta))
            candidates.push_back(&tx);
    }
    std::sort(candidates.begin(), candidates.end(), [](const Transaction* a, const Transaction* b) {
        if (a->max_priority_fee != b->max_priority_fee)
            return a->max_priority_fee > b->max_priority_fee;
        return a->id < b->id;
    });

    BuiltBlock block;
    for (const auto* tx : candidates)
    {
        if (tx->gas > params.block_gas_limit - block.gas_used)
            continue;
        block.included.push_back(tx->id);
        block.gas_used += tx->gas;
        block.priority_total += tx->max_priority_fee * static_cast<double>(tx->gas);
    }
    block.burned = base_fee * static_cast<double>(block.gas_used);
    return block;
}
}  // namespace stakesim::gas
