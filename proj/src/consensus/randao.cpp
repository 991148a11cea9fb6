// stakesim: Proof-of-Stake consensus and cryptoeconomics simulator
// Copyright 2026 The stakesim Authors.
// SPDX-License-Identifier: Apache-2.0

#include <stakesim/consensus/randao.hpp>
#include <stakesim/rng.hpp>

#include <algorithm>
#include <stdexcept>

namespace stakesim::consensus
{
namespace
{
std::uint64_t fold(const Bytes32& v) noexcept
{
    return mix64(v.words[0], v.words[1], v.words[2], v.words[3]);
}

constexpr std::uint64_t proposer_domain = 0x70726f706f736572ULL;  // "proposer"
constexpr std::uint64_t committee_domain = 0x636f6d6d69747465ULL;
constexpr std::uint64_t sync_domain = 0x73796e63636f6d6dULL;
}  // namespace

std::string Bytes32::hex() const
{
    static constexpr char digits[] = "0123456789abcdef";
    std::string out(64, '0');
    std::size_t pos = 0;
    for (auto it = words.rbegin(); it != words.rend(); ++it)
    {
        for (int shift = 60; shift >= 0; shift -= 4)
            out[pos++] = digits[(*it >> shift) & 0xf];
    }
    return out;
}

Bytes32 mix_randao(const Bytes32& randao, const Bytes32& reveal) noexcept
{
    return randao ^ reveal;
}

Bytes32 randao_reveal(Epoch epoch, std::uint64_t validator_seed) noexcept
{
    Bytes32 r;
    for (std::uint64_t i = 0; i < r.words.size(); ++i)
        r.words[i] = mix64(validator_seed, epoch, i);
    return r;
}

ValidatorIndex select_proposer(
    const Bytes32& randao, Epoch epoch, Slot slot, std::span<const ValidatorIndex> active)
{
    if (active.empty())
        throw std::invalid_argument{"registry empty"};
    Rng rng{mix64(fold(randao), proposer_domain, epoch, slot)};
    return active[rng.below(active.size())];
}

CommitteeAssignment assign_committees(
    const Bytes32& randao, Epoch epoch, std::span<const ValidatorIndex> active)
{
    std::vector<ValidatorIndex> order(active.begin(), active.end());
    Rng rng{mix64(fold(randao), committee_domain, epoch)};
    rng.shuffle(std::span{order});

    CommitteeAssignment committees;
    const std::size_t base = order.size() / slots_per_epoch;
    const std::size_t extra = order.size() % slots_per_epoch;
    auto it = order.begin();
    for (std::size_t s = 0; s < slots_per_epoch; ++s)
    {
        const auto size = static_cast<std::ptrdiff_t>(base + (s < extra ? 1 : 0));
        committees[s].assign(it, it + size);
        it += size;
    }
    return committees;
}

std::vector<ValidatorIndex> select_sync_committee(
    const Bytes32& randao, Epoch period_start, std::span<const ValidatorIndex> active)
{
    std::vector<ValidatorIndex> order(active.begin(), active.end());
    Rng rng{mix64(fold(randao), sync_domain, period_start)};
    rng.shuffle(std::span{order});
    order.resize(std::min<std::size_t>(order.size(), sync_committee_max_size));
    std::sort(order.begin(), order.end());
    return order;
}
}  // namespace stakesim::consensus
