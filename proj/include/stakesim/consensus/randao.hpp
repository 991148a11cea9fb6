// stakesim: Proof-of-Stake consensus and cryptoeconomics simulator
// Copyright 2026 The stakesim Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stakesim/units.hpp>

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace stakesim::consensus
{
/// 256-bit value, little-endian words.
struct Bytes32
{
    std::array<std::uint64_t, 4> words{};

    static Bytes32 from_u64(std::uint64_t low) noexcept { return Bytes32{{low, 0, 0, 0}}; }

    friend Bytes32 operator^(const Bytes32& a, const Bytes32& b) noexcept
    {
        Bytes32 r;
        for (std::size_t i = 0; i < r.words.size(); ++i)
            r.words[i] = a.words[i] ^ b.words[i];
        return r;
    }

    friend bool operator==(const Bytes32&, const Bytes32&) = default;

    bool is_zero() const noexcept { return words == std::array<std::uint64_t, 4>{}; }

    /// 64 hex characters, most significant first.
    std::string hex() const;
};

Bytes32 mix_randao(const Bytes32& randao, const Bytes32& reveal) noexcept;

/// Deterministic stand-in for the proposer's signature digest over the epoch
/// number.
Bytes32 randao_reveal(Epoch epoch, std::uint64_t validator_seed) noexcept;

/// Uniform choice among `active` (sorted validator ids). Throws
/// std::invalid_argument("registry empty") when there is nobody to choose.
ValidatorIndex select_proposer(
    const Bytes32& randao, Epoch epoch, Slot slot, std::span<const ValidatorIndex> active);

using CommitteeAssignment = std::array<std::vector<ValidatorIndex>, slots_per_epoch>;

/// Seeded permutation of `active` split into 32 contiguous parts; the
/// remainder goes to the lowest slot indices.
CommitteeAssignment assign_committees(
    const Bytes32& randao, Epoch epoch, std::span<const ValidatorIndex> active);

/// min(512, n) members drawn without replacement.
std::vector<ValidatorIndex> select_sync_committee(
    const Bytes32& randao, Epoch period_start, std::span<const ValidatorIndex> active);
}  // namespace stakesim::consensus
