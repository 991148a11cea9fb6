// stakesim: Proof-of-Stake consensus and cryptoeconomics simulator
// Copyright 2026 The stakesim Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stakesim/units.hpp>

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace stakesim::consensus
{
/// Synthetic 64-bit block identifier. Collision-freeness is enforced by the
/// tree, not assumed.
struct Digest
{
    std::uint64_t value = 0;

    friend auto operator<=>(const Digest&, const Digest&) = default;
};

inline constexpr ValidatorIndex no_proposer = ~ValidatorIndex{0};

struct BlockNode
{
    Digest digest;
    Digest parent;
    Slot slot = 0;
    std::uint64_t height = 0;
    ValidatorIndex proposer = no_proposer;
    std::uint64_t gas_used = 0;
    double base_fee_per_gas = 0.0;  ///< Gwei/gas
    Gwei priority_fee_total = 0;
    std::int64_t attestation_weight = 0;  ///< ETH, subtree weight from the last fork-choice run
};

class DigestCollision : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Append-only block tree. Insertion order is a topological order because a
/// parent must exist before its child.
class BlockTree
{
public:
    explicit BlockTree(Digest genesis);

    /// Validates parent existence, strictly increasing slot and digest
    /// uniqueness; the height is derived from the parent.
    const BlockNode& add(BlockNode node);

    bool contains(Digest d) const { return index_.contains(d.value); }
    const BlockNode& get(Digest d) const { return nodes_[index_of(d)]; }
    std::size_t index_of(Digest d) const;
    std::optional<std::size_t> find(Digest d) const;

    const BlockNode& genesis() const { return nodes_.front(); }
    const std::vector<BlockNode>& nodes() const { return nodes_; }
    std::size_t size() const { return nodes_.size(); }
    std::size_t parent_index(std::size_t i) const { return parent_idx_[i]; }

    /// True if `ancestor` is `descendant` or lies on its parent chain.
    bool is_ancestor(Digest ancestor, Digest descendant) const;

    /// The last block on `head`'s chain with slot <= `slot`.
    Digest ancestor_at_slot(Digest head, Slot slot) const;

    void set_attestation_weight(std::size_t i, std::int64_t w) { nodes_[i].attestation_weight = w; }

private:
    std::vector<BlockNode> nodes_;
    std::vector<std::size_t> parent_idx_;
    std::unordered_map<std::uint64_t, std::size_t> index_;
};

/// Records, per simulated slot, the height of the block produced or nothing.
class SlotHistory
{
public:
    void record(Slot slot, std::optional<std::uint64_t> height);

    /// Slots recorded so far.
    Slot size() const { return heights_.size(); }

    const std::vector<std::optional<std::uint64_t>>& heights() const { return heights_; }

private:
    std::vector<std::optional<std::uint64_t>> heights_;
};

/// Height of the block produced at (epoch, slot-in-epoch), or nullopt if the
/// slot was empty. Throws std::out_of_range for slots not yet simulated.
std::optional<std::uint64_t> block_schedule(Epoch epoch, Slot slot_in_epoch, const SlotHistory& history);
}  // namespace stakesim::consensus

template <>
struct std::hash<stakesim::consensus::Digest>
{
    std::size_t operator()(const stakesim::consensus::Digest& d) const noexcept { return d.value; }
};
