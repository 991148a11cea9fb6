// stakesim: Proof-of-Stake consensus and cryptoeconomics simulator
// Copyright 2026 The stakesim Authors.
// SPDX-License-Identifier: Apache-2.0

#include <stakesim/consensus/block_tree.hpp>

#include <string>

namespace stakesim::consensus
{
BlockTree::BlockTree(Digest genesis)
{
    BlockNode node;
    node.digest = genesis;
    node.parent = genesis;
    nodes_.push_back(node);
    parent_idx_.push_back(0);
    index_.emplace(genesis.value, 0);
}

const BlockNode& BlockTree::add(BlockNode node)
{
    const auto parent = find(node.parent);
    if (!parent)
        throw std::invalid_argument{"unknown parent " + std::to_string(node.parent.value)};
    const auto& p = nodes_[*parent];
    if (node.slot <= p.slot)
        throw std::invalid_argument{"block slot must exceed parent slot"};
    if (index_.contains(node.digest.value))
        throw DigestCollision{"digest collision " + std::to_string(node.digest.value)};

    node.height = p.height + 1;
    index_.emplace(node.digest.value, nodes_.size());
    parent_idx_.push_back(*parent);
    nodes_.push_back(node);
    return nodes_.back();
}

std::size_t BlockTree::index_of(Digest d) const
{
    const auto it = index_.find(d.value);
    if (it == index_.end())
        throw std::out_of_range{"unknown block " + std::to_string(d.value)};
    return it->second;
}

std::optional<std::size_t> BlockTree::find(Digest d) const
{
    const auto it = index_.find(d.value);
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

bool BlockTree::is_ancestor(Digest ancestor, Digest descendant) const
{
    const auto a = index_of(ancestor);
    auto i = index_of(descendant);
    const auto ancestor_slot = nodes_[a].slot;
    while (true)
    {
        if (i == a)
            return true;
        if (i == 0 || nodes_[i].slot <= ancestor_slot)
            return false;
        i = parent_idx_[i];
    }
}

Digest BlockTree::ancestor_at_slot(Digest head, Slot slot) const
{
    auto i = index_of(head);
    while (i != 0 && nodes_[i].slot > slot)
        i = parent_idx_[i];
    return nodes_[i].digest;
}

void SlotHistory::record(Slot slot, std::optional<std::uint64_t> height)
{
    if (slot != heights_.size())
        throw std::invalid_argument{"slots must be recorded in order"};
    heights_.push_back(height);
}

std::optional<std::uint64_t> block_schedule(Epoch epoch, Slot slot_in_epoch, const SlotHistory& history)
{
    if (slot_in_epoch >= slots_per_epoch)
        throw std::out_of_range{"slot index outside epoch"};
    const Slot slot = first_slot_of(epoch) + slot_in_epoch;
    if (slot >= history.size())
        throw std::out_of_range{"slot " + std::to_string(slot) + " not simulated yet"};
    return history.heights()[slot];
}
}  // namespace stakesim::consensus
