// stakesim: Proof-of-Stake consensus and cryptoeconomics simulator
// Copyright 2026 The stakesim Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stakesim/consensus/block_tree.hpp>

#include <optional>
#include <span>
#include <vector>

namespace stakesim::consensus
{
struct LatestMessage
{
    Digest block;
    Slot slot = 0;
};

/// Last head vote per validator. Older or equal-slot votes are ignored, so
/// each validator contributes exactly one message.
class LatestMessageStore
{
public:
    /// Returns true if the stored message changed.
    bool update(ValidatorIndex validator, Digest block, Slot slot);

    const std::optional<LatestMessage>& get(ValidatorIndex validator) const;
    std::span<const std::optional<LatestMessage>> messages() const { return messages_; }

private:
    std::vector<std::optional<LatestMessage>> messages_;
};

/// LMD-GHOST. From `justified_root`, repeatedly step to the child whose
/// subtree carries the largest total weight of latest messages, weighting each
/// validator by `weights[validator]` (ETH). Ties go to the smaller digest.
/// Messages for blocks outside the justified subtree are ignored.
///
/// When `record_weights` is set, each visited node's attestation_weight is
/// overwritten with its subtree weight.
Digest fork_choice_head(const BlockTree& tree, const LatestMessageStore& store,
    std::span<const std::int64_t> weights, Digest justified_root);

Digest fork_choice_head(BlockTree& tree, const LatestMessageStore& store,
    std::span<const std::int64_t> weights, Digest justified_root, bool record_weights);
}  // namespace stakesim::consensus
