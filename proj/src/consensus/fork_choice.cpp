// stakesim: Proof-of-Stake consensus and cryptoeconomics simulator
// Copyright 2026 The stakesim Authors.
// SPDX-License-Identifier: Apache-2.0

#include <stakesim/consensus/fork_choice.hpp>

namespace stakesim::consensus
{
namespace
{
const std::optional<LatestMessage> no_message;

struct SubtreeWeights
{
    std::size_t root = 0;
    std::vector<std::int64_t> weight;  // indexed by (node index - root)
    std::vector<char> inside;
};

SubtreeWeights accumulate(const BlockTree& tree, const LatestMessageStore& store,
    std::span<const std::int64_t> weights, Digest justified_root)
{
    SubtreeWeights sw;
    sw.root = tree.index_of(justified_root);
    const std::size_t count = tree.size() - sw.root;
    sw.weight.assign(count, 0);
    sw.inside.assign(count, 0);
    sw.inside[0] = 1;
    for (std::size_t i = sw.root + 1; i < tree.size(); ++i)
    {
        const auto p = tree.parent_index(i);
        sw.inside[i - sw.root] = p >= sw.root && sw.inside[p - sw.root];
    }

    const auto messages = store.messages();
    for (std::size_t v = 0; v < messages.size(); ++v)
    {
        if (!messages[v] || v >= weights.size())
            continue;
        const auto idx = tree.find(messages[v]->block);
        if (!idx || *idx < sw.root || !sw.inside[*idx - sw.root])
            continue;
        sw.weight[*idx - sw.root] += weights[v];
    }

    // Children come after parents in insertion order.
    for (std::size_t i = tree.size() - 1; i > sw.root; --i)
    {
        if (sw.inside[i - sw.root])
            sw.weight[tree.parent_index(i) - sw.root] += sw.weight[i - sw.root];
    }
    return sw;
}

Digest descend(const BlockTree& tree, const SubtreeWeights& sw)
{
    const std::size_t count = sw.weight.size();
    // best child per node, found in one pass.
    std::vector<std::size_t> best(count, 0);
    for (std::size_t i = sw.root + 1; i < tree.size(); ++i)
    {
        if (!sw.inside[i - sw.root])
            continue;
        const auto p = tree.parent_index(i) - sw.root;
        auto& b = best[p];
        if (b == 0)
        {
            b = i;
            continue;
        }
        const auto wi = sw.weight[i - sw.root];
        const auto wb = sw.weight[b - sw.root];
        if (wi > wb || (wi == wb && tree.nodes()[i].digest < tree.nodes()[b].digest))
            b = i;
    }

    std::size_t node = sw.root;
    while (best[node - sw.root] != 0)
        node = best[node - sw.root];
    return tree.nodes()[node].digest;
}
}  // namespace

bool LatestMessageStore::update(ValidatorIndex validator, Digest block, Slot slot)
{
    if (validator >= messages_.size())
        messages_.resize(validator + 1);
    auto& m = messages_[validator];
    if (m && m->slot >= slot)
        return false;
    m = LatestMessage{block, slot};
    return true;
}

const std::optional<LatestMessage>& LatestMessageStore::get(ValidatorIndex validator) const
{
    return validator < messages_.size() ? messages_[validator] : no_message;
}

Digest fork_choice_head(const BlockTree& tree, const LatestMessageStore& store,
    std::span<const std::int64_t> weights, Digest justified_root)
{
    return descend(tree, accumulate(tree, store, weights, justified_root));
}

Digest fork_choice_head(BlockTree& tree, const LatestMessageStore& store,
    std::span<const std::int64_t> weights, Digest justified_root, bool record_weights)
{
    const auto sw = accumulate(tree, store, weights, justified_root);
    if (record_weights)
    {
        for (std::size_t i = 0; i < sw.weight.size(); ++i)
        {
            if (sw.inside[i])
                tree.set_attestation_weight(sw.root + i, sw.weight[i]);
        }
    }
    return descend(tree, sw);
}
}  // namespace stakesim::consensus
