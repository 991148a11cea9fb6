// stakesim: Proof-of-Stake consensus and cryptoeconomics simulator
// Copyright 2026 The stakesim Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stakesim/consensus/block_tree.hpp>
#include <stakesim/consensus/fork_choice.hpp>
#include <stakesim/consensus/randao.hpp>
#include <stakesim/consensus/validator.hpp>

#include <deque>
#include <optional>
#include <span>
#include <vector>

namespace stakesim::consensus
{
struct CheckpointState
{
    Epoch epoch = 0;
    Digest block;
    bool justified = false;
    bool finalized = false;
    std::int64_t attesting_weight = 0;  ///< ETH
};

struct AttestationSummary
{
    Epoch epoch = 0;
    Slot slot = 0;
    ValidatorIndex validator = 0;
    Digest source;
    Epoch source_epoch = 0;
    Digest target;
    Epoch target_epoch = 0;
    Digest head;
    std::uint32_t inclusion_delay = 1;
};

/// Per-epoch accounting. All amounts are Gwei.
///
/// Conservation: issued - burned - confiscated == holdings_delta + withdrawn,
/// where holdings are registry deposits plus the fee payers' float.
struct EpochLedger
{
    Epoch epoch = 0;
    Gwei issued = 0;
    Gwei burned = 0;
    Gwei confiscated = 0;  ///< slashing plus attestation/sync/inactivity penalties
    Gwei priority_transferred = 0;
    Gwei withdrawn = 0;
    Gwei supply_delta = 0;  ///< issued - burned
    Gwei holdings_delta = 0;
    bool justified = false;
    bool finalized = false;
    bool supermajority = false;
    std::int64_t attesting_weight = 0;  ///< ETH, correct source/target votes
    std::int64_t epoch_total_effective = 0;  ///< ETH, denominator of the 2/3 test
    std::uint64_t epochs_since_finality = 0;
    bool leak_active = false;
    std::size_t n_active = 0;
    std::int64_t total_effective = 0;  ///< ETH, after processing
    std::vector<ValidatorIndex> ejected;
    std::vector<ValidatorIndex> exited;
    std::vector<ValidatorIndex> activated;
};

struct GenesisValidator
{
    Gwei deposit = 32 * gwei_per_eth;
    BehaviorPolicy policy;
};

struct ChainParams
{
    std::uint64_t seed = 0;
    std::uint32_t churn_limit = default_churn_limit;
};

/// What gas_market produced for a block; the state only stores outcomes.
struct BlockContents
{
    std::uint64_t gas_used = 0;
    double base_fee_per_gas = 0.0;
    Gwei priority_fee_total = 0;
    Gwei burned = 0;
};

struct QueueAdvance
{
    std::vector<ValidatorIndex> exited;
    std::vector<ValidatorIndex> activated;
};

/// Deterministic PoS state machine. Driven slot by slot:
///
///     begin_epoch();
///     repeat 32x: propose_block(...) or skip_slot(); attest_slot(); end_slot();
///     process_epoch(attestations);
///
/// Slot 0 holds genesis; skip_slot() there records it.
class BeaconState
{
public:
    BeaconState(ChainParams params, std::span<const GenesisValidator> genesis, Gwei fee_payer_float = 0);

    Slot current_slot() const { return slot_; }
    Epoch current_epoch() const { return epoch_of(slot_); }
    const Bytes32& randao() const { return randao_; }
    const ChainParams& params() const { return params_; }

    const std::vector<ValidatorRecord>& registry() const { return registry_; }
    const ValidatorRecord& validator(ValidatorIndex id) const { return registry_.at(id); }
    BehaviorPolicy& policy(ValidatorIndex id) { return registry_.at(id).policy; }

    const BlockTree& block_tree() const { return tree_; }
    const SlotHistory& slot_history() const { return history_; }
    const LatestMessageStore& latest_messages() const { return messages_; }
    const std::vector<CheckpointState>& checkpoints() const { return checkpoints_; }
    const CheckpointState& last_justified() const { return checkpoints_[justified_epoch_]; }
    const CheckpointState& last_finalized() const { return checkpoints_[finalized_epoch_]; }
    std::uint64_t epochs_since_finality() const { return epochs_since_finality_; }
    const std::deque<ValidatorIndex>& activation_queue() const { return activation_queue_; }
    const std::deque<ValidatorIndex>& exit_queue() const { return exit_queue_; }
    Digest head() const { return head_; }

    /// Epoch at which the block with tree index `i` became final.
    std::optional<Epoch> finalized_at(std::size_t block_index) const;

    std::vector<ValidatorIndex> active_indices() const;
    std::size_t active_count() const;
    std::int64_t total_active_effective() const { return total_active_effective_; }
    std::int64_t recompute_total_active_effective() const;
    Gwei total_deposits() const;
    Gwei fee_payer_float() const { return fee_payer_float_; }
    Gwei withdrawn_total() const { return withdrawn_total_; }

    // Epoch-scoped views, valid after begin_epoch().
    const CommitteeAssignment& committees() const { return committees_; }
    const std::vector<ValidatorIndex>& sync_committee() const { return sync_committee_; }
    std::span<const ValidatorIndex> epoch_active() const { return epoch_active_; }
    std::int64_t epoch_total_effective() const { return epoch_total_; }
    std::span<const std::int64_t> epoch_weights() const { return epoch_weights_; }

    void begin_epoch();

    ValidatorIndex slot_proposer() const;
    /// False when no validator is active.
    bool slot_proposer_online() const;
    const BlockNode& propose_block(const BlockContents& contents);
    void skip_slot();

    /// Attestations of the current slot's committee. Offline members produce
    /// nothing; dishonest members vote for a conflicting target.
    std::vector<AttestationSummary> attest_slot();
    void end_slot();

    EpochLedger process_epoch(std::span<const AttestationSummary> attestations);

    /// Confiscates 1/32 of the effective balance times max(1, concurrent_slashings)
    /// (capped at the deposit) and forces
    /// an exit after the grace period. Throws std::logic_error unless the
    /// validator is active.
    Gwei slash(ValidatorIndex id, std::uint32_t concurrent_slashings);

    /// At most churn_limit exits and churn_limit activations, FIFO.
    QueueAdvance advance_exit_queue(std::uint32_t churn_limit);

    /// Fresh id, pending, in the activation queue. Funded from the float.
    ValidatorIndex deposit_validator(Gwei deposit, BehaviorPolicy policy);

    /// Voluntary exit. Returns false if the validator is not plainly active.
    bool request_exit(ValidatorIndex id);

private:
    Digest checkpoint_block_for(Epoch e) const;
    void mark_finalized(Digest block, Epoch at);
    void refresh_head();
    Gwei holdings() const { return total_deposits() + fee_payer_float_; }

    ChainParams params_;
    Slot slot_ = 0;
    Bytes32 randao_;
    std::vector<ValidatorRecord> registry_;
    BlockTree tree_;
    SlotHistory history_;
    LatestMessageStore messages_;
    std::vector<CheckpointState> checkpoints_;
    Epoch justified_epoch_ = 0;
    Epoch finalized_epoch_ = 0;
    std::uint64_t epochs_since_finality_ = 0;
    std::deque<ValidatorIndex> activation_queue_;
    std::deque<ValidatorIndex> exit_queue_;
    Digest head_;
    std::vector<std::optional<Epoch>> finalized_at_;
    std::int64_t total_active_effective_ = 0;
    Gwei fee_payer_float_ = 0;
    Gwei withdrawn_total_ = 0;

    // Epoch snapshot.
    Bytes32 epoch_randao_;
    CommitteeAssignment committees_;
    std::vector<ValidatorIndex> sync_committee_;
    std::vector<ValidatorIndex> epoch_active_;
    std::vector<std::int64_t> epoch_weights_;  // by validator id, 0 if not active
    std::int64_t epoch_total_ = 0;
    double epoch_sqrt_total_ = 0.0;
    bool epoch_begun_ = false;

    // Accumulated within the current accounting period.
    std::vector<double> pending_rewards_;
    std::vector<double> pending_penalties_;
    std::vector<Gwei> pending_priority_;
    Gwei pending_burned_ = 0;
    Gwei pending_confiscated_ = 0;
    Gwei holdings_at_period_start_ = 0;
    Gwei withdrawn_at_period_start_ = 0;
};
}  // namespace stakesim::consensus
