// stakesim: Proof-of-Stake consensus and cryptoeconomics simulator
// Copyright 2026 The stakesim Authors.
// SPDX-License-Identifier: Apache-2.0

#include <stakesim/consensus/apportion.hpp>
#include <stakesim/consensus/beacon_state.hpp>
#include <stakesim/rng.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace stakesim::consensus
{
namespace
{
constexpr std::uint64_t genesis_domain = 0x67656e65736973ULL;
constexpr std::uint64_t validator_domain = 0x76616c696461746fULL;
constexpr std::uint64_t block_domain = 0x626c6f636bULL;
constexpr std::uint64_t bogus_domain = 0x626f677573ULL;
}  // namespace

BeaconState::BeaconState(ChainParams params, std::span<const GenesisValidator> genesis, Gwei fee_payer_float)
  : params_{params}, tree_{Digest{mix64(params.seed, genesis_domain)}}, fee_payer_float_{fee_payer_float}
{
    for (std::uint64_t i = 0; i < 4; ++i)
        randao_.words[i] = mix64(params.seed, genesis_domain, i);

    registry_.reserve(genesis.size());
    for (const auto& g : genesis)
    {
        ValidatorRecord r;
        r.id = static_cast<ValidatorIndex>(registry_.size());
        r.deposit = g.deposit;
        r.effective_balance = compute_effective_balance(g.deposit);
        r.status = ValidatorStatus::active;
        r.policy = g.policy;
        r.seed = mix64(params.seed, validator_domain, r.id);
        r.activation_epoch = 0;
        registry_.push_back(std::move(r));
    }

    head_ = tree_.genesis().digest;
    checkpoints_.push_back(CheckpointState{0, head_, true, true, 0});
    finalized_at_.push_back(Epoch{0});
    total_active_effective_ = recompute_total_active_effective();
    holdings_at_period_start_ = holdings();
}

std::optional<Epoch> BeaconState::finalized_at(std::size_t block_index) const
{
    return finalized_at_.at(block_index);
}

std::vector<ValidatorIndex> BeaconState::active_indices() const
{
    std::vector<ValidatorIndex> out;
    for (const auto& r : registry_)
    {
        if (r.is_active())
            out.push_back(r.id);
    }
    return out;
}

std::size_t BeaconState::active_count() const
{
    return static_cast<std::size_t>(
        std::count_if(registry_.begin(), registry_.end(), [](const auto& r) { return r.is_active(); }));
}

std::int64_t BeaconState::recompute_total_active_effective() const
{
    std::int64_t total = 0;
    for (const auto& r : registry_)
    {
        if (r.is_active())
            total += r.effective_balance;
    }
    return total;
}

Gwei BeaconState::total_deposits() const
{
    Gwei total = 0;
    for (const auto& r : registry_)
        total += r.deposit;
    return total;
}

void BeaconState::begin_epoch()
{
    if (slot_ % slots_per_epoch != 0)
        throw std::logic_error{"begin_epoch off an epoch boundary"};
    if (epoch_begun_)
        throw std::logic_error{"epoch already begun"};
    const Epoch e = current_epoch();

    epoch_randao_ = randao_;
    epoch_active_ = active_indices();
    epoch_weights_.assign(registry_.size(), 0);
    epoch_total_ = 0;
    for (const auto id : epoch_active_)
    {
        epoch_weights_[id] = registry_[id].effective_balance;
        epoch_total_ += registry_[id].effective_balance;
    }
    epoch_sqrt_total_ = std::sqrt(static_cast<double>(epoch_total_));
    committees_ = assign_committees(epoch_randao_, e, epoch_active_);
    if (e % sync_committee_period == 0 || sync_committee_.empty())
        sync_committee_ = select_sync_committee(epoch_randao_, e, epoch_active_);

    pending_rewards_.resize(registry_.size(), 0.0);
    pending_penalties_.resize(registry_.size(), 0.0);
    pending_priority_.resize(registry_.size(), 0);
    epoch_begun_ = true;
}

ValidatorIndex BeaconState::slot_proposer() const
{
    if (!epoch_begun_)
        throw std::logic_error{"slot_proposer before begin_epoch"};
    return select_proposer(epoch_randao_, current_epoch(), slot_, epoch_active_);
}

bool BeaconState::slot_proposer_online() const
{
    // With nobody active every slot is empty.
    if (epoch_begun_ && epoch_active_.empty())
        return false;
    const auto& r = registry_[slot_proposer()];
    return r.is_active() && r.policy.online_at(current_epoch());
}

const BlockNode& BeaconState::propose_block(const BlockContents& contents)
{
    if (!epoch_begun_)
        throw std::logic_error{"propose_block before begin_epoch"};
    if (slot_ == 0)
        throw std::logic_error{"slot 0 holds genesis"};
    if (history_.size() != slot_)
        throw std::logic_error{"slot already recorded"};

    const Epoch e = current_epoch();
    const auto proposer = slot_proposer();
    auto& rec = registry_[proposer];
    if (!rec.is_active())
        throw std::logic_error{"proposer is not active"};

    BlockNode node;
    node.digest = Digest{mix64(params_.seed, block_domain, head_.value, slot_, proposer)};
    node.parent = head_;
    node.slot = slot_;
    node.proposer = proposer;
    node.gas_used = contents.gas_used;
    node.base_fee_per_gas = contents.base_fee_per_gas;
    node.priority_fee_total = contents.priority_fee_total;
    const auto& added = tree_.add(node);
    history_.record(slot_, added.height);
    finalized_at_.push_back(std::nullopt);
    randao_ = mix_randao(randao_, randao_reveal(e, rec.seed));
    head_ = added.digest;

    // Per-slot opportunity rewards: proposer and sync committee.
    if (epoch_sqrt_total_ > 0.0)
    {
        const auto n = static_cast<double>(epoch_active_.size());
        pending_rewards_[proposer] += proposer_share * n * rec.policy.w_at(e) *
                                      static_cast<double>(epoch_weights_[proposer]) / epoch_sqrt_total_;

        std::size_t members = 0;
        for (const auto id : sync_committee_)
            members += epoch_weights_[id] > 0 ? 1 : 0;
        for (const auto id : sync_committee_)
        {
            if (epoch_weights_[id] == 0)
                continue;
            const auto& m = registry_[id];
            const double amount = sync_share * n / static_cast<double>(members) * m.policy.w_at(e) *
                                  static_cast<double>(epoch_weights_[id]) / epoch_sqrt_total_;
            if (m.is_active() && m.policy.online_at(e))
                pending_rewards_[id] += amount;
            else if (m.status != ValidatorStatus::slashed)
                pending_penalties_[id] += amount;
        }
    }
    pending_priority_[proposer] += contents.priority_fee_total;
    pending_burned_ += contents.burned;
    return added;
}

void BeaconState::skip_slot()
{
    if (history_.size() != slot_)
        throw std::logic_error{"slot already recorded"};
    if (slot_ == 0)
        history_.record(0, std::uint64_t{0});
    else
        history_.record(slot_, std::nullopt);
}

Digest BeaconState::checkpoint_block_for(Epoch e) const
{
    return tree_.ancestor_at_slot(head_, first_slot_of(e));
}

std::vector<AttestationSummary> BeaconState::attest_slot()
{
    if (!epoch_begun_)
        throw std::logic_error{"attest_slot before begin_epoch"};
    if (history_.size() != slot_ + 1)
        throw std::logic_error{"attest_slot before the slot's block decision"};

    const Epoch e = current_epoch();
    if (checkpoints_.size() == e)
        checkpoints_.push_back(CheckpointState{e, checkpoint_block_for(e), false, false, 0});

    const auto& source = last_justified();
    const auto& target = checkpoints_[e];
    std::vector<AttestationSummary> out;
    for (const auto v : committees_[slot_ % slots_per_epoch])
    {
        const auto& r = registry_[v];
        if (!r.is_active() || !r.policy.online_at(e))
            continue;
        AttestationSummary a;
        a.epoch = e;
        a.slot = slot_;
        a.validator = v;
        a.source = source.block;
        a.source_epoch = source.epoch;
        a.target_epoch = e;
        if (r.policy.attests_honestly)
        {
            a.target = target.block;
            a.head = head_;
        }
        else
        {
            a.target = Digest{mix64(params_.seed, bogus_domain, e, v)};
            a.head = tree_.nodes()[tree_.parent_index(tree_.index_of(head_))].digest;
        }
        messages_.update(v, a.head, slot_);
        out.push_back(a);
    }
    return out;
}

void BeaconState::end_slot()
{
    if (history_.size() != slot_ + 1)
        throw std::logic_error{"end_slot before the slot's block decision"};
    refresh_head();
    ++slot_;
}

void BeaconState::refresh_head()
{
    head_ = fork_choice_head(tree_, messages_, epoch_weights_, last_justified().block, true);
}

void BeaconState::mark_finalized(Digest block, Epoch at)
{
    auto i = tree_.index_of(block);
    while (!finalized_at_[i])
    {
        finalized_at_[i] = at;
        i = tree_.parent_index(i);
    }
}

EpochLedger BeaconState::process_epoch(std::span<const AttestationSummary> attestations)
{
    if (!epoch_begun_ || slot_ == 0 || slot_ % slots_per_epoch != 0)
        throw std::logic_error{"process_epoch requires all 32 slots of the epoch"};
    const Epoch e = epoch_of(slot_ - 1);
    if (checkpoints_.size() != e + 1)
        throw std::logic_error{"missing checkpoint for epoch"};

    EpochLedger ledger;
    ledger.epoch = e;
    ledger.epoch_total_effective = epoch_total_;

    const auto justified_source = last_justified();
    auto& target = checkpoints_[e];

    std::vector<char> is_member(registry_.size(), 0);
    for (const auto id : epoch_active_)
        is_member[id] = 1;
    std::vector<char> voted(registry_.size(), 0);
    std::vector<char> correct(registry_.size(), 0);
    std::int64_t weight = 0;
    for (const auto& a : attestations)
    {
        if (a.epoch != e || a.inclusion_delay < 1)
            throw std::invalid_argument{"malformed attestation"};
        if (!(a.source_epoch < a.target_epoch || (e == 0 && a.target_epoch == 0)))
            throw std::invalid_argument{"attestation source must precede target"};
        if (a.validator >= registry_.size() || !is_member[a.validator] || voted[a.validator])
            continue;
        voted[a.validator] = 1;
        if (a.source == justified_source.block && a.target == target.block)
        {
            correct[a.validator] = 1;
            weight += epoch_weights_[a.validator];
        }
    }
    target.attesting_weight = weight;
    const bool supermajority = epoch_total_ > 0 && 3 * weight >= 2 * epoch_total_;
    ledger.attesting_weight = weight;
    ledger.supermajority = supermajority;

    bool finalized_now = false;
    if (e == 0)
    {
        finalized_now = true;
    }
    else if (supermajority)
    {
        target.justified = true;
        if (justified_epoch_ == e - 1)
        {
            checkpoints_[e - 1].finalized = true;
            finalized_epoch_ = e - 1;
            mark_finalized(checkpoints_[e - 1].block, e);
            finalized_now = true;
        }
        justified_epoch_ = e;
    }
    epochs_since_finality_ = finalized_now ? 0 : epochs_since_finality_ + 1;
    const bool leak = epochs_since_finality_ >= inactivity_leak_delay;
    const double multiplier =
        leak ? static_cast<double>(epochs_since_finality_ - (inactivity_leak_delay - 1)) : 1.0;

    ledger.justified = target.justified;
    ledger.finalized = finalized_now;
    ledger.epochs_since_finality = epochs_since_finality_;
    ledger.leak_active = leak;

    if (epoch_sqrt_total_ > 0.0)
    {
        for (const auto v : epoch_active_)
        {
            const auto& r = registry_[v];
            if (r.status == ValidatorStatus::slashed)
                continue;
            const double base =
                r.policy.r_at(e) * static_cast<double>(epoch_weights_[v]) / epoch_sqrt_total_;
            if (correct[v])
            {
                if (supermajority)
                    pending_rewards_[v] += base;
            }
            else
            {
                pending_penalties_[v] += base * multiplier;
            }
        }
    }

    const auto rewards = apportion(pending_rewards_);
    const auto penalties = apportion(pending_penalties_);
    Gwei confiscated = pending_confiscated_;
    Gwei priority = 0;
    for (std::size_t v = 0; v < registry_.size(); ++v)
    {
        auto& r = registry_[v];
        ledger.issued += rewards[v];
        priority += pending_priority_[v];
        r.deposit += rewards[v] + pending_priority_[v];
        const Gwei pen = std::min(penalties[v], r.deposit);
        r.deposit -= pen;
        confiscated += pen;
    }
    fee_payer_float_ -= pending_burned_ + priority;
    ledger.burned = pending_burned_;
    ledger.priority_transferred = priority;
    ledger.confiscated = confiscated;

    for (auto& r : registry_)
    {
        if (r.status == ValidatorStatus::exited)
            continue;
        r.effective_balance = compute_effective_balance(r.deposit);
        if (eject_if_underfunded(r))
        {
            exit_queue_.push_back(r.id);
            ledger.ejected.push_back(r.id);
        }
    }

    for (auto& r : registry_)
    {
        if (r.status == ValidatorStatus::slashed && r.exit_epoch && *r.exit_epoch <= e)
        {
            r.status = ValidatorStatus::exited;
            withdrawn_total_ += r.deposit;
            r.deposit = 0;
            r.effective_balance = 0;
            ledger.exited.push_back(r.id);
        }
    }
    auto advanced = advance_exit_queue(params_.churn_limit);
    ledger.exited.insert(ledger.exited.end(), advanced.exited.begin(), advanced.exited.end());
    ledger.activated = std::move(advanced.activated);
    ledger.withdrawn = withdrawn_total_ - withdrawn_at_period_start_;

    total_active_effective_ = recompute_total_active_effective();
    ledger.n_active = active_count();
    ledger.total_effective = total_active_effective_;
    ledger.supply_delta = ledger.issued - ledger.burned;
    ledger.holdings_delta = holdings() - holdings_at_period_start_;

    std::fill(pending_rewards_.begin(), pending_rewards_.end(), 0.0);
    std::fill(pending_penalties_.begin(), pending_penalties_.end(), 0.0);
    std::fill(pending_priority_.begin(), pending_priority_.end(), 0);
    pending_burned_ = 0;
    pending_confiscated_ = 0;
    holdings_at_period_start_ = holdings();
    withdrawn_at_period_start_ = withdrawn_total_;
    epoch_begun_ = false;
    return ledger;
}

Gwei BeaconState::slash(ValidatorIndex id, std::uint32_t concurrent_slashings)
{
    auto& r = registry_.at(id);
    if (r.status != ValidatorStatus::active)
        throw std::logic_error{"slashing a non-active validator"};
    const Gwei multiplier = std::max<Gwei>(1, concurrent_slashings);
    // Measured on the effective balance, so a 32 ETH validator loses exactly 1 ETH.
    const Gwei amount = std::min(r.deposit, r.effective_balance * gwei_per_eth / 32 * multiplier);
    r.deposit -= amount;
    pending_confiscated_ += amount;
    r.status = ValidatorStatus::slashed;
    r.exit_cause = ExitCause::slashed;
    r.slashed_at_epoch = current_epoch();
    r.exit_epoch = current_epoch() + slashing_grace_epochs;
    r.effective_balance = compute_effective_balance(r.deposit);
    total_active_effective_ = recompute_total_active_effective();
    return amount;
}

QueueAdvance BeaconState::advance_exit_queue(std::uint32_t churn_limit)
{
    QueueAdvance out;
    const Epoch now = current_epoch();
    while (!exit_queue_.empty() && out.exited.size() < churn_limit)
    {
        auto& r = registry_[exit_queue_.front()];
        exit_queue_.pop_front();
        if (r.status != ValidatorStatus::exit_queued)
            continue;
        r.status = ValidatorStatus::exited;
        r.exit_epoch = now;
        withdrawn_total_ += r.deposit;
        r.deposit = 0;
        r.effective_balance = 0;
        out.exited.push_back(r.id);
    }
    while (!activation_queue_.empty() && out.activated.size() < churn_limit)
    {
        auto& r = registry_[activation_queue_.front()];
        activation_queue_.pop_front();
        if (r.status != ValidatorStatus::pending)
            continue;
        r.status = ValidatorStatus::active;
        r.activation_epoch = now;
        out.activated.push_back(r.id);
    }
    total_active_effective_ = recompute_total_active_effective();
    return out;
}

ValidatorIndex BeaconState::deposit_validator(Gwei deposit, BehaviorPolicy policy)
{
    ValidatorRecord r;
    r.id = static_cast<ValidatorIndex>(registry_.size());
    r.deposit = deposit;
    r.effective_balance = compute_effective_balance(deposit);
    r.status = ValidatorStatus::pending;
    r.policy = std::move(policy);
    r.seed = mix64(params_.seed, validator_domain, r.id);
    registry_.push_back(std::move(r));
    fee_payer_float_ -= deposit;
    activation_queue_.push_back(registry_.back().id);
    if (epoch_begun_)
    {
        pending_rewards_.resize(registry_.size(), 0.0);
        pending_penalties_.resize(registry_.size(), 0.0);
        pending_priority_.resize(registry_.size(), 0);
        epoch_weights_.resize(registry_.size(), 0);
    }
    return registry_.back().id;
}

bool BeaconState::request_exit(ValidatorIndex id)
{
    auto& r = registry_.at(id);
    if (r.status != ValidatorStatus::active)
        return false;
    r.status = ValidatorStatus::exit_queued;
    r.exit_cause = ExitCause::voluntary;
    exit_queue_.push_back(id);
    return true;
}
}  // namespace stakesim::consensus
