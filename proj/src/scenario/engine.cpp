// stakesim: Proof-of-Stake consensus and cryptoeconomics simulator
// Copyright 2026 The stakesim Authors.
// SPDX-License-Identifier: Apache-2.0

#include <stakesim/econ/income.hpp>
#include <stakesim/scenario/engine.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace stakesim::scenario
{
namespace
{
constexpr std::uint64_t genesis_domain = 0x67656e6573697300ULL;
constexpr std::uint64_t users_domain = 0x7573657273ULL;
constexpr std::uint64_t engine_domain = 0x656e67696e65ULL;
constexpr std::uint64_t attack_domain = 0x61747461636bULL;

// Fee payers' float: covers burns, tips and candidate deposits for any run.
constexpr Gwei fee_payer_float = 100'000'000 * gwei_per_eth;

constexpr Epoch forever = std::numeric_limits<Epoch>::max();

Gwei eth_to_gwei(double eth)
{
    return static_cast<Gwei>(std::llround(eth * gwei_per_eth_f));
}

consensus::BehaviorPolicy base_policy(const ScenarioConfig& c)
{
    consensus::BehaviorPolicy p;
    p.r_coeff = c.validators.r.value_or(c.econ.R);
    p.w_coeff = c.validators.w.value_or(c.econ.W);
    return p;
}

std::vector<consensus::GenesisValidator> make_genesis(const ScenarioConfig& c)
{
    Rng rng{mix64(c.seed, genesis_domain)};
    std::vector<consensus::GenesisValidator> out(c.validators.count);
    for (auto& g : out)
    {
        const double eth = c.validators.spread_eth > 0.0
                               ? rng.uniform(c.validators.deposit_eth - c.validators.spread_eth,
                                     c.validators.deposit_eth + c.validators.spread_eth)
                               : c.validators.deposit_eth;
        g.deposit = eth_to_gwei(eth);
        g.policy = base_policy(c);
    }

    std::vector<std::size_t> order(out.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    rng.shuffle(std::span{order});
    const auto dishonest =
        static_cast<std::size_t>(std::llround(c.validators.dishonest_fraction * static_cast<double>(out.size())));
    for (std::size_t i = 0; i < dishonest; ++i)
        out[order[i]].policy.attests_honestly = false;
    return out;
}

double auto_depth(const ScenarioConfig& c, std::span<const consensus::GenesisValidator> genesis, double user_eth)
{
    if (c.price_impact.depth_eth > 0.0)
        return c.price_impact.depth_eth;
    double eth = user_eth;
    for (const auto& g : genesis)
        eth += gwei_to_eth(g.deposit);
    return eth;
}

std::vector<User> make_users(const ScenarioConfig& c)
{
    const auto& u = c.users;
    const double scale = std::pow(c.layer2_compression_rho, -c.layer2_demand_elasticity);
    const auto count = static_cast<std::uint64_t>(std::llround(static_cast<double>(u.count) * scale));
    Rng rng{mix64(c.seed, users_domain)};
    std::vector<User> users(count);
    for (std::uint64_t i = 0; i < count; ++i)
    {
        auto& x = users[i];
        x.id = i;
        const double gas = rng.uniform(u.gas.lo, u.gas.hi) * c.layer2_compression_rho;
        x.gas = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::llround(gas)));
        x.utility_usd = rng.uniform(u.utility_usd.lo, u.utility_usd.hi);
        x.priority_fee = rng.uniform(u.priority_fee_gwei.lo, u.priority_fee_gwei.hi);
        x.eth_holding = u.eth_holding;
    }
    return users;
}

double user_eth(const std::vector<User>& users)
{
    double eth = 0.0;
    for (const auto& u : users)
        eth += u.eth_holding;
    return eth;
}
}  // namespace

std::string_view to_string(EventKind kind) noexcept
{
    switch (kind)
    {
    case EventKind::attack_started:
        return "attack_started";
    case EventKind::exit_requested:
        return "exit_requested";
    case EventKind::exit_queue_saturated:
        return "exit_queue_saturated";
    case EventKind::validator_offline:
        return "validator_offline";
    case EventKind::offline_weight_exceeds_third:
        return "offline_weight_exceeds_third";
    case EventKind::finality_stall:
        return "finality_stall";
    case EventKind::inactivity_leak_started:
        return "inactivity_leak_started";
    case EventKind::finality_resumed:
        return "finality_resumed";
    case EventKind::ejected:
        return "ejected";
    case EventKind::slashed:
        return "slashed";
    case EventKind::validator_exited:
        return "validator_exited";
    case EventKind::activation_requested:
        return "activation_requested";
    case EventKind::validator_activated:
        return "validator_activated";
    case EventKind::user_migration:
        return "user_migration";
    }
    return "unknown";
}

Simulation::Simulation(ScenarioConfig config)
  : config_{(config.validate(), std::move(config))},
    state_{consensus::ChainParams{config_.seed, static_cast<std::uint32_t>(config_.churn_limit)},
        make_genesis(config_), fee_payer_float},
    price_{config_.price, config_.price_impact.lambda, 0.0},
    rng_{mix64(config_.seed, engine_domain)},
    users_{make_users(config_)}
{
    std::vector<consensus::GenesisValidator> genesis = make_genesis(config_);
    price_ = PriceState{config_.price, config_.price_impact.lambda, auto_depth(config_, genesis, user_eth(users_))};

    Rng alpha_rng{mix64(config_.seed, genesis_domain, 1)};
    alpha_fixed_.resize(state_.registry().size());
    for (auto& a : alpha_fixed_)
    {
        const double s = config_.alpha.fixed_usd_spread;
        a = std::max(0.0, s > 0.0 ? alpha_rng.uniform(config_.alpha.fixed_usd - s, config_.alpha.fixed_usd + s)
                                  : config_.alpha.fixed_usd);
    }
    bought_.assign(state_.registry().size(), 0);
    shut_down_.assign(state_.registry().size(), 0);
    candidates_left_ = config_.candidates.pool;
    base_fee_ = config_.gas.initial_base_fee;
    epoch_priority_.assign(slots_per_epoch, 0.0);
}

double Simulation::alpha_usd(ValidatorIndex id, double theta) const
{
    return econ::opportunity_cost(theta, econ::AlphaPolicy{alpha_fixed_.at(id), config_.alpha.rate_per_epoch});
}

void Simulation::log(Event ev)
{
    events_.push_back(ev);
}

Gwei Simulation::slash(ValidatorIndex id, std::uint32_t concurrent_slashings)
{
    const auto amount = state_.slash(id, concurrent_slashings);
    Event ev;
    ev.epoch = state_.current_epoch();
    ev.slot = state_.current_slot();
    ev.kind = EventKind::slashed;
    ev.validator = id;
    ev.value = static_cast<double>(amount);
    log(ev);
    return amount;
}

std::vector<gas::PlatformQuote> Simulation::quotes(Epoch e, const User& u) const
{
    std::vector<gas::PlatformQuote> out;
    out.reserve(config_.competitors.size());
    for (const auto& c : config_.competitors)
    {
        gas::PlatformQuote q;
        q.id = c.id;
        q.gas_price = c.gas_price;
        q.token_rate_usd = c.token_rate_usd * std::pow(1.0 + c.token_rate_growth, static_cast<double>(e));
        q.lock_in_usd = c.lock_in_usd;
        q.utility_usd = u.utility_usd * c.utility_ratio;
        out.push_back(q);
    }
    return out;
}

void Simulation::inject_attacks(Epoch e)
{
    for (std::size_t i = 0; i < config_.attacks.size(); ++i)
    {
        const auto& a = config_.attacks[i];
        if (a.start_epoch != e)
            continue;
        const Epoch end = a.duration > 0 ? e + a.duration : forever;

        auto order = state_.active_indices();
        Rng rng{mix64(config_.seed, attack_domain, i)};
        rng.shuffle(std::span{order});

        AttackWindow window{a.kind, e, end, a.magnitude, {}};
        if (a.kind == AttackKind::discouragement_haircut)
        {
            const auto k = static_cast<std::size_t>(
                std::llround(a.target_fraction * static_cast<double>(order.size())));
            for (std::size_t j = 0; j < k && a.magnitude > 0.0; ++j)
            {
                state_.policy(order[j]).haircuts.push_back({{e, end}, 1.0 - a.magnitude});
                window.victims.push_back(order[j]);
            }
        }
        else
        {
            const double target = a.magnitude * static_cast<double>(state_.total_active_effective());
            double taken = 0.0;
            for (const auto id : order)
            {
                if (!(taken < target))
                    break;
                state_.policy(id).offline.push_back({e, end});
                if (a.kind == AttackKind::rights_purchase_offline)
                    bought_[id] = 1;
                taken += static_cast<double>(state_.validator(id).effective_balance);
                window.victims.push_back(id);
            }
        }

        Event ev;
        ev.epoch = e;
        ev.slot = first_slot_of(e);
        ev.kind = EventKind::attack_started;
        ev.value = a.magnitude;
        ev.count = window.victims.size();
        ev.detail = to_string(a.kind);
        log(ev);
        metrics_.attacks.push_back(std::move(window));
    }
}

void Simulation::run_slots(Epoch e, double theta, MetricsRow& row)
{
    std::vector<consensus::AttestationSummary> attestations;
    std::fill(epoch_priority_.begin(), epoch_priority_.end(), 0.0);
    double fee_sum = 0.0;
    std::vector<gas::Transaction> mempool;

    for (std::size_t s = 0; s < slots_per_epoch; ++s)
    {
        const Slot slot = state_.current_slot();
        fee_sum += base_fee_;
        if (slot == 0 || !state_.slot_proposer_online())
        {
            state_.skip_slot();
        }
        else
        {
            mempool.clear();
            for (const auto& u : users_)
            {
                if (u.platform == gas::ethereum && rng_.bernoulli(config_.users.tx_probability))
                    mempool.push_back({next_tx_id_++, u.id, u.gas, u.utility_usd, u.priority_fee});
            }
            const auto block = gas::build_block(mempool, base_fee_, theta, config_.gas);
            consensus::BlockContents contents;
            contents.gas_used = block.gas_used;
            contents.base_fee_per_gas = base_fee_;
            contents.priority_fee_total = static_cast<Gwei>(std::llround(block.priority_total));
            contents.burned = static_cast<Gwei>(std::llround(block.burned));
            state_.propose_block(contents);
            epoch_priority_[s] = static_cast<double>(contents.priority_fee_total);
            base_fee_ = gas::base_fee_next(base_fee_, block.gas_used, config_.gas);
            ++row.blocks;
        }
        auto a = state_.attest_slot();
        attestations.insert(attestations.end(), a.begin(), a.end());
        state_.end_slot();
    }
    row.base_fee_gwei_avg = fee_sum / static_cast<double>(slots_per_epoch);

    // Attestations ride in the next produced block of the epoch.
    const auto& heights = state_.slot_history().heights();
    const Slot epoch_end = first_slot_of(e + 1);
    for (auto& a : attestations)
    {
        Slot next = a.slot + 1;
        while (next < epoch_end && !heights[next])
            ++next;
        a.inclusion_delay = static_cast<std::uint32_t>(next - a.slot);
    }

    const auto ledger = state_.process_epoch(attestations);
    const Slot last = epoch_end - 1;

    for (const auto id : ledger.ejected)
        log(Event{e, last, EventKind::ejected, id, gwei_to_eth(state_.validator(id).deposit), 0, 0, {}});
    for (const auto id : ledger.exited)
    {
        const auto& r = state_.validator(id);
        log(Event{e, last, EventKind::validator_exited, id, 0.0, 0, 0, consensus::to_string(r.exit_cause)});
    }
    for (const auto id : ledger.activated)
        log(Event{e, last, EventKind::validator_activated, id, 0.0, 0, 0, {}});

    if (e > 0 && !ledger.finalized && !stalled_)
    {
        log(Event{e, last, EventKind::finality_stall, {}, 0.0, ledger.epochs_since_finality, 0, {}});
        stalled_ = true;
    }
    else if (ledger.finalized && stalled_)
    {
        log(Event{e, last, EventKind::finality_resumed, {}, 0.0, 0, 0, {}});
        stalled_ = false;
    }
    if (ledger.leak_active && !leak_)
        log(Event{e, last, EventKind::inactivity_leak_started, {}, 0.0, ledger.epochs_since_finality, 0, {}});
    leak_ = ledger.leak_active;

    row.theta_usd = theta;
    row.n_active = ledger.n_active;
    row.total_effective_eth = ledger.total_effective;
    row.justified = ledger.justified;
    row.finalized = ledger.finalized;
    row.epochs_since_finality = ledger.epochs_since_finality;
    row.burned_gwei = ledger.burned;
    row.issued_gwei = ledger.issued;
    row.supply_delta_gwei = ledger.supply_delta;
    row.confiscated_gwei = ledger.confiscated;
    row.withdrawn_gwei = ledger.withdrawn;
    row.holdings_delta_gwei = ledger.holdings_delta;
    row.priority_gwei = ledger.priority_transferred;
    row.epoch_total_effective_eth = ledger.epoch_total_effective;
    row.attesting_weight_eth = ledger.attesting_weight;

    price_.sell(gwei_to_eth(ledger.withdrawn));
    validator_decisions(e, theta, ledger);
}

void Simulation::validator_decisions(Epoch e, double theta, const consensus::EpochLedger& /*ledger*/)
{
    const auto active = state_.active_indices();
    std::vector<double> balances;
    balances.reserve(active.size());
    for (const auto id : active)
    {
        const auto b = state_.validator(id).effective_balance;
        if (b > 0)
            balances.push_back(static_cast<double>(b));
    }
    if (balances.empty())
        return;
    const double root = std::sqrt(std::accumulate(balances.begin(), balances.end(), 0.0));
    const Slot last = first_slot_of(e + 1) - 1;

    for (const auto id : active)
    {
        const auto& r = state_.validator(id);
        const auto b = static_cast<double>(r.effective_balance);
        if (b <= 0.0)
            continue;
        const double income =
            econ::expected_income_general(b, r.policy.r_at(e), r.policy.w_at(e), balances, epoch_priority_, theta);
        const double alpha = alpha_usd(id, theta);

        if (r.status == consensus::ValidatorStatus::active)
        {
            if (bought_[id] || econ::stay_decision(income, alpha))
                continue;
            state_.request_exit(id);
            log(Event{e, last, EventKind::exit_requested, id, income, 0, 0, {}});
        }
        else if (config_.behavior.shutdown_when_exiting && !shut_down_[id])
        {
            const double penalty = econ::gwei_to_usd(r.policy.r_at(e) * b / root, theta);
            if (alpha > income + penalty)
            {
                state_.policy(id).offline.push_back({e + 1, forever});
                shut_down_[id] = 1;
                log(Event{e, last, EventKind::validator_offline, id, alpha - income - penalty, 0, 0, {}});
            }
        }
    }

    const bool saturated = state_.exit_queue().size() > static_cast<std::size_t>(config_.churn_limit);
    if (saturated && !saturated_)
        log(Event{e, last, EventKind::exit_queue_saturated, {}, 0.0, state_.exit_queue().size(), 0, {}});
    saturated_ = saturated;

    admit_candidates(e, theta);
}

void Simulation::admit_candidates(Epoch e, double theta)
{
    if (candidates_left_ == 0)
        return;
    econ::EconParams params;
    const auto policy = base_policy(config_);
    params.R = policy.r_coeff;
    params.W = policy.w_coeff;
    params.P_avg = std::accumulate(epoch_priority_.begin(), epoch_priority_.end(), 0.0) /
                   static_cast<double>(slots_per_epoch);
    const double alpha = econ::opportunity_cost(theta, econ::AlphaPolicy{config_.alpha.fixed_usd, config_.alpha.rate_per_epoch});
    auto n = static_cast<double>(state_.active_count() + state_.activation_queue().size());
    const Slot last = first_slot_of(e + 1) - 1;

    while (candidates_left_ > 0 && econ::stay_decision(econ::expected_income_simplified(n + 1.0, params, theta), alpha))
    {
        const auto id = state_.deposit_validator(eth_to_gwei(config_.candidates.deposit_eth), policy);
        alpha_fixed_.push_back(config_.alpha.fixed_usd);
        bought_.push_back(0);
        shut_down_.push_back(0);
        log(Event{e, last, EventKind::activation_requested, id, 0.0, 0, 0, {}});
        --candidates_left_;
        n += 1.0;
    }
}

void Simulation::migrate_users(Epoch e, double theta, MetricsRow& row)
{
    double sold = 0.0;
    for (auto& u : users_)
    {
        if (!rng_.bernoulli(config_.migration_rate))
            continue;
        const gas::Transaction tx{0, u.id, u.gas, u.utility_usd, u.priority_fee};
        const auto q = quotes(e, u);
        const auto choice = gas::choose_platform(tx, base_fee_, theta, q, u.platform);
        if (!choice || *choice == u.platform)
            continue;
        if (u.platform == gas::ethereum)
        {
            ++row.migrated_out;
            sold += u.eth_holding;
        }
        else if (*choice == gas::ethereum)
        {
            ++row.migrated_in;
        }
        u.platform = *choice;
    }
    for (const auto& u : users_)
        (u.platform == gas::ethereum ? row.users_ethereum : row.users_competitors) += 1;
    if (row.migrated_out > 0 || row.migrated_in > 0)
    {
        log(Event{e, first_slot_of(e + 1) - 1, EventKind::user_migration, {}, sold, row.migrated_out,
            row.migrated_in, {}});
    }
    price_.sell(sold);
}

const MetricsRow& Simulation::step()
{
    const Epoch e = state_.current_epoch();
    events_before_epoch_ = events_.size();
    inject_attacks(e);
    const double theta = price_.theta(e);

    state_.begin_epoch();
    MetricsRow row;
    row.epoch = e;
    for (const auto id : state_.epoch_active())
    {
        if (!state_.validator(id).policy.online_at(e))
            row.offline_weight_eth += state_.validator(id).effective_balance;
    }
    const bool offline_third = 3 * row.offline_weight_eth > state_.epoch_total_effective();
    if (offline_third && !offline_third_)
    {
        log(Event{e, first_slot_of(e), EventKind::offline_weight_exceeds_third, {},
            static_cast<double>(row.offline_weight_eth), static_cast<std::uint64_t>(state_.epoch_total_effective()),
            0, {}});
    }
    offline_third_ = offline_third;

    run_slots(e, theta, row);
    migrate_users(e, theta, row);

    row.exit_queue = state_.exit_queue().size();
    row.activation_queue = state_.activation_queue().size();
    row.events = events_.size() - events_before_epoch_;
    metrics_.rows.push_back(row);
    return metrics_.rows.back();
}

RunResult Simulation::finish() &&
{
    return RunResult{std::move(metrics_), std::move(events_)};
}

RunResult run_scenario(const ScenarioConfig& config)
{
    Simulation sim{config};
    while (!sim.done())
        sim.step();
    return std::move(sim).finish();
}

SummaryReport summarize(const MetricsSeries& series)
{
    SummaryReport s;
    const auto& rows = series.rows;
    s.epochs = rows.size();
    if (rows.empty())
        return s;

    std::size_t finalized = 0;
    double apr_sum = 0.0;
    std::size_t apr_rows = 0;
    for (const auto& r : rows)
    {
        finalized += r.finalized ? 1 : 0;
        if (!r.finalized && !s.first_stall_epoch)
            s.first_stall_epoch = r.epoch;
        s.total_supply_change_gwei += r.supply_delta_gwei;
        s.migrated_out += r.migrated_out;
        s.migrated_in += r.migrated_in;
        if (r.epoch_total_effective_eth > 0)
        {
            apr_sum += static_cast<double>(r.issued_gwei) /
                       (static_cast<double>(r.epoch_total_effective_eth) * gwei_per_eth_f) *
                       static_cast<double>(epochs_per_year);
            ++apr_rows;
        }
    }
    s.finality_uptime = static_cast<double>(finalized) / static_cast<double>(rows.size());
    s.final_n_active = rows.back().n_active;
    s.final_theta_usd = rows.back().theta_usd;
    s.apr_realized = apr_rows > 0 ? apr_sum / static_cast<double>(apr_rows) : 0.0;

    for (const auto& a : series.attacks)
    {
        AttackOutcome o;
        o.kind = a.kind;
        o.start = a.start;
        o.victims = a.victims.size();
        for (const auto& r : rows)
        {
            if (r.epoch < a.start)
                continue;
            if (!o.first_stall && !r.finalized)
                o.first_stall = r.epoch;
            else if (o.first_stall && r.finalized)
            {
                o.recovered = r.epoch;
                break;
            }
        }
        s.attacks.push_back(o);
    }
    return s;
}
}  // namespace stakesim::scenario
