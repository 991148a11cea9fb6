// stakesim: Proof-of-Stake consensus and cryptoeconomics simulator
// Copyright 2026 The stakesim Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stakesim/consensus/beacon_state.hpp>
#include <stakesim/rng.hpp>
#include <stakesim/scenario/config.hpp>
#include <stakesim/scenario/price.hpp>

#include <optional>
#include <string_view>
#include <vector>

namespace stakesim::scenario
{
enum class EventKind
{
    attack_started,
    exit_requested,
    exit_queue_saturated,
    validator_offline,
    offline_weight_exceeds_third,
    finality_stall,
    inactivity_leak_started,
    finality_resumed,
    ejected,
    slashed,
    validator_exited,
    activation_requested,
    validator_activated,
    user_migration,
};

std::string_view to_string(EventKind kind) noexcept;

/// One log record. Which payload fields are meaningful depends on the kind:
/// validator for per-validator events, value/count for aggregates.
struct Event
{
    Epoch epoch = 0;
    Slot slot = 0;
    EventKind kind = EventKind::attack_started;
    std::optional<ValidatorIndex> validator;
    double value = 0.0;
    std::uint64_t count = 0;
    std::uint64_t count2 = 0;
    std::string_view detail;  ///< static string, e.g. the attack kind
};

struct MetricsRow
{
    Epoch epoch = 0;
    double theta_usd = 0.0;
    std::size_t n_active = 0;
    std::int64_t total_effective_eth = 0;
    bool justified = false;
    bool finalized = false;
    std::uint64_t epochs_since_finality = 0;
    double base_fee_gwei_avg = 0.0;
    Gwei burned_gwei = 0;
    Gwei issued_gwei = 0;
    Gwei supply_delta_gwei = 0;
    std::uint64_t users_ethereum = 0;
    std::uint64_t users_competitors = 0;
    std::size_t exit_queue = 0;
    std::size_t activation_queue = 0;
    std::size_t events = 0;

    // Not part of the CSV.
    Gwei confiscated_gwei = 0;
    Gwei withdrawn_gwei = 0;
    Gwei holdings_delta_gwei = 0;
    Gwei priority_gwei = 0;
    std::int64_t epoch_total_effective_eth = 0;
    std::int64_t attesting_weight_eth = 0;
    std::int64_t offline_weight_eth = 0;
    std::uint64_t migrated_out = 0;
    std::uint64_t migrated_in = 0;
    std::size_t blocks = 0;
};

struct AttackWindow
{
    AttackKind kind = AttackKind::offline_fraction;
    Epoch start = 0;
    Epoch end = 0;  ///< exclusive
    double magnitude = 0.0;
    std::vector<ValidatorIndex> victims;
};

struct MetricsSeries
{
    std::vector<MetricsRow> rows;
    std::vector<AttackWindow> attacks;
};

struct RunResult
{
    MetricsSeries metrics;
    std::vector<Event> events;
};

struct User
{
    std::uint64_t id = 0;
    std::uint64_t gas = 0;
    double utility_usd = 0.0;
    double priority_fee = 0.0;
    double eth_holding = 0.0;
    gas::PlatformId platform = gas::ethereum;
};

/// Epoch-by-epoch driver. run_scenario() is step() until done().
class Simulation
{
public:
    /// Validates the config; throws ConfigError.
    explicit Simulation(ScenarioConfig config);

    bool done() const noexcept { return state_.current_epoch() >= config_.epochs; }
    const MetricsRow& step();
    RunResult finish() &&;

    const consensus::BeaconState& state() const noexcept { return state_; }
    const ScenarioConfig& config() const noexcept { return config_; }
    const std::vector<User>& users() const noexcept { return users_; }
    const std::vector<Event>& events() const noexcept { return events_; }
    const MetricsSeries& metrics() const noexcept { return metrics_; }
    double theta() const { return price_.theta(state_.current_epoch()); }
    double base_fee() const noexcept { return base_fee_; }
    double alpha_usd(ValidatorIndex id, double theta) const;

    /// Slashes an active validator between epochs and logs it.
    Gwei slash(ValidatorIndex id, std::uint32_t concurrent_slashings = 1);

private:
    void inject_attacks(Epoch e);
    void run_slots(Epoch e, double theta, MetricsRow& row);
    void validator_decisions(Epoch e, double theta, const consensus::EpochLedger& ledger);
    void admit_candidates(Epoch e, double theta);
    void migrate_users(Epoch e, double theta, MetricsRow& row);
    std::vector<gas::PlatformQuote> quotes(Epoch e, const User& u) const;
    void log(Event ev);

    ScenarioConfig config_;
    consensus::BeaconState state_;
    PriceState price_;
    Rng rng_;
    std::vector<User> users_;
    std::vector<double> alpha_fixed_;  // by validator id
    std::vector<char> bought_;         // rights purchased by an attacker
    std::vector<char> shut_down_;
    std::uint32_t candidates_left_ = 0;
    double base_fee_ = 0.0;
    std::uint64_t next_tx_id_ = 0;
    std::vector<double> epoch_priority_;  // Gwei per slot
    std::vector<Event> events_;
    MetricsSeries metrics_;
    std::size_t events_before_epoch_ = 0;

    bool stalled_ = false;
    bool leak_ = false;
    bool saturated_ = false;
    bool offline_third_ = false;
};

RunResult run_scenario(const ScenarioConfig& config);

struct AttackOutcome
{
    AttackKind kind = AttackKind::offline_fraction;
    Epoch start = 0;
    std::size_t victims = 0;
    std::optional<Epoch> first_stall;
    std::optional<Epoch> recovered;
};

struct SummaryReport
{
    std::size_t epochs = 0;
    double finality_uptime = 0.0;
    std::optional<Epoch> first_stall_epoch;
    std::size_t final_n_active = 0;
    double final_theta_usd = 0.0;
    Gwei total_supply_change_gwei = 0;
    std::uint64_t migrated_out = 0;
    std::uint64_t migrated_in = 0;
    double apr_realized = 0.0;
    std::vector<AttackOutcome> attacks;
};

/// Derived from the series alone.
SummaryReport summarize(const MetricsSeries& series);
}  // namespace stakesim::scenario
