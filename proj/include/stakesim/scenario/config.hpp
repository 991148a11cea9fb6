// stakesim: Proof-of-Stake consensus and cryptoeconomics simulator
// Copyright 2026 The stakesim Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stakesim/econ/income.hpp>
#include <stakesim/gas/fee_market.hpp>
#include <stakesim/units.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace stakesim::scenario
{
/// A list of (field path, reason) pairs. what() joins them.
class ConfigError : public std::runtime_error
{
public:
    struct Issue
    {
        std::string field;
        std::string reason;
    };

    explicit ConfigError(std::vector<Issue> issues);

    const std::vector<Issue>& issues() const noexcept { return issues_; }

private:
    std::vector<Issue> issues_;
};

struct Range
{
    double lo = 0.0;
    double hi = 0.0;
};

struct ValidatorPopulation
{
    std::uint32_t count = 64;
    double deposit_eth = 32.0;
    double spread_eth = 0.0;  ///< deposits uniform in [deposit - spread, deposit + spread]
    std::optional<double> r;  ///< defaults to the calibrated R
    std::optional<double> w;
    double dishonest_fraction = 0.0;
};

/// Prospective validators that join while the income test passes.
struct CandidatePool
{
    std::uint32_t pool = 0;
    double deposit_eth = 32.0;
};

struct UserPopulation
{
    std::uint32_t count = 0;
    double tx_probability = 1.0;  ///< per slot
    Range gas{21'000.0, 21'000.0};
    Range utility_usd{10.0, 10.0};
    Range priority_fee_gwei{1.0, 1.0};
    double eth_holding = 1.0;  ///< ETH each user sells on leaving Ethereum
};

struct AlphaConfig
{
    double fixed_usd = 0.0;
    double fixed_usd_spread = 0.0;  ///< per-validator fixed cost uniform in +/- spread
    double rate_per_epoch = 0.0;
};

enum class PriceKind
{
    constant,
    linear,
    geometric,
    shock,
    piecewise,
};

struct PricePathConfig
{
    PriceKind kind = PriceKind::constant;
    double initial = 2000.0;  ///< USD/ETH at epoch 0
    double slope = 0.0;       ///< linear: USD per epoch
    double rate = 0.0;        ///< geometric: per-epoch growth, -0.05 is a 5% decline
    Epoch shock_epoch = 0;
    double shock_factor = 1.0;
    std::vector<std::pair<Epoch, double>> points;  ///< piecewise, interpolated linearly
};

struct PriceImpactConfig
{
    double lambda = 0.0;
    double depth_eth = 0.0;  ///< 0: user holdings plus validator deposits at start
};

struct CompetitorConfig
{
    gas::PlatformId id = 1;
    double gas_price = 0.0;
    double token_rate_usd = 0.0;
    double lock_in_usd = 0.0;
    double utility_ratio = 1.0;       ///< competitor utility relative to Ethereum's
    double token_rate_growth = 0.0;   ///< per epoch, geometric
};

enum class AttackKind
{
    offline_fraction,
    rights_purchase_offline,
    discouragement_haircut,
};

struct AttackConfig
{
    AttackKind kind = AttackKind::offline_fraction;
    Epoch start_epoch = 0;
    double magnitude = 0.0;
    Epoch duration = 0;            ///< 0: until the end of the run
    double target_fraction = 1.0;  ///< haircut only: share of validators hit
};

struct BehaviorConfig
{
    /// Validators waiting in the exit queue stop working once their cost
    /// exceeds what staying online saves them.
    bool shutdown_when_exiting = false;
};

struct ScenarioConfig
{
    Epoch epochs = 100;
    std::uint64_t seed = 1;
    std::int64_t churn_limit = default_churn_limit;
    ValidatorPopulation validators;
    CandidatePool candidates;
    UserPopulation users;
    gas::GasParams gas;
    econ::EconParams econ = econ::default_econ_params();
    AlphaConfig alpha;
    PricePathConfig price;
    PriceImpactConfig price_impact;
    std::vector<CompetitorConfig> competitors;
    double layer2_compression_rho = 1.0;
    double layer2_demand_elasticity = 0.0;
    double migration_rate = 1.0;  ///< share of users re-evaluating each epoch
    std::vector<AttackConfig> attacks;
    BehaviorConfig behavior;

    /// Throws ConfigError listing every violation.
    void validate() const;
};

std::string_view to_string(PriceKind kind) noexcept;
std::string_view to_string(AttackKind kind) noexcept;
std::optional<PriceKind> parse_price_kind(std::string_view s) noexcept;
std::optional<AttackKind> parse_attack_kind(std::string_view s) noexcept;
}  // namespace stakesim::scenario
