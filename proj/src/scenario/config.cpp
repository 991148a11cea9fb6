// stakesim: Proof-of-Stake consensus and cryptoeconomics simulator
// Copyright 2026 The stakesim Authors.
// SPDX-License-Identifier: Apache-2.0

#include <stakesim/scenario/config.hpp>

#include <cmath>
#include <set>

namespace stakesim::scenario
{
namespace
{
std::string join(const std::vector<ConfigError::Issue>& issues)
{
    std::string out = "invalid config";
    for (const auto& i : issues)
        out += "; " + i.field + ": " + i.reason;
    return out;
}

struct Checker
{
    std::vector<ConfigError::Issue> issues;

    void require(bool ok, std::string field, std::string reason)
    {
        if (!ok)
            issues.push_back({std::move(field), std::move(reason)});
    }

    void finite_non_negative(double v, const std::string& field)
    {
        require(std::isfinite(v) && v >= 0.0, field, "must be finite and >= 0");
    }

    void fraction(double v, const std::string& field)
    {
        require(std::isfinite(v) && v >= 0.0 && v <= 1.0, field, "must lie in [0, 1]");
    }

    void range(const Range& r, const std::string& field)
    {
        finite_non_negative(r.lo, field + ".lo");
        finite_non_negative(r.hi, field + ".hi");
        require(r.lo <= r.hi, field, "lo must not exceed hi");
    }
};
}  // namespace

ConfigError::ConfigError(std::vector<Issue> issues)
  : std::runtime_error{join(issues)}, issues_{std::move(issues)}
{}

void ScenarioConfig::validate() const
{
    Checker c;
    c.require(epochs >= 1, "epochs", "must be >= 1");
    c.require(churn_limit >= 1, "churn_limit", "must be >= 1");

    c.require(validators.count >= 1, "validators.count", "must be >= 1");
    c.finite_non_negative(validators.deposit_eth, "validators.deposit_eth");
    c.finite_non_negative(validators.spread_eth, "validators.spread_eth");
    c.require(validators.deposit_eth - validators.spread_eth >= 16.0, "validators.deposit_eth",
        "every genesis deposit must be at least 16 ETH");
    if (validators.r)
        c.finite_non_negative(*validators.r, "validators.r");
    if (validators.w)
        c.finite_non_negative(*validators.w, "validators.w");
    c.fraction(validators.dishonest_fraction, "validators.dishonest_fraction");

    c.require(candidates.deposit_eth >= 16.0 && std::isfinite(candidates.deposit_eth), "candidates.deposit_eth",
        "must be at least 16 ETH");

    c.fraction(users.tx_probability, "users.tx_probability");
    c.range(users.gas, "users.gas");
    c.require(users.gas.lo >= 1.0, "users.gas.lo", "must be >= 1");
    c.range(users.utility_usd, "users.utility_usd");
    c.range(users.priority_fee_gwei, "users.priority_fee_gwei");
    c.finite_non_negative(users.eth_holding, "users.eth_holding");

    c.require(gas.block_gas_limit > 0, "gas.block_gas_limit", "must be > 0");
    c.require(gas.max_change_rate > 0.0 && gas.max_change_rate < 1.0, "gas.max_change_rate", "must lie in (0, 1)");
    c.require(std::isfinite(gas.initial_base_fee) && gas.initial_base_fee > 0.0, "gas.initial_base_fee_gwei",
        "must be > 0");

    c.finite_non_negative(econ.R, "econ.R");
    c.finite_non_negative(econ.W, "econ.W");
    c.finite_non_negative(econ.P_avg, "econ.P_avg");

    c.finite_non_negative(alpha.fixed_usd, "alpha.fixed_usd");
    c.finite_non_negative(alpha.fixed_usd_spread, "alpha.fixed_usd_spread");
    c.finite_non_negative(alpha.rate_per_epoch, "alpha.rate_per_epoch");

    c.finite_non_negative(price.initial, "price.initial");
    c.require(std::isfinite(price.slope), "price.slope", "must be finite");
    c.require(std::isfinite(price.rate) && price.rate > -1.0, "price.rate", "must be > -1");
    c.finite_non_negative(price.shock_factor, "price.shock_factor");
    if (price.kind == PriceKind::piecewise)
    {
        c.require(!price.points.empty(), "price.points", "piecewise path needs at least one point");
        for (std::size_t i = 0; i < price.points.size(); ++i)
        {
            const auto field = "price.points[" + std::to_string(i) + "]";
            c.finite_non_negative(price.points[i].second, field);
            if (i > 0)
                c.require(price.points[i].first > price.points[i - 1].first, field, "epochs must increase");
        }
    }

    c.fraction(price_impact.lambda, "price_impact.lambda");
    c.finite_non_negative(price_impact.depth_eth, "price_impact.depth_eth");

    std::set<gas::PlatformId> ids;
    for (std::size_t i = 0; i < competitors.size(); ++i)
    {
        const auto field = "competitors[" + std::to_string(i) + "]";
        const auto& q = competitors[i];
        c.require(q.id != gas::ethereum, field + ".id", "0 is reserved for Ethereum");
        c.require(ids.insert(q.id).second, field + ".id", "duplicate platform id");
        c.finite_non_negative(q.gas_price, field + ".gas_price");
        c.finite_non_negative(q.token_rate_usd, field + ".token_rate_usd");
        c.require(std::isfinite(q.lock_in_usd), field + ".lock_in_usd", "must be finite");
        c.finite_non_negative(q.utility_ratio, field + ".utility_ratio");
        c.require(std::isfinite(q.token_rate_growth) && q.token_rate_growth > -1.0, field + ".token_rate_growth",
            "must be > -1");
    }

    c.require(std::isfinite(layer2_compression_rho) && layer2_compression_rho > 0.0 && layer2_compression_rho <= 1.0,
        "layer2_compression_rho", "must lie in (0, 1]");
    c.finite_non_negative(layer2_demand_elasticity, "layer2_demand_elasticity");
    c.fraction(migration_rate, "migration_rate");

    for (std::size_t i = 0; i < attacks.size(); ++i)
    {
        const auto field = "attacks[" + std::to_string(i) + "]";
        c.fraction(attacks[i].magnitude, field + ".magnitude");
        c.fraction(attacks[i].target_fraction, field + ".target_fraction");
        c.require(attacks[i].start_epoch < epochs, field + ".start_epoch", "must fall within the run");
    }

    if (!c.issues.empty())
        throw ConfigError{std::move(c.issues)};
}

std::string_view to_string(PriceKind kind) noexcept
{
    switch (kind)
    {
    case PriceKind::constant:
        return "constant";
    case PriceKind::linear:
        return "linear";
    case PriceKind::geometric:
        return "geometric";
    case PriceKind::shock:
        return "shock";
    case PriceKind::piecewise:
        return "piecewise";
    }
    return "unknown";
}

std::string_view to_string(AttackKind kind) noexcept
{
    switch (kind)
    {
    case AttackKind::offline_fraction:
        return "offline_fraction";
    case AttackKind::rights_purchase_offline:
        return "rights_purchase_offline";
    case AttackKind::discouragement_haircut:
        return "discouragement_haircut";
    }
    return "unknown";
}

std::optional<PriceKind> parse_price_kind(std::string_view s) noexcept
{
    for (const auto k : {PriceKind::constant, PriceKind::linear, PriceKind::geometric, PriceKind::shock,
             PriceKind::piecewise})
    {
        if (to_string(k) == s)
            return k;
    }
    return std::nullopt;
}

std::optional<AttackKind> parse_attack_kind(std::string_view s) noexcept
{
    for (const auto k : {AttackKind::offline_fraction, AttackKind::rights_purchase_offline,
             AttackKind::discouragement_haircut})
    {
        if (to_string(k) == s)
            return k;
    }
    return std::nullopt;
}
}  // namespace stakesim::scenario
