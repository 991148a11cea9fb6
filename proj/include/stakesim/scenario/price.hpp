// stakesim: Proof-of-Stake consensus and cryptoeconomics simulator
// Copyright 2026 The stakesim Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stakesim/scenario/config.hpp>

namespace stakesim::scenario
{
/// Exogenous USD/ETH at epoch t, never negative.
double price_at(const PricePathConfig& path, Epoch t);

/// path_theta * (1 - lambda * net_sell_fraction), floored at 0.
/// The sell fraction is clamped to [0, 1]; lambda 0 leaves the path untouched.
double update_price(double path_theta, double net_sell_fraction, double lambda) noexcept;

/// Endogenous price: the exogenous path times a cumulative impact factor
/// that every epoch's net sales push down.
class PriceState
{
public:
    PriceState(PricePathConfig path, double lambda, double depth_eth);

    double theta(Epoch t) const { return price_at(path_, t) * impact_; }
    double impact() const noexcept { return impact_; }

    /// Records ETH sold during an epoch.
    void sell(double eth) noexcept;

private:
    PricePathConfig path_;
    double lambda_;
    double depth_eth_;
    double impact_ = 1.0;
};
}  // namespace stakesim::scenario
