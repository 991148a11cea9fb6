// stakesim: Proof-of-Stake consensus and cryptoeconomics simulator
// Copyright 2026 The stakesim Authors.
// SPDX-License-Identifier: Apache-2.0

#include <stakesim/scenario/price.hpp>

#include <algorithm>
#include <cmath>

namespace stakesim::scenario
{
double price_at(const PricePathConfig& path, Epoch t)
{
    const auto te = static_cast<double>(t);
    double theta = path.initial;
    switch (path.kind)
    {
    case PriceKind::constant:
        break;
    case PriceKind::linear:
        theta = path.initial + path.slope * te;
        break;
    case PriceKind::geometric:
        theta = path.initial * std::pow(1.0 + path.rate, te);
        break;
    case PriceKind::shock:
        theta = t >= path.shock_epoch ? path.initial * path.shock_factor : path.initial;
        break;
    case PriceKind::piecewise:
    {
        const auto& pts = path.points;
        if (pts.empty())
            break;
        if (t <= pts.front().first)
            theta = pts.front().second;
        else if (t >= pts.back().first)
            theta = pts.back().second;
        else
        {
            const auto hi = std::find_if(pts.begin(), pts.end(), [t](const auto& p) { return p.first >= t; });
            const auto lo = hi - 1;
            const double f = (te - static_cast<double>(lo->first)) / static_cast<double>(hi->first - lo->first);
            theta = lo->second + f * (hi->second - lo->second);
        }
        break;
    }
    }
    return std::max(theta, 0.0);
}

double update_price(double path_theta, double net_sell_fraction, double lambda) noexcept
{
    const double f = std::clamp(net_sell_fraction, 0.0, 1.0);
    return std::max(path_theta * (1.0 - lambda * f), 0.0);
}

PriceState::PriceState(PricePathConfig path, double lambda, double depth_eth)
  : path_{std::move(path)}, lambda_{lambda}, depth_eth_{depth_eth}
{}

void PriceState::sell(double eth) noexcept
{
    if (lambda_ == 0.0 || eth <= 0.0 || depth_eth_ <= 0.0)
        return;
    impact_ = update_price(impact_, eth / depth_eth_, lambda_);
}
}  // namespace stakesim::scenario
