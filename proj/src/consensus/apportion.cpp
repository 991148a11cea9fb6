// stakesim: Proof-of-Stake consensus and cryptoeconomics simulator
// Copyright 2026 The stakesim Authors.
// SPDX-License-Identifier: Apache-2.0

#include <stakesim/consensus/apportion.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace stakesim::consensus
{
std::vector<Gwei> apportion(std::span<const double> amounts)
{
    std::vector<Gwei> out(amounts.size(), 0);
    std::vector<double> remainder(amounts.size(), 0.0);
    double total = 0.0;
    Gwei floor_sum = 0;
    for (std::size_t i = 0; i < amounts.size(); ++i)
    {
        const double a = amounts[i];
        if (!(a >= 0.0) || !std::isfinite(a))
            throw std::invalid_argument{"apportion: amounts must be finite and non-negative"};
        const double f = std::floor(a);
        out[i] = static_cast<Gwei>(f);
        remainder[i] = a - f;
        floor_sum += out[i];
        total += a;
    }

    const auto target = static_cast<Gwei>(std::llround(total));
    auto missing = target - floor_sum;
    if (missing <= 0)
        return out;

    std::vector<std::size_t> order(amounts.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
        [&](std::size_t a, std::size_t b) { return remainder[a] > remainder[b]; });
    for (const auto i : order)
    {
        if (missing == 0)
            break;
        if (remainder[i] > 0.0)
        {
            ++out[i];
            --missing;
        }
    }
    return out;
}
}  // namespace stakesim::consensus
