// stakesim: Proof-of-Stake consensus and cryptoeconomics simulator
// Copyright 2026 The stakesim Authors.
// SPDX-License-Identifier: Apache-2.0

#include <stakesim/econ/income.hpp>

#include <cmath>
#include <stdexcept>

namespace stakesim::econ
{
namespace
{
void require_positive_n(double n)
{
    if (!(n >= 1.0))
        throw std::invalid_argument{"validator count must be at least 1"};
}
}  // namespace

double expected_income_general_gwei(double b_i, double r_i, double w_i, std::span<const double> balances,
    std::span<const double> P_series)
{
    if (balances.empty())
        throw std::invalid_argument{"balances must not be empty"};
    double total = 0.0;
    for (const auto b : balances)
    {
        if (!(b > 0.0))
            throw std::invalid_argument{"balances must be positive"};
        total += b;
    }
    const auto n = static_cast<double>(balances.size());
    const double root = std::sqrt(total);
    const double per_slot_duty = n * w_i * b_i / root;
    double slots = 0.0;
    for (std::size_t s = 0; s < slots_per_epoch; ++s)
        slots += (s < P_series.size() ? P_series[s] : 0.0) + per_slot_duty;
    return r_i * b_i / root + slots / n;
}

double expected_income_general(double b_i, double r_i, double w_i, std::span<const double> balances,
    std::span<const double> P_series, double theta)
{
    return gwei_to_usd(expected_income_general_gwei(b_i, r_i, w_i, balances, P_series), theta);
}

double expected_income_simplified_gwei(double n, const EconParams& params)
{
    require_positive_n(n);
    const double root = std::sqrt(2.0 * n);
    return (4.0 * params.R * root + 32.0 * (params.P_avg + 4.0 * params.W * root)) / n;
}

double expected_income_simplified(double n, const EconParams& params, double theta)
{
    return gwei_to_usd(expected_income_simplified_gwei(n, params), theta);
}

double issuance_per_validator_gwei(double n, const EconParams& params)
{
    require_positive_n(n);
    return 4.0 * std::sqrt(2.0 * n) * (params.R + 32.0 * params.W) / n;
}

double supply_delta(double n, const EconParams& params, double burned_gwei)
{
    require_positive_n(n);
    return 4.0 * std::sqrt(2.0 * n) * (params.R + 32.0 * params.W) - burned_gwei;
}

double apr_estimate(double n, const EconParams& params)
{
    return issuance_per_validator_gwei(n, params) / static_cast<double>(max_effective_balance) *
           static_cast<double>(epochs_per_year);
}

double opportunity_cost(double theta, const AlphaPolicy& policy) noexcept
{
    return policy.fixed_usd + policy.rate_per_epoch * static_cast<double>(max_effective_balance_eth) * theta;
}

EconParams calibrate(double target_apr, double n, double w_share)
{
    require_positive_n(n);
    if (!(target_apr > 0.0) || !(w_share >= 0.0 && w_share <= 1.0))
        throw std::invalid_argument{"calibrate: target_apr > 0 and w_share in [0, 1] required"};
    const double per_validator =
        target_apr * static_cast<double>(max_effective_balance) / static_cast<double>(epochs_per_year);
    const double sum = per_validator * n / (4.0 * std::sqrt(2.0 * n));  // R + 32W
    EconParams p;
    p.R = (1.0 - w_share) * sum;
    p.W = w_share * sum / 32.0;
    return p;
}

EconParams default_econ_params()
{
    return calibrate(0.04, 10'000.0, 10.0 / 64.0);
}
}  // namespace stakesim::econ
