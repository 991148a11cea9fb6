// stakesim: Proof-of-Stake consensus and cryptoeconomics simulator
// Copyright 2026 The stakesim Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stakesim/units.hpp>

#include <span>

namespace stakesim::econ
{
/// Reward coefficients. R and W carry Gwei*sqrt(ETH) scale so that
/// coefficient * b / sqrt(sum b) is Gwei when balances are in ETH.
struct EconParams
{
    double R = 0.0;      ///< behavior-only reward coefficient (attestations)
    double W = 0.0;      ///< per-slot opportunity coefficient (proposals, sync)
    double P_avg = 0.0;  ///< average priority fee per slot, Gwei
};

/// Validator cost per epoch: fixed_usd + rate_per_epoch * 32 * theta.
struct AlphaPolicy
{
    double fixed_usd = 0.0;
    double rate_per_epoch = 0.0;
};

inline double gwei_to_usd(double gwei, double theta) noexcept
{
    return gwei / gwei_per_eth_f * theta;
}

/// Expected income of one validator in an epoch, in Gwei.
///
///     r*b_i/sqrt(B) + (1/n) * sum_s (P_s + n*w*b_i/sqrt(B)),  B = sum_j b_j
///
/// n is balances.size(). Balances are ETH, P_series is Gwei per slot.
/// Throws std::invalid_argument on empty or non-positive balances.
double expected_income_general_gwei(double b_i, double r_i, double w_i, std::span<const double> balances,
    std::span<const double> P_series);

double expected_income_general(double b_i, double r_i, double w_i, std::span<const double> balances,
    std::span<const double> P_series, double theta);

/// Closed form with every balance at 32 ETH:
/// (4R*sqrt(2n) + 32*(P + 4W*sqrt(2n))) / n, in Gwei.
double expected_income_simplified_gwei(double n, const EconParams& params);

double expected_income_simplified(double n, const EconParams& params, double theta);

/// The newly issued part of the simplified income, 4*sqrt(2n)*(R + 32W)/n.
double issuance_per_validator_gwei(double n, const EconParams& params);

/// Stay (or join) iff income >= alpha.
inline bool stay_decision(double income_usd, double alpha_usd) noexcept
{
    return income_usd >= alpha_usd;
}

/// Net change in total ETH over an epoch: 4*sqrt(2n)*(R + 32W) - burned.
/// Priority fees are transfers and do not appear.
double supply_delta(double n, const EconParams& params, double burned_gwei);

/// Annualized issuance per validator relative to a 32 ETH deposit.
double apr_estimate(double n, const EconParams& params);

double opportunity_cost(double theta, const AlphaPolicy& policy) noexcept;

/// Coefficients that give `target_apr` at `n` validators. w_share is the
/// fraction of issuance routed through per-slot opportunities (32W over
/// R + 32W). P_avg is left at zero.
EconParams calibrate(double target_apr, double n, double w_share);

/// The shipped default: 4% at 10,000 validators, 10/64 of issuance through
/// proposals and sync duties.
EconParams default_econ_params();
}  // namespace stakesim::econ
