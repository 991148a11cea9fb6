// stakesim: Proof-of-Stake consensus and cryptoeconomics simulator
// Copyright 2026 The stakesim Authors.
// SPDX-License-Identifier: Apache-2.0

#include <stakesim/econ/income.hpp>

#include <gtest/gtest.h>

#include <array>
#include <cmath>

using namespace stakesim;
using namespace stakesim::econ;

namespace
{
const std::array<double, 32> no_fees{};

double rel(double a, double b)
{
    return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}
}  // namespace

TEST(income_general, worked_values)
{
    const std::vector<double> one{32.0};
    EXPECT_DOUBLE_EQ(expected_income_general_gwei(32.0, 0.0, 0.0, one, no_fees), 0.0);
    EXPECT_NEAR(expected_income_general_gwei(32.0, std::sqrt(32.0), 0.0, one, no_fees), 32.0, 1e-12);

    // n = 2 equal balances: (1/n) * sum_s n*w*b/sqrt(B) == 32*w*b/sqrt(B).
    const std::vector<double> two{32.0, 32.0};
    const double w = 3.5;
    EXPECT_NEAR(expected_income_general_gwei(32.0, 0.0, w, two, no_fees), 32.0 * w * 32.0 / std::sqrt(64.0), 1e-9);
}

TEST(income_general, converts_gwei_to_usd)
{
    const std::vector<double> one{32.0};
    const double gwei = expected_income_general_gwei(32.0, 1e6, 0.0, one, no_fees);
    EXPECT_DOUBLE_EQ(expected_income_general(32.0, 1e6, 0.0, one, no_fees, 2000.0), gwei / 1e9 * 2000.0);
}

TEST(income_general, rejects_empty_balances)
{
    const std::vector<double> none;
    EXPECT_THROW(expected_income_general_gwei(32.0, 1.0, 1.0, none, no_fees), std::invalid_argument);
}

TEST(income_simplified, worked_values)
{
    EXPECT_DOUBLE_EQ(expected_income_simplified_gwei(2, {64.0, 2.0, 0.0}), 512.0);
    EXPECT_DOUBLE_EQ(expected_income_simplified_gwei(8, {1.0, 0.0, 0.0}), 2.0);
    // P = 10, theta = 2 on the raw scale: (32*10/2) * 2.
    EXPECT_DOUBLE_EQ(expected_income_simplified_gwei(2, {0.0, 0.0, 10.0}) * 2.0, 320.0);
    EXPECT_DOUBLE_EQ(expected_income_simplified(2, {0.0, 0.0, 10.0}, 2.0), 320.0 / 1e9);
}

TEST(income_simplified, equals_general_at_uniform_32)
{
    const EconParams p{1234.5, 67.25, 800.0};
    for (const int n : {1, 2, 3, 10, 64, 1000})
    {
        const std::vector<double> balances(static_cast<std::size_t>(n), 32.0);
        std::array<double, 32> P{};
        P.fill(p.P_avg);
        const double general = expected_income_general_gwei(32.0, p.R, p.W, balances, P);
        EXPECT_LE(rel(general, expected_income_simplified_gwei(n, p)), 1e-12) << "n=" << n;
    }
}

TEST(income_simplified, issuance_times_n_matches_supply_term)
{
    const EconParams p{1000.0, 40.0, 0.0};
    for (double n = 1; n <= 1e6; n *= 3)
    {
        const double issued = n * expected_income_simplified_gwei(n, p);
        EXPECT_LE(rel(issued, supply_delta(n, p, 0.0)), 1e-12) << "n=" << n;
    }
}

TEST(income_simplified, strictly_decreasing_in_n)
{
    const EconParams p{1000.0, 40.0, 5.0};
    double prev = expected_income_simplified_gwei(2, p);
    for (int k = 2; k <= 20; ++k)
    {
        const double now = expected_income_simplified_gwei(std::ldexp(1.0, k), p);
        EXPECT_LT(now, prev);
        prev = now;
    }
}

// Oracle: the issuance share falls as sqrt(2n)/n, so n -> 4n halves it.
TEST(income_simplified, quadrupling_n_halves_issuance)
{
    const EconParams p{2.0e5, 1.3e3, 0.0};
    for (const double n : {10.0, 1e3, 1e5})
    {
        const double oracle = 0.5 * 4.0 * std::sqrt(2.0 * n) * (p.R + 32.0 * p.W) / n;
        EXPECT_LE(rel(expected_income_simplified_gwei(4 * n, p), oracle), 1e-12);
        EXPECT_LE(rel(apr_estimate(4 * n, p), 0.5 * apr_estimate(n, p)), 1e-12);
    }
}

TEST(stay_decision, inclusive)
{
    EXPECT_TRUE(stay_decision(5.0, 4.0));
    EXPECT_FALSE(stay_decision(5.0, 6.0));
    EXPECT_TRUE(stay_decision(5.0, 5.0));
}

TEST(supply_delta, worked_values)
{
    EXPECT_DOUBLE_EQ(supply_delta(8, {1.0, 0.0, 0.0}, 0.0), 16.0);
    EXPECT_DOUBLE_EQ(supply_delta(8, {1.0, 0.0, 0.0}, 20.0), -4.0);
    EXPECT_DOUBLE_EQ(supply_delta(2, {64.0, 1.0, 0.0}, 0.0), 768.0);
    EXPECT_DOUBLE_EQ(supply_delta(2, {64.0, 1.0, 1e9}, 0.0), 768.0);  // priority fees excluded
}

TEST(apr, definitional_and_calibrated)
{
    // Per-epoch issuance of 32e9/82125 Gwei per validator is 100% a year.
    const double n = 100.0;
    const double target = 32e9 / 82125.0;
    const double sum = target * n / (4.0 * std::sqrt(2.0 * n));
    EXPECT_NEAR(apr_estimate(n, {sum, 0.0, 0.0}), 1.0, 1e-12);

    const auto d = default_econ_params();
    EXPECT_NEAR(apr_estimate(1e4, d), 0.04, 1e-12);
    EXPECT_NEAR(32.0 * d.W / (d.R + 32.0 * d.W), 10.0 / 64.0, 1e-12);
    EXPECT_THROW(calibrate(0.0, 1e4, 0.1), std::invalid_argument);
}

TEST(opportunity_cost, linear_model)
{
    EXPECT_DOUBLE_EQ(opportunity_cost(2000.0, {0.0, 0.0}), 0.0);
    EXPECT_DOUBLE_EQ(opportunity_cost(2000.0, {1.0, 0.0}), 1.0);
    EXPECT_NEAR(opportunity_cost(2000.0, {0.0, 1e-5}), 0.64, 1e-12);
    EXPECT_NEAR(opportunity_cost(2000.0, {3.0, 1e-5}), 3.64, 1e-12);
}

TEST(stay_decision, invariant_under_currency_rescaling)
{
    const EconParams p{2.0e5, 1.3e3, 100.0};
    const AlphaPolicy alpha{0.0, 1.2e-6};
    for (const double theta : {10.0, 2000.0})
    {
        for (const double scale : {0.01, 7.0})
        {
            const double inc = expected_income_simplified(1e4, p, theta);
            EXPECT_EQ(stay_decision(inc, opportunity_cost(theta, alpha)),
                stay_decision(inc * scale, opportunity_cost(theta * scale, alpha)));
        }
    }
}
