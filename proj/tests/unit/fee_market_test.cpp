// stakesim: Proof-of-Stake consensus and cryptoeconomics simulator
// Copyright 2026 The stakesim Authors.
// SPDX-License-Identifier: Apache-2.0

#include <stakesim/gas/fee_market.hpp>

#include <gtest/gtest.h>

#include <cmath>

using namespace stakesim;
using namespace stakesim::gas;

namespace
{
// 1 USD of fee per Gwei/gas at theta = 1000 and 1M gas.
constexpr std::uint64_t mgas = 1'000'000;

Transaction tx(double utility, double priority = 0.0, std::uint64_t gas = mgas, std::uint64_t id = 0)
{
    Transaction t;
    t.id = id;
    t.gas = gas;
    t.utility_ethereum_usd = utility;
    t.max_priority_fee = priority;
    return t;
}

PlatformQuote competitor(double fee_usd_per_mgas, double utility, double lock_in = 0.0, PlatformId id = 1)
{
    PlatformQuote q;
    q.id = id;
    q.gas_price = fee_usd_per_mgas;
    q.token_rate_usd = 1000.0;
    q.lock_in_usd = lock_in;
    q.utility_usd = utility;
    return q;
}
}  // namespace

TEST(base_fee, full_half_and_empty_blocks)
{
    const GasParams p;
    EXPECT_DOUBLE_EQ(base_fee_next(100.0, p.block_gas_limit, p), 112.5);
    EXPECT_DOUBLE_EQ(base_fee_next(100.0, p.block_gas_limit / 2, p), 100.0);
    // Independent evaluation of the linear rule at zero gas: 100 * (1 - 0.125).
    const double oracle = 100.0 - 100.0 * 0.125 * (15e6 / 15e6);
    EXPECT_DOUBLE_EQ(base_fee_next(100.0, 0, p), oracle);
}

TEST(base_fee, compounds_exactly)
{
    const GasParams p;
    double up = 1.0;
    double down = 1.0;
    for (int k = 0; k < 10; ++k)
    {
        up = base_fee_next(up, p.block_gas_limit, p);
        down = base_fee_next(down, 0, p);
    }
    EXPECT_LE(std::abs(up / std::pow(1.125, 10) - 1.0), 1e-12);
    EXPECT_LE(std::abs(down / std::pow(0.875, 10) - 1.0), 1e-12);
}

TEST(base_fee, floor_and_bounds)
{
    const GasParams p;
    EXPECT_DOUBLE_EQ(base_fee_next(1e-9, 0, p), min_base_fee);
    EXPECT_THROW(base_fee_next(1.0, p.block_gas_limit + 1, p), std::invalid_argument);
    GasParams bad;
    bad.max_change_rate = 1.0;
    EXPECT_THROW(bad.validate(), std::invalid_argument);
}

TEST(tx_rational, boundary_is_inclusive)
{
    // fee_usd = 90, 100 and 110 at theta = 1000.
    EXPECT_TRUE(tx_rational(tx(100.0), 90.0, 1000.0));
    EXPECT_TRUE(tx_rational(tx(100.0), 100.0, 1000.0));
    EXPECT_FALSE(tx_rational(tx(100.0), 110.0, 1000.0));
    EXPECT_TRUE(tx_rational(tx(100.0, 10.0), 90.0, 1000.0));
    EXPECT_FALSE(tx_rational(tx(100.0, 10.1), 90.0, 1000.0));
}

TEST(choose_platform, competition_examples)
{
    // Ethereum fee $10, competitor fee $8, equal utility.
    const auto t = tx(100.0);
    std::vector<PlatformQuote> q{competitor(8.0, 100.0)};
    EXPECT_EQ(choose_platform(t, 10.0, 1000.0, q), PlatformId{1});
    q[0].lock_in_usd = 5.0;
    EXPECT_EQ(choose_platform(t, 10.0, 1000.0, q), ethereum);  // -10 >= -13
    q[0].lock_in_usd = -3.0;
    EXPECT_EQ(choose_platform(t, 10.0, 1000.0, q), PlatformId{1});  // -10 < -5
}

TEST(choose_platform, ties_keep_the_incumbent)
{
    const auto t = tx(100.0);
    const std::vector<PlatformQuote> q{competitor(10.0, 100.0, 0.0, 2), competitor(10.0, 100.0, 0.0, 1)};
    EXPECT_EQ(choose_platform(t, 10.0, 1000.0, q), ethereum);
    EXPECT_EQ(choose_platform(t, 10.0, 1000.0, q, 2), PlatformId{2});
    EXPECT_EQ(choose_platform(t, 11.0, 1000.0, q), PlatformId{1});
}

TEST(choose_platform, none_when_chosen_platform_is_irrational)
{
    const auto t = tx(5.0);
    const std::vector<PlatformQuote> q{competitor(8.0, 5.0, -10.0)};
    EXPECT_EQ(choose_platform(t, 10.0, 1000.0, q), std::nullopt);
    EXPECT_EQ(choose_platform(t, 10.0, 1000.0, {}), std::nullopt);
    EXPECT_EQ(choose_platform(t, 1.0, 1000.0, {}), ethereum);
}

TEST(choose_platform, depends_only_on_fee_times_rate)
{
    const auto t = tx(100.0, 0.0, 21'000);
    for (const double c : {0.001, 0.5, 3.0, 1e4})
    {
        for (const double comp_fee : {5.0, 9.99, 10.01, 20.0})
        {
            auto base = competitor(comp_fee, 100.0);
            auto scaled = base;
            scaled.gas_price *= c;
            scaled.token_rate_usd /= c;
            const std::vector<PlatformQuote> a{base};
            const std::vector<PlatformQuote> b{scaled};
            EXPECT_EQ(choose_platform(t, 10.0, 1000.0, a), choose_platform(t, 10.0, 1000.0, b))
                << "c=" << c << " fee=" << comp_fee;
        }
    }
}

TEST(build_block, greedy_by_priority_within_limit)
{
    const GasParams p;
    std::vector<Transaction> pool{tx(1e9, 1.0, 10 * mgas, 1), tx(1e9, 3.0, 10 * mgas, 2), tx(1e9, 2.0, 10 * mgas, 3)};
    auto b = build_block(pool, 1.0, 1000.0, p);
    EXPECT_EQ(b.included.size(), 3u);
    EXPECT_EQ(b.gas_used, 30 * mgas);

    pool.push_back(tx(1e9, 5.0, 10 * mgas, 4));
    b = build_block(pool, 1.0, 1000.0, p);
    EXPECT_EQ(b.included, (std::vector<std::uint64_t>{4, 2, 3}));
    EXPECT_DOUBLE_EQ(b.priority_total, (5.0 + 3.0 + 2.0) * 10 * mgas);
    EXPECT_DOUBLE_EQ(b.burned, 1.0 * 30 * mgas);
}

TEST(build_block, excludes_irrational_even_with_space)
{
    const GasParams p;
    const std::vector<Transaction> pool{tx(100.0, 0.0, mgas, 1), tx(5.0, 9.0, mgas, 2)};
    const auto b = build_block(pool, 10.0, 1000.0, p);  // fee $10 each (tx 2 pays $19)
    EXPECT_EQ(b.included, (std::vector<std::uint64_t>{1}));
    EXPECT_EQ(b.gas_used, mgas);
    EXPECT_DOUBLE_EQ(b.burned, 10.0 * mgas);
}

TEST(build_block, skips_oversized_and_keeps_filling)
{
    GasParams p;
    p.block_gas_limit = 25 * mgas;
    const std::vector<Transaction> pool{
        tx(1e9, 3.0, 20 * mgas, 1), tx(1e9, 2.0, 10 * mgas, 2), tx(1e9, 1.0, 5 * mgas, 3)};
    const auto b = build_block(pool, 0.0, 1000.0, p);
    EXPECT_EQ(b.included, (std::vector<std::uint64_t>{1, 3}));
    EXPECT_LE(b.gas_used, p.block_gas_limit);
}
