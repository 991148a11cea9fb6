// stakesim: Proof-of-Stake consensus and cryptoeconomics simulator
// Copyright 2026 The stakesim Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stakesim/consensus/beacon_state.hpp>

#include <vector>

namespace stakesim::test
{
inline std::vector<consensus::GenesisValidator> uniform_genesis(std::size_t n, double r = 1000.0, double w = 10.0)
{
    std::vector<consensus::GenesisValidator> out(n);
    for (auto& g : out)
    {
        g.deposit = 32 * gwei_per_eth;
        g.policy.r_coeff = r;
        g.policy.w_coeff = w;
    }
    return out;
}

/// One full epoch with empty blocks from every online proposer.
inline consensus::EpochLedger run_epoch(consensus::BeaconState& s, consensus::BlockContents contents = {})
{
    s.begin_epoch();
    std::vector<consensus::AttestationSummary> atts;
    for (std::size_t i = 0; i < slots_per_epoch; ++i)
    {
        if (s.current_slot() == 0 || !s.slot_proposer_online())
            s.skip_slot();
        else
            s.propose_block(contents);
        const auto a = s.attest_slot();
        atts.insert(atts.end(), a.begin(), a.end());
        s.end_slot();
    }
    return s.process_epoch(atts);
}
}  // namespace stakesim::test
