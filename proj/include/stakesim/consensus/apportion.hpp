// stakesim: Proof-of-Stake consensus and cryptoeconomics simulator
// Copyright 2026 The stakesim Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stakesim/units.hpp>

#include <span>
#include <vector>

namespace stakesim::consensus
{
/// Rounds non-negative real-valued Gwei amounts to integers whose sum equals
/// the rounded total (largest-remainder method, ties to the lower index).
/// Each result differs from its input by less than 1 Gwei.
std::vector<Gwei> apportion(std::span<const double> amounts);
}  // namespace stakesim::consensus
