// stakesim: Proof-of-Stake consensus and cryptoeconomics simulator
// Copyright 2026 The stakesim Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stakesim/io/emit.hpp>

#include <nlohmann/json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace stakesim::io
{
struct SweepRequest
{
    nlohmann::json base;  ///< the scenario document before the override
    std::string param;    ///< dotted path, e.g. "price.initial"
    std::vector<double> values;
    std::filesystem::path out;
    OutputFormats formats;
    unsigned workers = 0;  ///< 0: hardware concurrency
};

/// The config for one sweep point: `param` set to `value`, seed = base + index.
/// Throws ConfigError if the path does not name a numeric field.
scenario::ScenarioConfig sweep_point(const nlohmann::json& base, const std::string& param, double value,
    std::size_t index);

/// Parses "v1,v2,..." into finite numbers.
std::vector<double> parse_values(std::string_view list);

/// Runs every point (in parallel), writes out/run_<i>/ and out/aggregate.csv.
/// Returns the aggregate CSV text.
std::string run_sweep(const SweepRequest& request);
}  // namespace stakesim::io
