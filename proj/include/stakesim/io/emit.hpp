// stakesim: Proof-of-Stake consensus and cryptoeconomics simulator
// Copyright 2026 The stakesim Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stakesim/scenario/engine.hpp>

#include <nlohmann/json.hpp>

#include <filesystem>
#include <string>
#include <string_view>

namespace stakesim::io
{
inline constexpr std::string_view metrics_header =
    "epoch,theta_usd,n_active,total_effective_eth,justified,finalized,epochs_since_finality,"
    "base_fee_gwei_avg,burned_gwei,issued_gwei,supply_delta_gwei,users_ethereum,users_competitors,"
    "exit_queue,activation_queue,events";

struct OutputFormats
{
    bool csv = true;   ///< metrics.csv
    bool json = true;  ///< events.json and summary.json
};

/// Parses "csv,json". Throws std::invalid_argument on unknown or empty lists.
OutputFormats parse_formats(std::string_view list);

/// Fixed-point decimal, independent of the C locale.
std::string fixed(double value, int decimals);

std::string metrics_csv(const scenario::MetricsSeries& series);
nlohmann::json events_json(const std::vector<scenario::Event>& events);
nlohmann::json summary_json(const scenario::SummaryReport& summary);
nlohmann::json state_json(const consensus::BeaconState& state);

/// Writes `text` to `path`, throwing IoError with the path on failure.
void write_text(const std::filesystem::path& path, std::string_view text);

/// Creates `dir` and writes the requested files plus config.resolved.json.
void emit(const scenario::RunResult& result, const scenario::ScenarioConfig& config, OutputFormats formats,
    const std::filesystem::path& dir);
}  // namespace stakesim::io
