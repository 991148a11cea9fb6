// stakesim: Proof-of-Stake consensus and cryptoeconomics simulator
// Copyright 2026 The stakesim Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stakesim/scenario/config.hpp>

#include <nlohmann/json.hpp>

#include <filesystem>
#include <stdexcept>
#include <string>

namespace stakesim::io
{
/// File system failure; the message carries the path.
class IoError : public std::runtime_error
{
public:
    IoError(const std::filesystem::path& path, const std::string& reason);

    const std::filesystem::path& path() const noexcept { return path_; }

private:
    std::filesystem::path path_;
};

/// Strict: unknown keys and wrongly typed values are ConfigError issues.
/// Missing keys take their defaults. The result is validated.
scenario::ScenarioConfig config_from_json(const nlohmann::json& doc);

/// Every field, defaults included. config_from_json(config_to_json(c)) == c.
nlohmann::json config_to_json(const scenario::ScenarioConfig& config);

/// Reads a UTF-8 JSON file. Throws IoError if it cannot be read and
/// ConfigError on malformed JSON or schema violations.
nlohmann::json read_json_file(const std::filesystem::path& path);

scenario::ScenarioConfig parse_config(const std::filesystem::path& path);
}  // namespace stakesim::io
