// stakesim: Proof-of-Stake consensus and cryptoeconomics simulator
// Copyright 2026 The stakesim Authors.
// SPDX-License-Identifier: Apache-2.0

#include <stakesim/io/config_json.hpp>
#include <stakesim/io/sweep.hpp>

#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace stakesim::io
{
using nlohmann::json;
using scenario::ConfigError;

namespace
{
std::vector<std::string> split_path(const std::string& param)
{
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true)
    {
        const auto dot = param.find('.', start);
        parts.push_back(param.substr(start, dot - start));
        if (dot == std::string::npos)
            break;
        start = dot + 1;
    }
    return parts;
}

json* locate(json& doc, const std::vector<std::string>& parts)
{
    json* node = &doc;
    for (const auto& p : parts)
    {
        if (node->is_object())
        {
            const auto it = node->find(p);
            if (it == node->end())
                return nullptr;
            node = &*it;
        }
        else if (node->is_array())
        {
            std::size_t idx = 0;
            const auto [end, ec] = std::from_chars(p.data(), p.data() + p.size(), idx);
            if (ec != std::errc{} || end != p.data() + p.size() || idx >= node->size())
                return nullptr;
            node = &(*node)[idx];
        }
        else
        {
            return nullptr;
        }
    }
    return node;
}
}  // namespace

scenario::ScenarioConfig sweep_point(const json& base, const std::string& param, double value, std::size_t index)
{
    // Resolve defaults first so every schema field is addressable.
    auto doc = config_to_json(config_from_json(base));
    json* node = locate(doc, split_path(param));
    if (node == nullptr || !(node->is_number() || node->is_null()))
        throw ConfigError{{{param, "not a numeric config field"}}};
    if (node->is_number_integer())
    {
        if (value != std::floor(value))
            throw ConfigError{{{param, "requires an integer value"}}};
        if (value < 0.0 && node->is_number_unsigned())
            *node = static_cast<std::int64_t>(value);
        else if (node->is_number_unsigned())
            *node = static_cast<std::uint64_t>(value);
        else
            *node = static_cast<std::int64_t>(value);
    }
    else
    {
        *node = value;
    }
    auto config = config_from_json(doc);
    config.seed += index;
    return config;
}

std::vector<double> parse_values(std::string_view list)
{
    std::vector<double> out;
    while (!list.empty())
    {
        const auto comma = list.find(',');
        const auto item = list.substr(0, comma);
        double v = 0.0;
        const auto [end, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
        if (ec != std::errc{} || end != item.data() + item.size() || !std::isfinite(v))
            throw std::invalid_argument{"sweep value '" + std::string{item} + "' is not a finite number"};
        out.push_back(v);
        list = comma == std::string_view::npos ? std::string_view{} : list.substr(comma + 1);
    }
    if (out.empty())
        throw std::invalid_argument{"sweep needs at least one value"};
    return out;
}

std::string run_sweep(const SweepRequest& req)
{
    // Validate every point up front so a bad path fails before any run.
    std::vector<scenario::ScenarioConfig> configs;
    for (std::size_t i = 0; i < req.values.size(); ++i)
        configs.push_back(sweep_point(req.base, req.param, req.values[i], i));

    std::vector<scenario::SummaryReport> summaries(configs.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    const auto worker = [&] {
        for (auto i = next++; i < configs.size(); i = next++)
        {
            try
            {
                const auto result = scenario::run_scenario(configs[i]);
                emit(result, configs[i], req.formats, req.out / ("run_" + std::to_string(i)));
                summaries[i] = scenario::summarize(result.metrics);
            }
            catch (...)
            {
                const std::lock_guard lock{failure_mutex};
                if (!failure)
                    failure = std::current_exception();
            }
        }
    };
    unsigned workers = req.workers != 0 ? req.workers : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, static_cast<unsigned>(configs.size()));
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back(worker);
    for (auto& t : pool)
        t.join();
    if (failure)
        std::rethrow_exception(failure);

    std::string csv = "run,param,value,seed,epochs,finality_uptime,first_stall_epoch,final_n_active,"
                      "final_theta_usd,total_supply_change_gwei,migrated_out,migrated_in,apr_realized\n";
    for (std::size_t i = 0; i < configs.size(); ++i)
    {
        const auto& s = summaries[i];
        csv += std::to_string(i) + ',' + req.param + ',' + fixed(req.values[i], 6) + ',' +
               std::to_string(configs[i].seed) + ',' + std::to_string(s.epochs) + ',' + fixed(s.finality_uptime, 6) +
               ',' + (s.first_stall_epoch ? std::to_string(*s.first_stall_epoch) : std::string{}) + ',' +
               std::to_string(s.final_n_active) + ',' + fixed(s.final_theta_usd, 6) + ',' +
               std::to_string(s.total_supply_change_gwei) + ',' + std::to_string(s.migrated_out) + ',' +
               std::to_string(s.migrated_in) + ',' + fixed(s.apr_realized, 9) + '\n';
    }
    write_text(req.out / "aggregate.csv", csv);
    return csv;
}
}  // namespace stakesim::io
