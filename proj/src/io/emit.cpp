// stakesim: Proof-of-Stake consensus and cryptoeconomics simulator
// Copyright 2026 The stakesim Authors.
// SPDX-License-Identifier: Apache-2.0

#include <stakesim/io/config_json.hpp>
#include <stakesim/io/emit.hpp>

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace stakesim::io
{
using nlohmann::json;

OutputFormats parse_formats(std::string_view list)
{
    OutputFormats f{false, false};
    while (!list.empty())
    {
        const auto comma = list.find(',');
        const auto item = list.substr(0, comma);
        if (item == "csv")
            f.csv = true;
        else if (item == "json")
            f.json = true;
        else
            throw std::invalid_argument{"unknown output format '" + std::string{item} + "'"};
        list = comma == std::string_view::npos ? std::string_view{} : list.substr(comma + 1);
    }
    if (!f.csv && !f.json)
        throw std::invalid_argument{"at least one output format is required"};
    return f;
}

std::string fixed(double value, int decimals)
{
    if (!std::isfinite(value))
        throw std::invalid_argument{"cannot format a non-finite number"};
    if (value == 0.0)
        value = 0.0;  // drop the sign of -0
    std::array<char, 64> buf{};
    const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::fixed, decimals);
    if (ec != std::errc{})
        throw std::invalid_argument{"number too wide to format"};
    return std::string(buf.data(), end);
}

std::string metrics_csv(const scenario::MetricsSeries& series)
{
    std::string out{metrics_header};
    out += '\n';
    for (const auto& r : series.rows)
    {
        out += std::to_string(r.epoch) + ',' + fixed(r.theta_usd, 6) + ',' + std::to_string(r.n_active) + ',' +
               std::to_string(r.total_effective_eth) + ',' + (r.justified ? "1" : "0") + ',' +
               (r.finalized ? "1" : "0") + ',' + std::to_string(r.epochs_since_finality) + ',' +
               fixed(r.base_fee_gwei_avg, 9) + ',' + std::to_string(r.burned_gwei) + ',' +
               std::to_string(r.issued_gwei) + ',' + std::to_string(r.supply_delta_gwei) + ',' +
               std::to_string(r.users_ethereum) + ',' + std::to_string(r.users_competitors) + ',' +
               std::to_string(r.exit_queue) + ',' + std::to_string(r.activation_queue) + ',' +
               std::to_string(r.events) + '\n';
    }
    return out;
}

json events_json(const std::vector<scenario::Event>& events)
{
    using scenario::EventKind;
    json out = json::array();
    for (const auto& e : events)
    {
        json payload = json::object();
        if (e.validator)
            payload["validator"] = *e.validator;
        switch (e.kind)
        {
        case EventKind::attack_started:
            payload["attack"] = std::string{e.detail};
            payload["magnitude"] = e.value;
            payload["victims"] = e.count;
            break;
        case EventKind::exit_requested:
            payload["income_usd"] = e.value;
            break;
        case EventKind::exit_queue_saturated:
            payload["queue_length"] = e.count;
            break;
        case EventKind::validator_offline:
            payload["cost_margin_usd"] = e.value;
            break;
        case EventKind::offline_weight_exceeds_third:
            payload["offline_weight_eth"] = e.value;
            payload["total_effective_eth"] = e.count;
            break;
        case EventKind::finality_stall:
        case EventKind::inactivity_leak_started:
            payload["epochs_since_finality"] = e.count;
            break;
        case EventKind::ejected:
            payload["deposit_eth"] = e.value;
            break;
        case EventKind::slashed:
            payload["confiscated_gwei"] = static_cast<std::int64_t>(e.value);
            break;
        case EventKind::validator_exited:
            payload["cause"] = std::string{e.detail};
            break;
        case EventKind::user_migration:
            payload["out"] = e.count;
            payload["in"] = e.count2;
            payload["eth_sold"] = e.value;
            break;
        case EventKind::finality_resumed:
        case EventKind::activation_requested:
        case EventKind::validator_activated:
            break;
        }
        out.push_back({
            {"epoch", e.epoch},
            {"slot", e.slot},
            {"kind", std::string{to_string(e.kind)}},
            {"payload", payload},
        });
    }
    return out;
}

json summary_json(const scenario::SummaryReport& s)
{
    const auto opt = [](const std::optional<Epoch>& e) { return e ? json(*e) : json(nullptr); };
    json attacks = json::array();
    for (const auto& a : s.attacks)
    {
        attacks.push_back({
            {"kind", std::string{scenario::to_string(a.kind)}},
            {"start_epoch", a.start},
            {"victims", a.victims},
            {"first_stall_epoch", opt(a.first_stall)},
            {"recovered_epoch", opt(a.recovered)},
        });
    }
    return {
        {"epochs", s.epochs},
        {"finality_uptime", s.finality_uptime},
        {"first_stall_epoch", opt(s.first_stall_epoch)},
        {"final_n_active", s.final_n_active},
        {"final_theta_usd", s.final_theta_usd},
        {"total_supply_change_gwei", s.total_supply_change_gwei},
        {"migrated_out", s.migrated_out},
        {"migrated_in", s.migrated_in},
        {"apr_realized", s.apr_realized},
        {"attacks", attacks},
    };
}

json state_json(const consensus::BeaconState& state)
{
    const auto opt = [](const std::optional<Epoch>& e) { return e ? json(*e) : json(nullptr); };
    json validators = json::array();
    for (const auto& r : state.registry())
    {
        validators.push_back({
            {"id", r.id},
            {"deposit_gwei", r.deposit},
            {"effective_balance_eth", r.effective_balance},
            {"status", std::string{to_string(r.status)}},
            {"exit_cause", std::string{to_string(r.exit_cause)}},
            {"activation_epoch", opt(r.activation_epoch)},
            {"slashed_at_epoch", opt(r.slashed_at_epoch)},
            {"exit_epoch", opt(r.exit_epoch)},
        });
    }
    json checkpoints = json::array();
    for (const auto& c : state.checkpoints())
    {
        checkpoints.push_back({
            {"epoch", c.epoch},
            {"block", c.block.value},
            {"justified", c.justified},
            {"finalized", c.finalized},
            {"attesting_weight_eth", c.attesting_weight},
        });
    }
    json blocks = json::array();
    for (const auto& b : state.block_tree().nodes())
    {
        blocks.push_back({
            {"digest", b.digest.value},
            {"parent", b.parent.value},
            {"slot", b.slot},
            {"height", b.height},
            {"proposer", b.proposer == consensus::no_proposer ? json(nullptr) : json(b.proposer)},
            {"gas_used", b.gas_used},
            {"base_fee_per_gas_gwei", b.base_fee_per_gas},
            {"priority_fee_total_gwei", b.priority_fee_total},
            {"attestation_weight_eth", b.attestation_weight},
        });
    }
    const auto ids = [](const auto& q) { return json(std::vector<ValidatorIndex>(q.begin(), q.end())); };
    return {
        {"current_slot", state.current_slot()},
        {"current_epoch", state.current_epoch()},
        {"randao", state.randao().hex()},
        {"head", state.head().value},
        {"last_justified", state.last_justified().block.value},
        {"last_finalized", state.last_finalized().block.value},
        {"epochs_since_finality", state.epochs_since_finality()},
        {"activation_queue", ids(state.activation_queue())},
        {"exit_queue", ids(state.exit_queue())},
        {"total_active_effective_eth", state.total_active_effective()},
        {"validators", validators},
        {"checkpoints", checkpoints},
        {"blocks", blocks},
    };
}

void write_text(const std::filesystem::path& path, std::string_view text)
{
    std::ofstream out{path, std::ios::binary | std::ios::trunc};
    if (!out)
        throw IoError{path, "cannot open for writing"};
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out.flush())
        throw IoError{path, "write failed"};
}

void emit(const scenario::RunResult& result, const scenario::ScenarioConfig& config, OutputFormats formats,
    const std::filesystem::path& dir)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
        throw IoError{dir, ec.message()};
    if (formats.csv)
        write_text(dir / "metrics.csv", metrics_csv(result.metrics));
    if (formats.json)
    {
        write_text(dir / "events.json", events_json(result.events).dump(2) + '\n');
        write_text(dir / "summary.json", summary_json(scenario::summarize(result.metrics)).dump(2) + '\n');
    }
    write_text(dir / "config.resolved.json", config_to_json(config).dump(2) + '\n');
}
}  // namespace stakesim::io
