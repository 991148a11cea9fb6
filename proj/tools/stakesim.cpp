// stakesim: Proof-of-Stake consensus and cryptoeconomics simulator
// Copyright 2026 The stakesim Authors.
// SPDX-License-Identifier: Apache-2.0

#include <stakesim/io/config_json.hpp>
#include <stakesim/io/emit.hpp>
#include <stakesim/io/sweep.hpp>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <iostream>
#include <optional>

namespace
{
using nlohmann::json;
using namespace stakesim;

enum ExitCode : int
{
    ok = 0,
    internal_error = 1,
    config_error = 2,
    io_error = 3,
    usage_error = 4,
};

int report(std::string_view category, const std::string& message, json extra = json::object())
{
    json err = {{"error", std::string{category}}, {"message", message}};
    err.update(extra);
    std::cerr << err.dump() << '\n';
    return category == "config" ? config_error
           : category == "io"   ? io_error
           : category == "usage" ? usage_error
                                 : internal_error;
}

void setup_logging()
{
    auto logger = spdlog::stderr_color_mt("stakesim");
    spdlog::set_default_logger(logger);
    spdlog::set_level(spdlog::level::warn);
    if (const char* env = std::getenv("STAKESIM_LOG"))
        spdlog::set_level(spdlog::level::from_str(env));
}

struct RunOptions
{
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> epochs;
    std::string out = "out";
    std::string formats = "csv,json";
    bool snapshot = false;
};

struct SweepOptions
{
    std::string config;
    std::string param;
    std::string values;
    std::string out = "sweep";
    std::string formats = "csv,json";
    unsigned workers = 0;
};

int do_run(const RunOptions& opt)
{
    const auto formats = io::parse_formats(opt.formats);
    auto config = io::parse_config(opt.config);
    if (opt.seed)
        config.seed = *opt.seed;
    if (opt.epochs)
        config.epochs = *opt.epochs;

    spdlog::info("running {} epochs, seed {}", config.epochs, config.seed);
    scenario::Simulation sim{config};
    while (!sim.done())
    {
        const auto& row = sim.step();
        spdlog::debug("epoch {} finalized={} n={} theta={}", row.epoch, row.finalized, row.n_active, row.theta_usd);
    }
    const auto& state = sim.state();
    const auto snapshot = opt.snapshot ? io::state_json(state) : json{};
    const auto result = std::move(sim).finish();
    io::emit(result, config, formats, opt.out);
    if (opt.snapshot)
        io::write_text(std::filesystem::path{opt.out} / "state.json", snapshot.dump(2) + '\n');

    const auto summary = scenario::summarize(result.metrics);
    spdlog::info("done: finality uptime {:.3f}, final n {}", summary.finality_uptime, summary.final_n_active);
    return ok;
}

int do_sweep(const SweepOptions& opt)
{
    io::SweepRequest req;
    req.base = io::read_json_file(opt.config);
    req.param = opt.param;
    req.values = io::parse_values(opt.values);
    req.out = opt.out;
    req.formats = io::parse_formats(opt.formats);
    req.workers = opt.workers;
    spdlog::info("sweeping {} over {} values", req.param, req.values.size());
    io::run_sweep(req);
    return ok;
}
}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"stakesim: Proof-of-Stake consensus and cryptoeconomics simulator"};
    app.require_subcommand(1);

    RunOptions run;
    auto* run_cmd = app.add_subcommand("run", "Simulate one scenario");
    run_cmd->add_option("--config", run.config, "Scenario JSON")->required();
    run_cmd->add_option("--seed", run.seed, "Override the config seed");
    run_cmd->add_option("--epochs", run.epochs, "Override the epoch count");
    run_cmd->add_option("--out", run.out, "Output directory")->capture_default_str();
    run_cmd->add_option("--format", run.formats, "Comma-separated subset of csv,json")->capture_default_str();
    run_cmd->add_flag("--snapshot", run.snapshot, "Also write the final state to state.json");

    SweepOptions sweep;
    auto* sweep_cmd = app.add_subcommand("sweep", "Run one scenario per parameter value");
    sweep_cmd->add_option("--config", sweep.config, "Scenario JSON")->required();
    sweep_cmd->add_option("--param", sweep.param, "Dotted config path, e.g. price.initial")->required();
    sweep_cmd->add_option("--values", sweep.values, "Comma-separated values")->required();
    sweep_cmd->add_option("--out", sweep.out, "Output directory")->capture_default_str();
    sweep_cmd->add_option("--format", sweep.formats, "Comma-separated subset of csv,json")->capture_default_str();
    sweep_cmd->add_option("--workers", sweep.workers, "Parallel runs (0: one per core)");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp& e)
    {
        return app.exit(e);
    }
    catch (const CLI::CallForAllHelp& e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError& e)
    {
        return report("usage", e.what());
    }

    setup_logging();
    try
    {
        if (run_cmd->parsed())
            return do_run(run);
        return do_sweep(sweep);
    }
    catch (const scenario::ConfigError& e)
    {
        json issues = json::array();
        for (const auto& i : e.issues())
            issues.push_back({{"field", i.field}, {"reason", i.reason}});
        return report("config", e.what(), {{"issues", issues}});
    }
    catch (const io::IoError& e)
    {
        return report("io", e.what(), {{"path", e.path().string()}});
    }
    catch (const std::invalid_argument& e)
    {
        return report("usage", e.what());
    }
    catch (const std::exception& e)
    {
        return report("internal", e.what());
    }
}
