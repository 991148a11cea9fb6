// stakesim: Proof-of-Stake consensus and cryptoeconomics simulator
// Copyright 2026 The stakesim Authors.
// SPDX-License-Identifier: Apache-2.0

#include <stakesim/io/config_json.hpp>

#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace stakesim::io
{
using nlohmann::json;
using scenario::ConfigError;

IoError::IoError(const std::filesystem::path& path, const std::string& reason)
  : std::runtime_error{path.string() + ": " + reason}, path_{path}
{}

namespace
{
/// Walks one JSON object, reading known keys and flagging the rest.
class ObjectReader
{
public:
    ObjectReader(const json& obj, std::string path, std::vector<ConfigError::Issue>& issues)
      : obj_{obj}, path_{std::move(path)}, issues_{issues}
    {
        if (!obj_.is_object())
        {
            fail(path_.empty() ? "<root>" : path_, "must be an object");
            valid_ = false;
        }
    }

    ObjectReader(const ObjectReader&) = delete;
    ObjectReader& operator=(const ObjectReader&) = delete;

    ~ObjectReader()
    {
        if (!valid_)
            return;
        for (const auto& [key, value] : obj_.items())
        {
            if (!seen_.contains(key))
                fail(field(key), "unknown key");
        }
    }

    std::string field(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

    const json* get(const std::string& key)
    {
        seen_.insert(key);
        if (!valid_)
            return nullptr;
        const auto it = obj_.find(key);
        return it == obj_.end() ? nullptr : &*it;
    }

    void number(const std::string& key, double& out)
    {
        if (const auto* v = get(key))
        {
            if (v->is_number())
                out = v->get<double>();
            else
                fail(field(key), "must be a number");
        }
    }

    void number(const std::string& key, std::optional<double>& out)
    {
        if (const auto* v = get(key))
        {
            if (v->is_null())
                out.reset();
            else if (v->is_number())
                out = v->get<double>();
            else
                fail(field(key), "must be a number or null");
        }
    }

    void integer(const std::string& key, std::int64_t& out)
    {
        if (const auto* v = get(key))
        {
            if (v->is_number_integer())
                out = v->get<std::int64_t>();
            else
                fail(field(key), "must be an integer");
        }
    }

    template <typename T>
    void unsigned_integer(const std::string& key, T& out)
    {
        if (const auto* v = get(key))
        {
            // Signed storage is normal for small literals built in code.
            if (!v->is_number_integer())
                fail(field(key), "must be an integer");
            else if (!v->is_number_unsigned() && v->get<std::int64_t>() < 0)
                fail(field(key), "must be >= 0");
            else if (v->get<std::uint64_t>() <= std::numeric_limits<T>::max())
                out = static_cast<T>(v->get<std::uint64_t>());
            else
                fail(field(key), "is too large");
        }
    }

    void boolean(const std::string& key, bool& out)
    {
        if (const auto* v = get(key))
        {
            if (v->is_boolean())
                out = v->get<bool>();
            else
                fail(field(key), "must be a boolean");
        }
    }

    void range(const std::string& key, scenario::Range& out)
    {
        if (const auto* v = get(key))
        {
            if (v->is_number())
                out.lo = out.hi = v->get<double>();
            else if (v->is_array() && v->size() == 2 && (*v)[0].is_number() && (*v)[1].is_number())
                out = {(*v)[0].get<double>(), (*v)[1].get<double>()};
            else
                fail(field(key), "must be a number or a [lo, hi] pair");
        }
    }

    void fail(std::string field, std::string reason) { issues_.push_back({std::move(field), std::move(reason)}); }

private:
    const json& obj_;
    std::string path_;
    std::vector<ConfigError::Issue>& issues_;
    std::set<std::string> seen_;
    bool valid_ = true;
};

void read_gas(const json& j, const std::string& path, gas::GasParams& g, std::vector<ConfigError::Issue>& issues)
{
    ObjectReader r{j, path, issues};
    r.unsigned_integer("block_gas_limit", g.block_gas_limit);
    r.number("max_change_rate", g.max_change_rate);
    r.number("initial_base_fee_gwei", g.initial_base_fee);
}

void read_price(const json& j, const std::string& path, scenario::PricePathConfig& p,
    std::vector<ConfigError::Issue>& issues)
{
    ObjectReader r{j, path, issues};
    if (const auto* k = r.get("kind"))
    {
        const auto kind = k->is_string() ? scenario::parse_price_kind(k->get<std::string>()) : std::nullopt;
        if (kind)
            p.kind = *kind;
        else
            r.fail(r.field("kind"), "must be one of constant, linear, geometric, shock, piecewise");
    }
    r.number("initial", p.initial);
    r.number("slope", p.slope);
    r.number("rate", p.rate);
    r.unsigned_integer("shock_epoch", p.shock_epoch);
    r.number("shock_factor", p.shock_factor);
    if (const auto* pts = r.get("points"))
    {
        p.points.clear();
        bool ok = pts->is_array();
        if (ok)
        {
            for (const auto& pt : *pts)
            {
                if (!(pt.is_array() && pt.size() == 2 && pt[0].is_number_integer() && pt[0].get<std::int64_t>() >= 0 && pt[1].is_number()))
                {
                    ok = false;
                    break;
                }
                p.points.emplace_back(pt[0].get<std::uint64_t>(), pt[1].get<double>());
            }
        }
        if (!ok)
            r.fail(r.field("points"), "must be a list of [epoch, usd] pairs");
    }
}

template <typename T, typename Fn>
void read_list(ObjectReader& parent, const std::string& key, std::vector<T>& out,
    std::vector<ConfigError::Issue>& issues, Fn read_one)
{
    const auto* v = parent.get(key);
    if (v == nullptr)
        return;
    if (!v->is_array())
    {
        parent.fail(parent.field(key), "must be a list");
        return;
    }
    out.clear();
    for (std::size_t i = 0; i < v->size(); ++i)
    {
        T item;
        ObjectReader r{(*v)[i], parent.field(key) + "[" + std::to_string(i) + "]", issues};
        read_one(r, item);
        out.push_back(item);
    }
}

json range_json(const scenario::Range& r)
{
    return json::array({r.lo, r.hi});
}
}  // namespace

scenario::ScenarioConfig config_from_json(const json& doc)
{
    scenario::ScenarioConfig c;
    std::vector<ConfigError::Issue> issues;
    {
        ObjectReader root{doc, "", issues};
        root.unsigned_integer("epochs", c.epochs);
        root.unsigned_integer("seed", c.seed);
        root.integer("churn_limit", c.churn_limit);

        if (const auto* v = root.get("validators"))
        {
            ObjectReader r{*v, "validators", issues};
            r.unsigned_integer("count", c.validators.count);
            r.number("deposit_eth", c.validators.deposit_eth);
            r.number("spread_eth", c.validators.spread_eth);
            r.number("r", c.validators.r);
            r.number("w", c.validators.w);
            r.number("dishonest_fraction", c.validators.dishonest_fraction);
        }
        if (const auto* v = root.get("candidates"))
        {
            ObjectReader r{*v, "candidates", issues};
            r.unsigned_integer("pool", c.candidates.pool);
            r.number("deposit_eth", c.candidates.deposit_eth);
        }
        if (const auto* v = root.get("users"))
        {
            ObjectReader r{*v, "users", issues};
            r.unsigned_integer("count", c.users.count);
            r.number("tx_probability", c.users.tx_probability);
            r.range("gas", c.users.gas);
            r.range("utility_usd", c.users.utility_usd);
            r.range("priority_fee_gwei", c.users.priority_fee_gwei);
            r.number("eth_holding", c.users.eth_holding);
        }
        if (const auto* v = root.get("gas"))
            read_gas(*v, "gas", c.gas, issues);
        if (const auto* v = root.get("econ"))
        {
            ObjectReader r{*v, "econ", issues};
            r.number("R", c.econ.R);
            r.number("W", c.econ.W);
            r.number("P_avg", c.econ.P_avg);
        }
        if (const auto* v = root.get("alpha"))
        {
            ObjectReader r{*v, "alpha", issues};
            r.number("fixed_usd", c.alpha.fixed_usd);
            r.number("fixed_usd_spread", c.alpha.fixed_usd_spread);
            r.number("rate_per_epoch", c.alpha.rate_per_epoch);
        }
        if (const auto* v = root.get("price"))
            read_price(*v, "price", c.price, issues);
        if (const auto* v = root.get("price_impact"))
        {
            ObjectReader r{*v, "price_impact", issues};
            r.number("lambda", c.price_impact.lambda);
            r.number("depth_eth", c.price_impact.depth_eth);
        }
        read_list(root, "competitors", c.competitors, issues, [](ObjectReader& r, scenario::CompetitorConfig& q) {
            r.unsigned_integer("id", q.id);
            r.number("gas_price", q.gas_price);
            r.number("token_rate_usd", q.token_rate_usd);
            r.number("lock_in_usd", q.lock_in_usd);
            r.number("utility_ratio", q.utility_ratio);
            r.number("token_rate_growth", q.token_rate_growth);
        });
        root.number("layer2_compression_rho", c.layer2_compression_rho);
        root.number("layer2_demand_elasticity", c.layer2_demand_elasticity);
        root.number("migration_rate", c.migration_rate);
        read_list(root, "attacks", c.attacks, issues, [](ObjectReader& r, scenario::AttackConfig& a) {
            if (const auto* k = r.get("kind"))
            {
                const auto kind = k->is_string() ? scenario::parse_attack_kind(k->get<std::string>()) : std::nullopt;
                if (kind)
                    a.kind = *kind;
                else
                    r.fail(r.field("kind"),
                        "must be one of offline_fraction, rights_purchase_offline, discouragement_haircut");
            }
            r.unsigned_integer("start_epoch", a.start_epoch);
            r.number("magnitude", a.magnitude);
            r.unsigned_integer("duration", a.duration);
            r.number("target_fraction", a.target_fraction);
        });
        if (const auto* v = root.get("behavior"))
        {
            ObjectReader r{*v, "behavior", issues};
            r.boolean("shutdown_when_exiting", c.behavior.shutdown_when_exiting);
        }
    }
    if (!issues.empty())
        throw ConfigError{std::move(issues)};
    c.validate();
    return c;
}

json config_to_json(const scenario::ScenarioConfig& c)
{
    json j;
    j["epochs"] = c.epochs;
    j["seed"] = c.seed;
    j["churn_limit"] = c.churn_limit;
    j["validators"] = {
        {"count", c.validators.count},
        {"deposit_eth", c.validators.deposit_eth},
        {"spread_eth", c.validators.spread_eth},
        {"r", c.validators.r ? json(*c.validators.r) : json(nullptr)},
        {"w", c.validators.w ? json(*c.validators.w) : json(nullptr)},
        {"dishonest_fraction", c.validators.dishonest_fraction},
    };
    j["candidates"] = {{"pool", c.candidates.pool}, {"deposit_eth", c.candidates.deposit_eth}};
    j["users"] = {
        {"count", c.users.count},
        {"tx_probability", c.users.tx_probability},
        {"gas", range_json(c.users.gas)},
        {"utility_usd", range_json(c.users.utility_usd)},
        {"priority_fee_gwei", range_json(c.users.priority_fee_gwei)},
        {"eth_holding", c.users.eth_holding},
    };
    j["gas"] = {
        {"block_gas_limit", c.gas.block_gas_limit},
        {"max_change_rate", c.gas.max_change_rate},
        {"initial_base_fee_gwei", c.gas.initial_base_fee},
    };
    j["econ"] = {{"R", c.econ.R}, {"W", c.econ.W}, {"P_avg", c.econ.P_avg}};
    j["alpha"] = {
        {"fixed_usd", c.alpha.fixed_usd},
        {"fixed_usd_spread", c.alpha.fixed_usd_spread},
        {"rate_per_epoch", c.alpha.rate_per_epoch},
    };
    json points = json::array();
    for (const auto& [e, v] : c.price.points)
        points.push_back(json::array({e, v}));
    j["price"] = {
        {"kind", std::string{scenario::to_string(c.price.kind)}},
        {"initial", c.price.initial},
        {"slope", c.price.slope},
        {"rate", c.price.rate},
        {"shock_epoch", c.price.shock_epoch},
        {"shock_factor", c.price.shock_factor},
        {"points", points},
    };
    j["price_impact"] = {{"lambda", c.price_impact.lambda}, {"depth_eth", c.price_impact.depth_eth}};
    json competitors = json::array();
    for (const auto& q : c.competitors)
    {
        competitors.push_back({
            {"id", q.id},
            {"gas_price", q.gas_price},
            {"token_rate_usd", q.token_rate_usd},
            {"lock_in_usd", q.lock_in_usd},
            {"utility_ratio", q.utility_ratio},
            {"token_rate_growth", q.token_rate_growth},
        });
    }
    j["competitors"] = competitors;
    j["layer2_compression_rho"] = c.layer2_compression_rho;
    j["layer2_demand_elasticity"] = c.layer2_demand_elasticity;
    j["migration_rate"] = c.migration_rate;
    json attacks = json::array();
    for (const auto& a : c.attacks)
    {
        attacks.push_back({
            {"kind", std::string{scenario::to_string(a.kind)}},
            {"start_epoch", a.start_epoch},
            {"magnitude", a.magnitude},
            {"duration", a.duration},
            {"target_fraction", a.target_fraction},
        });
    }
    j["attacks"] = attacks;
    j["behavior"] = {{"shutdown_when_exiting", c.behavior.shutdown_when_exiting}};
    return j;
}

json read_json_file(const std::filesystem::path& path)
{
    std::ifstream in{path};
    if (!in)
        throw IoError{path, "cannot open file"};
    std::ostringstream buf;
    buf << in.rdbuf();
    try
    {
        return json::parse(buf.str());
    }
    catch (const json::parse_error& e)
    {
        throw ConfigError{{{"<root>", std::string{"malformed JSON: "} + e.what()}}};
    }
}

scenario::ScenarioConfig parse_config(const std::filesystem::path& path)
{
    return config_from_json(read_json_file(path));
}
}  // namespace stakesim::io
