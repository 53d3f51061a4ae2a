#include "cv2x/config.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <json.hpp>

#include "cv2x/errors.hpp"

namespace cv2x {

namespace {

using nlohmann::json;
using Setter = std::function<void(const json&, SweepConfig&)>;

double number(const json& v, const std::string& key) {
    if (!v.is_number()) throw ConfigError("config key '" + key + "' must be a number");
    return v.get<double>();
}

std::uint64_t count(const json& v, const std::string& key) {
    if (!v.is_number_integer() && !v.is_number_unsigned()) throw ConfigError("config key '" + key + "' must be an integer");
    const auto x = v.get<long long>();
    if (x < 0) throw ConfigError("config key '" + key + "' must be nonnegative");
    return static_cast<std::uint64_t>(x);
}

std::string text(const json& v, const std::string& key) {
    if (!v.is_string()) throw ConfigError("config key '" + key + "' must be a string");
    return v.get<std::string>();
}

ShadowingSpec shadowing(const json& v, const std::string& key, ShadowingSpec spec) {
    if (!v.is_object()) throw ConfigError("config key '" + key + "' must be an object");
    for (const auto& [k, x] : v.items()) {
        if (k == "mu_db") {
            spec.mu_db = number(x, key + "." + k);
        } else if (k == "sigma_db") {
            spec.sigma_db = number(x, key + "." + k);
        } else if (k == "enabled") {
            if (!x.is_boolean()) throw ConfigError("config key '" + key + ".enabled' must be true or false");
            spec.enabled = x.get<bool>();
        } else {
            throw ConfigError("unknown config key '" + key + "." + k + "'; valid keys: mu_db, sigma_db, enabled");
        }
    }
    return spec;
}

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = [] {
        std::map<std::string, Setter> t;
        const auto dbm = [](const char* key, double SystemParams::*field) {
            return [key, field](const json& v, SweepConfig& c) { c.base.*field = dbm_to_watts(number(v, key)); };
        };
        const auto db = [](const char* key, double SystemParams::*field) {
            return [key, field](const json& v, SweepConfig& c) { c.base.*field = db_to_linear(number(v, key)); };
        };
        const auto plain = [](const char* key, double SystemParams::*field) {
            return [key, field](const json& v, SweepConfig& c) { c.base.*field = number(v, key); };
        };
        const auto shape = [](const char* key, int SystemParams::*field) {
            return [key, field](const json& v, SweepConfig& c) { c.base.*field = static_cast<int>(count(v, key)); };
        };
        t["p_m"] = dbm("p_m", &SystemParams::p_m);
        t["p_s"] = dbm("p_s", &SystemParams::p_s);
        t["p_v"] = dbm("p_v", &SystemParams::p_v);
        t["g_m"] = db("g_m", &SystemParams::g_m);
        t["g_s0"] = db("g_s0", &SystemParams::g_s0);
        t["g_s1"] = db("g_s1", &SystemParams::g_s1);
        t["g_v0"] = db("g_v0", &SystemParams::g_v0);
        t["g_v1"] = db("g_v1", &SystemParams::g_v1);
        t["b_m"] = db("b_m", &SystemParams::b_m);
        t["b_s"] = db("b_s", &SystemParams::b_s);
        t["alpha_m"] = plain("alpha_m", &SystemParams::alpha_m);
        t["alpha_s"] = [](const json& v, SweepConfig& c) { c.alpha_s = number(v, "alpha_s"); };
        t["lambda_l"] = plain("lambda_l", &SystemParams::lambda_l);
        t["lambda_m"] = plain("lambda_m", &SystemParams::lambda_m_raw);
        t["lambda_v"] = plain("lambda_v", &SystemParams::lambda_v_raw);
        t["m_m"] = shape("m_m", &SystemParams::m_m);
        t["m_s0"] = shape("m_s0", &SystemParams::m_s0);
        t["m_s1"] = shape("m_s1", &SystemParams::m_s1);
        t["m_v0"] = shape("m_v0", &SystemParams::m_v0);
        t["m_v1"] = shape("m_v1", &SystemParams::m_v1);
        t["radius"] = plain("radius", &SystemParams::radius);
        t["line_count_factor"] = plain("line_count_factor", &SystemParams::line_count_factor);
        t["shadowing"] = [](const json& v, SweepConfig& c) {
            if (!v.is_object()) throw ConfigError("config key 'shadowing' must be an object");
            for (const auto& [k, x] : v.items()) {
                if (k == "m") {
                    c.base.shadowing.m = shadowing(x, "shadowing.m", c.base.shadowing.m);
                } else if (k == "s0") {
                    c.base.shadowing.s0 = shadowing(x, "shadowing.s0", c.base.shadowing.s0);
                } else if (k == "s1") {
                    c.base.shadowing.s1 = shadowing(x, "shadowing.s1", c.base.shadowing.s1);
                } else {
                    throw ConfigError("unknown config key 'shadowing." + k + "'; valid keys: m, s0, s1");
                }
            }
        };
        t["scenario"] = [](const json& v, SweepConfig& c) { c.scenarios = parse_scenarios(text(v, "scenario")); };
        t["ratio_min"] = [](const json& v, SweepConfig& c) { c.ratio_min = number(v, "ratio_min"); };
        t["ratio_max"] = [](const json& v, SweepConfig& c) { c.ratio_max = number(v, "ratio_max"); };
        t["steps"] = [](const json& v, SweepConfig& c) { c.steps = static_cast<int>(count(v, "steps")); };
        t["trials"] = [](const json& v, SweepConfig& c) { c.trials = count(v, "trials"); };
        t["seed"] = [](const json& v, SweepConfig& c) { c.seed = count(v, "seed"); };
        t["se_samples_per_case"] = [](const json& v, SweepConfig& c) {
            c.se_samples_per_case = count(v, "se_samples_per_case");
        };
        t["max_topup_trials"] = [](const json& v, SweepConfig& c) { c.max_topup_trials = count(v, "max_topup_trials"); };
        t["mode"] = [](const json& v, SweepConfig& c) { c.mode = parse_sweep_mode(text(v, "mode")); };
        t["unit"] = [](const json& v, SweepConfig& c) { c.unit = parse_unit(text(v, "unit")); };
        t["output"] = [](const json& v, SweepConfig& c) { c.output = text(v, "output"); };
        t["workers"] = [](const json& v, SweepConfig& c) { c.workers = static_cast<unsigned>(count(v, "workers")); };
        return t;
    }();
    return table;
}

}  // namespace

std::vector<std::string> valid_config_keys() {
    std::vector<std::string> keys;
    for (const auto& [k, _] : setters()) keys.push_back(k);
    return keys;
}

void apply_config_text(std::string_view json_text, SweepConfig& cfg) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config must be a JSON object");
    const auto& table = setters();
    for (const auto& [key, value] : doc.items()) {
        const auto it = table.find(key);
        if (it == table.end()) {
            std::ostringstream os;
            os << "unknown config key '" << key << "'; valid keys:";
            for (const auto& k : valid_config_keys()) os << ' ' << k;
            throw ConfigError(os.str());
        }
        it->second(value, cfg);
    }
}

void apply_config_file(const std::string& path, SweepConfig& cfg) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    apply_config_text(buf.str(), cfg);
}

}  // namespace cv2x
