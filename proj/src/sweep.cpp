#include "cv2x/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <numbers>
#include <ostream>
#include <thread>

#include "cv2x/errors.hpp"

namespace cv2x {

SweepMode parse_sweep_mode(std::string_view s) {
    if (s == "sim") return SweepMode::Sim;
    if (s == "analytic") return SweepMode::Analytic;
    if (s == "both") return SweepMode::Both;
    throw ConfigError("unknown mode '" + std::string(s) + "' (expected sim, analytic or both)");
}

SeUnit parse_unit(std::string_view s) {
    if (s == "nats") return SeUnit::Nats;
    if (s == "bits") return SeUnit::Bits;
    throw ConfigError("unknown unit '" + std::string(s) + "' (expected nats or bits)");
}

std::vector<Scenario> parse_scenarios(std::string_view s) {
    if (s == "both" || s == "BOTH") return {Scenario::LOS, Scenario::NLOS};
    return {parse_scenario(s)};
}

std::string_view to_string(SweepMode m) {
    switch (m) {
        case SweepMode::Sim: return "sim";
        case SweepMode::Analytic: return "analytic";
        case SweepMode::Both: return "both";
    }
    return "?";
}

std::string_view to_string(SeUnit u) { return u == SeUnit::Nats ? "nats" : "bits"; }

std::vector<double> ratio_grid(const SweepConfig& cfg) {
    if (cfg.steps == 1) return {cfg.ratio_min};
    std::vector<double> out;
    const double lo = std::log(cfg.ratio_min);
    const double hi = std::log(cfg.ratio_max);
    for (int i = 0; i < cfg.steps; ++i) {
        out.push_back(i == cfg.steps - 1 ? cfg.ratio_max : std::exp(lo + (hi - lo) * i / (cfg.steps - 1)));
    }
    out.front() = cfg.ratio_min;
    return out;
}

SystemParams point_params(const SweepConfig& cfg, Scenario s, double ratio) {
    SystemParams p = cfg.base;
    p.alpha_s = cfg.alpha_s.value_or(scenario_preset(s).alpha_s);
    p.lambda_s_raw = ratio * p.lambda_m_raw;
    return p;
}

namespace {

void check_sweep(const SweepConfig& cfg) {
    if (cfg.scenarios.empty()) throw ConfigError("no scenario selected");
    if (!(cfg.ratio_min > 0.0) || !std::isfinite(cfg.ratio_min)) throw ConfigError("ratio_min must be > 0");
    if (!(cfg.ratio_max >= cfg.ratio_min) || !std::isfinite(cfg.ratio_max)) {
        throw ConfigError("ratio_max must be finite and >= ratio_min");
    }
    if (cfg.steps < 1) throw ConfigError("steps must be >= 1");
    if (cfg.mode != SweepMode::Analytic && cfg.trials < 1) throw ConfigError("trials must be >= 1 for simulation");
    if (cfg.workers < 1) throw ConfigError("workers must be >= 1");
    if (!(cfg.base.lambda_m_raw > 0.0)) throw ConfigError("lambda_m must be > 0 for a density-ratio sweep");
    for (Scenario s : cfg.scenarios) {
        for (double ratio : ratio_grid(cfg)) {
            const SystemParams p = point_params(cfg, s, ratio);
            validate(p);
            derive_ratios(p);
        }
    }
}

void echo_shadowing(std::ostream& os, const char* name, const ShadowingSpec& s) {
    os << "#   shadowing." << name << ": enabled=" << (s.enabled ? "true" : "false") << " mu_db=" << s.mu_db
       << " sigma_db=" << s.sigma_db << '\n';
}

}  // namespace

void validate_and_echo(const SweepConfig& cfg, std::ostream& os) {
    check_sweep(cfg);
    const SystemParams& p = cfg.base;
    os << "# resolved configuration\n";
    os << "#   p_m=" << watts_to_dbm(p.p_m) << " dBm  p_s=" << watts_to_dbm(p.p_s) << " dBm  p_v=" << watts_to_dbm(p.p_v)
       << " dBm\n";
    os << "#   g_m=" << linear_to_db(p.g_m) << " dB  g_s0=" << linear_to_db(p.g_s0) << " dB  g_s1=" << linear_to_db(p.g_s1)
       << " dB  g_v0=" << linear_to_db(p.g_v0) << " dB  g_v1=" << linear_to_db(p.g_v1) << " dB\n";
    os << "#   b_m=" << linear_to_db(p.b_m) << " dB  b_s=" << linear_to_db(p.b_s) << " dB\n";
    os << "#   alpha_m=" << p.alpha_m << "  alpha_s=";
    if (cfg.alpha_s) {
        os << *cfg.alpha_s << " (all scenarios)\n";
    } else {
        os << "LOS " << scenario_preset(Scenario::LOS).alpha_s << ", NLOS " << scenario_preset(Scenario::NLOS).alpha_s
           << '\n';
    }
    os << "#   lambda_l=" << p.lambda_l << " /km  lambda_m=" << p.lambda_m_raw << " /km^2  lambda_v=" << p.lambda_v_raw
       << " /km  lambda_s=ratio*lambda_m\n";
    os << "#   nakagami m_m=" << p.m_m << " m_s0=" << p.m_s0 << " m_s1=" << p.m_s1 << " m_v0=" << p.m_v0
       << " m_v1=" << p.m_v1 << '\n';
    echo_shadowing(os, "m", p.shadowing.m);
    echo_shadowing(os, "s0", p.shadowing.s0);
    echo_shadowing(os, "s1", p.shadowing.s1);
    os << "#   radius=" << p.radius << " km  line_count_factor=" << p.line_count_factor << '\n';
    const DerivedRatios r = derive_ratios(p);
    os << "#   A_MS=" << r.a_ms << "  B_MS=" << r.b_ms << '\n';
    os << "#   scenarios=";
    for (std::size_t i = 0; i < cfg.scenarios.size(); ++i) os << (i ? "," : "") << to_string(cfg.scenarios[i]);
    os << "  ratio=[" << cfg.ratio_min << ", " << cfg.ratio_max << "] steps=" << cfg.steps << " (log-spaced)\n";
    os << "#   mode=" << to_string(cfg.mode) << " trials=" << cfg.trials << " seed=" << cfg.seed
       << " se_samples_per_case=" << cfg.se_samples_per_case << " max_topup_trials=" << cfg.max_topup_trials
       << " unit=" << to_string(cfg.unit) << " workers=" << cfg.workers << '\n';
    os << "#   output=" << (cfg.output.empty() ? "stdout" : cfg.output) << '\n';
}

std::vector<SweepRow> run_sweep(const SweepConfig& cfg) {
    check_sweep(cfg);
    std::vector<SweepRow> rows;
    for (Scenario s : cfg.scenarios) {
        for (double ratio : ratio_grid(cfg)) {
            SweepRow row;
            row.scenario = s;
            row.ratio = ratio;
            row.lambda_m = cfg.base.lambda_m_raw;
            row.lambda_s = ratio * cfg.base.lambda_m_raw;
            rows.push_back(row);
        }
    }

    const auto evaluate = [&](SweepRow& row) {
        const SystemParams p = point_params(cfg, row.scenario, row.ratio);
        if (cfg.mode != SweepMode::Sim) row.analytic = evaluate_both_modes(p);
        if (cfg.mode != SweepMode::Analytic) {
            CampaignOptions o;
            o.trials = cfg.trials;
            o.master_seed = cfg.seed;
            o.se_samples_per_case = cfg.se_samples_per_case;
            o.max_topup_trials = cfg.max_topup_trials;
            o.workers = 1;
            row.sim = run_campaign(p, o);
        }
    };

    const unsigned workers = std::min<unsigned>(cfg.workers, static_cast<unsigned>(rows.size()));
    if (workers <= 1) {
        for (SweepRow& row : rows) evaluate(row);
        return rows;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr failure;
    std::mutex m;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= rows.size() || failed.load()) return;
                try {
                    evaluate(rows[i]);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(m);
                    if (!failure) failure = std::current_exception();
                    failed.store(true);
                    return;
                }
            }
        });
    }
    for (std::thread& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
    return rows;
}

std::vector<std::string> csv_header() {
    std::vector<std::string> h = {"scenario", "ratio", "lambda_s", "lambda_m", "pr1_a", "pr2_a", "pr4_a",
                                  "pr1_s", "pr2_s", "pr4_s", "pr1_s_stderr", "pr2_s_stderr", "pr4_s_stderr"};
    for (const char* src : {"a", "s"}) {
        for (const char* c : {"c1", "c2", "c4"}) {
            h.push_back(std::string("se_ul_") + c + "_" + src);
            h.push_back(std::string("se_dl_") + c + "_" + src);
        }
        h.push_back(std::string("se_ul_coupled_macro_") + src);
    }
    for (const char* c : {"c1", "c2", "c4"}) {
        h.push_back(std::string("se_ul_") + c + "_s_stderr");
        h.push_back(std::string("se_dl_") + c + "_s_stderr");
    }
    h.push_back("se_ul_coupled_macro_s_stderr");
    for (const char* name : {"se_system_decoupled_a", "se_system_coupled_a", "se_system_decoupled_s",
                             "se_system_coupled_s", "se_system_decoupled_s_stderr", "se_system_coupled_s_stderr"}) {
        h.push_back(name);
    }
    return h;
}

namespace {

std::string fmt(double v) {
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

}  // namespace

void write_csv(std::ostream& os, const std::vector<SweepRow>& rows, SeUnit unit) {
    const double k = unit == SeUnit::Bits ? 1.0 / std::numbers::ln2 : 1.0;
    const double nan = std::nan("");
    const std::vector<std::string> header = csv_header();
    for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
    os << '\n';
    for (const SweepRow& row : rows) {
        std::vector<double> v;
        v.push_back(row.ratio);
        v.push_back(row.lambda_s);
        v.push_back(row.lambda_m);
        const SeResult* a = row.analytic ? &row.analytic->decoupled : nullptr;
        const SeResult* ac = row.analytic ? &row.analytic->coupled : nullptr;
        const CampaignStats* s = row.sim ? &*row.sim : nullptr;
        v.push_back(a ? a->pr.pr1 : nan);
        v.push_back(a ? a->pr.pr2 : nan);
        v.push_back(a ? a->pr.pr4 : nan);
        for (int c : {0, 1, 3}) v.push_back(s ? s->cases[c].frequency : nan);
        for (int c : {0, 1, 3}) v.push_back(s ? s->cases[c].frequency_stderr : nan);
        for (const CaseSe* cs : {a ? &a->case1 : nullptr, a ? &a->case2 : nullptr, a ? &a->case4 : nullptr}) {
            v.push_back(cs ? k * cs->ul : nan);
            v.push_back(cs ? k * cs->dl : nan);
        }
        v.push_back(ac ? k * ac->case1.ul : nan);

        // Simulated UL towards the MBS under coupled access: trials with DL = MBS, i.e.
        // Cases 1 and 2 weighted by their frequencies.
        double coupled_ul = nan, coupled_ul_err = nan;
        if (s) {
            const CaseStats& c1 = s->cases[0];
            const CaseStats& c2 = s->cases[1];
            const double f = c1.frequency + c2.frequency;
            if (f > 0.0) {
                coupled_ul = (c1.frequency * c1.se_ul_coupled + c2.frequency * c2.se_ul_coupled) / f;
                coupled_ul_err = std::hypot(c1.frequency * c1.se_ul_coupled_stderr, c2.frequency * c2.se_ul_coupled_stderr) / f;
            }
        }
        for (int c : {0, 1, 3}) {
            v.push_back(s && s->cases[c].se_samples ? k * s->cases[c].se_ul : nan);
            v.push_back(s && s->cases[c].se_samples ? k * s->cases[c].se_dl : nan);
        }
        v.push_back(k * coupled_ul);
        for (int c : {0, 1, 3}) {
            v.push_back(s && s->cases[c].se_samples ? k * s->cases[c].se_ul_stderr : nan);
            v.push_back(s && s->cases[c].se_samples ? k * s->cases[c].se_dl_stderr : nan);
        }
        v.push_back(k * coupled_ul_err);
        v.push_back(a ? k * a->system_se : nan);
        v.push_back(ac ? k * ac->system_se : nan);
        v.push_back(s ? k * s->system_se_decoupled : nan);
        v.push_back(s ? k * s->system_se_coupled : nan);
        v.push_back(s ? k * s->system_se_decoupled_stderr : nan);
        v.push_back(s ? k * s->system_se_coupled_stderr : nan);

        os << to_string(row.scenario);
        for (double x : v) os << ',' << fmt(x);
        os << '\n';
    }
}

}  // namespace cv2x
