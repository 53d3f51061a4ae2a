// Density-ratio sweep: association probabilities and spectral efficiency, analytic and
// simulated, as CSV.

#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cv2x/config.hpp"
#include "cv2x/errors.hpp"
#include "cv2x/geometry.hpp"
#include "cv2x/sweep.hpp"

namespace {

void dump_realization(const cv2x::SweepConfig& cfg, const std::string& path) {
    const double ratio = cv2x::ratio_grid(cfg).front();
    const cv2x::SystemParams p = cv2x::point_params(cfg, cfg.scenarios.front(), ratio);
    cv2x::TrialStreams streams = cv2x::TrialStreams::for_trial(cfg.seed, 0);
    const cv2x::NetworkRealization r = cv2x::sample_realization(p, streams);
    std::ofstream out(path);
    if (!out) throw cv2x::ConfigError("cannot open '" + path + "' for writing");
    cv2x::write_realization(out, r);
    if (!out) throw cv2x::ConfigError("failed writing '" + path + "'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"UL/DL decoupled access in C-V2X: density-ratio sweep to CSV"};

    std::string config_path;
    std::optional<std::string> scenario, mode, unit, output, dump;
    std::optional<double> ratio_min, ratio_max;
    std::optional<int> steps;
    std::optional<std::uint64_t> trials, seed, se_samples;
    std::optional<unsigned> workers;

    app.add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);
    app.add_option("--scenario", scenario, "LOS, NLOS or both");
    app.add_option("--ratio-min", ratio_min, "smallest lambda_s/lambda_m");
    app.add_option("--ratio-max", ratio_max, "largest lambda_s/lambda_m");
    app.add_option("--steps", steps, "grid points per scenario (log-spaced)");
    app.add_option("--trials", trials, "Monte Carlo trials per grid point");
    app.add_option("--seed", seed, "master seed");
    app.add_option("--mode", mode, "sim, analytic or both");
    app.add_option("--unit", unit, "nats or bits");
    app.add_option("--output", output, "CSV path (default stdout)");
    app.add_option("--dump-realization", dump, "write trial 0 of the first grid point as CSV");
    app.add_option("--workers", workers, "grid points evaluated in parallel");
    app.add_option("--se-samples", se_samples, "SE samples per association case (0: every trial)");

    CLI11_PARSE(app, argc, argv);

    try {
        cv2x::SweepConfig cfg;
        // Config file first; flags override it.
        if (!config_path.empty()) cv2x::apply_config_file(config_path, cfg);
        if (scenario) cfg.scenarios = cv2x::parse_scenarios(*scenario);
        if (ratio_min) cfg.ratio_min = *ratio_min;
        if (ratio_max) cfg.ratio_max = *ratio_max;
        if (steps) cfg.steps = *steps;
        if (trials) cfg.trials = *trials;
        if (seed) cfg.seed = *seed;
        if (mode) cfg.mode = cv2x::parse_sweep_mode(*mode);
        if (unit) cfg.unit = cv2x::parse_unit(*unit);
        if (output) cfg.output = *output;
        if (dump) cfg.dump_realization = *dump;
        if (workers) cfg.workers = *workers;
        if (se_samples) cfg.se_samples_per_case = *se_samples;

        cv2x::validate_and_echo(cfg, std::cerr);
        if (!cfg.dump_realization.empty()) dump_realization(cfg, cfg.dump_realization);

        const std::vector<cv2x::SweepRow> rows = cv2x::run_sweep(cfg);
        if (cfg.output.empty()) {
            cv2x::write_csv(std::cout, rows, cfg.unit);
        } else {
            std::ofstream out(cfg.output);
            if (!out) throw cv2x::ConfigError("cannot open '" + cfg.output + "' for writing");
            cv2x::write_csv(out, rows, cfg.unit);
            if (!out) throw cv2x::ConfigError("failed writing '" + cfg.output + "'");
        }
    } catch (const cv2x::ConfigError& e) {
        std::cerr << "cv2x_sweep: configuration error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "cv2x_sweep: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
