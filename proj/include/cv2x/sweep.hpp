#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cv2x/params.hpp"
#include "cv2x/se.hpp"
#include "cv2x/simulator.hpp"

namespace cv2x {

enum class SweepMode { Sim, Analytic, Both };
enum class SeUnit { Nats, Bits };

SweepMode parse_sweep_mode(std::string_view s);
SeUnit parse_unit(std::string_view s);
std::vector<Scenario> parse_scenarios(std::string_view s);  // LOS, NLOS or both
std::string_view to_string(SweepMode m);
std::string_view to_string(SeUnit u);

// The SBS/MBS density ratio axis: lambda_m is held fixed and lambda_s = ratio * lambda_m.
struct SweepConfig {
    SystemParams base = reference_defaults();
    // Unset: each scenario's preset exponent is used.
    std::optional<double> alpha_s;
    std::vector<Scenario> scenarios{Scenario::LOS, Scenario::NLOS};
    double ratio_min = 1.0;
    double ratio_max = 10.0;
    int steps = 20;  // log-spaced
    std::uint64_t trials = 100000;
    std::uint64_t seed = 1;
    std::uint64_t se_samples_per_case = 10000;
    std::uint64_t max_topup_trials = 2000000;
    SweepMode mode = SweepMode::Both;
    SeUnit unit = SeUnit::Nats;
    std::string output;            // empty: stdout
    std::string dump_realization;  // empty: none
    unsigned workers = 1;
};

std::vector<double> ratio_grid(const SweepConfig& cfg);

// Parameters of one grid point.
SystemParams point_params(const SweepConfig& cfg, Scenario s, double ratio);

struct SweepRow {
    Scenario scenario = Scenario::LOS;
    double ratio = 0.0;
    double lambda_s = 0.0;
    double lambda_m = 0.0;
    std::optional<SePair> analytic;
    std::optional<CampaignStats> sim;
};

// Checks the configuration, including A_MS > B_MS at every grid point, and prints every
// resolved setting. Throws ConfigError.
void validate_and_echo(const SweepConfig& cfg, std::ostream& os);

// Rows in grid order (scenario-major), whatever the number of workers.
std::vector<SweepRow> run_sweep(const SweepConfig& cfg);

std::vector<std::string> csv_header();
void write_csv(std::ostream& os, const std::vector<SweepRow>& rows, SeUnit unit);

}  // namespace cv2x
