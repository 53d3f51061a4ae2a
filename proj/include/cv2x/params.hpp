#pragma once

#include <numbers>
#include <string>
#include <string_view>

namespace cv2x {

// Log-normal shadowing: chi = 10^(N(mu_db, sigma_db^2) / 10).
struct ShadowingSpec {
    double mu_db = 0.0;
    double sigma_db = 0.0;
    bool enabled = false;
};

// Mean number of non-typical lines hitting the disk is factor * lambda_l * radius.
// 2*pi gives a road length density of pi * lambda_l per km^2, the measure under which
// the other-line points form 2D processes of intensity pi * lambda_l * lambda.
inline constexpr double kDefaultLineCountFactor = 2.0 * std::numbers::pi;

// All physical-layer constants in linear units, kilometres and watts.
struct SystemParams {
    // Transmit powers, W.
    double p_m = 0.0;
    double p_s = 0.0;
    double p_v = 0.0;

    // DL gains: MBS, SBS toward the typical line, SBS toward other lines.
    double g_m = 1.0;
    double g_s0 = 1.0;
    double g_s1 = 1.0;
    // UL gains: vehicle toward SBS, vehicle toward MBS.
    double g_v0 = 1.0;
    double g_v1 = 1.0;

    // DL selection biases.
    double b_m = 1.0;
    double b_s = 1.0;

    double alpha_m = 4.0;
    double alpha_s = 4.0;

    double lambda_l = 0.0;      // lines per km (see kDefaultLineCountFactor)
    double lambda_m_raw = 0.0;  // MBS per km^2
    double lambda_s_raw = 0.0;  // SBS per km of road
    double lambda_v_raw = 0.0;  // vehicles per km of road

    // Nakagami shapes (integers, 1..kMaxNakagamiShape).
    int m_m = 1;
    int m_s0 = 1;
    int m_s1 = 1;
    int m_v0 = 1;
    int m_v1 = 1;

    struct Shadowing {
        ShadowingSpec m;
        ShadowingSpec s0;
        ShadowingSpec s1;
    } shadowing;

    double radius = 5.0;  // km
    double line_count_factor = kDefaultLineCountFactor;
};

inline constexpr int kMaxNakagamiShape = 4;

// A_{M,S}, B_{M,S} and A_{S,M} = 1 / A_{M,S}.
struct DerivedRatios {
    double a_ms = 0.0;
    double b_ms = 0.0;
    double a_sm = 0.0;
};

enum class Scenario { LOS, NLOS };

double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);
double db_to_linear(double db);
double linear_to_db(double linear);

// Throws ConfigError naming the first violated invariant.
void validate(const SystemParams& p);

// Throws ConfigError when A_{M,S} <= B_{M,S}.
DerivedRatios derive_ratios(const SystemParams& p);

// Reference deployment values plus documented defaults for the remaining quantities.
SystemParams reference_defaults();
SystemParams scenario_preset(Scenario s);
Scenario parse_scenario(std::string_view name);
std::string_view to_string(Scenario s);

}  // namespace cv2x
