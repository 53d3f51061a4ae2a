#pragma once

#include <cmath>

#include "cv2x/params.hpp"
#include "cv2x/rng.hpp"

namespace cv2x {

// The six transmitter/receiver pairings of the model.
enum class LinkClass {
    DlMacro,           // MBS -> vehicle
    DlSmallTypical,    // SBS on the typical line -> vehicle
    DlSmallOther,      // SBS on another line -> vehicle
    UlToMacro,         // vehicle -> MBS
    UlToSmallTypical,  // vehicle -> SBS on the typical line
    UlToSmallOther,    // vehicle -> SBS on another line
};

// The (P, G, m, chi, alpha) tuple a link class draws from SystemParams.
struct LinkProfile {
    double power = 0.0;
    double gain = 0.0;
    int fading_shape = 1;
    ShadowingSpec shadowing;
    double alpha = 4.0;

    double power_gain() const { return power * gain; }
};

LinkProfile link_profile(const SystemParams& p, LinkClass link);

// Distances below this are rejected by path_loss.
inline constexpr double kMinLinkDistance = 1e-9;

// distance^-alpha; throws DegenerateDistance below kMinLinkDistance.
double path_loss(double distance, double alpha);

// Power path gain for a squared distance; alpha = 2 and 4 avoid pow().
inline double path_loss_sq(double distance_sq, double alpha) {
    if (alpha == 2.0) return 1.0 / distance_sq;
    if (alpha == 4.0) return 1.0 / (distance_sq * distance_sq);
    return std::pow(distance_sq, -0.5 * alpha);
}

// Nakagami-m power gain: Gamma(shape m, rate m), unit mean.
double sample_nakagami_power(int m, Rng& rng);

// 10^(N(mu_db, sigma_db^2)/10); exactly 1 when disabled.
double sample_shadowing(const ShadowingSpec& spec, Rng& rng);

// E[chi^s] for the log-normal chi of `spec`; 1 when disabled.
double shadowing_moment(const ShadowingSpec& spec, double s);

double received_power(const LinkProfile& link, double distance, double fading, double shadow);
double received_power(const SystemParams& p, LinkClass link, double distance, double fading, double shadow);

// Densities after absorbing shadowing into the point positions (displacement theorem).
struct TransformedDensities {
    double lambda_M = 0.0;   // MBS, per km^2
    double lambda_S = 0.0;   // typical-line SBS, per km
    double lambda_V = 0.0;   // typical-line vehicles, per km
    double lambda_Sa = 0.0;  // other-line SBS as a planar process, per km^2
    double lambda_Va = 0.0;  // other-line vehicles as a planar process, per km^2
};

TransformedDensities transform_densities(const SystemParams& p);

}  // namespace cv2x
