#include "cv2x/channel.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "cv2x/errors.hpp"

namespace cv2x {

LinkProfile link_profile(const SystemParams& p, LinkClass link) {
    switch (link) {
        case LinkClass::DlMacro: return {p.p_m, p.g_m, p.m_m, p.shadowing.m, p.alpha_m};
        case LinkClass::DlSmallTypical: return {p.p_s, p.g_s0, p.m_s0, p.shadowing.s0, p.alpha_s};
        case LinkClass::DlSmallOther: return {p.p_s, p.g_s1, p.m_s1, p.shadowing.s1, p.alpha_s};
        case LinkClass::UlToMacro: return {p.p_v, p.g_v1, p.m_v1, p.shadowing.m, p.alpha_m};
        case LinkClass::UlToSmallTypical: return {p.p_v, p.g_v0, p.m_v0, p.shadowing.s0, p.alpha_s};
        case LinkClass::UlToSmallOther: return {p.p_v, p.g_v1, p.m_v1, p.shadowing.s1, p.alpha_s};
    }
    throw InvalidCombination("unknown link class");
}

double path_loss(double distance, double alpha) {
    if (!(distance >= kMinLinkDistance)) {
        std::ostringstream os;
        os << "link distance " << distance << " km is below " << kMinLinkDistance << " km";
        throw DegenerateDistance(os.str());
    }
    return std::pow(distance, -alpha);
}

double sample_nakagami_power(int m, Rng& rng) {
    if (m == 1) return std::exponential_distribution<double>(1.0)(rng);
    return std::gamma_distribution<double>(static_cast<double>(m), 1.0 / m)(rng);
}

double sample_shadowing(const ShadowingSpec& spec, Rng& rng) {
    if (!spec.enabled || spec.sigma_db == 0.0) {
        return spec.enabled ? std::pow(10.0, spec.mu_db / 10.0) : 1.0;
    }
    const double db = std::normal_distribution<double>(spec.mu_db, spec.sigma_db)(rng);
    return std::pow(10.0, db / 10.0);
}

double shadowing_moment(const ShadowingSpec& spec, double s) {
    if (!spec.enabled) return 1.0;
    // chi = exp(k X), X ~ N(mu, sigma^2), k = ln(10)/10.
    const double k = std::numbers::ln10 / 10.0;
    return std::exp(s * k * spec.mu_db + 0.5 * s * s * k * k * spec.sigma_db * spec.sigma_db);
}

double received_power(const LinkProfile& link, double distance, double fading, double shadow) {
    return link.power_gain() * fading * shadow * path_loss(distance, link.alpha);
}

double received_power(const SystemParams& p, LinkClass link, double distance, double fading, double shadow) {
    return received_power(link_profile(p, link), distance, fading, shadow);
}

TransformedDensities transform_densities(const SystemParams& p) {
    // A point at distance x with shadowing chi is equivalent to an unshadowed point at
    // chi^(-1/alpha) x, which scales a planar intensity by E[chi^(2/alpha)] and a linear
    // one by E[chi^(1/alpha)].
    const double road_length_density = 0.5 * p.line_count_factor * p.lambda_l;
    TransformedDensities d;
    d.lambda_M = shadowing_moment(p.shadowing.m, 2.0 / p.alpha_m) * p.lambda_m_raw;
    d.lambda_S = shadowing_moment(p.shadowing.s0, 1.0 / p.alpha_s) * p.lambda_s_raw;
    d.lambda_V = shadowing_moment(p.shadowing.s0, 1.0 / p.alpha_s) * p.lambda_v_raw;
    d.lambda_Sa = shadowing_moment(p.shadowing.s1, 2.0 / p.alpha_s) * road_length_density * p.lambda_s_raw;
    d.lambda_Va = shadowing_moment(p.shadowing.s1, 2.0 / p.alpha_s) * road_length_density * p.lambda_v_raw;
    return d;
}

}  // namespace cv2x
