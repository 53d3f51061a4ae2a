#include "cv2x/params.hpp"

#include <cmath>
#include <sstream>

#include "cv2x/errors.hpp"

namespace cv2x {

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double watts_to_dbm(double watts) { return 10.0 * std::log10(watts) + 30.0; }

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw ConfigError(what);
}

void require_positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        std::ostringstream os;
        os << name << " must be finite and > 0 (got " << v << ")";
        throw ConfigError(os.str());
    }
}

void require_density(double v, const char* name) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
        std::ostringstream os;
        os << name << " must be finite and >= 0 (got " << v << ")";
        throw ConfigError(os.str());
    }
}

void require_shape(int m, const char* name) {
    if (m < 1 || m > kMaxNakagamiShape) {
        std::ostringstream os;
        os << name << " must be an integer in [1, " << kMaxNakagamiShape << "] (got " << m << ")";
        throw ConfigError(os.str());
    }
}

void require_shadowing(const ShadowingSpec& s, const char* name) {
    if (!std::isfinite(s.mu_db) || !std::isfinite(s.sigma_db) || s.sigma_db < 0.0) {
        std::ostringstream os;
        os << name << " shadowing needs finite mu_db and sigma_db >= 0";
        throw ConfigError(os.str());
    }
}

}  // namespace

void validate(const SystemParams& p) {
    require_positive(p.p_m, "p_m");
    require_positive(p.p_s, "p_s");
    require_positive(p.p_v, "p_v");
    require_positive(p.g_m, "g_m");
    require_positive(p.g_s0, "g_s0");
    require_positive(p.g_s1, "g_s1");
    require_positive(p.g_v0, "g_v0");
    require_positive(p.g_v1, "g_v1");
    require_positive(p.b_m, "b_m");
    require_positive(p.b_s, "b_s");
    // alpha = 2 is the LOS street exponent; 2D sums stay finite because the disk is finite.
    require(std::isfinite(p.alpha_m) && p.alpha_m >= 2.0, "alpha_m must be >= 2");
    require(std::isfinite(p.alpha_s) && p.alpha_s >= 2.0, "alpha_s must be >= 2");
    require_density(p.lambda_l, "lambda_l");
    require_density(p.lambda_m_raw, "lambda_m");
    require_density(p.lambda_s_raw, "lambda_s");
    require_density(p.lambda_v_raw, "lambda_v");
    require_shape(p.m_m, "m_m");
    require_shape(p.m_s0, "m_s0");
    require_shape(p.m_s1, "m_s1");
    require_shape(p.m_v0, "m_v0");
    require_shape(p.m_v1, "m_v1");
    require_shadowing(p.shadowing.m, "M");
    require_shadowing(p.shadowing.s0, "S0");
    require_shadowing(p.shadowing.s1, "S1");
    require_positive(p.radius, "radius");
    require_positive(p.line_count_factor, "line_count_factor");
}

DerivedRatios derive_ratios(const SystemParams& p) {
    DerivedRatios r;
    r.a_ms = (p.p_m * p.g_m * p.b_m) / (p.p_s * p.g_s0 * p.b_s);
    r.b_ms = p.g_v1 / p.g_v0;
    r.a_sm = 1.0 / r.a_ms;
    if (!(r.a_ms > r.b_ms)) {
        std::ostringstream os;
        os << "association analysis requires A_MS > B_MS (MBS DL advantage must exceed the UL gain ratio); got A_MS="
           << r.a_ms << ", B_MS=" << r.b_ms;
        throw ConfigError(os.str());
    }
    return r;
}

SystemParams reference_defaults() {
    SystemParams p;
    p.p_m = dbm_to_watts(46.0);
    p.p_s = dbm_to_watts(20.0);
    p.p_v = dbm_to_watts(20.0);
    p.g_m = db_to_linear(0.0);
    p.g_s0 = db_to_linear(0.0);
    p.g_s1 = db_to_linear(-20.0);
    p.g_v0 = db_to_linear(0.0);
    p.g_v1 = db_to_linear(0.0);
    p.b_m = 1.0;
    p.b_s = 1.0;
    p.alpha_m = 4.0;
    p.alpha_s = 4.0;
    p.lambda_l = 10.0;
    p.lambda_m_raw = 1.0;
    p.lambda_s_raw = 2.0;
    p.lambda_v_raw = 0.1;
    p.radius = 5.0;
    return p;
}

SystemParams scenario_preset(Scenario s) {
    SystemParams p = reference_defaults();
    switch (s) {
        case Scenario::LOS: p.alpha_s = 2.0; break;
        case Scenario::NLOS: p.alpha_s = 4.0; break;
    }
    return p;
}

Scenario parse_scenario(std::string_view name) {
    if (name == "LOS" || name == "los") return Scenario::LOS;
    if (name == "NLOS" || name == "nlos") return Scenario::NLOS;
    throw UnknownScenario("unknown scenario '" + std::string(name) + "' (expected LOS or NLOS)");
}

std::string_view to_string(Scenario s) { return s == Scenario::LOS ? "LOS" : "NLOS"; }

}  // namespace cv2x
