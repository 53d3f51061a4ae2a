#include "cv2x/se.hpp"

#include <algorithm>
#include <cmath>

#include "cv2x/errors.hpp"
#include "cv2x/numerics.hpp"

namespace cv2x {

namespace {

// Success probabilities below this end the t-integral.
constexpr double kSuccessFloor = 1e-10;

InterferenceField plane(double density, double power_gain, int m, double alpha, double exclusion, double outer) {
    InterferenceField f;
    f.kind = FieldKind::Plane2D;
    f.density = density;
    f.power_gain = power_gain;
    f.fading_shape = m;
    f.alpha = alpha;
    f.exclusion = exclusion;
    f.outer = outer;
    return f;
}

InterferenceField line(double density, double power_gain, int m, double alpha, double exclusion, double outer,
                       double window_end = 0.0) {
    InterferenceField f = plane(density, power_gain, m, alpha, exclusion, outer);
    f.kind = FieldKind::Line1D;
    f.nonempty_window_end = window_end;
    return f;
}

// DL with an MBS at x; typical-line SBSs lie beyond `sbs_excl`, and when `window_end` exceeds
// it at least one lies before window_end.
LinkSetup dl_macro(double x, double sbs_excl, double window_end, const SystemParams& p,
                   const TransformedDensities& d) {
    const PathLossExponents a = exponents_of(p);
    LinkSetup s{p.p_m * p.g_m, p.m_m, a.alpha_m, {}};
    s.fields.push_back(plane(d.lambda_M, p.p_m * p.g_m, p.m_m, a.alpha_m, x, p.radius));
    s.fields.push_back(line(d.lambda_S, p.p_s * p.g_s0, p.m_s0, a.alpha_s, sbs_excl, p.radius, window_end));
    s.fields.push_back(plane(d.lambda_Sa, p.p_s * p.g_s1, p.m_s1, a.alpha_s, 0.0, p.radius));
    return s;
}

LinkSetup dl_small(double x, const SystemParams& p, const TransformedDensities& d, const DerivedRatios& r) {
    const PathLossExponents a = exponents_of(p);
    LinkSetup s{p.p_s * p.g_s0, p.m_s0, a.alpha_s, {}};
    s.fields.push_back(plane(d.lambda_M, p.p_m * p.g_m, p.m_m, a.alpha_m, mbs_bound(r.a_ms, x, a), p.radius));
    s.fields.push_back(line(d.lambda_S, p.p_s * p.g_s0, p.m_s0, a.alpha_s, x, p.radius));
    s.fields.push_back(plane(d.lambda_Sa, p.p_s * p.g_s1, p.m_s1, a.alpha_s, 0.0, p.radius));
    return s;
}

LinkSetup ul_small(double x, const SystemParams& p, const TransformedDensities& d) {
    LinkSetup s{p.p_v * p.g_v0, p.m_v0, p.alpha_s, {}};
    s.fields.push_back(line(d.lambda_V, p.p_v * p.g_v0, p.m_v0, p.alpha_s, x, p.radius));
    s.fields.push_back(plane(d.lambda_Va, p.p_v * p.g_v1, p.m_v1, p.alpha_s, 0.0, p.radius));
    return s;
}

LinkSetup ul_macro(double x, const SystemParams& p, const TransformedDensities& d) {
    LinkSetup s{p.p_v * p.g_v1, p.m_v1, p.alpha_m, {}};
    s.fields.push_back(line(d.lambda_V, p.p_v * p.g_v1, p.m_v1, p.alpha_m, x, p.radius));
    s.fields.push_back(plane(d.lambda_Va, p.p_v * p.g_v1, p.m_v1, p.alpha_m, 0.0, p.radius));
    return s;
}

QuadratureSpec outer_spec() {
    QuadratureSpec q;
    q.rel_tol = 1e-6;
    q.abs_tol = 1e-12;
    return q;
}

// Integral over the serving distance in (0, radius) of joint(x) * conditional_se(setup(x)),
// divided by the case probability.
template <typename Joint, typename Setup>
double average_over_distance(Joint joint, Setup setup, double probability, double radius) {
    if (probability <= 0.0) return 0.0;
    const Integrand f = [&](double x) {
        const double w = joint(x);
        // Negligible weight: skip, also sparing setups where the disk is nearly exhausted.
        if (w <= 1e-14 * probability) return 0.0;
        return w * conditional_se(setup(x), x);
    };
    return integrate(f, 0.0, radius, outer_spec()).value / probability;
}

}  // namespace

std::string_view to_string(AccessMode m) { return m == AccessMode::Decoupled ? "decoupled" : "coupled"; }

LinkSetup link_setup(AssociationCase c, Link link, double x, const SystemParams& p, const TransformedDensities& d,
                     const DerivedRatios& r) {
    const PathLossExponents a = exponents_of(p);
    switch (c) {
        case AssociationCase::Case1:
            if (link == Link::UL) return ul_macro(x, p, d);
            return dl_macro(x, sbs_bound(r.b_ms, x, a), 0.0, p, d);
        case AssociationCase::Case2:
            if (link == Link::UL) return ul_small(x, p, d);
            return dl_macro(x, sbs_bound(r.a_ms, x, a), sbs_bound(r.b_ms, x, a), p, d);
        case AssociationCase::Case4:
            if (link == Link::UL) return ul_small(x, p, d);
            return dl_small(x, p, d, r);
        case AssociationCase::Case3: break;
    }
    throw InvalidCombination("Case 3 has probability zero");
}

LinkSetup coupled_macro_ul_setup(double x, const SystemParams& p, const TransformedDensities& d) {
    return ul_macro(x, p, d);
}

double conditional_se(const LinkSetup& link, double x) {
    if (empty_field_probability(link.fields) >= kSuccessFloor) {
        throw DivergentSE("interference vanishes with non-negligible probability; SE is unbounded");
    }
    const int m = link.fading_shape;
    const double scale = m * std::pow(x, link.alpha) / link.power_gain;
    const auto success = [&](double t) {
        const double s = scale * std::expm1(t);
        if (m == 1) return laplace_product(link.fields, s);
        if (s == 0.0) return 1.0;
        const std::vector<double> d = laplace_derivatives(link.fields, s, m - 1);
        return std::min(1.0, gamma_ccdf_sum(m, s, d));
    };
    double t_max = 1.0;
    while (success(t_max) > kSuccessFloor) {
        t_max *= 2.0;
        if (t_max > 4096.0) throw DivergentSE("success probability does not decay in t");
    }
    QuadratureSpec q;
    q.rel_tol = 1e-8;
    q.abs_tol = 1e-12;
    return integrate(success, 0.0, t_max, q).value;
}

double se_case_link(AssociationCase c, Link link, const TransformedDensities& d, const DerivedRatios& r,
                    const SystemParams& p) {
    if (c == AssociationCase::Case3) throw InvalidCombination("Case 3 has probability zero");
    const PathLossExponents a = exponents_of(p);
    const AssociationProbabilities pr = association_probabilities(d, r, a);
    const double prob = c == AssociationCase::Case1 ? pr.pr1 : c == AssociationCase::Case2 ? pr.pr2 : pr.pr4;
    return average_over_distance([&](double x) { return joint_dist_density(c, link, x, d, r, a); },
                                 [&](double x) { return link_setup(c, link, x, p, d, r); }, prob, p.radius);
}

double se_coupled_macro_ul(const TransformedDensities& d, const DerivedRatios& r, const SystemParams& p) {
    const PathLossExponents a = exponents_of(p);
    const double prob = 1.0 - pr_case4(d, r, a);
    return average_over_distance([&](double x) { return macro_dl_joint_density(x, d, r, a); },
                                 [&](double x) { return coupled_macro_ul_setup(x, p, d); }, prob, p.radius);
}

double weighted_system_se(const AssociationProbabilities& pr, const CaseSe& c1, const CaseSe& c2, const CaseSe& c4) {
    return pr.pr1 * (c1.ul + c1.dl) + pr.pr2 * (c2.ul + c2.dl) + pr.pr4 * (c4.ul + c4.dl);
}

namespace {

SeResult decoupled_result(const TransformedDensities& d, const DerivedRatios& r, const SystemParams& p) {
    SeResult out;
    out.mode = AccessMode::Decoupled;
    out.pr = association_probabilities(d, r, exponents_of(p));
    const auto eval = [&](AssociationCase c, double prob) {
        if (prob <= 0.0) return CaseSe{};
        return CaseSe{se_case_link(c, Link::UL, d, r, p), se_case_link(c, Link::DL, d, r, p)};
    };
    out.case1 = eval(AssociationCase::Case1, out.pr.pr1);
    out.case2 = eval(AssociationCase::Case2, out.pr.pr2);
    out.case4 = eval(AssociationCase::Case4, out.pr.pr4);
    out.system_se = weighted_system_se(out.pr, out.case1, out.case2, out.case4);
    return out;
}

SeResult coupled_from(const SeResult& dec, const TransformedDensities& d, const DerivedRatios& r,
                      const SystemParams& p) {
    SeResult out;
    out.mode = AccessMode::Coupled;
    const double macro = dec.pr.pr1 + dec.pr.pr2;
    out.pr = {macro, 0.0, 0.0, dec.pr.pr4};
    if (macro > 0.0) {
        out.case1.ul = se_coupled_macro_ul(d, r, p);
        out.case1.dl = (dec.pr.pr1 * dec.case1.dl + dec.pr.pr2 * dec.case2.dl) / macro;
    }
    out.case4 = dec.case4;
    out.system_se = weighted_system_se(out.pr, out.case1, out.case2, out.case4);
    return out;
}

}  // namespace

SeResult system_se(AccessMode mode, const SystemParams& p) {
    const TransformedDensities d = transform_densities(p);
    const DerivedRatios r = derive_ratios(p);
    const SeResult dec = decoupled_result(d, r, p);
    if (mode == AccessMode::Decoupled) return dec;
    return coupled_from(dec, d, r, p);
}

SeResult coupled_baseline(const TransformedDensities& d, const DerivedRatios& r, const SystemParams& p) {
    return coupled_from(decoupled_result(d, r, p), d, r, p);
}

SePair evaluate_both_modes(const SystemParams& p) {
    const TransformedDensities d = transform_densities(p);
    const DerivedRatios r = derive_ratios(p);
    SePair out;
    out.decoupled = decoupled_result(d, r, p);
    out.coupled = coupled_from(out.decoupled, d, r, p);
    return out;
}

}  // namespace cv2x
