#include "cv2x/association.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "cv2x/errors.hpp"
#include "cv2x/numerics.hpp"

namespace cv2x {

namespace {

constexpr double kPi = std::numbers::pi;

// The integrands below are bounded by exp(-u) in u = 2 lambda_S x; past ln(1e16) the
// remaining mass is below 1e-16.
const double kEnvelopeCut = std::log(1e16);

QuadratureSpec association_quadrature() {
    QuadratureSpec q;
    q.rel_tol = 1e-11;
    q.abs_tol = 1e-16;
    return q;
}

double nearest_mbs_pdf(double x, double lambda_m) {
    return 2.0 * kPi * lambda_m * x * std::exp(-lambda_m * kPi * x * x);
}

double nearest_sbs_pdf(double x, double lambda_s) { return 2.0 * lambda_s * std::exp(-2.0 * lambda_s * x); }

// Pr(no MBS within mbs_bound(k, x)).
double mbs_void(double k, double x, const TransformedDensities& d, const PathLossExponents& a) {
    const double r = mbs_bound(k, x, a);
    return std::exp(-d.lambda_M * kPi * r * r);
}

// Pr(no typical-line SBS within sbs_bound(k, x)).
double sbs_void(double k, double x, const TransformedDensities& d, const PathLossExponents& a) {
    return std::exp(-2.0 * d.lambda_S * sbs_bound(k, x, a));
}

}  // namespace

std::string_view to_string(AssociationCase c) {
    switch (c) {
        case AssociationCase::Case1: return "case1";
        case AssociationCase::Case2: return "case2";
        case AssociationCase::Case3: return "case3";
        case AssociationCase::Case4: return "case4";
    }
    return "?";
}

std::string_view to_string(Link l) { return l == Link::UL ? "ul" : "dl"; }

double sbs_bound(double k, double x, const PathLossExponents& a) {
    return std::pow(k, -1.0 / a.alpha_s) * std::pow(x, a.alpha_m / a.alpha_s);
}

double mbs_bound(double k, double x, const PathLossExponents& a) {
    return std::pow(k, 1.0 / a.alpha_m) * std::pow(x, a.alpha_s / a.alpha_m);
}

double sbs_win_probability(const TransformedDensities& d, double k, const PathLossExponents& a) {
    if (d.lambda_S <= 0.0) return 0.0;
    if (d.lambda_M <= 0.0) return 1.0;
    // With u = 2 lambda_S X_S the probability is the integral of exp(-u - c u^p).
    const double p = 2.0 * a.alpha_s / a.alpha_m;
    const double c = d.lambda_M * kPi * std::pow(k, 2.0 / a.alpha_m) * std::pow(2.0 * d.lambda_S, -p);
    if (!std::isfinite(c)) return 0.0;
    const Integrand f = [c, p](double u) { return std::exp(-u - c * std::pow(u, p)); };
    return integrate(f, 0.0, kEnvelopeCut, association_quadrature()).value;
}

double pr_case1(const TransformedDensities& d, const DerivedRatios& r, const PathLossExponents& a) {
    return 1.0 - sbs_win_probability(d, r.b_ms, a);
}

double pr_case1_closed_form(const TransformedDensities& d, const DerivedRatios& r, const PathLossExponents& a) {
    if (a.alpha_s != a.alpha_m) throw NotApplicable("the closed form requires alpha_s == alpha_m");
    if (d.lambda_S <= 0.0) return 1.0;
    if (d.lambda_M <= 0.0) return 0.0;
    const double z = d.lambda_S / std::sqrt(d.lambda_M * kPi * std::pow(r.b_ms, 2.0 / a.alpha_m));
    // 1 - sqrt(pi) z exp(z^2) erfc(z), written with erfcx so large z does not overflow.
    return 1.0 - std::sqrt(kPi) * z * erfcx(z);
}

double pr_case2(const TransformedDensities& d, const DerivedRatios& r, const PathLossExponents& a) {
    if (r.a_ms <= r.b_ms) return 0.0;
    return std::max(0.0, sbs_win_probability(d, r.b_ms, a) - sbs_win_probability(d, r.a_ms, a));
}

double pr_case4(const TransformedDensities& d, const DerivedRatios& r, const PathLossExponents& a) {
    return sbs_win_probability(d, r.a_ms, a);
}

AssociationProbabilities association_probabilities(const TransformedDensities& d, const DerivedRatios& r,
                                                   const PathLossExponents& a) {
    const double win_b = sbs_win_probability(d, r.b_ms, a);
    const double win_a = sbs_win_probability(d, r.a_ms, a);
    return {1.0 - win_b, std::max(0.0, win_b - win_a), pr_case3(), win_a};
}

double joint_dist_density(AssociationCase c, Link link, double x, const TransformedDensities& d,
                          const DerivedRatios& r, const PathLossExponents& a) {
    if (c == AssociationCase::Case3) throw InvalidCombination("Case 3 has probability zero");
    if (!(x > 0.0)) return 0.0;
    switch (c) {
        case AssociationCase::Case1:
            return nearest_mbs_pdf(x, d.lambda_M) * sbs_void(r.b_ms, x, d, a);
        case AssociationCase::Case2:
            if (r.a_ms <= r.b_ms) return 0.0;
            if (link == Link::DL) {
                return nearest_mbs_pdf(x, d.lambda_M) * (sbs_void(r.a_ms, x, d, a) - sbs_void(r.b_ms, x, d, a));
            }
            return nearest_sbs_pdf(x, d.lambda_S) * (mbs_void(r.b_ms, x, d, a) - mbs_void(r.a_ms, x, d, a));
        case AssociationCase::Case4:
            return nearest_sbs_pdf(x, d.lambda_S) * mbs_void(r.a_ms, x, d, a);
        case AssociationCase::Case3: break;
    }
    throw InvalidCombination("unknown association case");
}

double dist_pdf(AssociationCase c, Link link, double x, const TransformedDensities& d, const DerivedRatios& r,
                const PathLossExponents& a) {
    const double joint = joint_dist_density(c, link, x, d, r, a);
    if (joint == 0.0) return 0.0;
    const AssociationProbabilities pr = association_probabilities(d, r, a);
    const double norm = c == AssociationCase::Case1 ? pr.pr1 : c == AssociationCase::Case2 ? pr.pr2 : pr.pr4;
    return norm > 0.0 ? joint / norm : 0.0;
}

double macro_dl_joint_density(double x, const TransformedDensities& d, const DerivedRatios& r,
                              const PathLossExponents& a) {
    if (!(x > 0.0)) return 0.0;
    return nearest_mbs_pdf(x, d.lambda_M) * sbs_void(r.a_ms, x, d, a);
}

double macro_dl_pdf(double x, const TransformedDensities& d, const DerivedRatios& r, const PathLossExponents& a) {
    const double joint = macro_dl_joint_density(x, d, r, a);
    if (joint == 0.0) return 0.0;
    const double pr = 1.0 - sbs_win_probability(d, r.a_ms, a);
    return pr > 0.0 ? joint / pr : 0.0;
}

}  // namespace cv2x
