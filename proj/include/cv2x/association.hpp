#pragma once

#include <string_view>

#include "cv2x/channel.hpp"
#include "cv2x/params.hpp"

namespace cv2x {

// Joint (UL, DL) association outcome. Case 3 (UL = MBS, DL = SBS) is impossible when
// a_ms > b_ms but kept so that labels match their conventional numbering.
enum class AssociationCase {
    Case1 = 1,  // UL = MBS, DL = MBS
    Case2 = 2,  // UL = SBS, DL = MBS
    Case3 = 3,  // UL = MBS, DL = SBS
    Case4 = 4,  // UL = SBS, DL = SBS
};

enum class Link { UL, DL };

std::string_view to_string(AssociationCase c);
std::string_view to_string(Link l);

struct PathLossExponents {
    double alpha_m = 4.0;
    double alpha_s = 4.0;
};

inline PathLossExponents exponents_of(const SystemParams& p) { return {p.alpha_m, p.alpha_s}; }

struct AssociationProbabilities {
    double pr1 = 0.0;
    double pr2 = 0.0;
    double pr3 = 0.0;
    double pr4 = 0.0;
};

// Probability that the nearest typical-line SBS beats the nearest MBS when the MBS side is
// weighted by `k`, i.e. Pr(k X_M^-alpha_m < X_S^-alpha_s).
double sbs_win_probability(const TransformedDensities& d, double k, const PathLossExponents& a);

double pr_case1(const TransformedDensities& d, const DerivedRatios& r, const PathLossExponents& a);
// erfc form, only for alpha_s == alpha_m; throws NotApplicable otherwise.
double pr_case1_closed_form(const TransformedDensities& d, const DerivedRatios& r, const PathLossExponents& a);
double pr_case2(const TransformedDensities& d, const DerivedRatios& r, const PathLossExponents& a);
constexpr double pr_case3() { return 0.0; }
double pr_case4(const TransformedDensities& d, const DerivedRatios& r, const PathLossExponents& a);

AssociationProbabilities association_probabilities(const TransformedDensities& d, const DerivedRatios& r,
                                                   const PathLossExponents& a);

// Conditional serving-distance density (1/km) of the link's server given the case. Case 1
// and Case 2 DL are MBS distances; Case 2 UL and Case 4 are SBS distances. Throws
// InvalidCombination for Case 3.
double dist_pdf(AssociationCase c, Link link, double x, const TransformedDensities& d, const DerivedRatios& r,
                const PathLossExponents& a);

// Joint density of (serving distance, case): dist_pdf times the case probability.
double joint_dist_density(AssociationCase c, Link link, double x, const TransformedDensities& d,
                          const DerivedRatios& r, const PathLossExponents& a);

// Serving-MBS distance density given DL = MBS; under coupled access this is also the UL
// serving distance.
double macro_dl_pdf(double x, const TransformedDensities& d, const DerivedRatios& r, const PathLossExponents& a);
double macro_dl_joint_density(double x, const TransformedDensities& d, const DerivedRatios& r,
                              const PathLossExponents& a);

// Exclusion radii implied by the association events for a server at distance x.
// Typical-line SBSs lie beyond sbs_bound(k, x) = k^(-1/alpha_s) x^(alpha_m/alpha_s) when an
// MBS at x wins with weight k; MBSs lie beyond mbs_bound(k, x) = k^(1/alpha_m) x^(alpha_s/alpha_m)
// when an SBS at x wins against weight k.
double sbs_bound(double k, double x, const PathLossExponents& a);
double mbs_bound(double k, double x, const PathLossExponents& a);

}  // namespace cv2x
