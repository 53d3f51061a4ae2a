#pragma once

#include <string_view>
#include <vector>

#include "cv2x/association.hpp"
#include "cv2x/channel.hpp"
#include "cv2x/interference.hpp"
#include "cv2x/params.hpp"

namespace cv2x {

enum class AccessMode { Decoupled, Coupled };

std::string_view to_string(AccessMode m);

// Serving link and interference picture for a server at distance x.
struct LinkSetup {
    double power_gain = 1.0;  // P * G of the serving transmitter
    int fading_shape = 1;
    double alpha = 4.0;
    std::vector<InterferenceField> fields;
};

// Fields conditioned on the association event of (case, link) with the server at distance x.
LinkSetup link_setup(AssociationCase c, Link link, double x, const SystemParams& p, const TransformedDensities& d,
                     const DerivedRatios& r);

// Coupled access with DL = MBS: the UL goes to the same MBS.
LinkSetup coupled_macro_ul_setup(double x, const SystemParams& p, const TransformedDensities& d);

// E[ln(1 + SINR)] for the server at distance x, in nats: the integral over t of
// Pr[SINR > e^t - 1]. Throws DivergentSE when the interference can vanish with non-negligible
// probability (no finite SE in an interference-limited model).
double conditional_se(const LinkSetup& link, double x);

// Average SE of (case, link) over its conditional serving-distance law, in nats.
double se_case_link(AssociationCase c, Link link, const TransformedDensities& d, const DerivedRatios& r,
                    const SystemParams& p);

// UL SE under coupled access given DL = MBS.
double se_coupled_macro_ul(const TransformedDensities& d, const DerivedRatios& r, const SystemParams& p);

struct CaseSe {
    double ul = 0.0;
    double dl = 0.0;
};

// For coupled access Case 2 is empty: case1 then holds the DL = MBS pair and pr.pr1 the
// probability Pr(DL = MBS).
struct SeResult {
    AccessMode mode = AccessMode::Decoupled;
    AssociationProbabilities pr;
    CaseSe case1;
    CaseSe case2;
    CaseSe case4;
    double system_se = 0.0;
};

// Probability-weighted sum over live cases and both links.
double weighted_system_se(const AssociationProbabilities& pr, const CaseSe& c1, const CaseSe& c2, const CaseSe& c4);

SeResult system_se(AccessMode mode, const SystemParams& p);
SeResult coupled_baseline(const TransformedDensities& d, const DerivedRatios& r, const SystemParams& p);

// Both modes from one set of per-case evaluations.
struct SePair {
    SeResult decoupled;
    SeResult coupled;
};
SePair evaluate_both_modes(const SystemParams& p);

}  // namespace cv2x
