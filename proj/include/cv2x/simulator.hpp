#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "cv2x/association.hpp"
#include "cv2x/geometry.hpp"
#include "cv2x/interference.hpp"
#include "cv2x/params.hpp"
#include "cv2x/rng.hpp"

namespace cv2x {

// Association of one drop, from the association layer only.
struct AssociationSample {
    AssociationCase assoc_case = AssociationCase::Case1;
    bool dl_macro = true;
    bool ul_macro = true;
    double x_macro = 0.0;  // distance to the best MBS (inf if none)
    double x_small = 0.0;  // distance to the best typical-line SBS (inf if none)
    // chi^(-1/alpha) x: the distance of the equivalent unshadowed point.
    double x_macro_eff = 0.0;
    double x_small_eff = 0.0;
    double max_dl_biased_power = 0.0;  // W

    double x_dl() const { return dl_macro ? x_macro : x_small; }
    double x_ul() const { return ul_macro ? x_macro : x_small; }
};

struct TrialOutcome {
    AssociationCase assoc_case = AssociationCase::Case1;
    double x_dl = 0.0;
    double x_ul = 0.0;
    double sinr_dl = 0.0;
    double sinr_ul = 0.0;
    double se_dl = 0.0;  // nats
    double se_ul = 0.0;
    // UL under coupled access, i.e. towards the DL server.
    double sinr_ul_coupled = 0.0;
    double se_ul_coupled = 0.0;
};

// Classification of a drop; throws DegenerateDistance for a server closer than 1e-9 km and
// when there is no candidate server at all.
AssociationSample classify(const SystemParams& p, const AssociationLayer& layer);

// One trial on explicit streams; throws DegenerateDistance as classify() does.
TrialOutcome run_trial(const SystemParams& p, TrialStreams& streams, NetworkRealization& scratch);

// Trial `index` of the campaign seeded with `master_seed`. Degenerate drops are redrawn from
// streams derived from (master_seed, index, attempt), so the result is still a pure function
// of its arguments.
TrialOutcome run_trial(const SystemParams& p, std::uint64_t master_seed, std::uint64_t index);
AssociationSample classify_trial(const SystemParams& p, std::uint64_t master_seed, std::uint64_t index);

struct CampaignOptions {
    std::uint64_t trials = 100000;
    std::uint64_t master_seed = 1;
    // SE is simulated for the first `se_samples_per_case` trials of each case (in index
    // order); 0 simulates every trial. Frequencies always use all `trials`.
    std::uint64_t se_samples_per_case = 0;
    // When a case has fewer than se_samples_per_case trials, further indices past `trials`
    // are classified (up to this many) to find more; they do not enter the frequencies.
    std::uint64_t max_topup_trials = 0;
    unsigned workers = 1;
    bool keep_samples = false;  // keep every AssociationSample of the first `trials`
};

struct CaseStats {
    std::uint64_t count = 0;
    double frequency = 0.0;
    double frequency_stderr = 0.0;
    std::uint64_t se_samples = 0;
    double se_ul = 0.0;
    double se_ul_stderr = 0.0;
    double se_dl = 0.0;
    double se_dl_stderr = 0.0;
    double se_ul_coupled = 0.0;
    double se_ul_coupled_stderr = 0.0;
};

struct CampaignStats {
    std::array<CaseStats, 4> cases{};  // indexed by case number - 1
    std::uint64_t trials = 0;
    std::uint64_t master_seed = 0;
    double system_se_decoupled = 0.0;
    double system_se_decoupled_stderr = 0.0;
    double system_se_coupled = 0.0;
    double system_se_coupled_stderr = 0.0;
    std::vector<AssociationSample> samples;  // only with keep_samples

    const CaseStats& at(AssociationCase c) const { return cases[static_cast<int>(c) - 1]; }
};

CampaignStats run_campaign(const SystemParams& p, const CampaignOptions& options);

struct EmpiricalEstimate {
    double mean = 0.0;
    double stderr_ = 0.0;
};

// Monte Carlo counterpart of laplace(): the sample mean of exp(-j I) for the field at the
// origin. With line_density > 0 a Plane2D field is drawn as points on a Poisson line process
// (count factor `line_count_factor`) rather than as a planar PPP, i.e. as the Cox process the
// planar field stands in for.
struct EmpiricalFieldSpec {
    InterferenceField field;
    double line_density = 0.0;  // lines per km (lambda_l); 0 draws a planar PPP
    double line_count_factor = kDefaultLineCountFactor;
};

EmpiricalEstimate empirical_laplace(const EmpiricalFieldSpec& spec, double j, std::uint64_t trials,
                                    std::uint64_t seed);

// Shot noise of one draw of the field, for tests that need the samples themselves.
double sample_interference(const EmpiricalFieldSpec& spec, Rng& rng);

}  // namespace cv2x
