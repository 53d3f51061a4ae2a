#include <gtest/gtest.h>

#include <cmath>
#include <cstring>

#include "cv2x/association.hpp"
#include "cv2x/se.hpp"
#include "cv2x/simulator.hpp"

using namespace cv2x;

namespace {

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

void expect_identical(const CampaignStats& a, const CampaignStats& b) {
    for (int c = 0; c < 4; ++c) {
        EXPECT_EQ(a.cases[c].count, b.cases[c].count);
        EXPECT_EQ(a.cases[c].se_samples, b.cases[c].se_samples);
        EXPECT_TRUE(same_bits(a.cases[c].se_ul, b.cases[c].se_ul));
        EXPECT_TRUE(same_bits(a.cases[c].se_dl, b.cases[c].se_dl));
        EXPECT_TRUE(same_bits(a.cases[c].se_ul_stderr, b.cases[c].se_ul_stderr));
        EXPECT_TRUE(same_bits(a.cases[c].se_ul_coupled, b.cases[c].se_ul_coupled));
    }
    EXPECT_TRUE(same_bits(a.system_se_decoupled, b.system_se_decoupled));
    EXPECT_TRUE(same_bits(a.system_se_coupled, b.system_se_coupled));
}

}  // namespace

TEST(Simulator, NoSmallCellsAlwaysCase1) {
    SystemParams p = reference_defaults();
    p.lambda_s_raw = 0.0;
    for (std::uint64_t i = 0; i < 200; ++i) EXPECT_EQ(run_trial(p, 4, i).assoc_case, AssociationCase::Case1);
}

TEST(Simulator, TrialDeterministic) {
    const SystemParams p = scenario_preset(Scenario::LOS);
    for (std::uint64_t i = 0; i < 20; ++i) {
        const TrialOutcome a = run_trial(p, 8, i);
        const TrialOutcome b = run_trial(p, 8, i);
        EXPECT_EQ(a.assoc_case, b.assoc_case);
        EXPECT_TRUE(same_bits(a.sinr_dl, b.sinr_dl));
        EXPECT_TRUE(same_bits(a.sinr_ul, b.sinr_ul));
        EXPECT_TRUE(same_bits(a.se_ul_coupled, b.se_ul_coupled));
        EXPECT_EQ(a.assoc_case, classify_trial(p, 8, i).assoc_case);
    }
}

TEST(Simulator, CoupledUplinkFollowsDownlink) {
    const SystemParams p = scenario_preset(Scenario::LOS);
    for (std::uint64_t i = 0; i < 50; ++i) {
        const TrialOutcome t = run_trial(p, 2, i);
        if (t.assoc_case == AssociationCase::Case1 || t.assoc_case == AssociationCase::Case4) {
            EXPECT_TRUE(same_bits(t.sinr_ul_coupled, t.sinr_ul));
        }
        EXPECT_NEAR(t.se_ul, std::log1p(t.sinr_ul), 1e-12);
    }
}

TEST(Simulator, FrequenciesMatchAnalytic) {
    for (Scenario s : {Scenario::LOS, Scenario::NLOS}) {
        const SystemParams p = scenario_preset(s);
        CampaignOptions o;
        o.trials = 100000;
        o.master_seed = 3;
        o.se_samples_per_case = 1;
        o.workers = 4;
        const CampaignStats st = run_campaign(p, o);
        const AssociationProbabilities pr =
            association_probabilities(transform_densities(p), derive_ratios(p), exponents_of(p));
        EXPECT_EQ(st.at(AssociationCase::Case3).count, 0u);
        const double analytic[] = {pr.pr1, pr.pr2, 0.0, pr.pr4};
        for (int c : {0, 1, 3}) {
            const double se = std::sqrt(analytic[c] * (1 - analytic[c]) / o.trials);
            EXPECT_NEAR(st.cases[c].frequency, analytic[c], 3 * se) << to_string(s) << " case " << c + 1;
        }
        if (s == Scenario::NLOS) EXPECT_NEAR(st.cases[0].frequency, pr.pr1, 0.01);
    }
}

TEST(Simulator, Case2UplinkSeMatchesAnalytic) {
    const SystemParams p = scenario_preset(Scenario::LOS);
    CampaignOptions o;
    o.trials = 100000;
    o.master_seed = 5;
    o.se_samples_per_case = 3000;
    o.workers = 4;
    const CampaignStats st = run_campaign(p, o);
    const double analytic = se_case_link(AssociationCase::Case2, Link::UL, transform_densities(p), derive_ratios(p), p);
    EXPECT_NEAR(st.at(AssociationCase::Case2).se_ul / analytic, 1.0, 0.05);
}

TEST(Simulator, SingleTrialCampaign) {
    const SystemParams p = scenario_preset(Scenario::NLOS);
    CampaignOptions o;
    o.trials = 1;
    o.master_seed = 12;
    const CampaignStats st = run_campaign(p, o);
    const TrialOutcome t = run_trial(p, 12, 0);
    const CaseStats& c = st.at(t.assoc_case);
    EXPECT_EQ(c.count, 1u);
    EXPECT_EQ(c.frequency, 1.0);
    EXPECT_EQ(c.frequency_stderr, 0.0);
    EXPECT_EQ(c.se_samples, 1u);
    EXPECT_TRUE(same_bits(c.se_ul, t.se_ul));
    EXPECT_TRUE(same_bits(c.se_dl, t.se_dl));
    EXPECT_EQ(c.se_ul_stderr, 0.0);
    EXPECT_TRUE(same_bits(st.system_se_decoupled, t.se_ul + t.se_dl));
    EXPECT_EQ(st.system_se_decoupled_stderr, 0.0);
}

TEST(Simulator, WorkerCountInvariance) {
    const SystemParams p = scenario_preset(Scenario::LOS);
    CampaignOptions o;
    o.trials = 6000;
    o.master_seed = 21;
    o.se_samples_per_case = 150;
    o.max_topup_trials = 20000;
    o.workers = 1;
    const CampaignStats one = run_campaign(p, o);
    o.workers = 3;
    const CampaignStats three = run_campaign(p, o);
    o.workers = 8;
    const CampaignStats eight = run_campaign(p, o);
    expect_identical(one, three);
    expect_identical(one, eight);
}

TEST(Simulator, TopupFillsRareCase) {
    const SystemParams p = scenario_preset(Scenario::NLOS);
    CampaignOptions o;
    o.trials = 500;
    o.master_seed = 2;
    o.se_samples_per_case = 200;
    o.max_topup_trials = 50000;
    const CampaignStats st = run_campaign(p, o);
    EXPECT_EQ(st.trials, 500u);
    for (int c : {0, 1, 3}) EXPECT_EQ(st.cases[c].se_samples, 200u);
    std::uint64_t total = 0;
    for (const CaseStats& c : st.cases) total += c.count;
    EXPECT_EQ(total, 500u);
}

TEST(Simulator, EmpiricalLaplaceTrivia) {
    EmpiricalFieldSpec spec;
    spec.field.density = 1.0;
    spec.field.outer = 5.0;
    EXPECT_EQ(empirical_laplace(spec, 0.0, 100, 1).mean, 1.0);
    spec.field.density = 0.0;
    const EmpiricalEstimate e = empirical_laplace(spec, 2.0, 100, 1);
    EXPECT_EQ(e.mean, 1.0);
    EXPECT_EQ(e.stderr_, 0.0);
}
