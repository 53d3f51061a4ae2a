#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "cv2x/channel.hpp"
#include "cv2x/errors.hpp"
#include "cv2x/numerics.hpp"
#include "cv2x/se.hpp"
#include "cv2x/simulator.hpp"

using namespace cv2x;

namespace {

SystemParams los(double lambda_s = 2.0) {
    SystemParams p = scenario_preset(Scenario::LOS);
    p.lambda_s_raw = lambda_s;
    return p;
}

}  // namespace

TEST(Se, ConditionalAgainstMonteCarlo) {
    // Single planar field, Rayleigh fading everywhere: E[ln(1 + H PG x^-4 / I)].
    LinkSetup link;
    link.power_gain = 1.0;
    link.alpha = 4.0;
    InterferenceField f;
    f.density = 1.0;
    f.exclusion = 0.5;
    f.outer = 5.0;
    link.fields = {f};
    const double x = 0.5;
    const double analytic = conditional_se(link, x);

    EmpiricalFieldSpec spec;
    spec.field = f;
    Rng rng(5);
    const int n = 200000;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double i_tot = sample_interference(spec, rng);
        const double h = sample_nakagami_power(1, rng);
        const double v = std::log1p(h * std::pow(x, -4.0) / i_tot);
        sum += v;
        sum2 += v * v;
    }
    const double mean = sum / n;
    const double se = std::sqrt((sum2 / n - mean * mean) / n);
    EXPECT_NEAR(analytic, mean, 4.0 * se + 1e-3 * mean);
}

TEST(Se, ConditionalAgainstDirectIntegral) {
    // Unbounded plane, m = 1, alpha = 4, no exclusion: success(t) = exp(-c sqrt(theta x^4 / PG)).
    LinkSetup link;
    link.power_gain = 3.0;
    InterferenceField f;
    f.density = 0.6;
    f.power_gain = 1.5;
    link.fields = {f};
    const double x = 0.7;
    const double c = std::numbers::pi * std::numbers::pi / 2 * f.density * std::sqrt(f.power_gain);
    const auto success = [&](double t) {
        return std::exp(-c * std::sqrt(std::expm1(t) * std::pow(x, 4.0) / link.power_gain));
    };
    QuadratureSpec q;
    q.rel_tol = 1e-12;
    q.tail_scale = 4.0;
    const double ref = integrate_semi_infinite(success, 0.0, q).value;
    EXPECT_NEAR(conditional_se(link, x) / ref, 1.0, 1e-6);
}

TEST(Se, DivergesWithoutInterferers) {
    SystemParams p = los();
    p.lambda_v_raw = 0.0;
    const TransformedDensities d = transform_densities(p);
    const DerivedRatios r = derive_ratios(p);
    EXPECT_THROW(se_case_link(AssociationCase::Case1, Link::UL, d, r, p), DivergentSE);
}

TEST(Se, Case3Invalid) {
    const SystemParams p = los();
    const TransformedDensities d = transform_densities(p);
    const DerivedRatios r = derive_ratios(p);
    EXPECT_THROW(se_case_link(AssociationCase::Case3, Link::DL, d, r, p), InvalidCombination);
    EXPECT_THROW(se_case_link(AssociationCase::Case3, Link::UL, d, r, p), InvalidCombination);
}

TEST(Se, WeightedSumOfEqualRates) {
    const AssociationProbabilities pr{0.2, 0.3, 0.0, 0.5};
    const CaseSe c{1.7, 1.7};
    EXPECT_NEAR(weighted_system_se(pr, c, c, c), 2 * 1.7, 1e-15);
}

TEST(Se, CoupledBaselineStructure) {
    const SystemParams p = los();
    const SePair both = evaluate_both_modes(p);
    EXPECT_EQ(both.coupled.mode, AccessMode::Coupled);
    EXPECT_EQ(both.coupled.pr.pr2, 0.0);
    EXPECT_NEAR(both.coupled.pr.pr1, both.decoupled.pr.pr1 + both.decoupled.pr.pr2, 1e-15);
    EXPECT_EQ(both.coupled.pr.pr4, both.decoupled.pr.pr4);
    EXPECT_EQ(both.coupled.case4.ul, both.decoupled.case4.ul);
    EXPECT_GT(both.decoupled.system_se, both.coupled.system_se);

    const SeResult alone = system_se(AccessMode::Decoupled, p);
    EXPECT_EQ(alone.system_se, both.decoupled.system_se);
    EXPECT_EQ(system_se(AccessMode::Coupled, p).system_se, both.coupled.system_se);
}

TEST(Se, NoSmallCellsModesCoincide) {
    const SePair both = evaluate_both_modes(los(0.0));
    EXPECT_EQ(both.decoupled.pr.pr1, 1.0);
    EXPECT_NEAR(both.coupled.system_se, both.decoupled.system_se, 1e-12);
}

TEST(Se, PositiveAndFinite) {
    for (Scenario s : {Scenario::LOS, Scenario::NLOS}) {
        SystemParams p = scenario_preset(s);
        const SeResult r = system_se(AccessMode::Decoupled, p);
        for (const CaseSe& c : {r.case1, r.case2, r.case4}) {
            EXPECT_GT(c.ul, 0.0);
            EXPECT_GT(c.dl, 0.0);
            EXPECT_TRUE(std::isfinite(c.ul) && std::isfinite(c.dl));
        }
    }
}
