#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "cv2x/geometry.hpp"

using namespace cv2x;

namespace {

// Sample mean and its standard error of f() over n draws.
template <class F>
std::pair<double, double> mean_and_se(int n, F f) {
    double s = 0.0, s2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = f();
        s += x;
        s2 += x * x;
    }
    const double m = s / n;
    return {m, std::sqrt((s2 / n - m * m) / n)};
}

}  // namespace

TEST(Geometry, PlpWithoutLinesKeepsTypical) {
    Rng rng(1);
    const auto lines = sample_plp(0.0, 5.0, rng);
    ASSERT_EQ(lines.size(), 1u);
    EXPECT_TRUE(lines[0].is_typical);
    EXPECT_EQ(lines[0].rho, 0.0);
}

TEST(Geometry, PlpLineCountMean) {
    Rng rng(2);
    const double expected = kDefaultLineCountFactor * 10.0 * 5.0;
    const auto [m, se] = mean_and_se(10000, [&] { return double(sample_plp(10.0, 5.0, rng).size() - 1); });
    EXPECT_NEAR(m, expected, 3.0 * std::sqrt(expected / 10000.0));
    (void)se;
}

TEST(Geometry, PlpOffsetsInsideDisk) {
    Rng rng(3);
    for (int i = 0; i < 100; ++i) {
        for (const Line& l : sample_plp(10.0, 5.0, rng)) {
            EXPECT_LE(std::abs(l.rho), 5.0);
            EXPECT_GE(l.theta, 0.0);
            EXPECT_LT(l.theta, std::numbers::pi);
        }
    }
}

TEST(Geometry, LinePppEdgeCases) {
    Rng rng(4);
    EXPECT_TRUE(sample_ppp_on_line(Line{0.3, 0.0, true}, 0.0, 5.0, rng).empty());
    EXPECT_TRUE(sample_ppp_on_line(Line{0.3, 5.0, false}, 100.0, 5.0, rng).empty());
}

TEST(Geometry, LinePppCountMean) {
    Rng rng(5);
    const double lambda = 2.0, r = 5.0;
    const Line typical{0.0, 0.0, true};
    const auto [m, se] = mean_and_se(10000, [&] { return double(sample_ppp_on_line(typical, lambda, r, rng).size()); });
    EXPECT_NEAR(m, 2.0 * lambda * r, 3.0 * std::sqrt(2.0 * lambda * r / 10000.0));
    (void)se;
}

TEST(Geometry, LinePppOnChord) {
    Rng rng(6);
    const Line l{1.1, 3.0, false};
    for (double t : sample_ppp_on_line(l, 50.0, 5.0, rng)) {
        EXPECT_LE(l.distance_sq(t), 25.0 + 1e-12);
        const Point2 q = l.point_at(t);
        EXPECT_NEAR(q.x * q.x + q.y * q.y, l.distance_sq(t), 1e-12);
    }
}

TEST(Geometry, DiskPpp) {
    Rng rng(7);
    EXPECT_TRUE(sample_ppp_disk(0.0, 5.0, rng).empty());
    const double expected = 25.0 * std::numbers::pi;
    double total = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const auto pts = sample_ppp_disk(1.0, 5.0, rng);
        total += double(pts.size());
        for (const Point2& q : pts) EXPECT_LE(q.x * q.x + q.y * q.y, 25.0 + 1e-12);
    }
    EXPECT_NEAR(total / 10000.0, expected, 3.0 * std::sqrt(expected / 10000.0));
}

TEST(Geometry, DiskPppRadialLaw) {
    // Pr(r < R/2) = 1/4 for a uniform disk.
    Rng rng(8);
    int inner = 0, all = 0;
    for (int i = 0; i < 2000; ++i) {
        for (const Point2& q : sample_ppp_disk(1.0, 5.0, rng)) {
            ++all;
            inner += q.x * q.x + q.y * q.y < 6.25;
        }
    }
    const double f = double(inner) / all;
    EXPECT_NEAR(f, 0.25, 3.0 * std::sqrt(0.25 * 0.75 / all));
}

TEST(Geometry, RealizationDeterministic) {
    const SystemParams p = reference_defaults();
    TrialStreams a = TrialStreams::for_trial(11, 5);
    TrialStreams b = TrialStreams::for_trial(11, 5);
    const NetworkRealization r1 = sample_realization(p, a);
    const NetworkRealization r2 = sample_realization(p, b);
    std::ostringstream s1, s2;
    write_realization(s1, r1);
    write_realization(s2, r2);
    EXPECT_EQ(s1.str(), s2.str());
    EXPECT_FALSE(s1.str().empty());
    EXPECT_EQ(s1.str().rfind("kind,x_km,y_km,line_id", 0), 0u);
}

TEST(Geometry, RealizationStructure) {
    const SystemParams p = reference_defaults();
    TrialStreams s = TrialStreams::for_trial(3, 0);
    const NetworkRealization r = sample_realization(p, s);
    EXPECT_EQ(r.typical_line, r.lines.size() - 1);
    EXPECT_TRUE(r.lines.back().is_typical);
    EXPECT_EQ(r.sbs.line_count(), r.lines.size());
    EXPECT_EQ(r.vehicles.line_count(), r.lines.size());
    EXPECT_TRUE(r.mbs_shadow.empty());
    EXPECT_TRUE(r.sbs_shadow.empty());
    for (double t : r.typical_vehicles()) EXPECT_GE(std::abs(t), kCoincidenceRadius);
}

TEST(Geometry, NoSmallCells) {
    SystemParams p = reference_defaults();
    p.lambda_s_raw = 0.0;
    TrialStreams s = TrialStreams::for_trial(3, 1);
    EXPECT_EQ(sample_realization(p, s).sbs.total(), 0u);
}

TEST(Geometry, AssociationLayerMatchesRealization) {
    SystemParams p = reference_defaults();
    p.shadowing.m = {0.0, 4.0, true};
    p.shadowing.s0 = {0.0, 4.0, true};
    TrialStreams full = TrialStreams::for_trial(9, 4);
    const NetworkRealization r = sample_realization(p, full);
    TrialStreams only = TrialStreams::for_trial(9, 4);
    AssociationLayer layer;
    sample_association_layer(p, only.association, layer);
    ASSERT_EQ(layer.mbs.size(), r.mbs.size());
    for (std::size_t i = 0; i < r.mbs.size(); ++i) {
        EXPECT_EQ(layer.mbs[i].x, r.mbs[i].x);
        EXPECT_EQ(layer.mbs_shadow[i], r.mbs_shadow[i]);
    }
    const auto typ = r.typical_sbs();
    ASSERT_EQ(layer.typical_sbs.size(), typ.size());
    const std::size_t first = r.sbs.first_index(r.typical_line);
    for (std::size_t i = 0; i < typ.size(); ++i) {
        EXPECT_EQ(layer.typical_sbs[i], typ[i]);
        EXPECT_EQ(layer.typical_sbs_shadow[i], r.sbs_shadow[first + i]);
    }
}
