#include "cv2x/geometry.hpp"

#include <cmath>
#include <numbers>
#include <ostream>

#include "cv2x/channel.hpp"

namespace cv2x {

namespace {

constexpr double kPi = std::numbers::pi;

std::size_t poisson_count(double mean, Rng& rng) {
    if (!(mean > 0.0)) return 0;
    return static_cast<std::size_t>(std::poisson_distribution<long long>(mean)(rng));
}

double chord_half_length(const Line& line, double radius) {
    const double h2 = radius * radius - line.rho * line.rho;
    return h2 > 0.0 ? std::sqrt(h2) : 0.0;
}

template <typename Sink>
void ppp_on_chord(const Line& line, double density, double radius, Rng& rng, Sink&& sink) {
    const double half = chord_half_length(line, radius);
    const std::size_t n = poisson_count(2.0 * half * density, rng);
    std::uniform_real_distribution<double> offset(-half, half);
    for (std::size_t i = 0; i < n; ++i) sink(offset(rng));
}

void ppp_disk_into(double density, double radius, Rng& rng, std::vector<Point2>& out) {
    out.clear();
    const std::size_t n = poisson_count(kPi * radius * radius * density, rng);
    out.reserve(n);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double r = radius * std::sqrt(unit(rng));
        const double phi = 2.0 * kPi * unit(rng);
        out.push_back({r * std::cos(phi), r * std::sin(phi)});
    }
}

void shadow_marks(const ShadowingSpec& spec, std::size_t n, Rng& rng, std::vector<double>& out) {
    for (std::size_t i = 0; i < n; ++i) out.push_back(sample_shadowing(spec, rng));
}

Line typical_line(Rng& rng) {
    return Line{std::uniform_real_distribution<double>(0.0, kPi)(rng), 0.0, true};
}

}  // namespace

Point2 Line::point_at(double offset) const {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    return {rho * c - offset * s, rho * s + offset * c};
}

void LinePoints::clear() {
    offsets_.clear();
    start_.clear();
}

void LinePoints::open_line() {
    if (start_.empty()) start_.push_back(0);
}

std::vector<Line> sample_plp(double lambda_l, double radius, Rng& rng, double count_factor) {
    std::vector<Line> lines;
    const std::size_t n = poisson_count(count_factor * lambda_l * radius, rng);
    lines.reserve(n + 1);
    std::uniform_real_distribution<double> theta(0.0, kPi);
    std::uniform_real_distribution<double> rho(-radius, radius);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = theta(rng);
        lines.push_back(Line{t, rho(rng), false});
    }
    lines.push_back(typical_line(rng));
    return lines;
}

std::vector<double> sample_ppp_on_line(const Line& line, double density, double radius, Rng& rng) {
    std::vector<double> out;
    ppp_on_chord(line, density, radius, rng, [&](double t) { out.push_back(t); });
    return out;
}

std::vector<Point2> sample_ppp_disk(double density, double radius, Rng& rng) {
    std::vector<Point2> out;
    ppp_disk_into(density, radius, rng, out);
    return out;
}

void sample_association_layer(const SystemParams& p, Rng& association, AssociationLayer& out) {
    ppp_disk_into(p.lambda_m_raw, p.radius, association, out.mbs);
    out.mbs_shadow.clear();
    if (p.shadowing.m.enabled) shadow_marks(p.shadowing.m, out.mbs.size(), association, out.mbs_shadow);

    out.typical_sbs.clear();
    const Line through_origin{0.0, 0.0, true};
    ppp_on_chord(through_origin, p.lambda_s_raw, p.radius, association,
                 [&](double t) { out.typical_sbs.push_back(t); });
    out.typical_sbs_shadow.clear();
    if (p.shadowing.s0.enabled) {
        shadow_marks(p.shadowing.s0, out.typical_sbs.size(), association, out.typical_sbs_shadow);
    }
}

void sample_realization(const SystemParams& p, TrialStreams& streams, NetworkRealization& out) {
    Rng& env = streams.environment;
    out.lines = sample_plp(p.lambda_l, p.radius, env, p.line_count_factor);
    out.typical_line = out.lines.size() - 1;

    // Association-relevant layer first, in the same order as sample_association_layer.
    ppp_disk_into(p.lambda_m_raw, p.radius, streams.association, out.mbs);
    out.mbs_shadow.clear();
    if (p.shadowing.m.enabled) {
        shadow_marks(p.shadowing.m, out.mbs.size(), streams.association, out.mbs_shadow);
    }

    out.sbs.clear();
    out.sbs.open_line();
    out.sbs_shadow.clear();
    // sbs_shadow stays indexed like sbs.all(); a disabled class contributes 1s.
    const bool any_shadow = p.shadowing.s0.enabled || p.shadowing.s1.enabled;
    for (std::size_t i = 0; i < out.typical_line; ++i) {
        const std::size_t before = out.sbs.total();
        ppp_on_chord(out.lines[i], p.lambda_s_raw, p.radius, env, [&](double t) { out.sbs.push(t); });
        const std::size_t n = out.sbs.total() - before;
        if (p.shadowing.s1.enabled) {
            shadow_marks(p.shadowing.s1, n, env, out.sbs_shadow);
        } else if (any_shadow) {
            out.sbs_shadow.insert(out.sbs_shadow.end(), n, 1.0);
        }
        out.sbs.close_line();
    }
    {
        const std::size_t before = out.sbs.total();
        ppp_on_chord(out.lines[out.typical_line], p.lambda_s_raw, p.radius, streams.association,
                     [&](double t) { out.sbs.push(t); });
        const std::size_t n = out.sbs.total() - before;
        if (p.shadowing.s0.enabled) {
            shadow_marks(p.shadowing.s0, n, streams.association, out.sbs_shadow);
        } else if (any_shadow) {
            out.sbs_shadow.insert(out.sbs_shadow.end(), n, 1.0);
        }
        out.sbs.close_line();
    }

    out.vehicles.clear();
    out.vehicles.open_line();
    for (std::size_t i = 0; i < out.lines.size(); ++i) {
        const bool typical = i == out.typical_line;
        ppp_on_chord(out.lines[i], p.lambda_v_raw, p.radius, env, [&](double t) {
            if (typical && std::abs(t) < kCoincidenceRadius) return;
            out.vehicles.push(t);
        });
        out.vehicles.close_line();
    }
    out.typical_vehicle = {0.0, 0.0};
}

NetworkRealization sample_realization(const SystemParams& p, TrialStreams& streams) {
    NetworkRealization r;
    sample_realization(p, streams, r);
    return r;
}

void write_realization(std::ostream& os, const NetworkRealization& r) {
    os << "kind,x_km,y_km,line_id\n";
    for (const Point2& m : r.mbs) os << "MBS," << m.x << ',' << m.y << ",-1\n";
    for (std::size_t i = 0; i < r.lines.size(); ++i) {
        for (double t : r.sbs.on(i)) {
            const Point2 q = r.lines[i].point_at(t);
            os << "SBS," << q.x << ',' << q.y << ',' << i << '\n';
        }
    }
    os << "VEH," << r.typical_vehicle.x << ',' << r.typical_vehicle.y << ',' << r.typical_line << '\n';
    for (std::size_t i = 0; i < r.lines.size(); ++i) {
        for (double t : r.vehicles.on(i)) {
            const Point2 q = r.lines[i].point_at(t);
            os << "VEH," << q.x << ',' << q.y << ',' << i << '\n';
        }
    }
}

}  // namespace cv2x
