#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "cv2x/params.hpp"
#include "cv2x/rng.hpp"

namespace cv2x {

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

// A road in (theta, rho) form: the foot of the perpendicular from the origin is
// rho * (cos theta, sin theta), and points are addressed by their signed offset along
// the direction (-sin theta, cos theta).
struct Line {
    double theta = 0.0;
    double rho = 0.0;
    bool is_typical = false;

    Point2 point_at(double offset) const;
    double distance_sq(double offset) const { return rho * rho + offset * offset; }
};

// Per-line 1D offsets in one flat buffer.
class LinePoints {
public:
    void clear();
    // Opens the slot for the next line; points pushed afterwards belong to it.
    void open_line();
    void push(double offset) { offsets_.push_back(offset); }
    void close_line() { start_.push_back(offsets_.size()); }

    std::span<const double> on(std::size_t line) const {
        return {offsets_.data() + start_[line], start_[line + 1] - start_[line]};
    }
    std::size_t first_index(std::size_t line) const { return start_[line]; }
    std::size_t line_count() const { return start_.empty() ? 0 : start_.size() - 1; }
    std::size_t total() const { return offsets_.size(); }
    std::span<const double> all() const { return offsets_; }

private:
    std::vector<double> offsets_;
    std::vector<std::size_t> start_;
};

// One Cox-process drop under Palm conditioning: the typical vehicle sits at the origin on
// the typical line, which is always the last entry of `lines`.
struct NetworkRealization {
    std::vector<Line> lines;
    std::size_t typical_line = 0;
    std::vector<Point2> mbs;
    std::vector<double> mbs_shadow;  // chi per MBS; empty when M shadowing is disabled
    LinePoints sbs;
    std::vector<double> sbs_shadow;  // chi per SBS, indexed like sbs.all(); empty when disabled
    LinePoints vehicles;             // the typical vehicle itself is not stored
    Point2 typical_vehicle{};

    std::span<const double> typical_sbs() const { return sbs.on(typical_line); }
    std::span<const double> typical_vehicles() const { return vehicles.on(typical_line); }
};

// Vehicles closer than this to the origin are treated as the typical vehicle itself.
inline constexpr double kCoincidenceRadius = 1e-9;

// Non-typical lines: Poisson(count_factor * lambda_l * radius) lines with theta ~ U[0, pi)
// and rho ~ U[-radius, radius]; the typical line (rho = 0) is appended last.
std::vector<Line> sample_plp(double lambda_l, double radius, Rng& rng,
                             double count_factor = kDefaultLineCountFactor);

// Homogeneous 1D PPP on the chord of `line` inside the disk.
std::vector<double> sample_ppp_on_line(const Line& line, double density, double radius, Rng& rng);

// Homogeneous planar PPP in the disk.
std::vector<Point2> sample_ppp_disk(double density, double radius, Rng& rng);

NetworkRealization sample_realization(const SystemParams& p, TrialStreams& streams);
// Reuses the buffers of `out`.
void sample_realization(const SystemParams& p, TrialStreams& streams, NetworkRealization& out);

// Only what the association rule needs: MBSs and the typical-line SBSs, with their shadowing
// marks. Consumes `streams.association` exactly as sample_realization does, so a trial
// classified from this layer matches the full realization of the same trial.
struct AssociationLayer {
    std::vector<Point2> mbs;
    std::vector<double> mbs_shadow;
    std::vector<double> typical_sbs;
    std::vector<double> typical_sbs_shadow;
};
void sample_association_layer(const SystemParams& p, Rng& association, AssociationLayer& out);

// kind,x_km,y_km,line_id rows (line_id is -1 for MBSs).
void write_realization(std::ostream& os, const NetworkRealization& r);

}  // namespace cv2x
