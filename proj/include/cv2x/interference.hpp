#pragma once

#include <limits>
#include <span>
#include <vector>

namespace cv2x {

enum class FieldKind { Line1D, Plane2D };

// Shot-noise interference seen at the origin from a homogeneous PPP of transmitters.
// Line1D: points on a line through the origin at |t| in (exclusion, outer), density per km.
// Plane2D: points in the annulus exclusion < r < outer, density per km^2.
struct InterferenceField {
    FieldKind kind = FieldKind::Plane2D;
    double density = 0.0;
    double power_gain = 1.0;  // P * G of each interferer, W
    int fading_shape = 1;
    double exclusion = 0.0;
    double outer = std::numeric_limits<double>::infinity();
    double alpha = 4.0;
    // Line1D only. When greater than `exclusion`, the field is conditioned on at least one
    // point with |t| in (exclusion, nonempty_window_end).
    double nonempty_window_end = 0.0;
};

// -ln of the Laplace transform at j (1/W).
double laplace_exponent(const InterferenceField& f, double j);

double laplace_line(const InterferenceField& f, double j);
double laplace_plane(const InterferenceField& f, double j);
double laplace(const InterferenceField& f, double j);

// Transform of the sum of independent fields.
double laplace_product(std::span<const InterferenceField> fields, double j);

// (-1)^k d^k/dj^k of the product transform for k = 0..k_max (k_max <= 3). Order 0 is exact;
// higher orders use differentiate() and so are counted by differentiation_calls().
std::vector<double> laplace_derivatives(std::span<const InterferenceField> fields, double j, int k_max);

// sum_{k<m} s^k / k! * derivatives[k]: the probability that a Gamma(m, m) power gain exceeds
// s/m times the interference, given the signed derivatives at j = s.
double gamma_ccdf_sum(int m, double s, std::span<const double> derivatives);

// Probability that no interferer at all is present, i.e. the transform's limit as j -> inf.
double empty_field_probability(std::span<const InterferenceField> fields);

}  // namespace cv2x
