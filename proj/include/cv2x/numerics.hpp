#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace cv2x {

using Integrand = std::function<double(double)>;

enum class TailSubstitution {
    Exponential,  // x = lower - scale * ln(u)
    Algebraic,    // x = lower + scale * u / (1 - u)
};

struct QuadratureSpec {
    double rel_tol = 1e-8;
    double abs_tol = 1e-15;
    int max_subdivisions = 4000;
    TailSubstitution tail = TailSubstitution::Exponential;
    double tail_scale = 1.0;  // characteristic length of the decay
};

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;
    int evaluations = 0;
};

// Adaptive Gauss-Kronrod (10/21 point) on [a, b]. Throws QuadratureFailure, carrying the best
// estimate, when the requested tolerance is not met within the subdivision budget.
QuadratureResult integrate(const Integrand& f, double a, double b, const QuadratureSpec& spec = {});

// Same, on [lower, inf) after mapping to (0, 1) with spec.tail.
QuadratureResult integrate_semi_infinite(const Integrand& f, double lower, const QuadratureSpec& spec = {});

double erfc(double x);
// exp(x^2) * erfc(x), finite for large positive x.
double erfcx(double x);

struct DerivativeEstimate {
    double value = 0.0;
    double error = 0.0;
};

// Derivatives of orders 1..order (order <= 3) at x: central differences at h, h/2, h/4, h/8
// extrapolated by a full Richardson table. h defaults to |x|/4 (or 1e-3 when x == 0). Throws
// DifferentiationUnstable when the last two diagonal extrapolants disagree by more than 1e-4 relative.
std::vector<DerivativeEstimate> differentiate(const Integrand& f, double x, int order, double h = 0.0);

// Number of differentiate() calls since the last reset, across all threads.
std::uint64_t differentiation_calls();
void reset_differentiation_calls();

}  // namespace cv2x
