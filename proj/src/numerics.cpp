#include "cv2x/numerics.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <sstream>

#include "cv2x/errors.hpp"

namespace cv2x {

namespace {

// 21-point Kronrod abscissae and weights with the embedded 10-point Gauss weights
// (QUADPACK qk21).
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525452140, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Panel {
    double a;
    double b;
    double value;
    double error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gk21(const Integrand& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double resg = 0.0;
    double resk = fc * kWgk[10];
    double resabs = std::abs(resk);
    std::array<double, 10> f1{};
    std::array<double, 10> f2{};
    bool finite = std::isfinite(fc);
    for (int j = 0; j < 10; ++j) {
        const double dx = half * kXgk[j];
        f1[j] = f(center - dx);
        f2[j] = f(center + dx);
        if (!std::isfinite(f1[j]) || !std::isfinite(f2[j])) {
            finite = false;
            f1[j] = std::isfinite(f1[j]) ? f1[j] : 0.0;
            f2[j] = std::isfinite(f2[j]) ? f2[j] : 0.0;
        }
        const double sum = f1[j] + f2[j];
        resk += kWgk[j] * sum;
        resabs += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
        if (j % 2 == 1) resg += kWg[j / 2] * sum;
    }
    const double mean = 0.5 * resk;
    double resasc = kWgk[10] * std::abs((std::isfinite(fc) ? fc : 0.0) - mean);
    for (int j = 0; j < 10; ++j) resasc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));

    const double value = resk * half;
    resabs *= std::abs(half);
    resasc *= std::abs(half);
    double err = std::abs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double eps = std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(50.0 * eps * resabs, err);
    if (!finite) err = std::numeric_limits<double>::infinity();
    return {a, b, value, err};
}

}  // namespace

QuadratureResult integrate(const Integrand& f, double a, double b, const QuadratureSpec& spec) {
    if (a == b) return {};
    if (a > b) {
        QuadratureResult r = integrate(f, b, a, spec);
        r.value = -r.value;
        return r;
    }
    // Running sums; panels with non-finite samples carry infinite error and are tracked
    // by count so the finite error sum stays meaningful.
    std::priority_queue<Panel> panels;
    double value = 0.0;
    double finite_error = 0.0;
    int infinite_panels = 0;
    const auto add = [&](const Panel& p, double sign) {
        value += sign * p.value;
        if (std::isinf(p.error)) {
            infinite_panels += sign > 0 ? 1 : -1;
        } else {
            finite_error += sign * p.error;
        }
    };
    const auto total_error = [&] {
        return infinite_panels > 0 ? std::numeric_limits<double>::infinity() : std::max(0.0, finite_error);
    };
    const auto converged = [&] { return total_error() <= std::max(spec.abs_tol, spec.rel_tol * std::abs(value)); };

    panels.push(gk21(f, a, b));
    add(panels.top(), 1.0);
    int evaluations = 21;
    const double min_width = 64.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(a), std::abs(b));

    for (int n = 1; n < spec.max_subdivisions && !converged(); ++n) {
        Panel worst = panels.top();
        if (worst.error == 0.0) break;
        panels.pop();
        add(worst, -1.0);
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b) || worst.b - worst.a <= min_width) {
            // Cannot split further: a non-finite sliver is dropped, a finite one is frozen.
            if (std::isinf(worst.error)) worst.value = 0.0;
            worst.error = 0.0;
            panels.push(worst);
            add(worst, 1.0);
            continue;
        }
        const Panel left = gk21(f, worst.a, mid);
        const Panel right = gk21(f, mid, worst.b);
        evaluations += 42;
        panels.push(left);
        panels.push(right);
        add(left, 1.0);
        add(right, 1.0);
    }
    // Recompute the sums once to shed accumulated cancellation.
    {
        value = 0.0;
        finite_error = 0.0;
        infinite_panels = 0;
        std::priority_queue<Panel> copy = panels;
        while (!copy.empty()) {
            add(copy.top(), 1.0);
            copy.pop();
        }
    }
    const double error = total_error();
    if (!(error <= std::max(spec.abs_tol, spec.rel_tol * std::abs(value)))) {
        std::ostringstream os;
        os << "quadrature on [" << a << ", " << b << "] reached error " << error << " for value " << value
           << " within " << spec.max_subdivisions << " subdivisions";
        throw QuadratureFailure(os.str(), value, error);
    }
    return {value, error, evaluations};
}

QuadratureResult integrate_semi_infinite(const Integrand& f, double lower, const QuadratureSpec& spec) {
    const double s = spec.tail_scale;
    if (spec.tail == TailSubstitution::Exponential) {
        const Integrand g = [&](double u) {
            if (u <= 0.0) return 0.0;
            return f(lower - s * std::log(u)) * s / u;
        };
        return integrate(g, 0.0, 1.0, spec);
    }
    const Integrand g = [&](double u) {
        if (u >= 1.0) return 0.0;
        const double w = 1.0 - u;
        return f(lower + s * u / w) * s / (w * w);
    };
    return integrate(g, 0.0, 1.0, spec);
}

double erfc(double x) { return std::erfc(x); }

double erfcx(double x) {
    if (x < 5.0) return std::exp(x * x) * std::erfc(x);
    // Continued fraction erfc(x) = exp(-x^2)/sqrt(pi) * 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...)))),
    // evaluated from the tail; 60 terms are far more than enough for x >= 5.
    double tail = x;
    for (int k = 60; k >= 1; --k) tail = x + 0.5 * k / tail;
    return 1.0 / (std::sqrt(std::numbers::pi) * tail);
}

namespace {
std::atomic<std::uint64_t> g_differentiation_calls{0};

double central_difference(const Integrand& f, double x, double h, int order, double f0) {
    switch (order) {
        case 1: return (f(x + h) - f(x - h)) / (2.0 * h);
        case 2: return (f(x + h) - 2.0 * f0 + f(x - h)) / (h * h);
        default: return (f(x + 2.0 * h) - 2.0 * f(x + h) + 2.0 * f(x - h) - f(x - 2.0 * h)) / (2.0 * h * h * h);
    }
}
}  // namespace

std::vector<DerivativeEstimate> differentiate(const Integrand& f, double x, int order, double h) {
    if (order < 1 || order > 3) throw DifferentiationUnstable("derivative order must be in 1..3");
    g_differentiation_calls.fetch_add(1, std::memory_order_relaxed);
    if (h <= 0.0) h = x != 0.0 ? std::abs(x) / 4.0 : 1e-3;
    const double f0 = f(x);
    std::vector<DerivativeEstimate> out;
    out.reserve(order);
    for (int k = 1; k <= order; ++k) {
        // Richardson table over h, h/2, h/4, h/8; the error is the change of the diagonal.
        double t[4][4];
        for (int i = 0; i < 4; ++i) {
            t[i][0] = central_difference(f, x, std::ldexp(h, -i), k, f0);
            for (int c = 1; c <= i; ++c) {
                const double w = std::ldexp(1.0, 2 * c);
                t[i][c] = (w * t[i][c - 1] - t[i - 1][c - 1]) / (w - 1.0);
            }
        }
        const double r = t[3][3];
        const double err = std::abs(r - t[2][2]);
        // Noise floor: roundoff in f amplified by h^-k.
        const double floor = 1e3 * std::numeric_limits<double>::epsilon() * std::abs(f0) /
                             std::pow(h / 8.0, static_cast<double>(k));
        if (err > 1e-4 * std::abs(r) && err > floor) {
            std::ostringstream os;
            os << "order-" << k << " derivative at " << x << ": extrapolants " << r << " and " << t[2][2]
               << " disagree";
            throw DifferentiationUnstable(os.str());
        }
        out.push_back({r, err});
    }
    return out;
}

std::uint64_t differentiation_calls() { return g_differentiation_calls.load(std::memory_order_relaxed); }
void reset_differentiation_calls() { g_differentiation_calls.store(0, std::memory_order_relaxed); }

}  // namespace cv2x
