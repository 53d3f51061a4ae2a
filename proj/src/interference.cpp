#include "cv2x/interference.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cv2x/errors.hpp"
#include "cv2x/numerics.hpp"

namespace cv2x {

namespace {

constexpr double kPi = std::numbers::pi;

// Mean interferer "kill" 1 - E[exp(-j P G H r^-alpha)] for H ~ Gamma(m, m).
double point_factor(double s, double r, double alpha, int m) {
    const double x = s * std::pow(r, -alpha);
    if (m == 1) return x / (1.0 + x);
    return -std::expm1(-m * std::log1p(x / m));
}

// Integral of 1/(1 + u^4) over (u, inf).
double quartic_tail(double u) {
    if (u >= 2.0) {
        // sum_n (-1)^n u^-(4n+3) / (4n+3)
        const double w = 1.0 / (u * u * u * u);
        double term = 1.0 / (u * u * u);
        double sum = 0.0;
        for (int n = 0; n < 16; ++n) {
            sum += (n % 2 == 0 ? term : -term) / (4 * n + 3);
            term *= w;
        }
        return sum;
    }
    const double r2 = std::numbers::sqrt2;
    const double f = (std::log((u * u + r2 * u + 1.0) / (u * u - r2 * u + 1.0)) + 2.0 * std::atan(r2 * u + 1.0) +
                      2.0 * std::atan(r2 * u - 1.0)) /
                     (4.0 * r2);
    return kPi / (2.0 * r2) - f;
}

// Integral of point_factor over (lo, hi), with weight r for planar fields.
double factor_integral(FieldKind kind, double s, double lo, double hi, double alpha, int m) {
    if (!(hi > lo) || s <= 0.0) return 0.0;
    const bool plane = kind == FieldKind::Plane2D;
    if (m == 1 && alpha == 4.0) {
        if (plane) {
            const double q = std::sqrt(s);
            return 0.5 * q * (std::atan2(q, lo * lo) - std::atan2(q, hi * hi));
        }
        const double a = std::sqrt(std::sqrt(s));
        const double upper = std::isinf(hi) ? 0.0 : quartic_tail(hi / a);
        return a * (quartic_tail(lo / a) - upper);
    }
    if (m == 1 && alpha == 2.0) {
        if (plane) {
            if (std::isinf(hi)) return std::numeric_limits<double>::infinity();
            return 0.5 * s * std::log1p((hi * hi - lo * lo) / (lo * lo + s));
        }
        const double q = std::sqrt(s);
        return q * (std::atan2(q, lo) - std::atan2(q, hi));
    }
    const Integrand f = [=](double r) { return point_factor(s, r, alpha, m) * (plane ? r : 1.0); };
    QuadratureSpec q;
    q.rel_tol = 1e-10;
    q.abs_tol = 0.0;
    if (std::isinf(hi)) {
        if (plane && alpha <= 2.0) return std::numeric_limits<double>::infinity();
        q.tail = TailSubstitution::Algebraic;
        q.tail_scale = std::max(lo, std::pow(s, 1.0 / alpha));
        return integrate_semi_infinite(f, lo, q).value;
    }
    // Split at the knee r ~ s^(1/alpha) so both pieces are smooth on their own scale.
    const double knee = std::pow(s, 1.0 / alpha);
    if (knee > lo && knee < hi) return integrate(f, lo, knee, q).value + integrate(f, knee, hi, q).value;
    return integrate(f, lo, hi, q).value;
}

// ln(e^x - 1) for x > 0.
double log_expm1(double x) { return x > 30.0 ? x + std::log1p(-std::exp(-x)) : std::log(std::expm1(x)); }

void require(bool ok, const char* what) {
    if (!ok) throw ConfigError(what);
}

}  // namespace

double laplace_exponent(const InterferenceField& f, double j) {
    require(j >= 0.0, "Laplace argument must be nonnegative");
    require(f.exclusion >= 0.0, "exclusion radius must be nonnegative");
    if (j == 0.0 || f.density <= 0.0) return 0.0;
    const double s = j * f.power_gain;
    const int m = f.fading_shape;
    if (f.kind == FieldKind::Plane2D) {
        return 2.0 * kPi * f.density * factor_integral(FieldKind::Plane2D, s, f.exclusion, f.outer, f.alpha, m);
    }
    const double lambda2 = 2.0 * f.density;
    if (!(f.nonempty_window_end > f.exclusion)) {
        return lambda2 * factor_integral(FieldKind::Line1D, s, f.exclusion, f.outer, f.alpha, m);
    }
    // Window (e, w) holds a Poisson number of points conditioned to be >= 1; beyond w the
    // process is unconditioned. E[prod | N >= 1] = expm1(mu * mean_l) / expm1(mu).
    const double e = f.exclusion;
    const double w = f.nonempty_window_end;
    const double beyond = lambda2 * factor_integral(FieldKind::Line1D, s, w, std::max(w, f.outer), f.alpha, m);
    const double mu = lambda2 * (w - e);
    const double kill = lambda2 * factor_integral(FieldKind::Line1D, s, e, w, f.alpha, m);
    const double nu = std::max(mu - kill, 0.0);
    double log_ratio;
    if (nu <= 0.0) {
        log_ratio = -std::numeric_limits<double>::infinity();
    } else {
        log_ratio = log_expm1(nu) - log_expm1(mu);
    }
    return beyond - log_ratio;
}

double laplace_line(const InterferenceField& f, double j) {
    require(f.kind == FieldKind::Line1D, "laplace_line needs a Line1D field");
    return std::exp(-laplace_exponent(f, j));
}

double laplace_plane(const InterferenceField& f, double j) {
    require(f.kind == FieldKind::Plane2D, "laplace_plane needs a Plane2D field");
    return std::exp(-laplace_exponent(f, j));
}

double laplace(const InterferenceField& f, double j) { return std::exp(-laplace_exponent(f, j)); }

double laplace_product(std::span<const InterferenceField> fields, double j) {
    double exponent = 0.0;
    for (const InterferenceField& f : fields) exponent += laplace_exponent(f, j);
    return std::exp(-exponent);
}

std::vector<double> laplace_derivatives(std::span<const InterferenceField> fields, double j, int k_max) {
    require(k_max >= 0 && k_max <= 3, "derivative order must be in 0..3");
    std::vector<double> out{laplace_product(fields, j)};
    if (k_max == 0) return out;
    if (!(j > 0.0)) throw DifferentiationUnstable("derivatives of the transform need j > 0");
    const Integrand zeta = [fields](double x) { return laplace_product(fields, x); };
    const std::vector<DerivativeEstimate> d = differentiate(zeta, j, k_max, j / 4.0);
    for (int k = 1; k <= k_max; ++k) {
        const double signed_value = (k % 2 == 0 ? 1.0 : -1.0) * d[k - 1].value;
        out.push_back(std::max(0.0, signed_value));
    }
    return out;
}

double gamma_ccdf_sum(int m, double s, std::span<const double> derivatives) {
    require(m >= 1 && static_cast<std::size_t>(m) <= derivatives.size(), "need m derivative orders");
    double sum = 0.0;
    double coeff = 1.0;  // s^k / k!
    for (int k = 0; k < m; ++k) {
        if (k > 0) coeff *= s / k;
        if (coeff == 0.0) break;
        sum += coeff * derivatives[k];
    }
    return sum;
}

double empty_field_probability(std::span<const InterferenceField> fields) {
    double log_p = 0.0;
    for (const InterferenceField& f : fields) {
        if (f.density <= 0.0) continue;
        if (f.kind == FieldKind::Plane2D) {
            const double r2 = f.outer * f.outer - f.exclusion * f.exclusion;
            log_p -= kPi * f.density * std::max(0.0, r2);
        } else {
            if (f.nonempty_window_end > f.exclusion) return 0.0;
            log_p -= 2.0 * f.density * std::max(0.0, f.outer - f.exclusion);
        }
    }
    return std::exp(log_p);
}

}  // namespace cv2x
