#include "covint/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "covint/error.hpp"

namespace covint {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Kronrod abscissae on [0, 1]; odd indices are the 7-point Gauss nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000,
};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
};

struct Segment {
    double a;
    double b;
    double value;
    double error;
    double resabs;
};

bool operator<(const Segment& lhs, const Segment& rhs) { return lhs.error < rhs.error; }

double checked(double v) {
    if (!std::isfinite(v)) {
        throw ConvergenceError("quadrature: integrand returned a non-finite value");
    }
    return v;
}

// QUADPACK-style error estimate for one 15-point panel.
Segment gauss_kronrod15(const Integrand& f, double a, double b, long& evaluations) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const double fc = checked(f(center));
    double resk = fc * kWgk[7];
    double resg = fc * kWg[3];
    double resabs = std::abs(resk);
    std::array<double, 7> f1{};
    std::array<double, 7> f2{};
    for (std::size_t j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        f1[j] = checked(f(center - dx));
        f2[j] = checked(f(center + dx));
        const double sum = f1[j] + f2[j];
        resk += kWgk[j] * sum;
        resabs += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
        if (j % 2 == 1) {
            resg += kWg[j / 2] * sum;
        }
    }
    evaluations += 15;

    const double mean = 0.5 * resk;
    double resasc = kWgk[7] * std::abs(fc - mean);
    for (std::size_t j = 0; j < 7; ++j) {
        resasc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));
    }

    const double scale = std::abs(half);
    double error = std::abs((resk - resg) * half);
    resasc *= scale;
    resabs *= scale;
    if (resasc != 0.0 && error != 0.0) {
        error = resasc * std::min(1.0, std::pow(200.0 * error / resasc, 1.5));
    }
    if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps)) {
        error = std::max(50.0 * kEps * resabs, error);
    }
    return {a, b, resk * half, error, resabs};
}

}  // namespace

void IntegralParams::validate() const {
    if (!std::isfinite(A) || !std::isfinite(B) || !std::isfinite(alpha)) {
        throw DomainError("integral parameters must be finite");
    }
    if (A < 0.0 || B < 0.0) {
        throw DomainError("integral parameters require A >= 0 and B >= 0");
    }
    if (A == 0.0 && B == 0.0) {
        throw DegenerateError("A = B = 0: the coverage integral diverges");
    }
    if (alpha < kMinAlpha || alpha > kMaxAlpha) {
        throw DomainError("alpha must lie in [1.6, 6.5], got " + std::to_string(alpha));
    }
}

QuadratureResult integrate_interval(const Integrand& f, double a, double b,
                                    const QuadratureOptions& options) {
    if (!(options.abs_tol >= 0.0) || !(options.rel_tol >= 0.0) ||
        (options.abs_tol == 0.0 && options.rel_tol == 0.0)) {
        throw DomainError("quadrature: need a positive absolute or relative tolerance");
    }
    if (!(b > a)) {
        if (a == b) {
            return {};
        }
        throw DomainError("quadrature: interval must satisfy a <= b");
    }

    long evaluations = 0;
    std::vector<Segment> heap;
    heap.reserve(static_cast<std::size_t>(options.max_intervals) + 1);
    heap.push_back(gauss_kronrod15(f, a, b, evaluations));

    while (true) {
        double value = 0.0;
        double error = 0.0;
        double resabs = 0.0;
        for (const auto& s : heap) {
            value += s.value;
            error += s.error;
            resabs += s.resabs;
        }
        const double target = std::max({options.abs_tol, options.rel_tol * std::abs(value),
                                        100.0 * kEps * resabs});
        if (error <= target) {
            return {value, error, evaluations};
        }
        if (static_cast<int>(heap.size()) >= options.max_intervals) {
            throw ConvergenceError("quadrature: error estimate " + std::to_string(error) +
                                   " above tolerance after " + std::to_string(heap.size()) +
                                   " subintervals");
        }

        std::pop_heap(heap.begin(), heap.end());
        const Segment worst = heap.back();
        heap.pop_back();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            throw ConvergenceError("quadrature: subinterval can no longer be bisected");
        }
        heap.push_back(gauss_kronrod15(f, worst.a, mid, evaluations));
        std::push_heap(heap.begin(), heap.end());
        heap.push_back(gauss_kronrod15(f, mid, worst.b, evaluations));
        std::push_heap(heap.begin(), heap.end());
    }
}

QuadratureResult integrate_semi_infinite(const Integrand& f, double tol) {
    if (!(tol > 0.0)) {
        throw DomainError("integrate_semi_infinite: tolerance must be positive");
    }
    QuadratureOptions options;
    options.abs_tol = tol;
    return integrate_semi_infinite(f, options);
}

QuadratureResult integrate_semi_infinite(const Integrand& f, const QuadratureOptions& options) {
    if (!(options.scale > 0.0)) {
        throw DomainError("integrate_semi_infinite: scale must be positive");
    }
    const double scale = options.scale;
    const Integrand mapped = [&f, scale](double t) {
        const double one_minus = 1.0 - t;
        const double x = scale * t / one_minus;
        if (!std::isfinite(x)) {
            return 0.0;
        }
        const double fx = f(x);
        if (fx == 0.0) {
            return 0.0;
        }
        return fx * scale / (one_minus * one_minus);
    };
    return integrate_interval(mapped, 0.0, 1.0, options);
}

double coverage_integrand(const IntegralParams& params, double x) {
    return std::exp(-(params.A * x + params.B * std::pow(x, 0.5 * params.alpha)));
}

QuadratureResult integrate_coverage(const IntegralParams& params, double tol) {
    params.validate();
    if (!(tol >= 1e-13)) {
        throw DomainError("integrate_coverage: tolerance must be at least 1e-13");
    }

    // x = s·u with s = 1/(A + B^{2/α}) gives A' + B'^{2/α} = 1.
    const double half_alpha = 0.5 * params.alpha;
    const double s = 1.0 / (params.A + std::pow(params.B, 1.0 / half_alpha));
    const IntegralParams scaled{params.A * s, params.B * std::pow(s, half_alpha), params.alpha};
    const double tol_scaled = tol / s;

    const auto h = [&scaled, half_alpha](double u) {
        return scaled.A * u + scaled.B * std::pow(u, half_alpha);
    };
    const double level = std::max(5.0, std::log(1.0 / (tol_scaled * 1e-3)));
    double lo = 0.0;
    double hi = 1.0;
    while (h(hi) < level) {
        lo = hi;
        hi *= 2.0;
    }
    for (int i = 0; i < 200 && hi - lo > 1e-12 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        (h(mid) < level ? lo : hi) = mid;
    }
    const double cutoff = hi;

    // ∫_X^∞ e^{−h} ≤ e^{−h(X)}/h'(X) when h' is nondecreasing; the factor 2
    // covers the concave case α < 2 to leading order.
    const double slope =
        scaled.A + scaled.B * half_alpha * std::pow(cutoff, half_alpha - 1.0);
    const double tail = 2.0 * std::exp(-h(cutoff)) / slope;

    QuadratureOptions options;
    options.abs_tol = 0.5 * tol_scaled;
    const QuadratureResult body = integrate_interval(
        [&scaled](double u) { return coverage_integrand(scaled, u); }, 0.0, cutoff, options);

    return {body.value * s, (body.abs_error_estimate + tail) * s, body.evaluations};
}

}  // namespace covint
