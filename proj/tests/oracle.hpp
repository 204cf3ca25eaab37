#pragma once

// Test-only reference integrators. Double-exponential (tanh-sinh / exp-sinh)
// rules, deliberately unrelated to the Gauss–Kronrod code under test.

#include <cmath>
#include <functional>
#include <numbers>
#include <random>

namespace oracle {

using Fn = std::function<double(double)>;

namespace detail {

constexpr double kHalfPi = std::numbers::pi / 2.0;

// Refines the step until two successive levels agree to rel_tol.
template <typename LevelSum>
double refine(LevelSum&& level_sum, double rel_tol) {
    double h = 0.5;
    double previous = level_sum(h);
    for (int level = 0; level < 12; ++level) {
        h *= 0.5;
        const double current = level_sum(h);
        if (std::abs(current - previous) <= rel_tol * std::abs(current)) {
            return current;
        }
        previous = current;
    }
    return previous;
}

}  // namespace detail

/// ∫_a^b f, tolerant of integrable endpoint singularities.
inline double tanh_sinh(const Fn& f, double a, double b, double rel_tol = 1e-14) {
    const double half = 0.5 * (b - a);
    const auto level_sum = [&](double h) {
        double sum = 0.0;
        const int n = static_cast<int>(4.0 / h);
        for (int k = -n; k <= n; ++k) {
            const double t = k * h;
            const double u = detail::kHalfPi * std::sinh(t);
            const double cu = std::cosh(u);
            const double weight = detail::kHalfPi * std::cosh(t) / (cu * cu);
            // distance from the nearer endpoint, 1 − tanh|u|, without cancellation
            const double gap = 2.0 / (1.0 + std::exp(2.0 * std::abs(u)));
            const double x = t >= 0 ? b - half * gap : a + half * gap;
            if (x <= a || x >= b) {
                continue;
            }
            sum += weight * f(x);
        }
        return sum * h * half;
    };
    return detail::refine(level_sum, rel_tol);
}

/// ∫_a^∞ f for f decaying at least exponentially.
inline double exp_sinh(const Fn& f, double a, double rel_tol = 1e-14, double scale = 1.0) {
    const auto level_sum = [&](double h) {
        double sum = 0.0;
        const int n = static_cast<int>(4.5 / h);
        for (int k = -n; k <= n; ++k) {
            const double t = k * h;
            const double e = scale * std::exp(detail::kHalfPi * std::sinh(t));
            const double x = a + e;
            if (!(x > a) || !std::isfinite(x)) {
                continue;
            }
            const double fx = f(x);
            if (fx == 0.0) {
                continue;
            }
            sum += fx * detail::kHalfPi * std::cosh(t) * e;
        }
        return sum * h;
    };
    return detail::refine(level_sum, rel_tol);
}

/// I = ∫_0^∞ exp{−(Ax + Bx^{α/2})} dx by exp-sinh.
inline double coverage_integral(double A, double B, double alpha) {
    const double scale = 1.0 / (A + std::pow(B, 2.0 / alpha));
    return exp_sinh(
        [=](double x) { return std::exp(-(A * x + B * std::pow(x, 0.5 * alpha))); }, 0.0,
        1e-14, scale);
}

/// Γ(a, z) − Γ(a) for a ∈ (−1, 0), from the defining integrals only:
/// ∫_0^z x^{a−1}(1 − e^{−x}) dx − z^a/a.
inline double upper_gamma_minus_gamma(double a, double z) {
    const double body = tanh_sinh(
        [a](double x) { return std::pow(x, a - 1.0) * (-std::expm1(-x)); }, 0.0, z, 1e-13);
    return body - std::pow(z, a) / a;
}

inline std::mt19937_64 rng(std::uint64_t seed = 20240611) { return std::mt19937_64(seed); }

inline double uniform(std::mt19937_64& gen, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(gen);
}

inline double rel_err(double value, double ref) {
    return std::abs(value - ref) / std::abs(ref);
}

}  // namespace oracle
