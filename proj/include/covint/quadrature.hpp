#pragma once

#include <functional>

// Adaptive Gauss–Kronrod quadrature and the reference evaluator for the
// coverage integral I = ∫_0^∞ exp{−(Ax + Bx^{α/2})} dx.

namespace covint {

/// Parameters of the integrand exp{−(Ax + Bx^{α/2})}.
struct IntegralParams {
    double A = 0.0;      // interference coefficient πλβ
    double B = 0.0;      // noise coefficient μTσ²
    double alpha = 4.0;  // path-loss exponent

    static constexpr double kMinAlpha = 1.6;
    static constexpr double kMaxAlpha = 6.5;

    /// Throws DomainError for negative or non-finite coefficients and alpha
    /// outside [1.6, 6.5]; DegenerateError when A = B = 0.
    void validate() const;
};

struct QuadratureResult {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    long evaluations = 0;
};

struct QuadratureOptions {
    double abs_tol = 1e-10;
    double rel_tol = 0.0;
    // Semi-infinite map x = scale·t/(1 − t); pick the length scale of f.
    double scale = 1.0;
    int max_intervals = 4000;
};

using Integrand = std::function<double(double)>;

inline constexpr double kDefaultTolerance = 1e-10;

/// Globally adaptive 7/15-point Gauss–Kronrod on [a, b]. Stops when the summed
/// error estimate is below max(abs_tol, rel_tol·|I|). Tolerances finer than
/// about 100 ulp of ∫|f| are clamped to that roundoff floor. Throws
/// ConvergenceError if the budget runs out first.
QuadratureResult integrate_interval(const Integrand& f, double a, double b,
                                    const QuadratureOptions& options = {});

/// ∫_0^∞ f(x) dx through x = scale·t/(1 − t) and adaptive refinement on [0, 1).
QuadratureResult integrate_semi_infinite(const Integrand& f, double tol);
QuadratureResult integrate_semi_infinite(const Integrand& f, const QuadratureOptions& options);

double coverage_integrand(const IntegralParams& params, double x);

/// Reference value of I to absolute error tol (tol ≥ 1e-13). The variable is
/// first rescaled by 1/(A + B^{2/α}), the domain truncated where the integrand
/// drops below tol·1e-3 and the remaining interval integrated adaptively.
QuadratureResult integrate_coverage(const IntegralParams& params, double tol = kDefaultTolerance);

}  // namespace covint
