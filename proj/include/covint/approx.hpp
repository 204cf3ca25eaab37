#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "covint/model.hpp"
#include "covint/quadrature.hpp"

// Closed forms and approximations of I = ∫_0^∞ exp{−(Ax + Bx^{α/2})} dx with
// their remainder bounds, validity thresholds and ratio-test diagnostics.

namespace covint {

enum class Method { exact, limiting, interference_series, noise_series, laplace };

std::string_view to_string(Method method);
std::optional<Method> parse_method(std::string_view name);

struct ApproxResult {
    double value = 0.0;
    std::optional<double> error_bound;  // rigorous bound on |value − I|; +∞ when it overflows
    Method method = Method::exact;
    std::optional<int> terms_used;
    std::optional<int> terms_requested;  // differs from terms_used when truncation was capped
};

struct ValidityReport {
    double epsilon = 0.0;
    int n = 0;
    double B_threshold = 0.0;
    double sigma2_threshold = 0.0;
    // Interference: (πλβ)^{α/2}/(μT), an upper envelope of sigma2_threshold (its
    // actual n → ∞ limit is 0 for α > 2). Noise: n → ∞ limit.
    double sigma2_asymptotic = 0.0;
};

enum class Verdict { converges, diverges, conditional };

std::string_view to_string(Verdict verdict);

struct ConvergenceReport {
    std::vector<double> ratios;  // |a_{k+1}/a_k| for k = 1..K
    Verdict verdict = Verdict::conditional;
    double limit_expression = 0.0;  // limiting ratio, +∞ when unbounded
    // At α = 2 the series converges iff limit_expression < 1.
    bool conditional_converges() const { return limit_expression < 1.0; }
};

/// Quantities of the quadratic expansion of h(x) = Ax + Bx^{α/2} about x̂.
struct LaplaceInternals {
    double x_hat = 0.0;
    double a = 0.0;  // h''(x̂)/2
    double b = 0.0;  // h'(x̂)
    double c = 0.0;  // h(x̂)
    double y_hat = 0.0;
};

inline constexpr int kMaxSeriesTerms = 30;

// Closed forms.
double exact_alpha2(double A, double B);
double exact_alpha4(double A, double B);
double limit_noise(double B, double alpha);
double limit_interference(double A);

/// [A + (α/2)·B^{2/α}/Γ(2/α)]^{-1}. No error bound.
ApproxResult limiting_approx(const IntegralParams& params);

/// Expansion of exp(−Bx^{α/2}) integrated term by term, truncated after n.
/// The bound is the magnitude of the first omitted term. For α > 2 the series
/// diverges, so n is capped at the index that minimises that bound.
ApproxResult interference_series(const IntegralParams& params, int n);

/// n ∈ [0, k_max − 1] minimising the interference-series bound, i.e. one less
/// than the index of the smallest term beyond the first.
int interference_optimal_truncation(const IntegralParams& params, int k_max = kMaxSeriesTerms);

/// Expansion of exp(−Ax) integrated term by term, truncated after n.
/// Convergent for α > 2.
ApproxResult noise_series(const IntegralParams& params, int n);

double interference_b_threshold(double A, double alpha, double epsilon, int n);
double noise_b_threshold(double A, double alpha, double epsilon, int n);

/// Largest B (and σ²) for which the n-term interference series is within ε.
ValidityReport interference_validity(double epsilon, int n, const NetworkParams& net,
                                     const DerivedParams& derived);

/// Smallest B (and σ²) for which the n-term noise series is within ε.
ValidityReport noise_validity(double epsilon, int n, const NetworkParams& net,
                              const DerivedParams& derived);

/// Defaults to x̂ = 1/(A + B^{2/α}). Requires α > 2 and B > 0.
LaplaceInternals laplace_internals(const IntegralParams& params,
                                   std::optional<double> x_hat_override = std::nullopt);

/// √(π/a)·exp{b²/4a − c}·Q(ŷ), evaluated in log space. Exact at α = 4. The
/// error bound is attached for 2 < α < 6 only.
ApproxResult laplace_approx(const IntegralParams& params,
                            std::optional<double> x_hat_override = std::nullopt);

/// Cubic-remainder bound for laplace_approx, on the scale of I. Domain 2 < α < 6.
double laplace_error_bound(const IntegralParams& params, const LaplaceInternals& internals);

ConvergenceReport ratio_test_interference(const IntegralParams& params, int K);
ConvergenceReport ratio_test_noise(const IntegralParams& params, int K);

struct EvaluateOptions {
    int n = 4;
    std::optional<double> x_hat;
};

/// Uniform dispatch. Method::exact covers A = 0, B = 0, α = 2 and α = 4 and
/// throws UnsupportedExactError otherwise.
ApproxResult evaluate(const IntegralParams& params, Method method,
                      const EvaluateOptions& options = {});

}  // namespace covint
