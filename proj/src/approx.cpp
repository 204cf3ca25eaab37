#include "covint/approx.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "covint/error.hpp"
#include "covint/specfun.hpp"

namespace covint {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// exp() overflows above this.
constexpr double kMaxLog = 709.0;

double exp_or_inf(double log_value) { return log_value > kMaxLog ? kInf : std::exp(log_value); }

double sign_of_power(int k) { return k % 2 == 0 ? 1.0 : -1.0; }

void check_terms(int n) {
    if (n < 0 || n > kMaxSeriesTerms) {
        throw DomainError("series: number of terms must lie in [0, " +
                          std::to_string(kMaxSeriesTerms) + "]");
    }
}

// ln |t_k / t_0| for the interference series.
double interference_log_ratio(const IntegralParams& p, int k) {
    const double half_alpha = 0.5 * p.alpha;
    return -specfun::log_gamma(k + 1.0) +
           k * (std::log(p.B) - half_alpha * std::log(p.A)) +
           specfun::log_gamma(k * half_alpha + 1.0);
}

// ln |t_k / t_0| for the noise series.
double noise_log_ratio(const IntegralParams& p, int k) {
    const double inv = 2.0 / p.alpha;
    return -specfun::log_gamma(k + 1.0) + k * (std::log(p.A) - inv * std::log(p.B)) +
           specfun::log_gamma(inv * (k + 1.0)) - specfun::log_gamma(inv);
}

// Generalized binomial coefficient C(x, 3).
double binomial3(double x) { return x * (x - 1.0) * (x - 2.0) / 6.0; }

}  // namespace

std::string_view to_string(Method method) {
    switch (method) {
        case Method::exact:
            return "exact";
        case Method::limiting:
            return "limiting";
        case Method::interference_series:
            return "interference";
        case Method::noise_series:
            return "noise";
        case Method::laplace:
            return "laplace";
    }
    return "unknown";
}

std::optional<Method> parse_method(std::string_view name) {
    for (Method m : {Method::exact, Method::limiting, Method::interference_series,
                     Method::noise_series, Method::laplace}) {
        if (name == to_string(m)) {
            return m;
        }
    }
    return std::nullopt;
}

std::string_view to_string(Verdict verdict) {
    switch (verdict) {
        case Verdict::converges:
            return "converges";
        case Verdict::diverges:
            return "diverges";
        case Verdict::conditional:
            return "conditional";
    }
    return "unknown";
}

double exact_alpha2(double A, double B) {
    if (!(A >= 0.0) || !(B >= 0.0)) {
        throw DomainError("exact_alpha2: A and B must be nonnegative");
    }
    if (A + B == 0.0) {
        throw DegenerateError("exact_alpha2: A = B = 0");
    }
    return 1.0 / (A + B);
}

double exact_alpha4(double A, double B) {
    if (!(B > 0.0)) {
        throw DomainError("exact_alpha4: B must be positive (B = 0 reduces to 1/A)");
    }
    if (!(A >= 0.0)) {
        throw DomainError("exact_alpha4: A must be nonnegative");
    }
    // exp{A²/4B}·Q(A/√(2B)) = exp{log_q_scaled(A/√(2B))}
    return std::exp(0.5 * std::log(std::numbers::pi / B) +
                    specfun::log_q_scaled(A / std::sqrt(2.0 * B)));
}

double limit_noise(double B, double alpha) {
    if (!(B > 0.0)) {
        throw DomainError("limit_noise: B must be positive");
    }
    const double inv = 2.0 / alpha;
    return inv / std::pow(B, inv) * specfun::gamma(inv);
}

double limit_interference(double A) {
    if (!(A > 0.0)) {
        throw DomainError("limit_interference: A must be positive");
    }
    return 1.0 / A;
}

ApproxResult limiting_approx(const IntegralParams& params) {
    params.validate();
    ApproxResult result;
    result.method = Method::limiting;
    if (params.A == 0.0) {
        result.value = limit_noise(params.B, params.alpha);
    } else if (params.B == 0.0) {
        result.value = limit_interference(params.A);
    } else {
        const double inv = 2.0 / params.alpha;
        result.value = 1.0 / (params.A + 0.5 * params.alpha * std::pow(params.B, inv) /
                                              specfun::gamma(inv));
    }
    return result;
}

int interference_optimal_truncation(const IntegralParams& params, int k_max) {
    params.validate();
    if (!(params.A > 0.0)) {
        throw DomainError("interference series requires A > 0");
    }
    if (k_max < 1) {
        throw DomainError("interference_optimal_truncation: k_max must be >= 1");
    }
    if (params.B == 0.0) {
        return k_max - 1;
    }
    int best = 1;
    double best_log = interference_log_ratio(params, 1);
    for (int k = 2; k <= k_max; ++k) {
        const double l = interference_log_ratio(params, k);
        if (l < best_log) {
            best_log = l;
            best = k;
        }
    }
    return best - 1;
}

ApproxResult interference_series(const IntegralParams& params, int n) {
    params.validate();
    if (!(params.A > 0.0)) {
        throw DomainError("interference series requires A > 0");
    }
    check_terms(n);

    ApproxResult result;
    result.method = Method::interference_series;
    result.terms_requested = n;
    const double t0 = 1.0 / params.A;

    if (params.B == 0.0) {
        result.value = t0;
        result.error_bound = 0.0;
        result.terms_used = n;
        return result;
    }

    int used = n;
    if (params.alpha > 2.0) {
        used = std::min(n, interference_optimal_truncation(params, n + 1));
    }

    double sum = t0;
    for (int k = 1; k <= used; ++k) {
        sum += sign_of_power(k) * t0 * exp_or_inf(interference_log_ratio(params, k));
    }
    if (!std::isfinite(sum)) {
        throw OverflowError("interference series: partial sum overflowed");
    }
    result.value = sum;
    result.terms_used = used;
    result.error_bound = exp_or_inf(std::log(t0) + interference_log_ratio(params, used + 1));
    return result;
}

ApproxResult noise_series(const IntegralParams& params, int n) {
    params.validate();
    if (!(params.B > 0.0)) {
        throw DomainError("noise series requires B > 0");
    }
    check_terms(n);

    ApproxResult result;
    result.method = Method::noise_series;
    result.terms_requested = n;
    result.terms_used = n;
    const double t0 = limit_noise(params.B, params.alpha);

    if (params.A == 0.0) {
        result.value = t0;
        result.error_bound = 0.0;
        return result;
    }

    double sum = t0;
    for (int k = 1; k <= n; ++k) {
        sum += sign_of_power(k) * t0 * exp_or_inf(noise_log_ratio(params, k));
    }
    if (!std::isfinite(sum)) {
        throw OverflowError("noise series: partial sum overflowed");
    }
    result.value = sum;
    result.error_bound = exp_or_inf(std::log(t0) + noise_log_ratio(params, n + 1));
    return result;
}

double interference_b_threshold(double A, double alpha, double epsilon, int n) {
    if (!(A > 0.0) || !(epsilon > 0.0) || n < 0) {
        throw DomainError("interference threshold requires A > 0, epsilon > 0, n >= 0");
    }
    // K₁ = (n+1)!/Γ((n+1)α/2 + 1)
    const double log_k1 = specfun::log_gamma(n + 2.0) - specfun::log_gamma((n + 1.0) * alpha / 2.0 + 1.0);
    return std::exp(0.5 * alpha * std::log(A) + (std::log(epsilon) + log_k1 + std::log(A)) / (n + 1.0));
}

double noise_b_threshold(double A, double alpha, double epsilon, int n) {
    if (!(A > 0.0) || !(epsilon > 0.0) || n < 0) {
        throw DomainError("noise threshold requires A > 0, epsilon > 0, n >= 0");
    }
    // K₂ = α(n+1)!/(2Γ(2(n+2)/α))
    const double log_k2 = std::log(0.5 * alpha) + specfun::log_gamma(n + 2.0) -
                          specfun::log_gamma(2.0 * (n + 2.0) / alpha);
    return std::exp(alpha / (2.0 * (n + 2.0)) *
                    ((n + 1.0) * std::log(A) - std::log(epsilon) - log_k2));
}

ValidityReport interference_validity(double epsilon, int n, const NetworkParams& net,
                                     const DerivedParams& derived) {
    net.validate();
    const double mu_t = net.mu * net.T;
    ValidityReport report;
    report.epsilon = epsilon;
    report.n = n;
    report.B_threshold = interference_b_threshold(derived.A, net.alpha, epsilon, n);
    report.sigma2_threshold = report.B_threshold / mu_t;
    report.sigma2_asymptotic =
        net.alpha >= 2.0 ? std::pow(derived.A, 0.5 * net.alpha) / mu_t : kInf;
    return report;
}

ValidityReport noise_validity(double epsilon, int n, const NetworkParams& net,
                              const DerivedParams& derived) {
    net.validate();
    const double mu_t = net.mu * net.T;
    ValidityReport report;
    report.epsilon = epsilon;
    report.n = n;
    report.B_threshold = noise_b_threshold(derived.A, net.alpha, epsilon, n);
    report.sigma2_threshold = report.B_threshold / mu_t;
    if (net.alpha > 2.0) {
        report.sigma2_asymptotic = 0.0;
    } else if (net.alpha == 2.0) {
        report.sigma2_asymptotic = derived.A / mu_t;
    } else {
        report.sigma2_asymptotic = kInf;
    }
    return report;
}

LaplaceInternals laplace_internals(const IntegralParams& params,
                                   std::optional<double> x_hat_override) {
    params.validate();
    if (!(params.alpha > 2.0)) {
        throw DomainError("laplace: requires alpha > 2 so that h'' > 0");
    }
    if (!(params.B > 0.0)) {
        throw DomainError("laplace: requires B > 0");
    }
    const double p = 0.5 * params.alpha;
    LaplaceInternals in;
    if (x_hat_override) {
        if (!(*x_hat_override > 0.0) || !std::isfinite(*x_hat_override)) {
            throw DomainError("laplace: x_hat must be positive");
        }
        in.x_hat = *x_hat_override;
    } else {
        in.x_hat = 1.0 / (params.A + std::pow(params.B, 1.0 / p));
    }
    const double xp = std::pow(in.x_hat, p);
    in.a = 0.5 * params.B * p * (p - 1.0) * xp / (in.x_hat * in.x_hat);
    in.b = params.A + params.B * p * xp / in.x_hat;
    in.c = params.A * in.x_hat + params.B * xp;
    in.y_hat = std::sqrt(2.0 * in.a) * (-in.x_hat + in.b / (2.0 * in.a));
    return in;
}

ApproxResult laplace_approx(const IntegralParams& params, std::optional<double> x_hat_override) {
    const LaplaceInternals in = laplace_internals(params, x_hat_override);
    const double p = 0.5 * params.alpha;
    // b²/4a − c − ŷ²/2 = −B x̂^p (p − 1)(p − 2)/2, so the large terms cancel exactly.
    const double exponent = -params.B * std::pow(in.x_hat, p) * (p - 1.0) * (p - 2.0) / 2.0;
    ApproxResult result;
    result.method = Method::laplace;
    result.value = std::exp(0.5 * std::log(std::numbers::pi / in.a) + exponent +
                            specfun::log_q_scaled(in.y_hat));
    if (params.alpha > 2.0 && params.alpha < 6.0) {
        result.error_bound = laplace_error_bound(params, in);
    }
    return result;
}

double laplace_error_bound(const IntegralParams& params, const LaplaceInternals& in) {
    if (!(params.alpha > 2.0 && params.alpha < 6.0)) {
        throw DomainError("laplace_error_bound: requires 2 < alpha < 6");
    }
    const double p = 0.5 * params.alpha;
    const double k3 = params.B * std::abs(binomial3(p)) * std::pow(in.x_hat, p - 3.0);
    if (k3 == 0.0) {
        return 0.0;
    }
    // Shifted variable z ∈ (−b/2a, ∞); ∫_0^{b/2a} e^{−az²} z^m dz brings in
    // γ(·, a(b/2a)²) = γ(·, b²/4a).
    const double w = in.b * in.b / (4.0 * in.a);
    constexpr double kBinom3[4] = {1.0, 3.0, 3.0, 1.0};
    double sum = 0.0;
    for (int k = 0; k <= 3; ++k) {
        const double s = 2.0 - 0.5 * k;
        // G = Γ(s) + (−1)^{3−k} γ(s, w)
        const double g = (3 - k) % 2 == 1 ? specfun::upper_incomplete_gamma(s, w)
                                           : specfun::gamma(s) + specfun::lower_incomplete_gamma(s, w);
        sum += kBinom3[k] * std::pow(w, 0.5 * k) * g;
    }
    const double log_bound = std::log(k3) - 2.0 * std::log(in.a) + std::log(sum) + w - in.c;
    return exp_or_inf(log_bound);
}

ConvergenceReport ratio_test_interference(const IntegralParams& params, int K) {
    params.validate();
    if (!(params.A > 0.0) || !(params.B > 0.0) || K < 2) {
        throw DomainError("ratio_test_interference: requires A > 0, B > 0, K >= 2");
    }
    const double p = 0.5 * params.alpha;
    ConvergenceReport report;
    report.ratios.reserve(static_cast<std::size_t>(K));
    for (int k = 1; k <= K; ++k) {
        const double log_ratio = std::log(params.B) - std::log(k + 1.0) - p * std::log(params.A) +
                                 specfun::log_gamma((k + 1.0) * p + 1.0) -
                                 specfun::log_gamma(k * p + 1.0);
        report.ratios.push_back(exp_or_inf(log_ratio));
    }
    if (params.alpha > 2.0) {
        report.verdict = Verdict::diverges;
        report.limit_expression = kInf;
    } else if (params.alpha == 2.0) {
        report.verdict = Verdict::conditional;
        report.limit_expression = params.B * std::pow(params.alpha / (2.0 * params.A), p);
    } else {
        report.verdict = Verdict::converges;
        report.limit_expression = 0.0;
    }
    return report;
}

ConvergenceReport ratio_test_noise(const IntegralParams& params, int K) {
    params.validate();
    if (!(params.A > 0.0) || !(params.B > 0.0) || K < 2) {
        throw DomainError("ratio_test_noise: requires A > 0, B > 0, K >= 2");
    }
    const double inv = 2.0 / params.alpha;
    ConvergenceReport report;
    report.ratios.reserve(static_cast<std::size_t>(K));
    for (int k = 1; k <= K; ++k) {
        const double log_ratio = std::log(params.A) - std::log(k + 1.0) - inv * std::log(params.B) +
                                 specfun::log_gamma(inv * (k + 2.0)) -
                                 specfun::log_gamma(inv * (k + 1.0));
        report.ratios.push_back(exp_or_inf(log_ratio));
    }
    if (params.alpha > 2.0) {
        report.verdict = Verdict::converges;
        report.limit_expression = 0.0;
    } else if (params.alpha == 2.0) {
        report.verdict = Verdict::conditional;
        report.limit_expression = std::pow(inv, inv) * params.A / std::pow(params.B, inv);
    } else {
        report.verdict = Verdict::diverges;
        report.limit_expression = kInf;
    }
    return report;
}

ApproxResult evaluate(const IntegralParams& params, Method method, const EvaluateOptions& options) {
    params.validate();
    switch (method) {
        case Method::exact: {
            ApproxResult result;
            result.method = Method::exact;
            result.error_bound = 0.0;
            if (params.B == 0.0) {
                result.value = limit_interference(params.A);
            } else if (params.A == 0.0) {
                result.value = limit_noise(params.B, params.alpha);
            } else if (params.alpha == 2.0) {
                result.value = exact_alpha2(params.A, params.B);
            } else if (params.alpha == 4.0) {
                result.value = exact_alpha4(params.A, params.B);
            } else {
                throw UnsupportedExactError(
                    "no closed form for alpha = " + std::to_string(params.alpha) +
                    " with A, B > 0 (exact needs alpha in {2, 4} or A*B = 0)");
            }
            return result;
        }
        case Method::limiting:
            return limiting_approx(params);
        case Method::interference_series:
            return interference_series(params, options.n);
        case Method::noise_series:
            return noise_series(params, options.n);
        case Method::laplace:
            return laplace_approx(params, options.x_hat);
    }
    throw DomainError("evaluate: unknown method");
}

}  // namespace covint
