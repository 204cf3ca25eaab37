#include "covint/model.hpp"

#include <cmath>
#include <numbers>

#include "covint/error.hpp"
#include "covint/quadrature.hpp"
#include "covint/specfun.hpp"

namespace covint {

Fading Fading::exponential(double mean) {
    if (!(mean > 0.0)) {
        throw DomainError("exponential fading: mean must be positive");
    }
    const double rate = 1.0 / mean;
    return {"exponential", [rate](double g) { return rate * std::exp(-rate * g); }, mean};
}

Fading NetworkParams::interferer_fading() const {
    return fading ? *fading : Fading::exponential(1.0 / mu);
}

void NetworkParams::validate() const {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw DomainError("lambda must be positive");
    }
    if (!(T > 0.0) || !std::isfinite(T)) {
        throw DomainError("T must be positive");
    }
    if (!(mu > 0.0) || !std::isfinite(mu)) {
        throw DomainError("mu must be positive");
    }
    if (!(sigma2 >= 0.0) || !std::isfinite(sigma2)) {
        throw DomainError("sigma2 must be nonnegative");
    }
    if (!(alpha >= IntegralParams::kMinAlpha && alpha <= IntegralParams::kMaxAlpha)) {
        throw DomainError("alpha must lie in [1.6, 6.5]");
    }
}

double compute_beta(const NetworkParams& params, double tol) {
    params.validate();
    if (params.alpha == 2.0) {
        throw DomainError("compute_beta: Gamma(-2/alpha) has a pole at alpha = 2; supply beta");
    }
    if (params.alpha < 2.0) {
        throw DomainError("compute_beta: the interference expectation is not positive for "
                          "alpha < 2; supply beta");
    }

    const double p = 2.0 / params.alpha;
    const double mu_t = params.mu * params.T;
    const double gamma_neg = specfun::gamma(1.0 - p) / (-p);
    const Fading fading = params.interferer_fading();

    const auto integrand = [&](double g) {
        const double weight = fading.density(g);
        if (weight == 0.0) {
            return 0.0;
        }
        const double z = mu_t * g;
        const double upper = z > 0.0 ? specfun::upper_incomplete_gamma(-p, z) : 0.0;
        return weight * std::pow(g, p) * (upper - gamma_neg);
    };

    QuadratureOptions options;
    options.abs_tol = 0.0;
    options.rel_tol = tol;
    options.scale = fading.mean;
    const QuadratureResult expectation = integrate_semi_infinite(integrand, options);

    const double beta = 2.0 * std::pow(mu_t, p) / params.alpha * expectation.value;
    if (!(beta > 0.0)) {
        throw DomainError("compute_beta: non-positive beta");
    }
    return beta;
}

DerivedParams derive_with_beta(const NetworkParams& params, double beta) {
    params.validate();
    if (!(beta > 0.0) || !std::isfinite(beta)) {
        throw DomainError("beta must be positive");
    }
    return {beta, std::numbers::pi * params.lambda * beta, params.mu * params.T * params.sigma2};
}

DerivedParams derive(const NetworkParams& params, double tol) {
    return derive_with_beta(params, compute_beta(params, tol));
}

double coverage_probability(double integral_value, double lambda) {
    if (!(integral_value >= 0.0)) {
        throw DomainError("coverage_probability: integral value must be nonnegative");
    }
    if (!(lambda > 0.0)) {
        throw DomainError("coverage_probability: lambda must be positive");
    }
    const double pc = std::numbers::pi * lambda * integral_value;
    if (pc > 1.0 + 1e-6) {
        throw RangeError("coverage_probability: p_c = " + std::to_string(pc) + " exceeds 1");
    }
    return pc;
}

double snr_db_to_sigma2(double snr_db) { return std::pow(10.0, -snr_db / 10.0); }

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double linear_to_db(double value) { return 10.0 * std::log10(value); }

}  // namespace covint
