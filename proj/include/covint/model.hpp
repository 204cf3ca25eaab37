#pragma once

#include <functional>
#include <optional>
#include <string>

// Physical network parameters and their mapping onto the integral
// coefficients A = πλβ, B = μTσ².

namespace covint {

/// Interferer channel-gain distribution, given by its density on (0, ∞).
struct Fading {
    std::string name;
    std::function<double(double)> density;
    double mean = 1.0;  // sets the length scale for the expectation integral

    static Fading exponential(double mean);
};

struct NetworkParams {
    double lambda = 0.0;  // base-station intensity
    double T = 1.0;       // SINR threshold (linear)
    double mu = 1.0;      // inverse transmit power
    double sigma2 = 0.0;  // noise variance
    double alpha = 4.0;
    std::optional<Fading> fading;  // unset: exponential with mean 1/mu

    Fading interferer_fading() const;
    void validate() const;
};

struct DerivedParams {
    double beta = 0.0;
    double A = 0.0;
    double B = 0.0;
};

/// β = (2(μT)^{2/α}/α)·E_g[g^{2/α}(Γ(−2/α, μTg) − Γ(−2/α))], the expectation
/// integrated against the fading density to relative tolerance tol.
/// Only defined for α > 2: at α = 2 Γ(−1) is a pole and below 2 the
/// expression is not positive. Supply β directly in those cases.
double compute_beta(const NetworkParams& params, double tol = 1e-10);

DerivedParams derive(const NetworkParams& params, double tol = 1e-10);

/// Same mapping with a caller-supplied β (needed at α ≤ 2).
DerivedParams derive_with_beta(const NetworkParams& params, double beta);

/// p_c = πλ·I. Throws RangeError when the result exceeds 1 + 1e-6.
double coverage_probability(double integral_value, double lambda);

double snr_db_to_sigma2(double snr_db);

double db_to_linear(double db);
double linear_to_db(double value);

}  // namespace covint
