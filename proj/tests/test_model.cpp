#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "covint/error.hpp"
#include "covint/model.hpp"
#include "covint/quadrature.hpp"
#include "oracle.hpp"

using namespace covint;

namespace {

constexpr double kLambda = 1.0 / (std::numbers::pi * 500.0 * 500.0);

// Arbitrary-precision references.
constexpr double kBetaAlpha3 = 2.6712976965294421067;
constexpr double kPcAt20dB = 7.7784422285720071259e-05;

// β for exponential fading with μT = 1, nested double-exponential quadrature
// over the defining integrals only.
double beta_oracle(double alpha) {
    const double p = 2.0 / alpha;
    const double expectation = oracle::exp_sinh(
        [p](double g) {
            return std::exp(-g) * std::pow(g, p) * oracle::upper_gamma_minus_gamma(-p, g);
        },
        0.0, 1e-12);
    return 2.0 / alpha * expectation;
}

NetworkParams network(double alpha, double sigma2 = 0.0) {
    NetworkParams net;
    net.lambda = kLambda;
    net.alpha = alpha;
    net.sigma2 = sigma2;
    return net;
}

}  // namespace

TEST_CASE("compute_beta against the nested quadrature oracle") {
    for (double alpha : {3.0, 4.0}) {
        const double reference = beta_oracle(alpha);
        INFO("alpha = " << alpha);
        CHECK(oracle::rel_err(compute_beta(network(alpha)), reference) < 1e-6);
    }
    CHECK(oracle::rel_err(beta_oracle(3.0), kBetaAlpha3) < 1e-9);
    CHECK(oracle::rel_err(compute_beta(network(3.0)), kBetaAlpha3) < 1e-9);
    // exponential fading at α = 4 has β = 1 + π/4
    CHECK(oracle::rel_err(compute_beta(network(4.0)), 1.0 + std::numbers::pi / 4.0) < 1e-9);
}

// Γ(−p, z) − Γ(−p) ~ z^{−p}/p as z → 0 cancels the (μT)^p prefactor, so β → 1
// (no interference penalty) rather than 0.
TEST_CASE("beta tends to 1 as T goes to zero") {
    NetworkParams net = network(3.0);
    net.T = 1e-6;
    const double beta = compute_beta(net);
    CHECK(beta > 1.0);
    CHECK(beta - 1.0 < 1e-3);
    net.T = 1e-3;
    CHECK(compute_beta(net) > beta);
}

TEST_CASE("beta does not depend on mu when the fading mean is 1/mu") {
    NetworkParams a = network(3.5);
    a.mu = 2.0;
    NetworkParams b = network(3.5);
    CHECK(oracle::rel_err(compute_beta(a), compute_beta(b)) < 1e-9);
}

TEST_CASE("compute_beta rejects alpha at or below 2") {
    CHECK_THROWS_AS(compute_beta(network(2.0)), DomainError);
    CHECK_THROWS_AS(compute_beta(network(1.8)), DomainError);
}

TEST_CASE("network parameter validation") {
    NetworkParams net = network(3.0);
    net.lambda = 0.0;
    CHECK_THROWS_AS(net.validate(), DomainError);
    net = network(3.0);
    net.T = -1.0;
    CHECK_THROWS_AS(net.validate(), DomainError);
    net = network(3.0);
    net.mu = 0.0;
    CHECK_THROWS_AS(net.validate(), DomainError);
    net = network(3.0);
    net.sigma2 = -1e-3;
    CHECK_THROWS_AS(net.validate(), DomainError);
    net = network(7.0);
    CHECK_THROWS_AS(net.validate(), DomainError);
}

TEST_CASE("derive") {
    SUBCASE("zero noise gives B = 0") {
        NetworkParams net = network(3.0);
        net.T = 3.0;
        net.mu = 2.0;
        CHECK(derive(net).B == 0.0);
    }
    SUBCASE("A scales exactly with lambda") {
        NetworkParams net = network(3.0, 0.1);
        const DerivedParams base = derive(net);
        net.lambda *= 8.0;
        const DerivedParams scaled = derive(net);
        CHECK(scaled.beta == base.beta);
        CHECK(scaled.A == 8.0 * base.A);
    }
    SUBCASE("reference setup") {
        const DerivedParams d = derive(network(3.0, 0.01));
        CHECK(d.A == doctest::Approx(d.beta / (500.0 * 500.0)).epsilon(1e-14));
        CHECK(d.B == 0.01);
    }
    SUBCASE("caller-supplied beta") {
        NetworkParams net = network(2.0, 0.5);
        const DerivedParams d = derive_with_beta(net, 2.0);
        CHECK(d.beta == 2.0);
        CHECK(d.A == doctest::Approx(std::numbers::pi * kLambda * 2.0).epsilon(1e-15));
        CHECK(d.B == 0.5);
        CHECK_THROWS_AS(derive_with_beta(net, 0.0), DomainError);
    }
}

TEST_CASE("coverage_probability") {
    CHECK(coverage_probability(0.0, kLambda) == 0.0);
    CHECK_THROWS_AS(coverage_probability(2.0 / (std::numbers::pi * kLambda), kLambda),
                    RangeError);
    CHECK_THROWS_AS(coverage_probability(-1.0, kLambda), DomainError);

    SUBCASE("noiseless limit is 1/beta") {
        const DerivedParams d = derive(network(3.0));
        const double I = integrate_coverage({d.A, 0.0, 3.0}, 1e-10 / (std::numbers::pi * kLambda)).value;
        CHECK(coverage_probability(I, kLambda) == doctest::Approx(1.0 / d.beta).epsilon(1e-9));
    }

    SUBCASE("frozen value at SNR 20 dB") {
        const DerivedParams d = derive(network(3.0, snr_db_to_sigma2(20.0)));
        const double tol = 1e-12 / (std::numbers::pi * kLambda);
        const double pc =
            coverage_probability(integrate_coverage({d.A, d.B, 3.0}, tol).value, kLambda);
        CHECK(std::abs(pc - kPcAt20dB) < 1e-11);
    }
}

TEST_CASE("decibel conversions") {
    CHECK(snr_db_to_sigma2(0.0) == 1.0);
    CHECK(snr_db_to_sigma2(10.0) == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(snr_db_to_sigma2(-10.0) == doctest::Approx(10.0).epsilon(1e-15));
    CHECK(db_to_linear(0.0) == 1.0);
    CHECK(linear_to_db(db_to_linear(7.3)) == doctest::Approx(7.3).epsilon(1e-14));
}

TEST_CASE("property: p_c bounded by 1/beta and non-increasing in noise") {
    for (double alpha : {2.5, 3.0, 4.0, 5.0}) {
        const double beta = compute_beta(network(alpha));
        const double tol = 1e-10 / (std::numbers::pi * kLambda);
        double previous = 2.0;
        for (double snr_db = 140.0; snr_db >= -20.0; snr_db -= 10.0) {
            const DerivedParams d = derive_with_beta(network(alpha, snr_db_to_sigma2(snr_db)), beta);
            const double pc =
                coverage_probability(integrate_coverage({d.A, d.B, alpha}, tol).value, kLambda);
            INFO("alpha = " << alpha << ", snr_db = " << snr_db);
            CHECK(pc <= 1.0 / beta + 1e-9);
            CHECK(pc <= previous);
            previous = pc;
        }
    }
}

TEST_CASE("property: beta exceeds 1 for exponential fading with muT = 1") {
    for (double alpha : {2.5, 3.0, 4.0, 5.0}) {
        INFO("alpha = " << alpha);
        CHECK(compute_beta(network(alpha)) > 1.0);
    }
}
