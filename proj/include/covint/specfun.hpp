#pragma once

// Special functions used by the coverage integral: the gamma family and the
// Gaussian tail Q(x). All functions are pure and thread safe.

namespace covint::specfun {

// Γ(x) overflows a double for x above this value.
inline constexpr double kGammaOverflowThreshold = 171.62437695630272;

struct SpecfunResult {
    double value = 0.0;
    bool converged = false;
};

/// Γ(x) for x not a non-positive integer. Stirling series after shifting x up to 10, with
/// reflection below 1/2 and exact factorials at positive integers.
/// Throws DomainError at the poles and OverflowError above
/// kGammaOverflowThreshold.
double gamma(double x);

/// ln Γ(x) for x > 0. Taylor series in ζ(k) near the roots at 1 and 2 so the
/// relative error stays small there.
double log_gamma(double x);

/// Power series for the lower incomplete gamma γ(a, z), a > 0, z ≥ 0.
/// Converges for every z but is used where z < a + 1.
SpecfunResult lower_gamma_series(double a, double z);

/// Continued fraction (modified Lentz) for Γ(a, z), z > 0. Used where
/// z ≥ a + 1.
SpecfunResult upper_gamma_continued_fraction(double a, double z);

/// Γ(a, z) = ∫_z^∞ t^{a-1} e^{-t} dt for z > 0 and a either positive or a
/// negative non-integer. Negative a is reduced with
/// Γ(a, z) = (Γ(a+1, z) − z^a e^{−z}) / a starting from the first positive
/// argument.
double upper_incomplete_gamma(double a, double z);

/// γ(a, z) = ∫_0^z t^{a-1} e^{-t} dt for a > 0, z ≥ 0.
double lower_incomplete_gamma(double a, double z);

/// Q(x) = P(N(0,1) > x), from erfc so negative arguments keep full accuracy.
double q_function(double x);

/// ln Q(x), finite for every finite x (Mills-ratio continued fraction in the
/// far right tail where Q underflows).
double log_q_function(double x);

/// ln Q(x) + x²/2 without cancellation for large x.
double log_q_scaled(double x);

}  // namespace covint::specfun
