#include "covint/specfun.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "covint/error.hpp"

namespace covint::specfun {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = 1e-300;
constexpr int kMaxIterations = 10000;

// Stirling correction coefficients B_{2k}/(2k(2k−1)).
constexpr std::array<double, 8> kStirling = {
    1.0 / 12.0,     -1.0 / 360.0, 1.0 / 1260.0, -1.0 / 1680.0,
    1.0 / 1188.0,   -691.0 / 360360.0, 1.0 / 156.0, -3617.0 / 122400.0,
};

// Below this the argument is shifted up before the asymptotic series is used.
constexpr double kStirlingMin = 10.0;

// ζ(k) for k = 2..30.
constexpr std::array<double, 29> kZeta = {
    1.6449340668482264365, 1.2020569031595942854, 1.0823232337111381915,
    1.0369277551433699263, 1.0173430619844491397, 1.0083492773819228268,
    1.0040773561979443394, 1.0020083928260822144, 1.0009945751278180853,
    1.0004941886041194646, 1.0002460865533080483, 1.0001227133475784891,
    1.0000612481350587048, 1.0000305882363070205, 1.0000152822594086519,
    1.0000076371976378998, 1.0000038172932649998, 1.0000019082127165539,
    1.0000009539620338728, 1.0000004769329867878, 1.0000002384505027277,
    1.0000001192199259653, 1.0000000596081890513, 1.0000000298035035147,
    1.0000000149015548284, 1.0000000074507117898, 1.0000000037253340248,
    1.0000000018626597235, 1.0000000009313274324,
};

constexpr double kEulerGamma = 0.57721566490153286061;

bool is_integer(double x) { return std::floor(x) == x; }

// ln Γ(x) − [(x − 1/2) ln x − x + ln √(2π)] for x ≥ 10.
double stirling_correction(double x) {
    const double inv2 = 1.0 / (x * x);
    double sum = 0.0;
    for (std::size_t i = kStirling.size(); i-- > 0;) {
        sum = sum * inv2 + kStirling[i];
    }
    return sum / x;
}

// sin(πx) with the argument reduced before multiplying by π.
double sin_pi(double x) {
    double r = std::fmod(x, 2.0);
    if (r > 1.0) {
        r -= 2.0;
    } else if (r < -1.0) {
        r += 2.0;
    }
    if (r > 0.5) {
        r = 1.0 - r;
    } else if (r < -0.5) {
        r = -1.0 - r;
    }
    return std::sin(std::numbers::pi * r);
}

double factorial_of(double n) {
    double f = 1.0;
    for (int k = 2; k <= static_cast<int>(n); ++k) {
        f *= k;
    }
    return f;
}

// Γ(x) for x ≥ 1/2 and below the overflow threshold.
double gamma_positive(double x) {
    double divisor = 1.0;
    while (x < kStirlingMin) {
        divisor *= x;
        x += 1.0;
    }
    // x^{x−1/2} split in two so the power cannot overflow before e^{−x} is applied.
    const double half_power = std::pow(x, 0.5 * (x - 0.5));
    return std::sqrt(2.0 * std::numbers::pi) * half_power * (half_power * std::exp(-x)) *
           std::exp(stirling_correction(x)) / divisor;
}

// ln Γ(1 + z) for |z| ≤ 0.25.
double log_gamma_1p_series(double z) {
    double sum = -kEulerGamma * z;
    double power = 1.0;
    for (std::size_t i = 0; i < kZeta.size(); ++i) {
        const int k = static_cast<int>(i) + 2;
        power *= (i == 0 ? z * z : -z);
        const double term = kZeta[i] * power / k;
        sum += term;
        if (std::abs(term) < kEps * std::abs(sum)) {
            break;
        }
    }
    return sum;
}

}  // namespace

double gamma(double x) {
    if (std::isnan(x)) {
        throw DomainError("gamma: argument is NaN");
    }
    if (x <= 0.0 && is_integer(x)) {
        throw DomainError("gamma: pole at non-positive integer " + std::to_string(x));
    }
    if (x > kGammaOverflowThreshold) {
        throw OverflowError("gamma: argument " + std::to_string(x) +
                            " exceeds overflow threshold 171.624");
    }
    if (x >= 1.0 && is_integer(x)) {
        return factorial_of(x - 1.0);
    }
    if (x < 0.5) {
        if (1.0 - x > kGammaOverflowThreshold) {
            return 0.0;  // underflows
        }
        return std::numbers::pi / (sin_pi(x) * gamma_positive(1.0 - x));
    }
    return gamma_positive(x);
}

double log_gamma(double x) {
    if (!(x > 0.0)) {
        throw DomainError("log_gamma: argument must be positive");
    }
    if (std::isinf(x)) {
        return x;
    }
    if (is_integer(x) && x <= 171.0) {
        return std::log(factorial_of(x - 1.0));
    }
    if (std::abs(x - 1.0) <= 0.25) {
        return log_gamma_1p_series(x - 1.0);
    }
    if (std::abs(x - 2.0) <= 0.25) {
        // ln Γ(x) = ln(x − 1) + ln Γ(x − 1)
        return std::log1p(x - 2.0) + log_gamma_1p_series(x - 2.0);
    }
    if (x < 15.0) {
        return std::log(std::abs(gamma(x)));
    }
    return (x - 0.5) * std::log(x) - x + 0.5 * std::log(2.0 * std::numbers::pi) +
           stirling_correction(x);
}

SpecfunResult lower_gamma_series(double a, double z) {
    if (z == 0.0) {
        return {0.0, true};
    }
    double denom = a;
    double term = 1.0 / a;
    double sum = term;
    for (int n = 1; n <= kMaxIterations; ++n) {
        denom += 1.0;
        term *= z / denom;
        sum += term;
        if (std::abs(term) < std::abs(sum) * kEps) {
            return {sum * std::exp(a * std::log(z) - z), true};
        }
    }
    return {sum * std::exp(a * std::log(z) - z), false};
}

SpecfunResult upper_gamma_continued_fraction(double a, double z) {
    double b = z + 1.0 - a;
    double c = 1.0 / kTiny;
    double d = 1.0 / (std::abs(b) < kTiny ? kTiny : b);
    double h = d;
    for (int i = 1; i <= kMaxIterations; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < kTiny) {
            d = kTiny;
        }
        c = b + an / c;
        if (std::abs(c) < kTiny) {
            c = kTiny;
        }
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < kEps) {
            return {std::exp(a * std::log(z) - z) * h, true};
        }
    }
    return {std::exp(a * std::log(z) - z) * h, false};
}

namespace {

double require_converged(const SpecfunResult& r, const char* what) {
    if (!r.converged) {
        throw ConvergenceError(std::string(what) + ": expansion did not converge");
    }
    return r.value;
}

double upper_positive(double a, double z) {
    if (z < a + 1.0) {
        return gamma(a) - require_converged(lower_gamma_series(a, z), "upper_incomplete_gamma");
    }
    return require_converged(upper_gamma_continued_fraction(a, z), "upper_incomplete_gamma");
}

}  // namespace

double upper_incomplete_gamma(double a, double z) {
    if (!(z > 0.0)) {
        throw DomainError("upper_incomplete_gamma: z must be positive");
    }
    if (std::isnan(a) || (a <= 0.0 && is_integer(a))) {
        throw DomainError("upper_incomplete_gamma: a must be positive or a negative non-integer");
    }
    if (a > 0.0) {
        return upper_positive(a, z);
    }
    const int steps = static_cast<int>(std::ceil(-a));
    double s = a + steps;
    double value = upper_positive(s, z);
    const double log_z = std::log(z);
    for (int i = 0; i < steps; ++i) {
        s -= 1.0;
        value = (value - std::exp(s * log_z - z)) / s;
    }
    return value;
}

double lower_incomplete_gamma(double a, double z) {
    if (!(a > 0.0)) {
        throw DomainError("lower_incomplete_gamma: a must be positive");
    }
    if (!(z >= 0.0)) {
        throw DomainError("lower_incomplete_gamma: z must be nonnegative");
    }
    if (z == 0.0) {
        return 0.0;
    }
    if (z < a + 1.0) {
        return require_converged(lower_gamma_series(a, z), "lower_incomplete_gamma");
    }
    return gamma(a) -
           require_converged(upper_gamma_continued_fraction(a, z), "lower_incomplete_gamma");
}

double q_function(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

namespace {

// ln R(x) for the Mills ratio R = Q/φ, x ≥ 10:
// R(x) = 1/(x + 1/(x + 2/(x + 3/(x + ...)))).
double log_mills_ratio(double x) {
    double t = x;
    for (int k = 100; k >= 1; --k) {
        t = x + k / t;
    }
    return -std::log(t);
}

constexpr double kMillsSwitch = 10.0;

}  // namespace

double log_q_function(double x) {
    if (x < kMillsSwitch) {
        return std::log(q_function(x));
    }
    return -0.5 * x * x - 0.5 * std::log(2.0 * std::numbers::pi) + log_mills_ratio(x);
}

double log_q_scaled(double x) {
    if (x < kMillsSwitch) {
        return std::log(q_function(x)) + 0.5 * x * x;
    }
    return -0.5 * std::log(2.0 * std::numbers::pi) + log_mills_ratio(x);
}

}  // namespace covint::specfun
