#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "covint/approx.hpp"
#include "covint/model.hpp"

// SNR and path-loss sweeps comparing each approximation with the quadrature
// reference, on the coverage-probability scale.

namespace covint {

struct SweepConfig {
    double alpha = 3.0;
    double lambda = 1.0 / (3.14159265358979323846 * 500.0 * 500.0);
    double T_db = 0.0;
    double mu = 1.0;
    double snr_db_start = -20.0;
    double snr_db_stop = 40.0;
    double snr_db_step = 1.0;
    int n_terms = 4;
    double epsilon = 1e-3;
    std::vector<Method> methods = {Method::limiting, Method::interference_series,
                                   Method::noise_series, Method::laplace};
    std::string output_path;
    double tol = kDefaultTolerance;  // absolute, on p_c
    std::optional<double> x_hat;
    std::optional<double> beta;  // overrides compute_beta

    /// Throws std::invalid_argument on an inconsistent grid or method set.
    void validate() const;
    NetworkParams network(double sigma2) const;
    /// Inclusive grid start, start + step, ..., stop.
    std::vector<double> snr_grid() const;
};

struct SweepRow {
    double snr_db = 0.0;
    double sigma2 = 0.0;
    double A = 0.0;
    double B = 0.0;
    double pc_oracle = 0.0;
    std::vector<double> pc;  // aligned with SweepTable::methods; NaN when not applicable
};

struct SweepTable {
    double beta = 0.0;
    std::vector<Method> methods;  // canonical column order
    std::vector<SweepRow> rows;

    double error(const SweepRow& row, Method method) const;
    double max_error(Method method) const;
};

/// β for the configuration, computed once per sweep unless overridden.
double sweep_beta(const SweepConfig& config);

/// p_c from the reference integrator for one grid point.
double oracle_coverage(const DerivedParams& derived, double alpha, double lambda, double tol);

SweepTable run_sweep(const SweepConfig& config);

void write_sweep_csv(const SweepTable& table, std::ostream& out);

struct MaxErrorRow {
    double alpha = 0.0;
    double max_err_limiting = 0.0;
    double max_err_laplace = 0.0;
};

std::vector<MaxErrorRow> run_max_error(const SweepConfig& base, const std::vector<double>& alphas);

void write_max_error_csv(const std::vector<MaxErrorRow>& rows, std::ostream& out);

/// 12 significant digits, '.' decimal separator.
std::string format_number(double value);

}  // namespace covint
