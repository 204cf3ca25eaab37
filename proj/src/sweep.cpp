#include "covint/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "covint/error.hpp"
#include "covint/quadrature.hpp"

namespace covint {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

constexpr Method kSweepOrder[] = {Method::limiting, Method::interference_series,
                                  Method::noise_series, Method::laplace};

}  // namespace

void SweepConfig::validate() const {
    if (!(snr_db_step > 0.0)) {
        throw std::invalid_argument("snr step must be positive");
    }
    if (!(snr_db_start <= snr_db_stop)) {
        throw std::invalid_argument("snr start must not exceed snr stop");
    }
    if (methods.empty()) {
        throw std::invalid_argument("at least one method is required");
    }
    for (Method m : methods) {
        if (m == Method::exact) {
            throw std::invalid_argument("sweep methods are limiting, interference, noise, laplace");
        }
    }
    if (n_terms < 0 || n_terms > kMaxSeriesTerms) {
        throw std::invalid_argument("terms must lie in [0, 30]");
    }
    if (!(epsilon > 0.0)) {
        throw std::invalid_argument("epsilon must be positive");
    }
    if (!(tol > 0.0)) {
        throw std::invalid_argument("tol must be positive");
    }
}

NetworkParams SweepConfig::network(double sigma2) const {
    NetworkParams net;
    net.lambda = lambda;
    net.T = db_to_linear(T_db);
    net.mu = mu;
    net.sigma2 = sigma2;
    net.alpha = alpha;
    return net;
}

std::vector<double> SweepConfig::snr_grid() const {
    const auto count = static_cast<long>(std::floor((snr_db_stop - snr_db_start) / snr_db_step + 1e-9));
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(count) + 1);
    for (long i = 0; i <= count; ++i) {
        grid.push_back(snr_db_start + static_cast<double>(i) * snr_db_step);
    }
    return grid;
}

double SweepTable::error(const SweepRow& row, Method method) const {
    const auto it = std::find(methods.begin(), methods.end(), method);
    if (it == methods.end()) {
        throw std::invalid_argument("method not part of this sweep");
    }
    return std::abs(row.pc[static_cast<std::size_t>(it - methods.begin())] - row.pc_oracle);
}

double SweepTable::max_error(Method method) const {
    double worst = 0.0;
    for (const auto& row : rows) {
        const double e = error(row, method);
        if (std::isnan(e)) {
            return kNaN;
        }
        worst = std::max(worst, e);
    }
    return worst;
}

double sweep_beta(const SweepConfig& config) {
    if (config.beta) {
        return *config.beta;
    }
    return compute_beta(config.network(0.0));
}

double oracle_coverage(const DerivedParams& derived, double alpha, double lambda, double tol) {
    const double scale = std::numbers::pi * lambda;
    const double tol_integral = std::max(tol / scale, 1e-13);
    const QuadratureResult ref = integrate_coverage({derived.A, derived.B, alpha}, tol_integral);
    return coverage_probability(ref.value, lambda);
}

SweepTable run_sweep(const SweepConfig& config) {
    config.validate();
    SweepTable table;
    for (Method m : kSweepOrder) {
        if (std::find(config.methods.begin(), config.methods.end(), m) != config.methods.end()) {
            table.methods.push_back(m);
        }
    }
    table.beta = sweep_beta(config);

    EvaluateOptions options;
    options.n = config.n_terms;
    options.x_hat = config.x_hat;
    const double scale = std::numbers::pi * config.lambda;

    for (double snr_db : config.snr_grid()) {
        SweepRow row;
        row.snr_db = snr_db;
        row.sigma2 = snr_db_to_sigma2(snr_db);
        const DerivedParams derived = derive_with_beta(config.network(row.sigma2), table.beta);
        row.A = derived.A;
        row.B = derived.B;
        row.pc_oracle = oracle_coverage(derived, config.alpha, config.lambda, config.tol);
        const IntegralParams params{derived.A, derived.B, config.alpha};
        for (Method m : table.methods) {
            double pc = kNaN;
            try {
                pc = scale * evaluate(params, m, options).value;
            } catch (const DomainError&) {
            } catch (const OverflowError&) {
            }
            row.pc.push_back(pc);
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

std::string format_number(double value) {
    if (std::isnan(value)) {
        return "nan";
    }
    if (std::isinf(value)) {
        return value > 0 ? "inf" : "-inf";
    }
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.12g", value);
    return buffer;
}

void write_sweep_csv(const SweepTable& table, std::ostream& out) {
    out << "snr_db,sigma2,A,B,pc_oracle";
    for (Method m : table.methods) {
        out << ",pc_" << to_string(m);
    }
    for (Method m : table.methods) {
        out << ",err_" << to_string(m);
    }
    out << '\n';
    for (const auto& row : table.rows) {
        out << format_number(row.snr_db) << ',' << format_number(row.sigma2) << ','
            << format_number(row.A) << ',' << format_number(row.B) << ','
            << format_number(row.pc_oracle);
        for (double pc : row.pc) {
            out << ',' << format_number(pc);
        }
        for (Method m : table.methods) {
            out << ',' << format_number(table.error(row, m));
        }
        out << '\n';
    }
}

std::vector<MaxErrorRow> run_max_error(const SweepConfig& base, const std::vector<double>& alphas) {
    if (alphas.empty()) {
        throw std::invalid_argument("alpha list must not be empty");
    }
    std::vector<MaxErrorRow> rows;
    rows.reserve(alphas.size());
    for (double alpha : alphas) {
        SweepConfig config = base;
        config.alpha = alpha;
        config.methods = {Method::limiting, Method::laplace};
        const SweepTable table = run_sweep(config);
        rows.push_back({alpha, table.max_error(Method::limiting), table.max_error(Method::laplace)});
    }
    return rows;
}

void write_max_error_csv(const std::vector<MaxErrorRow>& rows, std::ostream& out) {
    out << "alpha,max_err_limiting,max_err_laplace\n";
    for (const auto& row : rows) {
        out << format_number(row.alpha) << ',' << format_number(row.max_err_limiting) << ','
            << format_number(row.max_err_laplace) << '\n';
    }
}

}  // namespace covint
