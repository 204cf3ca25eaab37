#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "covint/approx.hpp"
#include "covint/error.hpp"
#include "covint/model.hpp"
#include "covint/quadrature.hpp"
#include "covint/sweep.hpp"

namespace covint::cli {

namespace {

// Argument combinations CLI11 cannot express on its own.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::vector<Method> parse_methods(const std::vector<std::string>& names) {
    std::vector<Method> methods;
    for (const auto& name : names) {
        const auto m = parse_method(name);
        if (!m) {
            throw UsageError("unknown method '" + name +
                             "' (expected exact, limiting, interference, noise, laplace)");
        }
        methods.push_back(*m);
    }
    return methods;
}

std::string snr_db_text(double sigma2) {
    if (sigma2 == 0.0) {
        return "inf";
    }
    if (std::isinf(sigma2)) {
        return "-inf";
    }
    return format_number(-linear_to_db(sigma2));
}

struct Options {
    std::optional<double> A;
    std::optional<double> B;
    std::optional<double> alpha;
    std::optional<double> lambda;
    double T_db = 0.0;
    double mu = 1.0;
    std::optional<double> sigma2;
    std::optional<double> beta;
    double snr_start = -20.0;
    double snr_stop = 40.0;
    double snr_step = 1.0;
    int terms = 4;
    double epsilon = 1e-3;
    std::vector<std::string> methods;
    std::optional<double> x_hat;
    double tol = kDefaultTolerance;
    std::string out;
    int K = 50;
    std::vector<double> alphas = {2.5, 3.0, 3.5, 4.0, 4.5, 5.0};
};

void add_model_flags(CLI::App* cmd, Options& o) {
    cmd->add_option("--lambda", o.lambda, "Base-station intensity");
    cmd->add_option("--T-db", o.T_db, "SINR threshold in dB");
    cmd->add_option("--mu", o.mu, "Inverse transmit power (linear)");
    cmd->add_option("--beta", o.beta, "Use this beta instead of computing it (required at alpha <= 2)");
}

void add_sweep_flags(CLI::App* cmd, Options& o) {
    add_model_flags(cmd, o);
    cmd->add_option("--alpha", o.alpha, "Path-loss exponent");
    cmd->add_option("--snr-start", o.snr_start, "First SNR grid point (dB)");
    cmd->add_option("--snr-stop", o.snr_stop, "Last SNR grid point (dB, inclusive)");
    cmd->add_option("--snr-step", o.snr_step, "SNR grid spacing (dB)");
    cmd->add_option("--terms", o.terms, "Series terms n");
    cmd->add_option("--epsilon", o.epsilon, "Error tolerance for validity thresholds");
    cmd->add_option("--x-hat", o.x_hat, "Laplace expansion point override");
    cmd->add_option("--tol", o.tol, "Reference quadrature tolerance on p_c");
    cmd->add_option("--out", o.out, "Output CSV path (stdout when omitted)");
}

SweepConfig sweep_config(const Options& o) {
    SweepConfig config;
    if (o.alpha) {
        config.alpha = *o.alpha;
    }
    if (o.lambda) {
        config.lambda = *o.lambda;
    }
    config.T_db = o.T_db;
    config.mu = o.mu;
    config.snr_db_start = o.snr_start;
    config.snr_db_stop = o.snr_stop;
    config.snr_db_step = o.snr_step;
    config.n_terms = o.terms;
    config.epsilon = o.epsilon;
    if (!o.methods.empty()) {
        config.methods = parse_methods(o.methods);
    }
    config.output_path = o.out;
    config.tol = o.tol;
    config.x_hat = o.x_hat;
    config.beta = o.beta;
    try {
        config.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    return config;
}

template <typename Writer>
void emit(const std::string& path, std::ostream& out, Writer&& write) {
    if (path.empty()) {
        write(out);
        return;
    }
    std::ostringstream buffer;
    write(buffer);
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw IoError("cannot open '" + path + "' for writing");
    }
    file << buffer.str();
    if (!file.flush()) {
        throw IoError("failed writing '" + path + "'");
    }
}

NetworkParams network_from(const Options& o) {
    if (!o.lambda || !o.alpha) {
        throw UsageError("model parameters need --lambda and --alpha");
    }
    NetworkParams net;
    net.lambda = *o.lambda;
    net.T = db_to_linear(o.T_db);
    net.mu = o.mu;
    net.sigma2 = o.sigma2.value_or(0.0);
    net.alpha = *o.alpha;
    return net;
}

DerivedParams derived_from(const Options& o, const NetworkParams& net) {
    return o.beta ? derive_with_beta(net, *o.beta) : derive(net);
}

void print_result(std::ostream& out, const ApproxResult& r, double oracle,
                  std::optional<double> pc_scale) {
    out << "method " << to_string(r.method) << ": I = " << format_number(r.value);
    if (r.error_bound) {
        out << ", error_bound = " << format_number(*r.error_bound);
    }
    if (r.terms_used) {
        out << ", terms = " << *r.terms_used;
        if (r.terms_requested && *r.terms_requested != *r.terms_used) {
            out << " (capped from " << *r.terms_requested << ")";
        }
    }
    out << ", abs_error = " << format_number(std::abs(r.value - oracle));
    if (pc_scale) {
        const double pc = *pc_scale * r.value;
        out << ", p_c = " << format_number(pc)
            << ", pc_error = " << format_number(std::abs(pc - *pc_scale * oracle));
    }
    out << '\n';
}

int cmd_eval(const Options& o, bool methods_given, std::ostream& out) {
    IntegralParams params;
    std::optional<double> pc_scale;
    double tol = o.tol;
    if (o.A || o.B) {
        if (!o.A || !o.B || !o.alpha) {
            throw UsageError("eval needs --A, --B and --alpha together");
        }
        params = {*o.A, *o.B, *o.alpha};
    } else if (o.lambda) {
        if (!o.sigma2) {
            throw UsageError("eval on the model path needs --sigma2");
        }
        const NetworkParams net = network_from(o);
        const DerivedParams derived = derived_from(o, net);
        params = {derived.A, derived.B, net.alpha};
        pc_scale = std::numbers::pi * net.lambda;
        tol = std::max(o.tol / *pc_scale, 1e-13);
        out << "beta: " << format_number(derived.beta) << '\n';
    } else {
        throw UsageError("eval needs either --A --B --alpha or --lambda --sigma2 --alpha");
    }
    params.validate();
    out << "A: " << format_number(params.A) << '\n';
    out << "B: " << format_number(params.B) << '\n';
    out << "alpha: " << format_number(params.alpha) << '\n';

    const QuadratureResult oracle = integrate_coverage(params, tol);
    out << "oracle: I = " << format_number(oracle.value)
        << ", abs_error_estimate = " << format_number(oracle.abs_error_estimate) << '\n';
    if (pc_scale) {
        out << "oracle: p_c = " << format_number(coverage_probability(oracle.value, *o.lambda))
            << '\n';
    }

    EvaluateOptions options;
    options.n = o.terms;
    options.x_hat = o.x_hat;
    const std::vector<Method> methods =
        methods_given ? parse_methods(o.methods)
                      : std::vector<Method>{Method::limiting, Method::interference_series,
                                            Method::noise_series, Method::laplace};
    for (Method m : methods) {
        try {
            print_result(out, evaluate(params, m, options), oracle.value, pc_scale);
        } catch (const DomainError& e) {
            if (methods_given) {
                throw;
            }
            out << "method " << to_string(m) << ": not applicable (" << e.what() << ")\n";
        }
    }
    return 0;
}

int cmd_sweep(const Options& o, std::ostream& out) {
    const SweepConfig config = sweep_config(o);
    const SweepTable table = run_sweep(config);
    emit(config.output_path, out, [&](std::ostream& s) { write_sweep_csv(table, s); });
    return 0;
}

int cmd_max_error(const Options& o, std::ostream& out) {
    const SweepConfig config = sweep_config(o);
    if (o.alphas.empty()) {
        throw UsageError("--alphas must not be empty");
    }
    const auto rows = run_max_error(config, o.alphas);
    emit(config.output_path, out, [&](std::ostream& s) { write_max_error_csv(rows, s); });
    return 0;
}

int cmd_validity(const Options& o, std::ostream& out) {
    if (!(o.epsilon > 0.0) || o.terms < 0) {
        throw UsageError("validity needs --epsilon > 0 and --terms >= 0");
    }
    Options with_defaults = o;
    if (!with_defaults.lambda) {
        with_defaults.lambda = SweepConfig{}.lambda;
    }
    const NetworkParams net = network_from(with_defaults);
    const DerivedParams derived = derived_from(with_defaults, net);
    const ValidityReport inter = interference_validity(o.epsilon, o.terms, net, derived);
    const ValidityReport noise = noise_validity(o.epsilon, o.terms, net, derived);

    out << "beta: " << format_number(derived.beta) << '\n';
    out << "A: " << format_number(derived.A) << '\n';
    out << "epsilon: " << format_number(o.epsilon) << ", n: " << o.terms << '\n';
    out << "interference B threshold: " << format_number(inter.B_threshold) << '\n';
    out << "interference sigma2 threshold: " << format_number(inter.sigma2_threshold)
        << " (SNR " << snr_db_text(inter.sigma2_threshold) << " dB)\n";
    out << "interference sigma2 asymptote: " << format_number(inter.sigma2_asymptotic)
        << " (SNR " << snr_db_text(inter.sigma2_asymptotic) << " dB)\n";
    if (net.alpha > 2.0) {
        // K₁^{1/(n+1)} ~ n^{1−α/2}, so the threshold stays below this value and
        // eventually falls away from it.
        out << "  note: upper envelope only; for alpha > 2 the threshold tends to 0 as n grows\n";
    }
    out << "noise B threshold: " << format_number(noise.B_threshold) << '\n';
    out << "noise sigma2 threshold: " << format_number(noise.sigma2_threshold) << " (SNR "
        << snr_db_text(noise.sigma2_threshold) << " dB)\n";
    out << "noise sigma2 asymptote: " << format_number(noise.sigma2_asymptotic) << " (SNR "
        << snr_db_text(noise.sigma2_asymptotic) << " dB)\n";
    return 0;
}

void print_ratios(std::ostream& out, const std::vector<double>& ratios) {
    const std::size_t n = ratios.size();
    out << "  ratios k=1..10:";
    for (std::size_t i = 0; i < std::min<std::size_t>(10, n); ++i) {
        out << ' ' << format_number(ratios[i]);
    }
    out << '\n';
    const std::size_t first_tail = n > 5 ? n - 5 : 0;
    out << "  ratios k=" << first_tail + 1 << ".." << n << ":";
    for (std::size_t i = first_tail; i < n; ++i) {
        out << ' ' << format_number(ratios[i]);
    }
    out << '\n';
}

void print_verdict(std::ostream& out, const ConvergenceReport& r) {
    out << "  verdict: " << to_string(r.verdict) << '\n';
    out << "  limit: " << format_number(r.limit_expression);
    if (r.verdict == Verdict::conditional) {
        out << (r.conditional_converges() ? " < 1, converges" : " >= 1, diverges");
    }
    out << '\n';
}

int cmd_convergence(const Options& o, std::ostream& out) {
    if (!o.A || !o.B || !o.alpha) {
        throw UsageError("convergence needs --A, --B and --alpha");
    }
    if (o.K < 2) {
        throw UsageError("--K must be at least 2");
    }
    const IntegralParams params{*o.A, *o.B, *o.alpha};
    const ConvergenceReport inter = ratio_test_interference(params, o.K);
    const ConvergenceReport noise = ratio_test_noise(params, o.K);

    out << "interference series:\n";
    print_ratios(out, inter.ratios);
    print_verdict(out, inter);
    const int n_opt = interference_optimal_truncation(params, o.K);
    out << "  optimal truncation: n = " << n_opt << " (smallest term index " << n_opt + 1
        << ")\n";
    out << "noise series:\n";
    print_ratios(out, noise.ratios);
    print_verdict(out, noise);
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Coverage-integral approximations and reference evaluation", "covint"};
    app.require_subcommand(1);
    Options o;

    auto* eval = app.add_subcommand("eval", "Evaluate I (and p_c) with the requested methods");
    eval->add_option("--A", o.A, "Interference coefficient");
    eval->add_option("--B", o.B, "Noise coefficient");
    eval->add_option("--alpha", o.alpha, "Path-loss exponent");
    eval->add_option("--sigma2", o.sigma2, "Noise variance");
    add_model_flags(eval, o);
    auto* eval_methods =
        eval->add_option("--method,--methods", o.methods, "exact, limiting, interference, noise, laplace")
            ->delimiter(',');
    eval->add_option("--terms", o.terms, "Series terms n");
    eval->add_option("--x-hat", o.x_hat, "Laplace expansion point override");
    eval->add_option("--tol", o.tol, "Reference quadrature tolerance (on p_c for the model path)");
    eval->add_option("--epsilon", o.epsilon, "Unused by eval; accepted for symmetry");

    auto* sweep = app.add_subcommand("sweep", "SNR sweep written as CSV");
    add_sweep_flags(sweep, o);
    sweep->add_option("--methods", o.methods, "Subset of limiting, interference, noise, laplace")
        ->delimiter(',');

    auto* max_error = app.add_subcommand("max-error", "Maximum sweep error per path-loss exponent");
    add_sweep_flags(max_error, o);
    max_error->add_option("--alphas", o.alphas, "Comma-separated path-loss exponents")
        ->delimiter(',');

    auto* validity = app.add_subcommand("validity", "Noise-variance validity thresholds of both series");
    add_model_flags(validity, o);
    validity->add_option("--alpha", o.alpha, "Path-loss exponent")->required();
    validity->add_option("--terms", o.terms, "Series terms n");
    validity->add_option("--epsilon", o.epsilon, "Error tolerance");

    auto* convergence = app.add_subcommand("convergence", "Ratio tests for both series");
    convergence->add_option("--A", o.A, "Interference coefficient")->required();
    convergence->add_option("--B", o.B, "Noise coefficient")->required();
    convergence->add_option("--alpha", o.alpha, "Path-loss exponent")->required();
    convergence->add_option("--K", o.K, "Number of ratios");

    std::vector<const char*> argv;
    argv.push_back("covint");
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (eval->parsed()) {
            return cmd_eval(o, eval_methods->count() > 0, out);
        }
        if (sweep->parsed()) {
            return cmd_sweep(o, out);
        }
        if (max_error->parsed()) {
            return cmd_max_error(o, out);
        }
        if (validity->parsed()) {
            return cmd_validity(o, out);
        }
        if (convergence->parsed()) {
            return cmd_convergence(o, out);
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const covint::Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitMath;
    }
    return kExitUsage;
}

}  // namespace covint::cli
