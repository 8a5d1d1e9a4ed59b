// telefid: spectral bound, parameter sweep, threshold search, and
// self-verification for teleportation through the bound-entangled family.
//
// Exit codes: 0 success, 1 verification failure, 2 bad input or I/O error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "telefid/eig.hpp"
#include "telefid/errors.hpp"
#include "telefid/fidelity.hpp"
#include "telefid/sweep.hpp"

namespace {

// "sqrt3/2" computes the flagship parameter at full precision; decimals parse
// as usual.
double parse_a(const std::string& text) {
    if (text == "sqrt3/2") return std::sqrt(3.0) / 2.0;
    std::size_t used = 0;
    const double value = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument("trailing characters in '" + text + "'");
    return value;
}

std::string fmt17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

int cmd_eigs(const std::string& a_text) {
    const double a = parse_a(a_text);
    const telefid::fidelity::BoundReport report = telefid::fidelity::fidelity_bound(a);

    std::string out = "a = " + fmt17(report.a) + "\n";
    const std::vector<double> eigs(report.spectrum.begin(), report.spectrum.end());
    for (const auto& group : telefid::linalg::group_eigenvalues(eigs))
        out += "  eigenvalue " + fmt17(group.value) + "  (multiplicity " +
               std::to_string(group.multiplicity) + ")\n";
    out += "lambda_max = " + fmt17(report.lambda_max) + "\n";
    out += "bound = " + fmt17(report.bound) + "\n";
    out += std::string("verdict = ") + telefid::fidelity::to_string(report.verdict) + "\n";
    std::cout << out;
    return 0;
}

int write_report(const telefid::sweep::RunConfig& config, const std::string& body) {
    if (config.out_path.empty()) {
        std::cout << body;
        return 0;
    }
    std::ofstream file(config.out_path, std::ios::binary);
    if (!file) {
        std::cerr << "error: cannot open output file: " << config.out_path << "\n";
        return 2;
    }
    file << body;
    if (!file.good()) {
        std::cerr << "error: write failed: " << config.out_path << "\n";
        return 2;
    }
    return 0;
}

int cmd_sweep(const telefid::sweep::RunConfig& config) {
    const auto rows = telefid::sweep::run_sweep(config.a_min, config.a_max, config.steps);
    const std::string body = config.format == telefid::sweep::OutputFormat::csv
                                 ? telefid::sweep::to_csv(rows)
                                 : telefid::sweep::to_json(config, rows, {});
    return write_report(config, body);
}

int cmd_threshold(double tol) {
    if (!(tol > 0.0) || tol > 1e-3) {
        std::cerr << "error: --tol must lie in (0, 1e-3]\n";
        return 2;
    }
    const double a_star = telefid::sweep::find_verdict_threshold(tol);
    std::cout << "threshold a = " << fmt17(a_star) << "\n";
    return 0;
}

int cmd_verify(const telefid::sweep::RunConfig& config) {
    const auto checks = telefid::sweep::run_verify(config.samples, config.seed);
    std::cout << telefid::sweep::to_text(checks);
    std::size_t failed = 0;
    for (const auto& c : checks)
        if (!c.pass) ++failed;
    std::cout << (failed == 0 ? "all checks passed"
                              : std::to_string(failed) + " check(s) failed")
              << " (" << checks.size() << " total)\n";
    return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Teleportation fidelity bounds for the bound-entangled two-qutrit family"};
    app.require_subcommand(1);

    std::string a_text = "sqrt3/2";
    auto* eigs = app.add_subcommand("eigs", "Spectrum, bound and verdict at one parameter value");
    eigs->add_option("--a", a_text, "Family parameter in [0,1]; accepts 'sqrt3/2'")
        ->capture_default_str();

    telefid::sweep::RunConfig config;
    std::string format_text = "csv";
    auto* sweep = app.add_subcommand("sweep", "Evaluate the bound on a uniform parameter grid");
    sweep->add_option("--a-min", config.a_min, "Grid start")->capture_default_str();
    sweep->add_option("--a-max", config.a_max, "Grid end")->capture_default_str();
    sweep->add_option("--steps", config.steps, "Grid points")->capture_default_str();
    sweep->add_option("--format", format_text, "csv or json")->capture_default_str();
    sweep->add_option("--out", config.out_path, "Output path (default: stdout)");

    double tol = 1e-10;
    auto* threshold =
        app.add_subcommand("threshold", "Bisect the parameter where the verdict changes");
    threshold->add_option("--tol", tol, "Bracket width target, in (0, 1e-3]")
        ->capture_default_str();

    auto* verify = app.add_subcommand("verify", "Run the Monte-Carlo / closed-form check suite");
    verify->add_option("--samples", config.samples, "Haar samples per estimate")
        ->capture_default_str();
    verify->add_option("--seed", config.seed, "Random seed")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (eigs->parsed()) return cmd_eigs(a_text);
        if (sweep->parsed()) {
            if (format_text == "csv")
                config.format = telefid::sweep::OutputFormat::csv;
            else if (format_text == "json")
                config.format = telefid::sweep::OutputFormat::json;
            else {
                std::cerr << "error: --format must be csv or json\n";
                return 2;
            }
            return cmd_sweep(config);
        }
        if (threshold->parsed()) return cmd_threshold(tol);
        if (verify->parsed()) return cmd_verify(config);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
