#include "telefid/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <random>
#include <stdexcept>

#include <json.hpp>

#include "telefid/eig.hpp"
#include "telefid/errors.hpp"
#include "telefid/schmidt.hpp"

namespace telefid::sweep {

using fidelity::FidelityEstimate;
using fidelity::Verdict;
using linalg::ComplexMatrix;
using states::Basis3;
using states::QutritVector;

namespace {

std::string fmt17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

SweepRow row_at(double a) {
    const fidelity::BoundReport report = fidelity::fidelity_bound(a);
    SweepRow row;
    row.a = a;
    row.lambda_max = report.lambda_max;
    row.bound = report.bound;
    row.verdict = report.verdict;
    row.ppt_min_eig =
        linalg::eig_hermitian(states::partial_transpose(states::horodecki_state(a))).min();
    return row;
}

double lambda_gap(double a) { return fidelity::fidelity_bound(a).lambda_max - 1.0 / 3.0; }

// Checks use 3 standard errors as the tolerance; exactly-constant statistics
// (standard error 0) fall back to an absolute floor so round-off cannot flip
// a structurally exact comparison.
CheckResult mc_check(const std::string& name, double target, const FidelityEstimate& est) {
    CheckResult c;
    c.name = name;
    c.target = target;
    c.observed = est.mean;
    c.tolerance = std::max(3.0 * est.std_error, 1e-12);
    c.pass = std::abs(est.mean - target) <= c.tolerance;
    return c;
}

CheckResult abs_check(const std::string& name, double target, double observed, double tol) {
    CheckResult c;
    c.name = name;
    c.target = target;
    c.observed = observed;
    c.tolerance = tol;
    c.pass = std::abs(observed - target) <= tol;
    return c;
}

}  // namespace

std::vector<SweepRow> run_sweep(double a_min, double a_max, std::size_t steps) {
    if (steps == 0) throw std::invalid_argument("sweep needs at least one grid point");
    if (a_min > a_max) throw std::invalid_argument("sweep grid has a_min > a_max");
    std::vector<SweepRow> rows;
    rows.reserve(steps);
    for (std::size_t i = 0; i < steps; ++i) {
        const double a =
            steps == 1 ? a_min
                       : a_min + (a_max - a_min) * static_cast<double>(i) /
                                     static_cast<double>(steps - 1);
        rows.push_back(row_at(a));
    }
    return rows;
}

double find_verdict_threshold(double tol, double lo, double hi) {
    if (!(tol > 0.0)) throw std::invalid_argument("threshold tolerance must be positive");
    double g_lo = lambda_gap(lo);
    double g_hi = lambda_gap(hi);
    if (g_lo == 0.0) return lo;
    if (g_hi == 0.0) return hi;
    if ((g_lo > 0.0) == (g_hi > 0.0))
        throw NoSignChangeError("no verdict change on [" + fmt17(lo) + ", " + fmt17(hi) + "]");
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;  // bracket at floating-point resolution
        const double g_mid = lambda_gap(mid);
        if (g_mid == 0.0) return mid;
        if ((g_mid > 0.0) == (g_lo > 0.0)) {
            lo = mid;
            g_lo = g_mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

std::vector<CheckResult> run_verify(std::uint64_t samples, std::uint64_t seed) {
    if (samples == 0) throw std::invalid_argument("verify needs at least one sample");
    std::vector<CheckResult> checks;

    // Distinct base streams per consumer: MC estimates never share draws with
    // the random fixture generators, so adding a check cannot shift another.
    const rng::StreamKey classical_key{seed, 1};
    const rng::StreamKey moment_key{seed, 2};
    const rng::StreamKey mc_key_base{seed, 3};
    auto fixtures = rng::make_stream(rng::StreamKey{seed, 100});

    // Classical baseline in three bases: computational, Fourier, Haar-random.
    const Basis3 computational = {QutritVector{1.0, 0.0, 0.0}, QutritVector{0.0, 1.0, 0.0},
                                  QutritVector{0.0, 0.0, 1.0}};
    Basis3 fourier;
    const double inv_sqrt3 = 1.0 / std::sqrt(3.0);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            fourier[i][j] = std::polar(inv_sqrt3, 2.0 * std::numbers::pi *
                                                      static_cast<double>(i * j) / 3.0);
    Basis3 random_basis;
    {
        const ComplexMatrix u = states::sample_haar_unitary(3, fixtures);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) random_basis[i][j] = u(j, i);
    }
    checks.push_back(mc_check("classical baseline, computational basis", 0.5,
                              fidelity::classical_fidelity(samples, classical_key, computational)));
    checks.push_back(mc_check("classical baseline, Fourier basis", 0.5,
                              fidelity::classical_fidelity(
                                  samples, rng::substream(classical_key, 1u << 20), fourier)));
    checks.push_back(mc_check("classical baseline, random basis", 0.5,
                              fidelity::classical_fidelity(
                                  samples, rng::substream(classical_key, 2u << 20), random_basis)));

    // Haar moment identities.
    const fidelity::HaarMomentReport moments = fidelity::haar_moment_report(samples, moment_key);
    for (const auto& m : moments.checks) {
        CheckResult c;
        c.name = "haar moment: " + m.name;
        c.target = m.target;
        c.observed = m.observed;
        c.tolerance = std::max(3.0 * m.std_error, 1e-12);
        c.pass = std::abs(m.observed - m.target) <= c.tolerance;
        checks.push_back(std::move(c));
    }
    checks.push_back(
        abs_check("haar sample purity, worst case", 0.0, moments.max_purity_error, 1e-12));

    // Closed form versus the Monte-Carlo teleportation oracle.
    const states::MeasurementProtocol standard = states::standard_protocol();
    auto oracle_pair = [&](const std::string& name, const ComplexMatrix& rho,
                           const states::MeasurementProtocol& protocol, std::uint64_t stream) {
        const double closed = fidelity::average_fidelity(rho, protocol);
        const FidelityEstimate mc = fidelity::monte_carlo_fidelity(
            rho, protocol, samples, rng::substream(mc_key_base, stream));
        checks.push_back(mc_check("oracle agreement: " + name, closed, mc));
        return closed;
    };

    const double f_bell = oracle_pair("max-entangled state, standard protocol",
                                      states::max_entangled_projector(), standard, 0);
    checks.push_back(abs_check("perfect teleportation closed form", 1.0, f_bell, 1e-9));

    ComplexMatrix mixed = ComplexMatrix::identity(9);
    mixed *= 1.0 / 9.0;
    const double f_mixed =
        oracle_pair("maximally mixed state, random protocol", mixed,
                    states::random_protocol(fixtures), 1);
    checks.push_back(abs_check("maximally mixed closed form", 1.0 / 3.0, f_mixed, 1e-12));

    oracle_pair("family member a = 0.9, standard protocol", states::horodecki_state(0.9),
                standard, 2);
    for (int i = 0; i < 3; ++i) {
        const ComplexMatrix rho = states::random_density_matrix(9, fixtures);
        const states::MeasurementProtocol protocol = states::random_protocol(fixtures);
        oracle_pair("random state, random protocol " + std::to_string(i + 1), rho, protocol,
                    3 + static_cast<std::uint64_t>(i));
    }

    // Structural identities, independent of the sample budget.
    {
        double worst = 0.0;
        for (int i = 0; i < 20; ++i) {
            ComplexMatrix g(9, 9);
            std::normal_distribution<double> gauss(0.0, 1.0);
            for (std::size_t r = 0; r < 9; ++r)
                for (std::size_t c = 0; c < 9; ++c)
                    g(r, c) = linalg::Complex(gauss(fixtures), gauss(fixtures));
            const ComplexMatrix h = 0.5 * (g + g.adjoint());
            worst = std::max(
                worst, linalg::max_abs_diff(schmidt::reconstruct(schmidt::decompose(h)), h));
        }
        checks.push_back(abs_check("component round-trip, worst case", 0.0, worst, 1e-12));
    }
    {
        double worst = 0.0;
        for (int i = 0; i <= 100; ++i) {
            const double a = static_cast<double>(i) / 100.0;
            const auto c = schmidt::decompose(states::horodecki_state(a));
            const double want = (2.0 / std::sqrt(3.0)) * (a - 1.0) / (8.0 * a + 1.0);
            worst = std::max(worst, std::abs(c.r[7] - want));
            for (std::size_t q = 0; q < 7; ++q) worst = std::max(worst, std::abs(c.r[q]));
        }
        checks.push_back(abs_check("family one-sided component formula", 0.0, worst, 1e-12));
    }
    {
        double min_eig = 1.0;
        for (int i = 0; i <= 100; ++i) {
            const double a = static_cast<double>(i) / 100.0;
            min_eig = std::min(min_eig, linalg::eig_hermitian(states::partial_transpose(
                                                                  states::horodecki_state(a)))
                                            .min());
        }
        CheckResult c;
        c.name = "family partial transpose stays positive";
        c.target = 0.0;
        c.observed = min_eig;
        c.tolerance = 1e-10;
        c.pass = min_eig >= -1e-10;
        checks.push_back(c);
    }

    return checks;
}

std::string to_csv(const std::vector<SweepRow>& rows) {
    std::string out = "a,lambda_max,bound,verdict,ppt_min_eig\n";
    for (const auto& row : rows) {
        out += fmt17(row.a);
        out += ',';
        out += fmt17(row.lambda_max);
        out += ',';
        out += fmt17(row.bound);
        out += ',';
        out += fidelity::to_string(row.verdict);
        out += ',';
        out += fmt17(row.ppt_min_eig);
        out += '\n';
    }
    return out;
}

std::string to_json(const RunConfig& config, const std::vector<SweepRow>& rows,
                    const std::vector<CheckResult>& checks) {
    nlohmann::ordered_json j;
    j["config"] = {{"seed", config.seed},
                   {"samples", config.samples},
                   {"a_min", config.a_min},
                   {"a_max", config.a_max},
                   {"steps", config.steps},
                   {"format", config.format == OutputFormat::csv ? "csv" : "json"},
                   {"out", config.out_path}};
    j["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : rows)
        j["rows"].push_back({{"a", row.a},
                             {"lambda_max", row.lambda_max},
                             {"bound", row.bound},
                             {"verdict", fidelity::to_string(row.verdict)},
                             {"ppt_min_eig", row.ppt_min_eig}});
    j["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : checks)
        j["checks"].push_back({{"name", c.name},
                               {"target", c.target},
                               {"observed", c.observed},
                               {"tolerance", c.tolerance},
                               {"pass", c.pass}});
    return j.dump(2) + "\n";
}

std::string to_text(const std::vector<CheckResult>& checks) {
    std::string out;
    for (const auto& c : checks) {
        out += c.pass ? "[PASS] " : "[FAIL] ";
        out += c.name;
        out += ": target ";
        out += fmt17(c.target);
        out += ", observed ";
        out += fmt17(c.observed);
        out += ", tolerance ";
        out += fmt17(c.tolerance);
        out += '\n';
    }
    return out;
}

}  // namespace telefid::sweep
