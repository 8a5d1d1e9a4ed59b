#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "telefid/fidelity.hpp"

namespace telefid::sweep {

struct SweepRow {
    double a = 0.0;
    double lambda_max = 0.0;
    double bound = 0.0;
    fidelity::Verdict verdict = fidelity::Verdict::Inconclusive;
    double ppt_min_eig = 0.0;  // min eigenvalue of the partial transpose of the family member
};

enum class OutputFormat { csv, json };

struct RunConfig {
    std::uint64_t seed = 0;
    std::uint64_t samples = 100000;
    double a_min = 0.0;
    double a_max = 1.0;
    std::size_t steps = 101;
    OutputFormat format = OutputFormat::csv;
    std::string out_path;  // empty: stdout
};

/// Uniform grid of `steps` points on [a_min, a_max] (steps == 1 evaluates
/// a_min only), one row per point in ascending order. Pure function of the
/// grid, so repeated runs are byte-identical. Throws std::invalid_argument on
/// a_min > a_max or steps == 0, OutOfRangeError if the grid leaves [0, 1].
std::vector<SweepRow> run_sweep(double a_min, double a_max, std::size_t steps);

/// Bisection of g(a) = lambda_max(a) - 1/3 on [lo, hi] down to bracket width
/// <= tol; returns the bracket midpoint. Throws NoSignChangeError when
/// g(lo) and g(hi) agree in sign — the threshold claim itself has regressed.
double find_verdict_threshold(double tol, double lo = 0.5, double hi = 0.9);

struct CheckResult {
    std::string name;
    double target = 0.0;
    double observed = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

/// The self-verification suite: classical baseline against 1/2 in three
/// bases, Haar moment identities, closed-form vs Monte-Carlo fidelity on
/// fixed and random (state, protocol) pairs, component round-trip, family
/// structure (r-vector formula, partial-transpose positivity). Deterministic
/// for fixed (samples, seed).
std::vector<CheckResult> run_verify(std::uint64_t samples, std::uint64_t seed);

/// CSV with header a,lambda_max,bound,verdict,ppt_min_eig; reals carry 17
/// significant digits so values round-trip exactly.
std::string to_csv(const std::vector<SweepRow>& rows);

/// JSON object {config, rows, checks}.
std::string to_json(const RunConfig& config, const std::vector<SweepRow>& rows,
                    const std::vector<CheckResult>& checks);

std::string to_text(const std::vector<CheckResult>& checks);

}  // namespace telefid::sweep
