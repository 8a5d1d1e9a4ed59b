#include "telefid/fidelity.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "telefid/eig.hpp"
#include "telefid/errors.hpp"
#include "telefid/gell_mann.hpp"

namespace telefid::fidelity {

using linalg::Complex;

namespace {

constexpr std::uint64_t kBlockSize = 4096;

// Blocked mean/standard-error accumulation: block b draws from
// substream(key, b), partial sums merge in block order, so the estimate is a
// pure function of (samples, key).
template <typename PerSample>
FidelityEstimate accumulate_mc(std::uint64_t samples, const rng::StreamKey& key,
                               PerSample&& value) {
    double sum = 0.0;
    double sumsq = 0.0;
    std::uint64_t done = 0;
    for (std::uint64_t block = 0; done < samples; ++block) {
        auto stream = rng::make_stream(rng::substream(key, block));
        const std::uint64_t n = std::min<std::uint64_t>(kBlockSize, samples - done);
        for (std::uint64_t i = 0; i < n; ++i) {
            const double v = value(stream);
            sum += v;
            sumsq += v * v;
        }
        done += n;
    }

    FidelityEstimate est;
    est.samples = samples;
    if (samples == 0) return est;
    est.mean = sum / static_cast<double>(samples);
    if (samples > 1) {
        const double nd = static_cast<double>(samples);
        const double var = std::max(0.0, (sumsq - nd * est.mean * est.mean) / (nd - 1.0));
        est.std_error = std::sqrt(var / nd);
    }
    return est;
}

void require_state(const ComplexMatrix& rho) {
    if (rho.rows() != 9 || rho.cols() != 9) throw NonStateError("shared state must be 9x9");
    if (std::abs(rho.trace() - Complex(1.0, 0.0)) > 1e-8)
        throw NonStateError("shared state trace differs from 1");
    if (!rho.is_psd(1e-8)) throw NonStateError("shared state is not positive semidefinite");
}

// Per-protocol data for the contraction route: Q_k = P_k^2 (equal to P_k for
// a true projector, but squaring also covers near-projector inputs the same
// way the sandwich (P x U) Y (P x U)^dag would).
struct ContractionPlan {
    std::array<ComplexMatrix, 9> q;
    std::array<ComplexMatrix, 9> correction;
};

ContractionPlan make_plan(const MeasurementProtocol& protocol) {
    ContractionPlan plan;
    for (std::size_t k = 0; k < 9; ++k) {
        plan.q[k] = protocol.projectors[k] * protocol.projectors[k];
        plan.correction[k] = protocol.corrections[k];
    }
    return plan;
}

// sum_k <U_k^dag phi| W_k |U_k^dag phi> with
//   W_k[c,c'] = sum_{n,q} B_k[q,n] rho[(n,c),(q,c')],
//   B_k[q,n]  = sum_{m,p} Q_k[(p,q),(m,n)] phi_m conj(phi_p).
// This is Tr_3( p_k rho_k P_phi ) summed over outcomes: the input and Alice
// indices of (Q_k x I)(P_phi x rho) are traced out, Bob's 3x3 remainder is
// conjugated by the correction and evaluated on phi.
double contracted_fidelity(const ComplexMatrix& rho, const ContractionPlan& plan,
                           const QutritVector& phi) {
    double total = 0.0;
    for (std::size_t k = 0; k < 9; ++k) {
        const ComplexMatrix& q = plan.q[k];

        Complex b[3][3] = {};
        for (std::size_t qi = 0; qi < 3; ++qi)
            for (std::size_t n = 0; n < 3; ++n) {
                Complex acc = 0.0;
                for (std::size_t p = 0; p < 3; ++p) {
                    const Complex pc = std::conj(phi[p]);
                    for (std::size_t m = 0; m < 3; ++m)
                        acc += q(3 * p + qi, 3 * m + n) * phi[m] * pc;
                }
                b[qi][n] = acc;
            }

        Complex w[3][3] = {};
        for (std::size_t c = 0; c < 3; ++c)
            for (std::size_t cp = 0; cp < 3; ++cp) {
                Complex acc = 0.0;
                for (std::size_t n = 0; n < 3; ++n)
                    for (std::size_t qi = 0; qi < 3; ++qi)
                        acc += b[qi][n] * rho(3 * n + c, 3 * qi + cp);
                w[c][cp] = acc;
            }

        const ComplexMatrix& u = plan.correction[k];
        QutritVector z{};  // U_k^dag phi
        for (std::size_t c = 0; c < 3; ++c)
            for (std::size_t m = 0; m < 3; ++m) z[c] += std::conj(u(m, c)) * phi[m];

        Complex val = 0.0;
        for (std::size_t c = 0; c < 3; ++c)
            for (std::size_t cp = 0; cp < 3; ++cp) val += std::conj(z[c]) * w[c][cp] * z[cp];
        total += val.real();
    }
    return total;
}

}  // namespace

const char* to_string(Verdict v) {
    return v == Verdict::NotBetterThanClassical ? "NotBetterThanClassical" : "Inconclusive";
}

double outcome_contribution(const std::array<double, 8>& alpha, const SchmidtComponents& rho_c,
                            const SchmidtComponents& proj_c, const OrthogonalMap& orbit) {
    const auto& r = rho_c.r;
    const auto& s = rho_c.s;
    const auto& t = rho_c.t;
    const auto& cr = proj_c.r;  // projector components, Alice-side pair (input, her half)
    const auto& cs = proj_c.s;
    const auto& ct = proj_c.t;

    double value = 1.0 / 27.0;

    double r_cs = 0.0;  // r . S
    double a_cr = 0.0;  // alpha . R
    for (std::size_t i = 0; i < 8; ++i) {
        r_cs += r[i] * cs[i];
        a_cr += alpha[i] * cr[i];
    }
    value += r_cs / 18.0 + a_cr / 18.0;

    double a_ct_r = 0.0;  // alpha_p T_pq r_q
    for (std::size_t p = 0; p < 8; ++p) {
        double row = 0.0;
        for (std::size_t q = 0; q < 8; ++q) row += ct[p][q] * r[q];
        a_ct_r += alpha[p] * row;
    }
    value += a_ct_r / 12.0;

    // Rotated Bob-side vectors: (s O)_j and (S t O)_j and (alpha T t O)_j.
    std::array<double, 8> s_o{};       // sum_q s_q O_qj
    std::array<double, 8> st_vec{};    // sum_i t_iq S_i -> will be rotated
    std::array<double, 8> att_vec{};   // sum_{p,i} alpha_p T_pi t_iq
    for (std::size_t q = 0; q < 8; ++q) {
        double sv = 0.0;
        double av = 0.0;
        for (std::size_t i = 0; i < 8; ++i) {
            sv += cs[i] * t[i][q];
            double at = 0.0;
            for (std::size_t p = 0; p < 8; ++p) at += alpha[p] * ct[p][i];
            av += at * t[i][q];
        }
        st_vec[q] = sv;
        att_vec[q] = av;
    }
    for (std::size_t j = 0; j < 8; ++j) {
        double so = 0.0;
        double sto = 0.0;
        double atto = 0.0;
        for (std::size_t q = 0; q < 8; ++q) {
            so += s[q] * orbit.o[q][j];
            sto += st_vec[q] * orbit.o[q][j];
            atto += att_vec[q] * orbit.o[q][j];
        }
        s_o[j] = so;
        value += alpha[j] * (so / 18.0 + sto / 12.0 + a_cr * so / 12.0 + atto / 8.0);
    }
    return value;
}

double average_fidelity(const ComplexMatrix& rho, const MeasurementProtocol& protocol) {
    states::validate_protocol(protocol);
    const SchmidtComponents rc = schmidt::decompose(rho);

    double f = 0.0;
    for (std::size_t k = 0; k < 9; ++k) {
        const SchmidtComponents pc = schmidt::decompose(protocol.projectors[k]);
        const OrthogonalMap o = schmidt::adjoint_orbit(protocol.corrections[k]);

        double term = 1.0 / 27.0;
        for (std::size_t q = 0; q < 8; ++q) term += rc.r[q] * pc.s[q] / 18.0;
        for (std::size_t p = 0; p < 8; ++p) {
            double op_s = 0.0;   // sum_q s_q O_qp
            double op_tt = 0.0;  // sum_{i,q} T_pi t_iq O_qp
            for (std::size_t q = 0; q < 8; ++q) {
                op_s += rc.s[q] * o.o[q][p];
                double ti = 0.0;
                for (std::size_t i = 0; i < 8; ++i) ti += pc.t[p][i] * rc.t[i][q];
                op_tt += ti * o.o[q][p];
            }
            term += pc.r[p] * op_s / 72.0 + op_tt / 48.0;
        }
        f += term;
    }
    return f;
}

double input_state_fidelity(const ComplexMatrix& rho, const MeasurementProtocol& protocol,
                            const QutritVector& phi) {
    states::validate_protocol(protocol);
    return contracted_fidelity(rho, make_plan(protocol), phi);
}

FidelityEstimate monte_carlo_fidelity(const ComplexMatrix& rho,
                                      const MeasurementProtocol& protocol,
                                      std::uint64_t samples, const rng::StreamKey& key) {
    states::validate_protocol(protocol);
    require_state(rho);
    const ContractionPlan plan = make_plan(protocol);
    return accumulate_mc(samples, key, [&](rng::RandomStream& stream) {
        const states::PureQutritState phi = states::sample_haar_state(stream);
        return contracted_fidelity(rho, plan, phi.amplitudes);
    });
}

HaarMomentReport haar_moment_report(std::uint64_t samples, const rng::StreamKey& key,
                                    std::size_t random_forms) {
    // Quadratic forms are drawn from a reserved substream far outside the
    // block range so they never collide with sample blocks.
    std::vector<std::array<std::array<double, 8>, 8>> forms;
    {
        auto stream = rng::make_stream(rng::substream(key, 0xF0F0F0F0F0F0F0F0ULL));
        std::normal_distribution<double> gauss(0.0, 1.0);
        forms.resize(random_forms);
        for (auto& m : forms)
            for (std::size_t i = 0; i < 8; ++i) {
                m[i][i] = gauss(stream);
                for (std::size_t j = i + 1; j < 8; ++j) m[i][j] = m[j][i] = gauss(stream);
            }
    }

    const std::size_t nstats = 8 + 1 + random_forms;
    std::vector<double> sum(nstats, 0.0);
    std::vector<double> sumsq(nstats, 0.0);
    double max_purity_error = 0.0;

    std::uint64_t done = 0;
    for (std::uint64_t block = 0; done < samples; ++block) {
        auto stream = rng::make_stream(rng::substream(key, block));
        const std::uint64_t n = std::min<std::uint64_t>(kBlockSize, samples - done);
        for (std::uint64_t i = 0; i < n; ++i) {
            const auto phi = states::sample_haar_state(stream);
            const auto alpha = states::input_projector(phi).alpha;

            double purity = 0.0;
            for (std::size_t a = 0; a < 8; ++a) {
                purity += alpha[a] * alpha[a];
                sum[a] += alpha[a];
                sumsq[a] += alpha[a] * alpha[a];
            }
            max_purity_error = std::max(max_purity_error, std::abs(purity - 4.0 / 3.0));
            sum[8] += purity;
            sumsq[8] += purity * purity;

            for (std::size_t f = 0; f < random_forms; ++f) {
                double qf = 0.0;
                for (std::size_t a = 0; a < 8; ++a) {
                    double row = 0.0;
                    for (std::size_t b = 0; b < 8; ++b) row += forms[f][a][b] * alpha[b];
                    qf += alpha[a] * row;
                }
                sum[9 + f] += qf;
                sumsq[9 + f] += qf * qf;
            }
        }
        done += n;
    }

    HaarMomentReport report;
    report.samples = samples;
    report.max_purity_error = max_purity_error;
    if (samples == 0) return report;

    const double nd = static_cast<double>(samples);
    auto push = [&](const std::string& name, double target, std::size_t idx) {
        MomentCheck c;
        c.name = name;
        c.target = target;
        c.observed = sum[idx] / nd;
        if (samples > 1) {
            const double var =
                std::max(0.0, (sumsq[idx] - nd * c.observed * c.observed) / (nd - 1.0));
            c.std_error = std::sqrt(var / nd);
        }
        const double err = std::abs(c.observed - target);
        // Zero-variance statistics (e.g. the identity form, constant 4/3 per
        // sample) get deviation 0 unless the constant itself is off.
        c.deviation_sigma = c.std_error > 0.0 ? err / c.std_error
                                              : (err <= 1e-12 ? 0.0 : std::numeric_limits<double>::infinity());
        report.checks.push_back(std::move(c));
    };

    for (std::size_t a = 0; a < 8; ++a)
        push("mean alpha_" + std::to_string(a + 1), 0.0, a);
    push("quadratic identity", 4.0 / 3.0, 8);
    for (std::size_t f = 0; f < random_forms; ++f) {
        double tr = 0.0;
        for (std::size_t a = 0; a < 8; ++a) tr += forms[f][a][a];
        push("quadratic form " + std::to_string(f + 1), tr / 6.0, 9 + f);
    }
    return report;
}

double classical_overlap(const QutritVector& phi, const Basis3& basis) {
    double total = 0.0;
    for (const auto& v : basis) {
        Complex ip = 0.0;
        for (std::size_t i = 0; i < 3; ++i) ip += std::conj(v[i]) * phi[i];
        const double p = std::norm(ip);
        total += p * p;
    }
    return total;
}

FidelityEstimate classical_fidelity(std::uint64_t samples, const rng::StreamKey& key,
                                    const Basis3& basis) {
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            Complex ip = 0.0;
            for (std::size_t c = 0; c < 3; ++c) ip += std::conj(basis[i][c]) * basis[j][c];
            const double want = i == j ? 1.0 : 0.0;
            if (std::abs(ip - want) > 1e-10)
                throw BasisNotOrthonormalError("measurement basis is not orthonormal");
        }
    return accumulate_mc(samples, key, [&](rng::RandomStream& stream) {
        return classical_overlap(states::sample_haar_state(stream).amplitudes, basis);
    });
}

ComplexMatrix bound_operator(double a) {
    ComplexMatrix rho = states::horodecki_state(a);
    const double shift = (a - 1.0) / ((8.0 * a + 1.0) * std::sqrt(3.0));
    const ComplexMatrix g8_lift =
        linalg::kron(linalg::gell_mann_basis()[7], ComplexMatrix::identity(3));
    return rho + shift * g8_lift;
}

ComplexMatrix bound_operator_for(const ComplexMatrix& rho) {
    const SchmidtComponents c = schmidt::decompose(rho);
    ComplexMatrix out = rho;
    const auto& basis = linalg::gell_mann_basis();
    for (std::size_t q = 0; q < 8; ++q) {
        if (c.r[q] == 0.0) continue;
        out += (0.5 * c.r[q]) * linalg::kron(basis[q], ComplexMatrix::identity(3));
    }
    return out;
}

BoundReport fidelity_bound(double a) {
    BoundReport report;
    report.a = a;
    const linalg::Spectrum eigs = linalg::eig_hermitian(bound_operator(a));
    for (std::size_t i = 0; i < 9; ++i) report.spectrum[i] = eigs.eigenvalues[i];
    report.lambda_max = eigs.max();
    report.bound = 0.25 + 0.75 * report.lambda_max;
    report.verdict = report.lambda_max < (1.0 / 3.0 - kVerdictMargin)
                         ? Verdict::NotBetterThanClassical
                         : Verdict::Inconclusive;
    return report;
}

}  // namespace telefid::fidelity
