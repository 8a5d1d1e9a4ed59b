#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "telefid/complex_matrix.hpp"
#include "telefid/rng.hpp"
#include "telefid/schmidt.hpp"
#include "telefid/states.hpp"

namespace telefid::fidelity {

using linalg::ComplexMatrix;
using schmidt::OrthogonalMap;
using schmidt::SchmidtComponents;
using states::Basis3;
using states::MeasurementProtocol;
using states::QutritVector;

/// Teleportation setup: particle 1 carries the unknown input, particles 2 and
/// 3 are Alice's and Bob's halves of the shared state rho. Alice measures the
/// pair (1,2) with the protocol's projectors; Bob applies the matching
/// correction. The transmission fidelity is the average over Haar-random
/// inputs of sum_k p_k Tr(rho_k P_phi).

struct FidelityEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t samples = 0;
};

enum class Verdict { NotBetterThanClassical, Inconclusive };

const char* to_string(Verdict v);

/// lambda_max within this margin of 1/3 is reported Inconclusive; the verdict
/// is a strict inequality and numerical ties must not overclaim.
inline constexpr double kVerdictMargin = 1e-9;

/// Spectral analysis of the shifted family member at parameter a. The bound
/// 1/4 + (3/4) lambda_max dominates the teleportation fidelity of every valid
/// protocol; lambda_max < 1/3 therefore pins the fidelity below the classical
/// 1/2.
struct BoundReport {
    double a = 0.0;
    std::array<double, 9> spectrum{};  // ascending
    double lambda_max = 0.0;
    double bound = 0.0;
    Verdict verdict = Verdict::Inconclusive;
};

/// One outcome's overlap contribution Tr(p_k rho_k P_phi) from the component
/// expansion: alpha is the input's Gell-Mann vector, rho_c the shared state's
/// components, proj_c the measurement projector's components, orbit the map
/// induced by the correction unitary.
double outcome_contribution(const std::array<double, 8>& alpha, const SchmidtComponents& rho_c,
                            const SchmidtComponents& proj_c, const OrthogonalMap& orbit);

/// Exact Haar-averaged fidelity:
///   F = sum_k ( 1/27 + (1/18) r.S^k + (1/72) R^k_p s_q O^k_qp
///                    + (1/48) T^k_pi t_iq O^k_qp ).
/// Throws InvalidProtocolError if the measurement invariants fail.
double average_fidelity(const ComplexMatrix& rho, const MeasurementProtocol& protocol);

/// sum_k Tr(p_k rho_k P_phi) for one input state, evaluated by direct matrix
/// contraction of (P_k x U_k)(P_phi x rho)(P_k x U_k)^dag — no component
/// machinery, so it is an independent route against average_fidelity.
double input_state_fidelity(const ComplexMatrix& rho, const MeasurementProtocol& protocol,
                            const QutritVector& phi);

/// Monte-Carlo average of input_state_fidelity over Haar inputs. Outcomes are
/// never sampled; the nine-outcome expectation is exact per draw. Throws
/// InvalidProtocolError, or NonStateError if rho fails the trace/positivity
/// checks at 1e-8.
FidelityEstimate monte_carlo_fidelity(const ComplexMatrix& rho,
                                      const MeasurementProtocol& protocol,
                                      std::uint64_t samples, const rng::StreamKey& key);

struct MomentCheck {
    std::string name;
    double target = 0.0;
    double observed = 0.0;
    double std_error = 0.0;
    double deviation_sigma = 0.0;
};

struct HaarMomentReport {
    std::vector<MomentCheck> checks;
    double max_purity_error = 0.0;  // per-sample |sum alpha^2 - 4/3|, worst case
    std::uint64_t samples = 0;
};

/// Estimates E[alpha_i] (target 0) and E[alpha.M.alpha] for the identity and
/// `random_forms` random symmetric matrices M (target Tr(M)/6).
HaarMomentReport haar_moment_report(std::uint64_t samples, const rng::StreamKey& key,
                                    std::size_t random_forms = 10);

/// sum_i |<v_i|phi>|^4 for one draw: the success measure of the classical
/// measure-and-guess scheme in the basis {v_i}.
double classical_overlap(const QutritVector& phi, const Basis3& basis);

/// Monte-Carlo average of classical_overlap over Haar inputs; the analytic
/// value is 1/2, independent of the basis. Throws BasisNotOrthonormalError.
FidelityEstimate classical_fidelity(std::uint64_t samples, const rng::StreamKey& key,
                                    const Basis3& basis);

/// Shifted family member: horodecki_state(a) plus the traceless Alice-side
/// shift (1/sqrt(3)) (a-1)/(8a+1) g_8 x I. Unit trace, not necessarily PSD.
ComplexMatrix bound_operator(double a);

/// General form of the same shift: rho + (1/2) sum_q r_q g_q x I with
/// r = decompose(rho).r. Absorbs the Alice-side correlation term of the
/// fidelity bound into the operator whose top eigenvalue is taken.
ComplexMatrix bound_operator_for(const ComplexMatrix& rho);

/// Full spectrum of bound_operator(a), the resulting fidelity bound
/// 1/4 + (3/4) lambda_max, and the verdict. Throws OutOfRangeError.
BoundReport fidelity_bound(double a);

}  // namespace telefid::fidelity
