#pragma once

#include <array>
#include <complex>
#include <cstddef>

#include "telefid/complex_matrix.hpp"
#include "telefid/rng.hpp"

namespace telefid::states {

using linalg::Complex;
using linalg::ComplexMatrix;

using QutritVector = std::array<Complex, 3>;
using Basis3 = std::array<QutritVector, 3>;

/// Pure qutrit state in the five-angle chart of the unit sphere in C^3:
///   amplitudes = ( c5 + i s5 c4,
///                  s5 s4 (c3 + i s3 c2),
///                  s5 s4 s3 s2 e^{i t1} )
/// with sk = sin(tk), ck = cos(tk). Canonical ranges are t1 in [0, 2pi) and
/// t2..t5 in [0, pi]; under those ranges the unitarily invariant measure has
/// density sin^4(t5) sin^3(t4) sin^2(t3) sin(t2) / pi^3.
struct PureQutritState {
    std::array<double, 5> theta{};  // t1..t5
    QutritVector amplitudes{};
};

/// Any real angles are accepted; the amplitude map is well defined and unit
/// norm for all of them.
PureQutritState pure_state(const std::array<double, 5>& theta);

/// Haar sample: normalize a vector of independent standard complex Gaussians,
/// then recover canonical angles (zero-amplitude ties resolve to angle 0).
PureQutritState sample_haar_state(rng::RandomStream& stream);

/// Rank-1 projector of an input state together with its Gell-Mann vector:
/// matrix = |phi><phi| = I/3 + (1/2) sum_i alpha_i g_i, sum alpha_i^2 = 4/3.
struct InputProjector {
    ComplexMatrix matrix;  // 3x3
    std::array<double, 8> alpha{};
};

InputProjector input_projector(const PureQutritState& phi);

/// The bound-entangled two-qutrit family, parameter a in [0, 1]:
/// 1/(8a+1) times the matrix with diagonal (a,a,a,a,a,a,(1+a)/2,a,(1+a)/2),
/// symmetric corner entries a at (0,4),(0,8),(4,8) and sqrt(1-a^2)/2 at (6,8).
/// Hermitian, trace 1, positive semidefinite, and PPT for every a.
/// Throws OutOfRangeError outside [0, 1].
ComplexMatrix horodecki_state(double a);

/// Permutation N with N (e_i x e_j) = e_j x e_i. Involution, symmetric.
const ComplexMatrix& swap_operator();

/// N * P * N: swaps the two tensor factors of a two-qutrit operator.
ComplexMatrix swap_conjugate(const ComplexMatrix& p);

/// Transposes the second tensor factor: ((i,j),(k,l)) -> ((i,l),(k,j)).
ComplexMatrix partial_transpose(const ComplexMatrix& rho);

/// Alice's nine-outcome measurement on (input x her half) plus Bob's
/// correction unitaries. Projectors are rank-1 on the 9-dimensional space and
/// sum to the identity; they need not be maximally entangled.
struct MeasurementProtocol {
    std::array<ComplexMatrix, 9> projectors;   // 9x9
    std::array<ComplexMatrix, 9> corrections;  // 3x3 unitary
};

/// Throws InvalidProtocolError unless every projector is a rank-1 projector,
/// the projectors sum to I9, and every correction is unitary, all within tol.
void validate_protocol(const MeasurementProtocol& protocol, double tol = 1e-10);

/// |Phi00> = (|00> + |11> + |22>)/sqrt(3) as a 9-vector, and its projector.
std::array<Complex, 9> max_entangled_vector();
ComplexMatrix max_entangled_projector();

/// Generalized Bell measurement: P_mn = |Phi_mn><Phi_mn| with
/// |Phi_mn> = (X^m Z^n x I)|Phi00>, X the cyclic shift and Z = diag(1,w,w^2),
/// w = e^{2 pi i/3}; correction for outcome (m,n) is X^m Z^n, which makes
/// teleportation through |Phi00> exact. Outcome index k = 3m + n.
MeasurementProtocol standard_protocol();

/// Haar-distributed n x n unitary (Ginibre + Gram-Schmidt with positive
/// diagonal normalization).
ComplexMatrix sample_haar_unitary(std::size_t n, rng::RandomStream& stream);

/// Random valid protocol: projectors onto the columns of a Haar unitary on
/// C^9, corrections Haar on U(3).
MeasurementProtocol random_protocol(rng::RandomStream& stream);

/// Hilbert-Schmidt random density matrix G G^dag / Tr(G G^dag).
ComplexMatrix random_density_matrix(std::size_t n, rng::RandomStream& stream);

}  // namespace telefid::states
