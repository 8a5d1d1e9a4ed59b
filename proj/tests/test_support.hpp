#pragma once

#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "telefid/complex_matrix.hpp"
#include "telefid/states.hpp"

namespace test_support {

using telefid::linalg::Complex;
using telefid::linalg::ComplexMatrix;

inline ComplexMatrix random_hermitian(std::size_t n, telefid::rng::RandomStream& stream) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    ComplexMatrix g(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) g(i, j) = Complex(gauss(stream), gauss(stream));
    return 0.5 * (g + g.adjoint());
}

// Fidelity of one input through the full three-particle algebra: particle 1
// carries the input, 2 and 3 share rho. For each outcome, sandwich
// P_phi x rho between P_k x U_k on the 27-dimensional space and project the
// third particle back onto phi. Deliberately brute force — this is the
// independent oracle for the optimized contraction.
inline double brute_force_fidelity(const ComplexMatrix& rho,
                                   const telefid::states::MeasurementProtocol& protocol,
                                   const telefid::states::QutritVector& phi) {
    ComplexMatrix p_phi(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) p_phi(i, j) = phi[i] * std::conj(phi[j]);

    // P_phi x rho lives on (1) x (2,3); regroup indices so both factors are
    // built with plain kron: entry ((i1 i2 i3),(j1 j2 j3)).
    ComplexMatrix input_times_shared(27, 27);
    for (std::size_t i1 = 0; i1 < 3; ++i1)
        for (std::size_t i2 = 0; i2 < 3; ++i2)
            for (std::size_t i3 = 0; i3 < 3; ++i3)
                for (std::size_t j1 = 0; j1 < 3; ++j1)
                    for (std::size_t j2 = 0; j2 < 3; ++j2)
                        for (std::size_t j3 = 0; j3 < 3; ++j3)
                            input_times_shared(9 * i1 + 3 * i2 + i3, 9 * j1 + 3 * j2 + j3) =
                                p_phi(i1, j1) * rho(3 * i2 + i3, 3 * j2 + j3);

    const ComplexMatrix projector_on_output =
        kron(ComplexMatrix::identity(9), p_phi);

    double total = 0.0;
    for (std::size_t k = 0; k < 9; ++k) {
        const ComplexMatrix op = kron(protocol.projectors[k], protocol.corrections[k]);
        const ComplexMatrix sandwich = op * input_times_shared * op.adjoint();
        total += (sandwich * projector_on_output).trace().real();
    }
    return total;
}

// The nine closed-form eigenvalues of the shifted family member at
// a = sqrt(3)/2, evaluated in extended precision: ascending, with the
// four-fold value repeated.
inline std::array<double, 9> flagship_spectrum() {
    const long double s3 = sqrtl(3.0L);
    const long double four_fold = (2.0L * s3 - 1.0L) / (3.0L * (4.0L * s3 + 1.0L));
    const long double pair_base = 83.0L / 1128.0L - s3 / 376.0L;
    const long double pair_radical = sqrtl(10588.0L - 5786.0L * s3) / 376.0L;
    const long double negative = 7.0L / 141.0L - (3.0L / 94.0L) * s3;
    const long double top = 37.0L / 564.0L + (29.0L / 188.0L) * s3;
    const long double last = 4.0L / 141.0L + (5.0L / 94.0L) * s3;

    std::array<long double, 9> values = {negative,
                                         pair_base - pair_radical,
                                         four_fold,
                                         four_fold,
                                         four_fold,
                                         four_fold,
                                         last,
                                         pair_base + pair_radical,
                                         top};
    std::array<double, 9> out{};
    for (std::size_t i = 0; i < 9; ++i) out[i] = static_cast<double>(values[i]);
    return out;
}

}  // namespace test_support
