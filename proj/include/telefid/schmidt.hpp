#pragma once

#include <array>

#include "telefid/complex_matrix.hpp"

namespace telefid::schmidt {

using linalg::ComplexMatrix;

/// Expansion of a two-qutrit operator M in the product operator basis
/// {I, g_i} x {I, g_j} built from the Gell-Mann matrices g:
///
///   M = (w/9) I x I + (1/6) sum_i r_i g_i x I
///              + (1/6) sum_i s_i I x g_i + (1/4) sum_ij t_ij g_i x g_j
///
/// with r_i = Tr(M g_i x I), s_i = Tr(M I x g_i), t_ij = Tr(M g_i x g_j) and
/// w = Tr(M). The first tensor factor is Alice's half of the shared pair, the
/// second is Bob's. For a Hermitian M every component is real; for a density
/// matrix unit_weight is 1.
struct SchmidtComponents {
    std::array<double, 8> r{};
    std::array<double, 8> s{};
    std::array<std::array<double, 8>, 8> t{};
    double unit_weight = 1.0;
};

/// Orthogonal 8x8 image of a 3x3 unitary under conjugation on the Gell-Mann
/// span: o_ij = (1/2) Tr(U g_i U^dag g_j), so U (x.g) U^dag = (x o).g.
struct OrthogonalMap {
    std::array<std::array<double, 8>, 8> o{};
};

/// Throws NonHermitianInputError if any component's imaginary part exceeds
/// 1e-9. Input must be 9x9.
SchmidtComponents decompose(const ComplexMatrix& m);

ComplexMatrix reconstruct(const SchmidtComponents& c);

/// Throws NotUnitaryError unless U is 3x3 unitary within 1e-10.
OrthogonalMap adjoint_orbit(const ComplexMatrix& u);

}  // namespace telefid::schmidt
