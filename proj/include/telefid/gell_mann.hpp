#pragma once

#include <array>

#include "telefid/complex_matrix.hpp"

namespace telefid::linalg {

/// The eight Gell-Mann matrices in the standard ordering: basis[0], basis[1]
/// mix levels 1-2; basis[3], basis[4] mix 1-3; basis[5], basis[6] mix 2-3;
/// basis[2] = diag(1,-1,0); basis[7] = diag(1,1,-2)/sqrt(3). Hermitian,
/// traceless, Tr(g_i g_j) = 2 delta_ij.
const std::array<ComplexMatrix, 8>& gell_mann_basis();

}  // namespace telefid::linalg
